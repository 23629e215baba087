#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ldlab/metric_space.hpp"
#include "oracles.hpp"

using namespace ldlab;

namespace {
SpacePtr unit_grid_1d(double h) {
  MetricSpace::Interval b[] = {{0.0, 1.0}};
  return MetricSpace::grid(1, b, h);
}
}  // namespace

TEST_CASE("grid construction: 1d lattice") {
  auto s = unit_grid_1d(0.5);
  REQUIRE(s->size() == 3);
  CHECK(s->coords(0)[0] == doctest::Approx(0.0));
  CHECK(s->coords(1)[0] == doctest::Approx(0.5));
  CHECK(s->coords(2)[0] == doctest::Approx(1.0));
  CHECK(s->dist(0, 2) == doctest::Approx(1.0));
  CHECK(s->resolution() == 0.5);
}

TEST_CASE("grid construction: 2d corners") {
  MetricSpace::Interval b[] = {{0.0, 1.0}, {0.0, 1.0}};
  auto s = MetricSpace::grid(2, b, 1.0);
  REQUIRE(s->size() == 4);
  const auto i00 = s->find(std::vector<double>{0.0, 0.0});
  const auto i11 = s->find(std::vector<double>{1.0, 1.0});
  REQUIRE(i00 != MetricSpace::npos);
  REQUIRE(i11 != MetricSpace::npos);
  CHECK(s->dist(i00, i11) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("grid construction: non-divisible h rejected") {
  MetricSpace::Interval b[] = {{0.0, 1.0}};
  CHECK_THROWS_AS(MetricSpace::grid(1, b, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpace::grid(1, b, 0.0), std::invalid_argument);
  MetricSpace::Interval bad[] = {{1.0, 0.0}};
  CHECK_THROWS_AS(MetricSpace::grid(1, bad, 0.5), std::invalid_argument);
}

TEST_CASE("metric axioms hold on sampled triples") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    auto s = oracle::random_point_space(rng, 8, 2);
    for (int t = 0; t < 50; ++t) {
      const auto p = rng.below(8), q = rng.below(8), r = rng.below(8);
      CHECK(s->dist(p, p) == 0.0);
      CHECK(s->dist(p, q) == doctest::Approx(s->dist(q, p)).epsilon(1e-12));
      CHECK(s->dist(p, q) <= s->dist(p, r) + s->dist(r, q) + 1e-12);
      if (p != q) CHECK(s->dist(p, q) > 0.0);
    }
  }
}

TEST_CASE("ball: grid cases") {
  auto s = unit_grid_1d(0.5);
  const auto c = s->find(std::vector<double>{0.5});
  auto b = ball(s, c, 0.6);
  CHECK(b.size() == 3);
  CHECK(b.contains(c));

  // delta <= h isolates the center on a grid
  auto tiny = ball(s, c, 0.5);
  CHECK(tiny.size() == 1);
  CHECK(tiny.contains(c));

  CHECK_THROWS_AS(ball(s, c, 0.0), std::invalid_argument);
}

TEST_CASE("ball matches exhaustive scan on random spaces") {
  Rng rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    auto s = oracle::random_point_space(rng, 10, 2);
    const auto x = rng.below(10);
    const double delta = rng.uniform(0.1, 1.5);
    const auto got = ball(s, x, delta).members();
    const auto want = oracle::scan_ball(*s, x, delta);
    CHECK(got == want);
  }
}

TEST_CASE("enlargement: monotone, contains A, matches union of balls") {
  Rng rng(13);
  auto s = oracle::random_point_space(rng, 12, 2);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < 12; ++i)
      if (rng.uniform01() < 0.4) pts.push_back(i);
    if (pts.empty()) pts.push_back(rng.below(12));
    auto a = PointSet::of(s, pts);
    const double eps = rng.uniform(0.1, 1.0);
    auto e1 = enlargement(a, eps);
    auto e2 = enlargement(a, eps + 0.3);
    CHECK(a.subset_of(e1));
    CHECK(e1.subset_of(e2));
    CHECK(e1.members() == oracle::scan_enlargement(*s, pts, eps));
  }

  auto whole = PointSet::full(s);
  CHECK(enlargement(whole, 0.05).members() == whole.members());
  CHECK_THROWS_AS(enlargement(PointSet::empty(s), 0.5), std::invalid_argument);
}

TEST_CASE("enlargement: 1d grid example") {
  auto s = unit_grid_1d(0.5);
  const std::size_t zero[] = {s->find(std::vector<double>{0.0})};
  auto e = enlargement(PointSet::of(s, zero), 0.6);
  CHECK(e.size() == 2);
  CHECK(e.contains(s->find(std::vector<double>{0.0})));
  CHECK(e.contains(s->find(std::vector<double>{0.5})));
}

TEST_CASE("hausdorff distance: identity, singletons, oracle") {
  Rng rng(14);
  auto s = oracle::random_point_space(rng, 9, 2);
  std::vector<std::size_t> all(9);
  for (std::size_t i = 0; i < 9; ++i) all[i] = i;
  auto k = PointSet::of(s, std::span<const std::size_t>(all.data(), 4));
  CHECK(hausdorff_distance(k, k) == 0.0);

  const std::size_t sx[] = {1}, sy[] = {7};
  CHECK(hausdorff_distance(PointSet::of(s, sx), PointSet::of(s, sy)) ==
        doctest::Approx(s->dist(1, 7)));

  for (int rep = 0; rep < 25; ++rep) {
    std::vector<std::size_t> k1, k2;
    for (std::size_t i = 0; i < 9; ++i) {
      if (rng.uniform01() < 0.5) k1.push_back(i);
      if (rng.uniform01() < 0.5) k2.push_back(i);
    }
    if (k1.empty()) k1.push_back(0);
    if (k2.empty()) k2.push_back(8);
    CHECK(hausdorff_distance(PointSet::of(s, k1), PointSet::of(s, k2)) ==
          doctest::Approx(oracle::maxmin_hausdorff(*s, k1, k2)).epsilon(1e-12));
  }
}

TEST_CASE("hausdorff iff-enlargement characterization") {
  Rng rng(15);
  auto s = oracle::random_point_space(rng, 8, 2);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<std::size_t> k1, k2;
    for (std::size_t i = 0; i < 8; ++i) {
      if (rng.uniform01() < 0.5) k1.push_back(i);
      if (rng.uniform01() < 0.5) k2.push_back(i);
    }
    if (k1.empty()) k1.push_back(0);
    if (k2.empty()) k2.push_back(7);
    auto a = PointSet::of(s, k1), b = PointSet::of(s, k2);
    const double dh = hausdorff_distance(a, b);
    // Enlargement by any eps > d_H contains both directions; below d_H at
    // least one inclusion fails.
    const double eps = dh + 1e-9;
    CHECK(a.subset_of(enlargement(b, eps)));
    CHECK(b.subset_of(enlargement(a, eps)));
    if (dh > 1e-9) {
      const bool inc = a.subset_of(enlargement(b, dh * (1 - 1e-9))) &&
                       b.subset_of(enlargement(a, dh * (1 - 1e-9)));
      CHECK_FALSE(inc);
    }
  }
}

TEST_CASE("subset space: two-point base") {
  auto base = unit_grid_1d(1.0);  // {0, 1}
  auto ks = MetricSpace::subsets(base);
  REQUIRE(ks->size() == 3);
  // d_H({a}, {a,b}) = dist(a, b)
  std::size_t singleton0 = MetricSpace::npos, both = MetricSpace::npos;
  for (std::size_t i = 0; i < 3; ++i) {
    if (ks->subset_mask(i) == 0b01u) singleton0 = i;
    if (ks->subset_mask(i) == 0b11u) both = i;
  }
  REQUIRE(singleton0 != MetricSpace::npos);
  REQUIRE(both != MetricSpace::npos);
  CHECK(ks->dist(singleton0, both) == doctest::Approx(1.0));
}

TEST_CASE("subset space: single point base") {
  std::vector<std::vector<double>> one = {{0.0}};
  auto base = MetricSpace::from_points(one);
  auto ks = MetricSpace::subsets(base);
  REQUIRE(ks->size() == 1);
  CHECK(ks->dist(0, 0) == 0.0);
}

TEST_CASE("subset space: all 21 pairs match the max-min oracle, axioms hold") {
  Rng rng(16);
  auto base = oracle::random_point_space(rng, 3, 2);
  auto ks = MetricSpace::subsets(base);
  REQUIRE(ks->size() == 7);
  int pairs = 0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) {
      std::vector<std::size_t> k1, k2;
      for (std::size_t b = 0; b < 3; ++b) {
        if (ks->subset_mask(i) & (1u << b)) k1.push_back(b);
        if (ks->subset_mask(j) & (1u << b)) k2.push_back(b);
      }
      CHECK(ks->dist(i, j) ==
            doctest::Approx(oracle::maxmin_hausdorff(*base, k1, k2)).epsilon(1e-12));
      ++pairs;
    }
  CHECK(pairs == 21);
  for (std::size_t p = 0; p < 7; ++p)
    for (std::size_t q = 0; q < 7; ++q)
      for (std::size_t r = 0; r < 7; ++r)
        CHECK(ks->dist(p, q) <= ks->dist(p, r) + ks->dist(r, q) + 1e-12);
}

TEST_CASE("subset space: enumeration cap") {
  MetricSpace::Interval b[] = {{0.0, 16.0}};
  auto big = MetricSpace::grid(1, b, 1.0);  // 17 points
  CHECK_THROWS_AS(MetricSpace::subsets(big), std::invalid_argument);
}

TEST_CASE("interior and closure at a scale") {
  auto s = unit_grid_1d(0.1);
  std::vector<std::size_t> left;
  for (std::size_t i = 0; i < s->size(); ++i)
    if (s->coords(i)[0] < 0.45) left.push_back(i);
  auto a = PointSet::of(s, left);
  auto inner = interior_at(a, 0.15);
  auto outer = closure_at(a, 0.15);
  CHECK(inner.subset_of(a));
  CHECK(a.subset_of(outer));
  CHECK(inner.size() == a.size() - 1);   // one boundary layer off
  CHECK(outer.size() == a.size() + 1);   // one layer on
  // Below the separation both are the identity.
  CHECK(interior_at(a, 0.05).members() == a.members());
  CHECK(closure_at(a, 0.05).members() == a.members());
}

TEST_CASE("space loaders") {
  {
    std::ofstream out("space_kv.txt");
    out << "# box\n" << "dim = 1\n" << "bounds = 0 1\n" << "h = 0.25\n";
  }
  auto s = load_space_kv("space_kv.txt");
  CHECK(s->size() == 5);
  CHECK(s->resolution() == 0.25);

  {
    std::ofstream out("space_mat.csv");
    out << "a,b,c\n0,1,2\n1,0,1.5\n2,1.5,0\n";
  }
  auto m = load_space_csv("space_mat.csv");
  REQUIRE(m->size() == 3);
  CHECK(m->dist(0, 2) == 2.0);
  CHECK(m->id(1) == "b");
  std::remove("space_kv.txt");
  std::remove("space_mat.csv");
}
