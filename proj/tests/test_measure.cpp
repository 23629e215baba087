#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ldlab/measure.hpp"
#include "oracles.hpp"

using namespace ldlab;

namespace {
SpacePtr line_grid(double lo, double hi, double h) {
  MetricSpace::Interval b[] = {{lo, hi}};
  return MetricSpace::grid(1, b, h);
}
}  // namespace

TEST_CASE("measure construction guards") {
  auto s = line_grid(0, 1, 0.5);
  CHECK_THROWS(DiscreteMeasure::from_weights(s, {0.5, 0.5}));          // wrong size
  CHECK_THROWS(DiscreteMeasure::from_weights(s, {0.5, 0.6, 0.1}));     // sum != 1
  CHECK_THROWS(DiscreteMeasure::from_weights(s, {1.5, -0.5, 0.0}));    // negative
  auto mu = DiscreteMeasure::from_weights(s, {0.25, 0.25, 0.5});
  CHECK(mu.log_weight(2) == doctest::Approx(std::log(0.5)));
  auto d = DiscreteMeasure::dirac(s, 1);
  CHECK(d.log_weight(0) == kNegInf);
  CHECK(d.weight(1) == 1.0);
}

TEST_CASE("from_log_weights normalizes far below underflow") {
  auto s = line_grid(0, 1, 1.0);
  auto mu = DiscreteMeasure::from_log_weights(s, {-5000.0, -5001.0});
  CHECK(mu.weight(0) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
  CHECK(mu.log_weight(1) - mu.log_weight(0) == doctest::Approx(-1.0));
}

TEST_CASE("condition: uniform, identity, hand example") {
  auto s = line_grid(0, 3, 1.0);
  auto u = DiscreteMeasure::uniform(s);
  const std::size_t two[] = {0, 2};
  auto c = condition(u, PointSet::of(s, two));
  CHECK(c.weight(0) == doctest::Approx(0.5));
  CHECK(c.weight(1) == 0.0);
  CHECK(c.weight(2) == doctest::Approx(0.5));

  auto full = condition(u, PointSet::full(s));
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(full.weight(i) == doctest::Approx(u.weight(i)));

  auto s3 = line_grid(0, 2, 1.0);
  auto mu = DiscreteMeasure::from_weights(s3, {0.1, 0.2, 0.7});
  const std::size_t a13[] = {0, 2};
  auto cc = condition(mu, PointSet::of(s3, a13));
  CHECK(cc.weight(0) == doctest::Approx(0.125));
  CHECK(cc.weight(1) == 0.0);
  CHECK(cc.weight(2) == doctest::Approx(0.875));

  // zero-mass conditioning is an explicit error
  auto dd = DiscreteMeasure::dirac(s3, 0);
  const std::size_t off[] = {1, 2};
  CHECK_THROWS_AS(condition(dd, PointSet::of(s3, off)), ZeroMassError);
}

TEST_CASE("condition idempotence") {
  Rng rng(21);
  auto s = oracle::random_point_space(rng, 6, 1);
  for (int rep = 0; rep < 20; ++rep) {
    auto mu = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 6));
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < 6; ++i)
      if (rng.uniform01() < 0.6) pts.push_back(i);
    if (pts.empty()) pts.push_back(0);
    auto a = PointSet::of(s, pts);
    if (mu.mass(a) == 0.0) continue;
    auto once = condition(mu, a);
    auto twice = condition(once, a);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(twice.weight(i) == doctest::Approx(once.weight(i)).epsilon(1e-12));
  }
}

TEST_CASE("pushforward: identity, constant, fiber-sum oracle") {
  Rng rng(22);
  auto s = oracle::random_point_space(rng, 8, 1);
  auto t = oracle::random_point_space(rng, 4, 1);
  auto mu = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 8));

  std::vector<std::size_t> ident(8);
  for (std::size_t i = 0; i < 8; ++i) ident[i] = i;
  auto same = pushforward(mu, ident, s);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(same.weight(i) == doctest::Approx(mu.weight(i)));

  std::vector<std::size_t> constant(8, 2);
  auto dirac = pushforward(mu, constant, t);
  CHECK(dirac.weight(2) == doctest::Approx(1.0));

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::size_t> theta(8);
    for (auto& y : theta) y = rng.below(4);
    auto nu = pushforward(mu, theta, t);
    double total = 0.0;
    for (std::size_t y = 0; y < 4; ++y) {
      double fiber = 0.0;
      for (std::size_t x = 0; x < 8; ++x)
        if (theta[x] == y) fiber += mu.weight(x);
      CHECK(nu.weight(y) == doctest::Approx(fiber).epsilon(1e-12));
      total += nu.weight(y);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));  // mass preserved
  }

  // undefined on a support point
  std::vector<std::size_t> partial(8, MetricSpace::npos);
  CHECK_THROWS_AS(pushforward(mu, partial, t), std::invalid_argument);
}

TEST_CASE("product: diracs, uniforms, hand table") {
  auto s2 = line_grid(0, 1, 1.0);
  auto da = DiscreteMeasure::dirac(s2, 0);
  auto db = DiscreteMeasure::dirac(s2, 1);
  auto dd = product(da, db);
  CHECK(dd.weight(0 * 2 + 1) == doctest::Approx(1.0));

  auto u = DiscreteMeasure::uniform(s2);
  auto uu = product(u, u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(uu.weight(i) == doctest::Approx(0.25));

  auto mu = DiscreteMeasure::from_weights(s2, {0.3, 0.7});
  auto nu = DiscreteMeasure::from_weights(s2, {0.4, 0.6});
  auto pr = product(mu, nu);
  CHECK(pr.weight(0) == doctest::Approx(0.12));
  CHECK(pr.weight(1) == doctest::Approx(0.18));
  CHECK(pr.weight(2) == doctest::Approx(0.28));
  CHECK(pr.weight(3) == doctest::Approx(0.42));

  // product-space metric: balls factor (max combination)
  auto ps = pr.space();
  CHECK(ps->dist(0, 3) == doctest::Approx(1.0));
  CHECK(ps->dist(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("tensor power cap") {
  auto s = line_grid(0, 9, 1.0);  // 10 points
  auto u = DiscreteMeasure::uniform(s);
  CHECK_THROWS_AS(tensor_power(u, 9, 10'000'000), std::invalid_argument);
  auto sq = tensor_power(u, 2);
  CHECK(sq.size() == 100);
  CHECK(sq.weight(0) == doctest::Approx(0.01));
}

TEST_CASE("narrow distance: identity, dirac closed form") {
  auto s = line_grid(0, 3, 1.0);
  auto mu = DiscreteMeasure::from_weights(s, {0.2, 0.3, 0.4, 0.1});
  CHECK(narrow_distance(mu, mu) == doctest::Approx(0.0));

  auto d0 = DiscreteMeasure::dirac(s, 0);
  auto d3 = DiscreteMeasure::dirac(s, 3);
  CHECK(narrow_distance(d0, d3) == doctest::Approx(std::min(2.0, s->dist(0, 3))));
  auto d1 = DiscreteMeasure::dirac(s, 1);
  CHECK(narrow_distance(d0, d1) == doctest::Approx(1.0));
  CHECK(narrow_distance_to_dirac(d0, 3) == doctest::Approx(2.0));
}

TEST_CASE("narrow distance matches the vertex LP oracle") {
  Rng rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    auto s = oracle::random_point_space(rng, 4, 1);
    auto mu = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 4, 0.2));
    auto nu = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 4, 0.2));
    std::vector<double> c(4);
    for (std::size_t i = 0; i < 4; ++i) c[i] = mu.weight(i) - nu.weight(i);
    const double lp = oracle::bl_dual_vertex_lp(*s, c);
    CHECK(narrow_distance(mu, nu) == doctest::Approx(lp).epsilon(1e-9));
  }
}

TEST_CASE("narrow distance: triangle inequality and symmetry on random triples") {
  Rng rng(24);
  auto s = oracle::random_point_space(rng, 6, 2);
  for (int rep = 0; rep < 15; ++rep) {
    auto a = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 6, 0.3));
    auto b = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 6, 0.3));
    auto c = DiscreteMeasure::from_weights(s, oracle::random_weights(rng, 6, 0.3));
    const double ab = narrow_distance(a, b);
    const double ba = narrow_distance(b, a);
    const double ac = narrow_distance(a, c);
    const double cb = narrow_distance(c, b);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    CHECK(ab <= ac + cb + 1e-9);
  }
}

TEST_CASE("log_integral_exp stays finite far below underflow") {
  auto s = line_grid(0, 1, 1.0);
  auto mu = DiscreteMeasure::from_weights(s, {0.5, 0.5});
  // (1/a) log E[e^{a f}] with a huge: approaches max f
  std::vector<double> f = {-3.0, -1.0};
  CHECK(mu.log_integral_exp(f, 5000.0) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("measure io round trip: csv and json") {
  auto s = line_grid(0, 2, 1.0);
  auto mu = DiscreteMeasure::from_weights(s, {0.25, 0.0, 0.75});
  save_measure_csv(mu, "mu_io.csv");
  auto back = load_measure_csv(s, "mu_io.csv");
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(back.weight(i) == doctest::Approx(mu.weight(i)).epsilon(1e-15));
  auto j = measure_to_json(mu);
  auto back2 = measure_from_json(s, j);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(back2.weight(i) == doctest::Approx(mu.weight(i)).epsilon(1e-15));
  std::remove("mu_io.csv");
}
