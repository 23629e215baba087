#include "ldlab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ldlab {

PointSet::PointSet(SpacePtr space, std::vector<bool> mask, TopologyTag tag)
    : space_(std::move(space)), mask_(std::move(mask)), tag_(tag) {
  if (!space_) throw std::invalid_argument("PointSet: null space");
  if (mask_.size() != space_->size())
    throw std::invalid_argument("PointSet: mask size mismatch");
}

PointSet PointSet::full(SpacePtr space, TopologyTag tag) {
  std::vector<bool> mask(space->size(), true);
  return PointSet(std::move(space), std::move(mask), tag);
}

PointSet PointSet::empty(SpacePtr space) {
  std::vector<bool> mask(space->size(), false);
  return PointSet(std::move(space), std::move(mask));
}

PointSet PointSet::of(SpacePtr space, std::span<const std::size_t> ids,
                      TopologyTag tag) {
  std::vector<bool> mask(space->size(), false);
  for (std::size_t i : ids) {
    if (i >= mask.size()) throw std::invalid_argument("PointSet: id out of range");
    mask[i] = true;
  }
  return PointSet(std::move(space), std::move(mask), tag);
}

std::size_t PointSet::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

PointSet PointSet::with_tag(TopologyTag tag) const {
  return PointSet(space_, mask_, tag);
}

bool PointSet::subset_of(const PointSet& other) const {
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !other.mask_[i]) return false;
  return true;
}

PointSet PointSet::complement(TopologyTag tag) const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = !mask_[i];
  return PointSet(space_, std::move(mask), tag);
}

PointSet PointSet::unite(const PointSet& other) const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] || other.mask_[i];
  return PointSet(space_, std::move(mask));
}

PointSet PointSet::intersect(const PointSet& other) const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] && other.mask_[i];
  return PointSet(space_, std::move(mask));
}

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// Directed max-min distance between two base-space masks.
double directed_hausdorff(const MetricSpace& base, std::uint32_t from,
                          std::uint32_t to) {
  double worst = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!(from & (1u << i))) continue;
    double best = kInf;
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (!(to & (1u << j))) continue;
      best = std::min(best, base.dist(i, j));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

SpacePtr MetricSpace::grid(std::size_t dim, std::span<const Interval> bounds,
                           double h) {
  if (dim == 0 || bounds.size() != dim)
    throw std::invalid_argument("grid: dim/bounds mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("grid: h must be positive");
  std::vector<std::size_t> counts(dim);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    const double len = bounds[k].hi - bounds[k].lo;
    if (len < 0.0) throw std::invalid_argument("grid: empty box");
    const double steps = len / h;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-12 * std::max(1.0, steps))
      throw std::invalid_argument("grid: h does not divide interval length");
    counts[k] = static_cast<std::size_t>(rounded) + 1;
    total *= counts[k];
  }
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->mode_ = Mode::kCoords;
  space->size_ = total;
  space->dim_ = dim;
  space->resolution_ = h;
  space->coords_.resize(total * dim);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t idx = rem % counts[k];
      rem /= counts[k];
      space->coords_[i * dim + k] = bounds[k].lo + static_cast<double>(idx) * h;
    }
  }
  space->separation_ = h;
  space->finish_ids();
  return space;
}

SpacePtr MetricSpace::from_matrix(std::vector<std::string> ids,
                                  std::vector<std::vector<double>> dist) {
  const std::size_t n = ids.size();
  if (n == 0 || dist.size() != n)
    throw std::invalid_argument("from_matrix: bad shape");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw std::invalid_argument("from_matrix: bad row");
    if (dist[i][i] != 0.0) throw std::invalid_argument("from_matrix: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      require_not_nan(dist[i][j], "distance matrix");
      if (dist[i][j] < 0.0) throw std::invalid_argument("from_matrix: negative entry");
      if (std::abs(dist[i][j] - dist[j][i]) > 1e-12)
        throw std::invalid_argument("from_matrix: asymmetric");
      if (i != j && dist[i][j] <= 0.0)
        throw std::invalid_argument("from_matrix: zero off-diagonal");
    }
  }
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->mode_ = Mode::kMatrix;
  space->size_ = n;
  space->matrix_ = std::move(dist);
  space->ids_ = std::move(ids);
  space->compute_separation();
  return space;
}

SpacePtr MetricSpace::from_points(std::vector<std::vector<double>> coords) {
  const std::size_t n = coords.size();
  if (n == 0) throw std::invalid_argument("from_points: empty");
  const std::size_t dim = coords[0].size();
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->mode_ = Mode::kCoords;
  space->size_ = n;
  space->dim_ = dim;
  space->coords_.resize(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != dim)
      throw std::invalid_argument("from_points: ragged coordinates");
    for (std::size_t k = 0; k < dim; ++k)
      space->coords_[i * dim + k] = require_not_nan(coords[i][k], "coords");
  }
  space->compute_separation();
  space->finish_ids();
  return space;
}

SpacePtr MetricSpace::subsets(SpacePtr base, std::size_t max_points) {
  if (!base) throw std::invalid_argument("subsets: null base");
  if (max_points > 16) max_points = 16;
  if (base->size() > max_points || base->size() > 16)
    throw std::invalid_argument("subsets: enumeration cap exceeded");
  const std::size_t m = base->size();
  const std::uint32_t count = (1u << m) - 1u;
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->mode_ = Mode::kSubsets;
  space->size_ = count;
  space->dim_ = m;  // indicator coordinates
  space->base_ = base;
  space->masks_.resize(count);
  space->coords_.resize(static_cast<std::size_t>(count) * m);
  for (std::uint32_t mask = 1; mask <= count; ++mask) {
    space->masks_[mask - 1] = mask;
    for (std::size_t k = 0; k < m; ++k)
      space->coords_[(mask - 1) * m + k] = (mask & (1u << k)) ? 1.0 : 0.0;
  }
  space->separation_ = base->separation();
  space->finish_ids();
  return space;
}

void MetricSpace::finish_ids() {
  ids_.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) ids_[i] = "p" + std::to_string(i);
}

void MetricSpace::compute_separation() {
  double sep = kInf;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) sep = std::min(sep, dist(i, j));
  separation_ = (size_ > 1) ? sep : 0.0;
}

double MetricSpace::dist(std::size_t i, std::size_t j) const {
  switch (mode_) {
    case Mode::kCoords:
      return euclid(coords(i), coords(j));
    case Mode::kMatrix:
      return matrix_[i][j];
    case Mode::kSubsets: {
      const std::uint32_t a = masks_[i], b = masks_[j];
      return std::max(directed_hausdorff(*base_, a, b),
                      directed_hausdorff(*base_, b, a));
    }
  }
  return 0.0;
}

std::span<const double> MetricSpace::coords(std::size_t i) const {
  if (coords_.empty()) return {};
  return {coords_.data() + i * dim_, dim_};
}

std::size_t MetricSpace::find(std::span<const double> c, double tol) const {
  for (std::size_t i = 0; i < size_; ++i) {
    auto mine = coords(i);
    if (mine.size() != c.size()) return npos;
    bool ok = true;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (std::abs(mine[k] - c[k]) > tol) { ok = false; break; }
    if (ok) return i;
  }
  return npos;
}

std::uint32_t MetricSpace::subset_mask(std::size_t i) const {
  if (mode_ != Mode::kSubsets)
    throw std::logic_error("subset_mask: not a subset space");
  return masks_[i];
}

double MetricSpace::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) d = std::max(d, dist(i, j));
  return d;
}

PointSet ball(const SpacePtr& space, std::size_t x, double delta) {
  if (!space || x >= space->size()) throw std::invalid_argument("ball: bad center");
  if (!(delta > 0.0)) throw std::invalid_argument("ball: delta must be positive");
  std::vector<bool> mask(space->size(), false);
  for (std::size_t i = 0; i < space->size(); ++i)
    mask[i] = space->dist(x, i) < delta;
  return PointSet(space, std::move(mask), TopologyTag::kOpen);
}

PointSet enlargement(const PointSet& a, double eps) {
  if (a.is_empty()) throw std::invalid_argument("enlargement: empty set");
  if (!(eps > 0.0)) throw std::invalid_argument("enlargement: eps must be positive");
  const auto& space = a.space();
  const auto mem = a.members();
  std::vector<bool> mask(space->size(), false);
  for (std::size_t i = 0; i < space->size(); ++i) {
    for (std::size_t m : mem) {
      if (space->dist(m, i) < eps) { mask[i] = true; break; }
    }
  }
  return PointSet(space, std::move(mask), TopologyTag::kOpen);
}

double hausdorff_distance(const PointSet& k1, const PointSet& k2) {
  if (k1.is_empty() || k2.is_empty())
    throw std::invalid_argument("hausdorff_distance: empty set");
  if (k1.space() != k2.space())
    throw std::invalid_argument("hausdorff_distance: space mismatch");
  const auto& space = *k1.space();
  const auto m1 = k1.members(), m2 = k2.members();
  auto directed = [&](const std::vector<std::size_t>& from,
                      const std::vector<std::size_t>& to) {
    double worst = 0.0;
    for (std::size_t p : from) {
      double best = kInf;
      for (std::size_t q : to) best = std::min(best, space.dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(m1, m2), directed(m2, m1));
}

PointSet interior_at(const PointSet& a, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("interior_at: r must be positive");
  const auto& space = a.space();
  std::vector<bool> mask(space->size(), false);
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (!a.contains(i)) continue;
    bool inside = true;
    for (std::size_t j = 0; j < space->size(); ++j) {
      if (space->dist(i, j) < r && !a.contains(j)) { inside = false; break; }
    }
    mask[i] = inside;
  }
  return PointSet(space, std::move(mask), TopologyTag::kOpen);
}

PointSet closure_at(const PointSet& a, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("closure_at: r must be positive");
  const auto& space = a.space();
  std::vector<bool> mask(space->size(), false);
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (a.contains(i)) { mask[i] = true; continue; }
    for (std::size_t j = 0; j < space->size(); ++j) {
      if (a.contains(j) && space->dist(i, j) < r) { mask[i] = true; break; }
    }
  }
  return PointSet(space, std::move(mask), TopologyTag::kClosed);
}

namespace {
std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> out;
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}
}  // namespace

SpacePtr load_space_kv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open space config: " + path);
  std::size_t dim = 0;
  double h = 0.0;
  std::vector<MetricSpace::Interval> bounds;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto key_toks = split_ws(line.substr(0, eq));
    auto val_toks = split_ws(line.substr(eq + 1));
    if (key_toks.size() != 1) continue;
    const std::string& key = key_toks[0];
    if (key == "dim") {
      dim = std::stoul(val_toks.at(0));
    } else if (key == "h") {
      h = std::stod(val_toks.at(0));
    } else if (key == "bounds") {
      if (val_toks.size() % 2 != 0)
        throw std::runtime_error("space config: bounds needs lo/hi pairs");
      bounds.clear();
      for (std::size_t k = 0; k + 1 < val_toks.size(); k += 2)
        bounds.push_back({std::stod(val_toks[k]), std::stod(val_toks[k + 1])});
    }
  }
  if (dim == 0 || bounds.size() != dim)
    throw std::runtime_error("space config: missing dim/bounds");
  return MetricSpace::grid(dim, bounds, h);
}

SpacePtr load_space_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distance csv: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("distance csv: empty");
  std::vector<std::string> ids;
  {
    std::istringstream iss(line);
    std::string cell;
    while (std::getline(iss, cell, ',')) ids.push_back(cell);
  }
  std::vector<std::vector<double>> dist;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(iss, cell, ',')) row.push_back(std::stod(cell));
    dist.push_back(std::move(row));
  }
  return MetricSpace::from_matrix(std::move(ids), std::move(dist));
}

}  // namespace ldlab
