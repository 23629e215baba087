#include "ldlab/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace ldlab {

double relative_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu) {
  if (nu.space() != mu.space())
    throw std::invalid_argument("relative_entropy: space mismatch");
  double h = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu.weight(i) == 0.0) continue;
    if (mu.weight(i) == 0.0) return kInf;
    h += nu.weight(i) * (nu.log_weight(i) - mu.log_weight(i));
  }
  return std::max(h, 0.0);
}

Partition::Partition(SpacePtr space, std::vector<PointSet> cells)
    : space_(std::move(space)), cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("partition: no cells");
  cell_of_.assign(space_->size(), static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].space() != space_)
      throw std::invalid_argument("partition: cell space mismatch");
    for (std::size_t i = 0; i < space_->size(); ++i) {
      if (!cells_[c].contains(i)) continue;
      if (cell_of_[i] != static_cast<std::size_t>(-1))
        throw std::invalid_argument("partition: overlapping cells");
      cell_of_[i] = c;
    }
  }
  for (std::size_t i = 0; i < space_->size(); ++i)
    if (cell_of_[i] == static_cast<std::size_t>(-1))
      throw std::invalid_argument("partition: cells do not cover the space");
}

Partition Partition::trivial(SpacePtr space) {
  std::vector<PointSet> cells;
  cells.push_back(PointSet::empty(space));      // remainder
  cells.push_back(PointSet::full(space));
  return Partition(std::move(space), std::move(cells));
}

Partition Partition::singletons(SpacePtr space) {
  std::vector<PointSet> cells;
  cells.push_back(PointSet::empty(space));
  for (std::size_t i = 0; i < space->size(); ++i) {
    const std::size_t ids[] = {i};
    cells.push_back(PointSet::of(space, ids));
  }
  return Partition(std::move(space), std::move(cells));
}

bool Partition::refines(const Partition& coarse) const {
  if (space_ != coarse.space_) return false;
  for (const auto& cell : cells_) {
    std::size_t target = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < space_->size(); ++i) {
      if (!cell.contains(i)) continue;
      const std::size_t c = coarse.cell_of(i);
      if (target == static_cast<std::size_t>(-1)) target = c;
      else if (target != c) return false;
    }
  }
  return true;
}

double partition_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                         const Partition& g) {
  if (nu.space() != mu.space() || nu.space() != g.space())
    throw std::invalid_argument("partition_entropy: space mismatch");
  double h = 0.0;
  for (const auto& cell : g.cells()) {
    if (cell.is_empty()) continue;
    const double nc = nu.mass(cell);
    if (nc == 0.0) continue;
    const double mc = mu.mass(cell);
    if (mc == 0.0) return kInf;
    h += nc * (nu.log_mass(cell) - mu.log_mass(cell));
  }
  return std::max(h, 0.0);
}

ConditionedEntropy conditioned_entropy(const DiscreteMeasure& nu,
                                       const DiscreteMeasure& mu,
                                       const PointSet& a) {
  if (nu.space() != mu.space())
    throw std::invalid_argument("conditioned_entropy: space mismatch");
  const double na = nu.mass(a);
  if (na <= 0.0) throw ZeroMassError("conditioned_entropy: nu(A) = 0");
  ConditionedEntropy out;
  out.value = relative_entropy(condition(nu, a), mu);

  double restricted = 0.0;  // sum over A of nu log(nu/mu)
  bool infinite = false;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!a.contains(i) || nu.weight(i) == 0.0) continue;
    if (mu.weight(i) == 0.0) { infinite = true; break; }
    restricted += nu.weight(i) * (nu.log_weight(i) - mu.log_weight(i));
  }
  out.decomposition = infinite ? kInf : -std::log(na) + restricted / na;

  const double h = relative_entropy(nu, mu);
  out.upper_bound =
      (h == kInf) ? kInf : -std::log(na) + h / na + 1.0 - mu.mass(a) / na;
  return out;
}

PushforwardEntropy pushforward_entropy(const DiscreteMeasure& lambda,
                                       const DiscreteMeasure& mu,
                                       const std::vector<std::size_t>& theta) {
  const DiscreteMeasure image = pushforward(mu, theta, lambda.space());
  PushforwardEntropy out;
  out.value = relative_entropy(lambda, image);
  if (out.value == kInf) return out;

  // nu_bar(x) = mu(x) lambda(theta x) / mu(theta^{-1}(theta x)): reallocate
  // each fiber proportionally to mu.
  std::vector<double> logw(mu.size(), kNegInf);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.log_weight(i) == kNegInf) continue;
    const std::size_t y = theta[i];
    if (lambda.log_weight(y) == kNegInf) continue;
    logw[i] = mu.log_weight(i) + lambda.log_weight(y) - image.log_weight(y);
  }
  out.minimizer = DiscreteMeasure::from_log_weights(mu.space(), std::move(logw));
  return out;
}

double entropy_mass_bound(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                          const PointSet& a) {
  const double h = relative_entropy(nu, mu);
  if (h == kInf)
    throw std::invalid_argument("entropy_mass_bound: infinite entropy");
  const double ma = mu.mass(a);
  if (ma <= 0.0) throw std::invalid_argument("entropy_mass_bound: mu(A) = 0");
  return (std::log(2.0) + h) / std::log1p(1.0 / ma);
}

namespace {

// Diameter of a candidate cell given as point indices.
double set_diameter(const MetricSpace& space, const std::vector<std::size_t>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, space.dist(pts[i], pts[j]));
  return d;
}

// Greedy cover of `pts` by closed balls of radius delta/2; every piece has
// diameter <= delta by the triangle inequality.
std::vector<std::vector<std::size_t>> split_by_diameter(
    const MetricSpace& space, const std::vector<std::size_t>& pts, double delta) {
  std::vector<std::vector<std::size_t>> pieces;
  std::vector<bool> taken(space.size(), false);
  for (std::size_t center : pts) {
    if (taken[center]) continue;
    std::vector<std::size_t> piece;
    for (std::size_t q : pts) {
      if (taken[q]) continue;
      if (space.dist(center, q) <= delta / 2.0) { piece.push_back(q); taken[q] = true; }
    }
    if (!piece.empty()) {
      if (set_diameter(space, piece) > delta)
        throw std::logic_error("refining_partitions: cell diameter overflow");
      pieces.push_back(std::move(piece));
    }
  }
  return pieces;
}

}  // namespace

PartitionSchedule::PartitionSchedule(std::vector<Stage> stages)
    : stages_(std::move(stages)) {
  for (std::size_t s = 1; s < stages_.size(); ++s)
    if (!stages_[s].partition.refines(stages_[s - 1].partition))
      throw std::invalid_argument("partition schedule: stage does not refine predecessor");
}

// Stages pair the two schedules along a diagonal (delta descending, core
// ascending), padding the shorter list with its last entry. At each stage
// the non-remainder cells are the diameter-<=delta pieces of the current
// core, split inside the previous stage's cells so refinement is structural;
// the remainder cell is exactly the complement of the core.
PartitionSchedule refining_partitions(const SpacePtr& space,
                                      const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu,
                                      const std::vector<double>& delta_schedule,
                                      const std::vector<PointSet>& core_schedule) {
  if (mu.space() != space || nu.space() != space)
    throw std::invalid_argument("refining_partitions: space mismatch");
  if (delta_schedule.empty() || core_schedule.empty())
    throw std::invalid_argument("refining_partitions: empty schedule");
  for (std::size_t i = 1; i < delta_schedule.size(); ++i)
    if (!(delta_schedule[i] < delta_schedule[i - 1]))
      throw std::invalid_argument("refining_partitions: deltas must decrease");
  for (std::size_t i = 1; i < core_schedule.size(); ++i)
    if (!core_schedule[i - 1].subset_of(core_schedule[i]))
      throw std::invalid_argument("refining_partitions: cores must increase");
  if (!mu.support().subset_of(core_schedule.back()))
    throw std::invalid_argument("refining_partitions: cores never cover supp mu");
  (void)nu;

  const std::size_t n_stages = std::max(delta_schedule.size(), core_schedule.size());
  std::vector<PartitionSchedule::Stage> stages;
  // Cells of the previous stage as index lists (remainder included).
  std::vector<std::vector<std::size_t>> prev_cells;
  prev_cells.push_back(PointSet::full(space).members());

  for (std::size_t s = 0; s < n_stages; ++s) {
    const double delta = delta_schedule[std::min(s, delta_schedule.size() - 1)];
    const std::size_t core_idx = std::min(s, core_schedule.size() - 1);
    const PointSet& core = core_schedule[core_idx];

    std::vector<std::vector<std::size_t>> covered;
    for (const auto& cell : prev_cells) {
      std::vector<std::size_t> in_core;
      for (std::size_t p : cell)
        if (core.contains(p)) in_core.push_back(p);
      for (auto& piece : split_by_diameter(*space, in_core, delta))
        covered.push_back(std::move(piece));
    }
    std::vector<PointSet> cells;
    cells.push_back(core.complement());  // remainder cell E^0
    for (auto& piece : covered) cells.push_back(PointSet::of(space, piece));

    prev_cells.clear();
    prev_cells.push_back(cells.front().members());
    for (std::size_t c = 1; c < cells.size(); ++c)
      prev_cells.push_back(cells[c].members());
    stages.push_back({delta, core_idx, Partition(space, std::move(cells))});
  }
  return PartitionSchedule(std::move(stages));
}

}  // namespace ldlab
