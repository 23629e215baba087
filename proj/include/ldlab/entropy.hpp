#pragma once

#include <optional>
#include <vector>

#include "ldlab/measure.hpp"

namespace ldlab {

// Relative entropy H(nu | mu) = sum nu(x) log(nu(x)/mu(x)), with 0 log 0 = 0
// and +inf exactly when nu charges a mu-null point. Requires a common space.
double relative_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu);

// A partition of a space into disjoint cells covering it. Cell 0 is the
// remainder cell and may be empty; cells 1.. are the constructed cells.
class Partition {
 public:
  Partition(SpacePtr space, std::vector<PointSet> cells);

  const SpacePtr& space() const { return space_; }
  const std::vector<PointSet>& cells() const { return cells_; }
  std::size_t cell_of(std::size_t point) const { return cell_of_[point]; }

  static Partition trivial(SpacePtr space);      // one cell = whole space
  static Partition singletons(SpacePtr space);   // empty remainder + singleton cells

  // True if every cell of this partition is contained in one cell of coarse.
  bool refines(const Partition& coarse) const;

 private:
  SpacePtr space_;
  std::vector<PointSet> cells_;
  std::vector<std::size_t> cell_of_;
};

// Entropy of nu relative to mu restricted to the sigma-algebra generated by
// the partition: sum over cells of nu(E) log(nu(E)/mu(E)), with the 0 and
// +inf conventions of the pointwise formula. Never exceeds relative_entropy.
double partition_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                         const Partition& g);

// H(nu conditioned on A | mu), together with the two identities it satisfies:
// the exact decomposition and the affine upper bound in H(nu|mu).
struct ConditionedEntropy {
  double value = 0.0;         // H(nu^A | mu)
  double decomposition = 0.0; // -log nu(A) + (1/nu(A)) sum_A nu log(nu/mu)
  double upper_bound = 0.0;   // -log nu(A) + H(nu|mu)/nu(A) + 1 - mu(A)/nu(A)
};
ConditionedEntropy conditioned_entropy(const DiscreteMeasure& nu,
                                       const DiscreteMeasure& mu,
                                       const PointSet& a);

// H(lambda | mu o theta^{-1}) together with the measure attaining
// inf{H(nu|mu) : nu o theta^{-1} = lambda} when the value is finite.
struct PushforwardEntropy {
  double value = 0.0;
  std::optional<DiscreteMeasure> minimizer;
};
PushforwardEntropy pushforward_entropy(const DiscreteMeasure& lambda,
                                       const DiscreteMeasure& mu,
                                       const std::vector<std::size_t>& theta);

// (log 2 + H(nu|mu)) / log(1 + 1/mu(A)), an upper bound for nu(A).
// Requires finite H(nu|mu) and mu(A) > 0.
double entropy_mass_bound(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                          const PointSet& a);

// Nested partitions indexed by (delta descending, level ascending); each
// entry refines its predecessor and its non-remainder cells have diameter at
// most the entry's delta while covering the entry's core set.
class PartitionSchedule {
 public:
  struct Stage {
    double delta;
    std::size_t core_index;  // index into the core-set schedule
    Partition partition;
  };

  explicit PartitionSchedule(std::vector<Stage> stages);
  const std::vector<Stage>& stages() const { return stages_; }

 private:
  std::vector<Stage> stages_;
};

// Builds a refining schedule: for each delta in decreasing order and each
// core set (increasing), cells of diameter <= delta covering the core,
// each stage refining the previous one. Entropy along the schedule is
// nondecreasing and reaches relative_entropy once delta is below the grid
// separation and the core covers the support.
PartitionSchedule refining_partitions(const SpacePtr& space,
                                      const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu,
                                      const std::vector<double>& delta_schedule,
                                      const std::vector<PointSet>& core_schedule);

}  // namespace ldlab
