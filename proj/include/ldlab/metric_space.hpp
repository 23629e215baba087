#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ldlab/common.hpp"

namespace ldlab {

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

// Declarative topology tag for subsets of a grid. In a finite space every
// subset is both open and closed in the discrete topology; the tag records
// which role the set plays relative to the ambient continuum the grid
// approximates.
enum class TopologyTag { kUnspecified, kOpen, kClosed };

// A subset of a MetricSpace's points, stored as a membership mask.
class PointSet {
 public:
  PointSet() = default;
  PointSet(SpacePtr space, std::vector<bool> mask,
           TopologyTag tag = TopologyTag::kUnspecified);

  static PointSet full(SpacePtr space, TopologyTag tag = TopologyTag::kUnspecified);
  static PointSet empty(SpacePtr space);
  static PointSet of(SpacePtr space, std::span<const std::size_t> ids,
                     TopologyTag tag = TopologyTag::kUnspecified);

  const SpacePtr& space() const { return space_; }
  bool contains(std::size_t i) const { return mask_[i]; }
  std::size_t size() const;              // number of member points
  bool is_empty() const { return size() == 0; }
  std::vector<std::size_t> members() const;
  const std::vector<bool>& mask() const { return mask_; }
  TopologyTag tag() const { return tag_; }
  PointSet with_tag(TopologyTag tag) const;

  bool subset_of(const PointSet& other) const;
  PointSet complement(TopologyTag tag = TopologyTag::kUnspecified) const;
  PointSet unite(const PointSet& other) const;
  PointSet intersect(const PointSet& other) const;

  bool operator==(const PointSet& other) const { return mask_ == other.mask_; }

 private:
  SpacePtr space_;
  std::vector<bool> mask_;
  TopologyTag tag_ = TopologyTag::kUnspecified;
};

// A finite metric space. Three storage modes:
//   - grid: lattice points of a box with Euclidean metric and spacing h > 0,
//   - matrix: explicit symmetric distance matrix (resolution 0),
//   - subsets: the space of nonempty subsets of a base space under the
//     Hausdorff metric (resolution 0, distances computed on demand).
// Instances are immutable after construction and safe to share across threads.
class MetricSpace : public std::enable_shared_from_this<MetricSpace> {
 public:
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
  };

  static SpacePtr grid(std::size_t dim, std::span<const Interval> bounds, double h);
  static SpacePtr from_matrix(std::vector<std::string> ids,
                              std::vector<std::vector<double>> dist);
  // Convenience: points embedded in R^d with the Euclidean metric, h = 0.
  static SpacePtr from_points(std::vector<std::vector<double>> coords);
  // Space of all nonempty subsets of `base` under the Hausdorff metric.
  // Requires base->size() <= max_points <= 16.
  static SpacePtr subsets(SpacePtr base, std::size_t max_points = 16);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  double resolution() const { return resolution_; }
  // Smallest positive pairwise distance (cached at construction for grid and
  // matrix spaces; for subset spaces equals the base separation).
  double separation() const { return separation_; }

  double dist(std::size_t i, std::size_t j) const;
  std::span<const double> coords(std::size_t i) const;
  const std::string& id(std::size_t i) const { return ids_[i]; }
  // Index of the point with the given coordinates, or npos.
  std::size_t find(std::span<const double> coords, double tol = 1e-9) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // For subset spaces: the base-space mask of subset point `i`.
  std::uint32_t subset_mask(std::size_t i) const;
  const SpacePtr& subset_base() const { return base_; }
  bool is_subset_space() const { return !!base_; }

  double diameter() const;

 private:
  MetricSpace() = default;

  enum class Mode { kCoords, kMatrix, kSubsets } mode_ = Mode::kCoords;
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  double resolution_ = 0.0;
  double separation_ = 0.0;
  std::vector<double> coords_;                 // size_*dim_ when coordinate-backed
  std::vector<std::vector<double>> matrix_;
  std::vector<std::string> ids_;
  SpacePtr base_;                              // subset spaces only
  std::vector<std::uint32_t> masks_;           // subset spaces only

  void finish_ids();
  void compute_separation();
};

// {y : dist(x, y) < delta}. Always contains x. Throws if delta <= 0.
PointSet ball(const SpacePtr& space, std::size_t x, double delta);

// Union of open eps-balls centered at members of A. Throws on empty A or
// eps <= 0. Monotone in eps and in A.
PointSet enlargement(const PointSet& a, double eps);

// Hausdorff distance between two nonempty subsets: the larger of the two
// directed max-min distances.
double hausdorff_distance(const PointSet& k1, const PointSet& k2);

// One-ball-layer interior and closure at scale r:
//   interior: members whose open r-ball stays inside the set,
//   closure: points whose open r-ball meets the set.
PointSet interior_at(const PointSet& a, double r);
PointSet closure_at(const PointSet& a, double r);

// Loaders for the two on-disk space descriptions: a key-value config
// (keys: dim, bounds, h) and a CSV distance matrix with a header row of ids.
SpacePtr load_space_kv(const std::string& path);
SpacePtr load_space_csv(const std::string& path);

}  // namespace ldlab
