#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldlab/measure.hpp"

namespace ldlab {

// One slice of a functional sequence: the n-th grid as coordinate vectors in
// a common ambient space, the functional's values there (extended reals),
// and the grid's resolution (0 for explicit point clouds).
struct FunctionalSlice {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  double resolution = 0.0;
};

// n -> (grid, functional) family over a declared index range. The evaluator
// must be callable concurrently. An optional metric overrides the Euclidean
// distance between a probe and a grid point (used for measure- and
// set-valued ambients).
class FunctionalSequence {
 public:
  using Metric =
      std::function<double(const std::vector<double>&, const std::vector<double>&)>;

  FunctionalSequence(int n_min, int n_max,
                     std::function<FunctionalSlice(int)> eval,
                     Metric metric = nullptr);

  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  FunctionalSlice at(int n) const;
  double dist(const std::vector<double>& a, const std::vector<double>& b) const;

 private:
  int n_min_, n_max_;
  std::function<FunctionalSlice(int)> eval_;
  Metric metric_;
};

enum class LimitVariant { kLiminfWindow, kLimsupWindow };

struct Window {
  int n0 = 0;
  int n1 = 0;
  int length() const { return n1 - n0 + 1; }
  // First index of the tail half over which liminf/limsup are rendered.
  int tail_start() const { return n0 + (n1 - n0) / 2; }
};

// The uniform return shape of asymptotic estimators: a value, its schedule,
// and the full trace of localized window aggregates for convergence
// inspection. trace[d][c] aggregates rows by delta (descending) and columns
// by sub-window start; the value is the delta->0 extrapolated corner.
struct LimitEstimate {
  double value = kInf;
  LimitVariant variant = LimitVariant::kLiminfWindow;
  std::vector<double> deltas;
  Window window;
  std::vector<int> col_starts;
  std::vector<std::vector<double>> trace;
  // Per-n localized values at the smallest delta (row-major by n - n0).
  std::vector<double> tail_values;
  // Witnessing grid points attaining the localized infimum at the smallest
  // delta, kept only when requested.
  std::vector<std::vector<double>> witnesses;
  bool empty_ball_seen = false;
};

struct GammaOptions {
  bool keep_witnesses = false;
  unsigned threads = 1;
};

// Localized-infimum estimate of the variational lower limit at probe x:
// F(delta, n) = inf { I_n(y) : y in B_delta(x) /\ G_n }, aggregated over the
// window tail (min for the liminf variant, max for limsup) and extrapolated
// linearly over the last two deltas. Requires a strictly decreasing delta
// schedule with min delta >= 2 * max grid resolution in the window (when the
// grids declare a positive resolution).
LimitEstimate gamma_liminf(const FunctionalSequence& seq,
                           const std::vector<double>& probe,
                           const std::vector<double>& delta_schedule,
                           Window window, const GammaOptions& opts = {});
LimitEstimate gamma_limsup(const FunctionalSequence& seq,
                           const std::vector<double>& probe,
                           const std::vector<double>& delta_schedule,
                           Window window, const GammaOptions& opts = {});

// A truncation of the ambient space given as a predicate on coordinates.
struct Truncation {
  std::string label;
  std::function<bool(const std::vector<double>&)> contains;
};

// For each level, the smallest truncation containing every sublevel point of
// every slice in the window; npos when the sublevel sets escape all of them.
struct EquicoercivityReport {
  std::vector<double> levels;
  std::vector<std::size_t> smallest_truncation;  // per level; npos = unbounded
  bool equicoercive = false;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};
EquicoercivityReport equicoercivity_profile(const FunctionalSequence& seq,
                                            const std::vector<double>& levels,
                                            const std::vector<Truncation>& truncations,
                                            Window window);

// Lower-semicontinuous envelope at grid scale: x -> inf over the ball of the
// smallest schedule delta. Identity on a fixed grid once delta is below the
// point separation.
std::vector<double> lsc_envelope(const std::vector<double>& values,
                                 const SpacePtr& space,
                                 const std::vector<double>& delta_schedule);

// Adapters.
FunctionalSequence constant_sequence(const SpacePtr& space,
                                     std::vector<double> values, int n_min,
                                     int n_max);

}  // namespace ldlab
