#include "ldlab/gamma.hpp"

#include <algorithm>
#include <cmath>

namespace ldlab {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("gamma: probe/grid dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<int> column_starts(Window w) {
  // Eight evenly spaced sub-window starts from n0 to the tail half.
  std::vector<int> starts;
  const int span = w.tail_start() - w.n0;
  const int cols = 8;
  for (int c = 0; c < cols; ++c) {
    int s = w.n0 + static_cast<int>(std::llround(
                       static_cast<double>(span) * c / (cols - 1)));
    if (starts.empty() || s > starts.back()) starts.push_back(s);
  }
  return starts;
}

LimitEstimate run_estimate(const FunctionalSequence& seq,
                           const std::vector<double>& probe,
                           const std::vector<double>& deltas, Window window,
                           LimitVariant variant, const GammaOptions& opts) {
  if (deltas.empty()) throw std::invalid_argument("gamma: empty delta schedule");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("gamma: delta schedule must strictly decrease");
  if (window.n0 < seq.n_min() || window.n1 > seq.n_max() || window.n0 > window.n1)
    throw std::invalid_argument("gamma: window outside declared range");

  const std::size_t n_count = static_cast<std::size_t>(window.length());
  const std::size_t n_deltas = deltas.size();
  // cell[d * n_count + k] = localized infimum at (deltas[d], n0 + k).
  std::vector<double> cell(n_deltas * n_count, kInf);
  std::vector<char> cell_empty(n_deltas * n_count, 0);
  std::vector<std::vector<double>> witness(opts.keep_witnesses ? n_count : 0);
  std::vector<double> max_resolution(n_count, 0.0);

  parallel_for(0, n_count, opts.threads, [&](std::size_t k) {
    const int n = window.n0 + static_cast<int>(k);
    const FunctionalSlice slice = seq.at(n);
    if (slice.points.size() != slice.values.size())
      throw std::invalid_argument("gamma: slice size mismatch");
    if (slice.points.empty()) throw std::invalid_argument("gamma: empty grid slice");
    max_resolution[k] = slice.resolution;
    std::vector<double> dist(slice.points.size());
    for (std::size_t i = 0; i < slice.points.size(); ++i)
      dist[i] = seq.dist(probe, slice.points[i]);
    std::size_t best_idx = static_cast<std::size_t>(-1);
    for (std::size_t d = 0; d < n_deltas; ++d) {
      double best = kInf;
      std::size_t arg = static_cast<std::size_t>(-1);
      for (std::size_t i = 0; i < slice.points.size(); ++i) {
        if (dist[i] >= deltas[d]) continue;
        const double v = require_not_nan(slice.values[i], "functional value");
        if (v < best || arg == static_cast<std::size_t>(-1)) {
          best = v;
          arg = i;
        }
      }
      cell[d * n_count + k] = best;
      cell_empty[d * n_count + k] = (arg == static_cast<std::size_t>(-1)) ? 1 : 0;
      if (d + 1 == n_deltas) best_idx = arg;
    }
    if (opts.keep_witnesses && best_idx != static_cast<std::size_t>(-1))
      witness[k] = slice.points[best_idx];
  });

  const double max_res =
      *std::max_element(max_resolution.begin(), max_resolution.end());
  if (max_res > 0.0 && deltas.back() < 2.0 * max_res)
    throw std::invalid_argument(
        "gamma: min delta below 2x grid resolution in the window");

  LimitEstimate est;
  est.variant = variant;
  est.deltas = deltas;
  est.window = window;
  est.col_starts = column_starts(window);
  est.trace.assign(n_deltas, std::vector<double>(est.col_starts.size(), kInf));
  const bool use_min = (variant == LimitVariant::kLiminfWindow);
  for (std::size_t d = 0; d < n_deltas; ++d) {
    for (std::size_t c = 0; c < est.col_starts.size(); ++c) {
      double agg = use_min ? kInf : kNegInf;
      for (int n = est.col_starts[c]; n <= window.n1; ++n) {
        const double v = cell[d * n_count + static_cast<std::size_t>(n - window.n0)];
        agg = use_min ? std::min(agg, v) : std::max(agg, v);
      }
      est.trace[d][c] = agg;
    }
  }
  est.tail_values.resize(n_count);
  for (std::size_t k = 0; k < n_count; ++k)
    est.tail_values[k] = cell[(n_deltas - 1) * n_count + k];
  for (std::size_t k = 0; k < n_count * n_deltas; ++k)
    if (cell_empty[k]) { est.empty_ball_seen = true; break; }
  if (opts.keep_witnesses) est.witnesses = std::move(witness);

  // Tail aggregate at the smallest delta, then a linear-in-delta
  // extrapolation step from the previous row. Localized infima grow as the
  // ball shrinks, so the step is nonnegative; infinite rows are reported
  // as-is.
  const std::size_t tail_col = est.col_starts.size() - 1;
  const double at_min = est.trace[n_deltas - 1][tail_col];
  double value = at_min;
  if (n_deltas >= 2 && std::isfinite(at_min)) {
    const double at_prev = est.trace[n_deltas - 2][tail_col];
    if (std::isfinite(at_prev)) {
      const double d_min = deltas[n_deltas - 1];
      const double d_prev = deltas[n_deltas - 2];
      const double slope = (at_min - at_prev) / (d_prev - d_min);
      value = at_min + std::max(0.0, slope) * d_min;
    }
  }
  est.value = value;
  return est;
}

}  // namespace

FunctionalSequence::FunctionalSequence(int n_min, int n_max,
                                       std::function<FunctionalSlice(int)> eval,
                                       Metric metric)
    : n_min_(n_min), n_max_(n_max), eval_(std::move(eval)),
      metric_(std::move(metric)) {
  if (n_min_ > n_max_) throw std::invalid_argument("FunctionalSequence: bad range");
  if (!eval_) throw std::invalid_argument("FunctionalSequence: null evaluator");
}

FunctionalSlice FunctionalSequence::at(int n) const {
  if (n < n_min_ || n > n_max_)
    throw std::out_of_range("FunctionalSequence: index outside declared range");
  return eval_(n);
}

double FunctionalSequence::dist(const std::vector<double>& a,
                                const std::vector<double>& b) const {
  return metric_ ? metric_(a, b) : euclid(a, b);
}

LimitEstimate gamma_liminf(const FunctionalSequence& seq,
                           const std::vector<double>& probe,
                           const std::vector<double>& delta_schedule,
                           Window window, const GammaOptions& opts) {
  return run_estimate(seq, probe, delta_schedule, window,
                      LimitVariant::kLiminfWindow, opts);
}

LimitEstimate gamma_limsup(const FunctionalSequence& seq,
                           const std::vector<double>& probe,
                           const std::vector<double>& delta_schedule,
                           Window window, const GammaOptions& opts) {
  return run_estimate(seq, probe, delta_schedule, window,
                      LimitVariant::kLimsupWindow, opts);
}

EquicoercivityReport equicoercivity_profile(const FunctionalSequence& seq,
                                            const std::vector<double>& levels,
                                            const std::vector<Truncation>& truncations,
                                            Window window) {
  if (truncations.empty())
    throw std::invalid_argument("equicoercivity: no truncations");
  EquicoercivityReport report;
  report.levels = levels;
  report.smallest_truncation.assign(levels.size(), EquicoercivityReport::npos);

  // smallest_needed[l] = least truncation index containing all points of
  // union_n { I_n <= level_l } over the window.
  std::vector<std::size_t> needed(levels.size(), 0);
  std::vector<bool> unbounded(levels.size(), false);
  for (int n = window.n0; n <= window.n1; ++n) {
    const FunctionalSlice slice = seq.at(n);
    for (std::size_t i = 0; i < slice.points.size(); ++i) {
      const double v = slice.values[i];
      for (std::size_t l = 0; l < levels.size(); ++l) {
        if (v > levels[l] || unbounded[l]) continue;
        std::size_t t = needed[l];
        while (t < truncations.size() && !truncations[t].contains(slice.points[i]))
          ++t;
        if (t == truncations.size()) unbounded[l] = true;
        else needed[l] = t;
      }
    }
  }
  report.equicoercive = true;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (unbounded[l]) {
      report.smallest_truncation[l] = EquicoercivityReport::npos;
      report.equicoercive = false;
    } else {
      report.smallest_truncation[l] = needed[l];
    }
  }
  return report;
}

std::vector<double> lsc_envelope(const std::vector<double>& values,
                                 const SpacePtr& space,
                                 const std::vector<double>& delta_schedule) {
  if (values.size() != space->size())
    throw std::invalid_argument("lsc_envelope: size mismatch");
  if (delta_schedule.empty())
    throw std::invalid_argument("lsc_envelope: empty schedule");
  for (std::size_t i = 1; i < delta_schedule.size(); ++i)
    if (!(delta_schedule[i] < delta_schedule[i - 1]))
      throw std::invalid_argument("lsc_envelope: schedule must decrease");
  if (space->resolution() > 0.0 && delta_schedule.back() < space->resolution())
    throw std::invalid_argument("lsc_envelope: min delta below grid resolution");
  const double delta = delta_schedule.back();
  std::vector<double> out(values.size(), kInf);
  for (std::size_t x = 0; x < space->size(); ++x) {
    double best = kInf;
    for (std::size_t y = 0; y < space->size(); ++y)
      if (space->dist(x, y) < delta)
        best = std::min(best, require_not_nan(values[y], "lsc_envelope value"));
    out[x] = best;
  }
  return out;
}

FunctionalSequence constant_sequence(const SpacePtr& space,
                                     std::vector<double> values, int n_min,
                                     int n_max) {
  if (values.size() != space->size())
    throw std::invalid_argument("constant_sequence: size mismatch");
  FunctionalSlice slice;
  slice.resolution = space->resolution();
  for (std::size_t i = 0; i < space->size(); ++i) {
    auto c = space->coords(i);
    slice.points.emplace_back(c.begin(), c.end());
  }
  slice.values = std::move(values);
  return FunctionalSequence(n_min, n_max,
                            [slice](int) { return slice; });
}

}  // namespace ldlab
