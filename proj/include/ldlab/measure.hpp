#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldlab/metric_space.hpp"

namespace ldlab {

// A probability measure on the points of a MetricSpace. Weights are kept in
// both linear and log domain; log-weight is exactly -inf where the weight is
// zero. Immutable after construction.
class DiscreteMeasure {
 public:
  static DiscreteMeasure from_weights(SpacePtr space, std::vector<double> w);
  // Normalizes in log domain; inputs may be arbitrary finite or -inf values.
  static DiscreteMeasure from_log_weights(SpacePtr space, std::vector<double> logw);
  static DiscreteMeasure dirac(SpacePtr space, std::size_t at);
  static DiscreteMeasure uniform(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return w_.size(); }
  double weight(std::size_t i) const { return w_[i]; }
  double log_weight(std::size_t i) const { return logw_[i]; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& log_weights() const { return logw_; }

  double mass(const PointSet& a) const;
  double log_mass(const PointSet& a) const;
  PointSet support() const;

  // Expectation of f (extended reals; +inf * 0 = 0 convention not applied:
  // f must be finite wherever the measure charges, else the integral is
  // +inf/-inf accordingly).
  double integral(const std::vector<double>& f) const;
  // (1/a) log E[exp(a f)] computed fully in log domain.
  double log_integral_exp(const std::vector<double>& f, double a) const;

 private:
  DiscreteMeasure(SpacePtr space, std::vector<double> w, std::vector<double> logw)
      : space_(std::move(space)), w_(std::move(w)), logw_(std::move(logw)) {}

  SpacePtr space_;
  std::vector<double> w_, logw_;
};

// mu conditioned on A. Throws ZeroMassError if mu(A) = 0; the Dirac fallback
// used by recovery-sequence constructions is the caller's explicit choice.
struct ZeroMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
DiscreteMeasure condition(const DiscreteMeasure& mu, const PointSet& a);

// Image of mu under the point map theta (theta[i] = target index, npos where
// undefined). Throws if theta is undefined on a support point.
DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::vector<std::size_t>& theta,
                            SpacePtr target);

// Product measure on the product space (metric: max of factor distances).
// The factor spaces' coordinates are concatenated.
SpacePtr product_space(const SpacePtr& a, const SpacePtr& b);
DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// k-fold power of mu, materialized. Throws if size()^k exceeds the cap.
DiscreteMeasure tensor_power(const DiscreteMeasure& mu, unsigned k,
                             std::size_t cap = 10'000'000);

// Bounded-Lipschitz distance sup{ mu(f) - nu(f) : |f| <= 1, Lip(f) <= 1 },
// computed as an optimal-transport problem with cost min(dist, 2). Metrizes
// narrow convergence on a finite space.
double narrow_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Closed form for the distance to a Dirac: sum_z nu(z) min(dist(z, x), 2).
double narrow_distance_to_dirac(const DiscreteMeasure& nu, std::size_t x);

// CSV (point id, weight) and JSON-map serialization.
void save_measure_csv(const DiscreteMeasure& mu, const std::string& path);
DiscreteMeasure load_measure_csv(SpacePtr space, const std::string& path);
std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(SpacePtr space, const std::string& json_text);

}  // namespace ldlab
