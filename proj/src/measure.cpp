#include "ldlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ldlab/transport.hpp"

namespace ldlab {

namespace {
constexpr double kNormTol = 1e-12;

std::vector<double> logs_of(const std::vector<double>& w) {
  std::vector<double> lw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    lw[i] = (w[i] > 0.0) ? std::log(w[i]) : kNegInf;
  return lw;
}
}  // namespace

DiscreteMeasure DiscreteMeasure::from_weights(SpacePtr space, std::vector<double> w) {
  if (!space || w.size() != space->size())
    throw std::invalid_argument("measure: weight count mismatch");
  double sum = 0.0;
  for (double x : w) {
    require_not_nan(x, "measure weight");
    if (x < 0.0) throw std::invalid_argument("measure: negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw std::invalid_argument("measure: weights do not sum to 1");
  auto lw = logs_of(w);
  return DiscreteMeasure(std::move(space), std::move(w), std::move(lw));
}

DiscreteMeasure DiscreteMeasure::from_log_weights(SpacePtr space,
                                                  std::vector<double> logw) {
  if (!space || logw.size() != space->size())
    throw std::invalid_argument("measure: log-weight count mismatch");
  for (double x : logw) {
    require_not_nan(x, "measure log-weight");
    if (x == kInf) throw std::invalid_argument("measure: +inf log-weight");
  }
  const double z = log_sum_exp(logw);
  if (z == kNegInf) throw std::invalid_argument("measure: zero total mass");
  std::vector<double> w(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    logw[i] = (logw[i] == kNegInf) ? kNegInf : logw[i] - z;
    w[i] = std::exp(logw[i]);
  }
  return DiscreteMeasure(std::move(space), std::move(w), std::move(logw));
}

DiscreteMeasure DiscreteMeasure::dirac(SpacePtr space, std::size_t at) {
  if (!space || at >= space->size()) throw std::invalid_argument("dirac: bad point");
  std::vector<double> w(space->size(), 0.0);
  w[at] = 1.0;
  auto lw = logs_of(w);
  return DiscreteMeasure(std::move(space), std::move(w), std::move(lw));
}

DiscreteMeasure DiscreteMeasure::uniform(SpacePtr space) {
  if (!space || space->size() == 0) throw std::invalid_argument("uniform: empty space");
  std::vector<double> w(space->size(), 1.0 / static_cast<double>(space->size()));
  auto lw = logs_of(w);
  return DiscreteMeasure(std::move(space), std::move(w), std::move(lw));
}

double DiscreteMeasure::mass(const PointSet& a) const {
  const double lm = log_mass(a);
  return (lm == kNegInf) ? 0.0 : std::exp(lm);
}

double DiscreteMeasure::log_mass(const PointSet& a) const {
  if (a.space() != space_) throw std::invalid_argument("mass: space mismatch");
  std::vector<double> vals;
  vals.reserve(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (a.contains(i)) vals.push_back(logw_[i]);
  return log_sum_exp(vals);
}

PointSet DiscreteMeasure::support() const {
  std::vector<bool> mask(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) mask[i] = w_[i] > 0.0;
  return PointSet(space_, std::move(mask));
}

double DiscreteMeasure::integral(const std::vector<double>& f) const {
  if (f.size() != w_.size()) throw std::invalid_argument("integral: size mismatch");
  double pos = 0.0, neg = 0.0;
  bool has_pos_inf = false, has_neg_inf = false;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] == 0.0) continue;  // 0 * anything = 0 by convention
    require_not_nan(f[i], "integrand");
    if (f[i] == kInf) has_pos_inf = true;
    else if (f[i] == kNegInf) has_neg_inf = true;
    else if (f[i] >= 0.0) pos += w_[i] * f[i];
    else neg += w_[i] * f[i];
  }
  if (has_pos_inf && has_neg_inf)
    throw std::invalid_argument("integral: undefined (+inf and -inf both charged)");
  if (has_pos_inf) return kInf;
  if (has_neg_inf) return kNegInf;
  return pos + neg;
}

double DiscreteMeasure::log_integral_exp(const std::vector<double>& f, double a) const {
  if (f.size() != w_.size()) throw std::invalid_argument("log_integral_exp: size mismatch");
  if (!(a > 0.0)) throw std::invalid_argument("log_integral_exp: a must be positive");
  std::vector<double> terms;
  terms.reserve(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (logw_[i] == kNegInf) continue;
    require_not_nan(f[i], "exponent");
    if (f[i] == kNegInf) continue;
    terms.push_back(logw_[i] + a * f[i]);
  }
  return log_sum_exp(terms) / a;
}

DiscreteMeasure condition(const DiscreteMeasure& mu, const PointSet& a) {
  const double lm = mu.log_mass(a);
  if (lm == kNegInf) throw ZeroMassError("condition: conditioning on a null set");
  std::vector<double> logw(mu.size(), kNegInf);
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (a.contains(i) && mu.log_weight(i) != kNegInf)
      logw[i] = mu.log_weight(i) - lm;
  return DiscreteMeasure::from_log_weights(mu.space(), std::move(logw));
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::vector<std::size_t>& theta,
                            SpacePtr target) {
  if (theta.size() != mu.size())
    throw std::invalid_argument("pushforward: map size mismatch");
  std::vector<std::vector<double>> fiber_logs(target->size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.log_weight(i) == kNegInf) continue;
    if (theta[i] == MetricSpace::npos || theta[i] >= target->size())
      throw std::invalid_argument("pushforward: map undefined on support");
    fiber_logs[theta[i]].push_back(mu.log_weight(i));
  }
  std::vector<double> logw(target->size(), kNegInf);
  for (std::size_t y = 0; y < target->size(); ++y)
    logw[y] = log_sum_exp(fiber_logs[y]);
  return DiscreteMeasure::from_log_weights(std::move(target), std::move(logw));
}

SpacePtr product_space(const SpacePtr& a, const SpacePtr& b) {
  // Chebyshev combination keeps balls of the product equal to products of
  // balls, which the decoupled-rate identities rely on. Realized as a
  // distance matrix over the index pairs.
  const std::size_t na = a->size(), nb = b->size();
  if (na * nb > 4096)
    throw std::invalid_argument("product_space: too large to materialize");
  std::vector<std::string> ids(na * nb);
  std::vector<std::vector<double>> d(na * nb, std::vector<double>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      ids[i * nb + j] = a->id(i) + "*" + b->id(j);
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          d[i * nb + j][k * nb + l] = std::max(a->dist(i, k), b->dist(j, l));
    }
  return MetricSpace::from_matrix(std::move(ids), std::move(d));
}

DiscreteMeasure product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  auto space = product_space(mu.space(), nu.space());
  const std::size_t nb = nu.size();
  std::vector<double> logw(mu.size() * nb);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      logw[i * nb + j] = mu.log_weight(i) + nu.log_weight(j);
  return DiscreteMeasure::from_log_weights(std::move(space), std::move(logw));
}

DiscreteMeasure tensor_power(const DiscreteMeasure& mu, unsigned k, std::size_t cap) {
  if (k == 0) throw std::invalid_argument("tensor_power: k must be >= 1");
  double total = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    total *= static_cast<double>(mu.size());
    if (total > static_cast<double>(cap))
      throw std::invalid_argument("tensor_power: materialization cap exceeded");
  }
  DiscreteMeasure out = mu;
  for (unsigned i = 1; i < k; ++i) out = product(out, mu);
  return out;
}

double narrow_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.space() != nu.space())
    throw std::invalid_argument("narrow_distance: space mismatch");
  const auto& space = *mu.space();
  std::vector<double> excess(mu.size(), 0.0), deficit(mu.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = mu.weight(i) - nu.weight(i);
    if (d > 0) excess[i] = d;
    else deficit[i] = -d;
  }
  return transport_cost(excess, deficit, [&](std::size_t i, std::size_t j) {
    return std::min(space.dist(i, j), 2.0);
  });
}

double narrow_distance_to_dirac(const DiscreteMeasure& nu, std::size_t x) {
  const auto& space = *nu.space();
  double total = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu.weight(i) > 0.0) total += nu.weight(i) * std::min(space.dist(i, x), 2.0);
  return total;
}

void save_measure_csv(const DiscreteMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "point,weight,log_weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i)
    out << mu.space()->id(i) << "," << format_double(mu.weight(i)) << ","
        << format_double(mu.log_weight(i)) << "\n";
}

DiscreteMeasure load_measure_csv(SpacePtr space, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> w(space->size(), 0.0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::string id, weight;
    std::getline(iss, id, ',');
    std::getline(iss, weight, ',');
    bool found = false;
    for (std::size_t i = 0; i < space->size(); ++i)
      if (space->id(i) == id) { w[i] = std::stod(weight); found = true; break; }
    if (!found) throw std::runtime_error("measure csv: unknown point id " + id);
  }
  return DiscreteMeasure::from_weights(std::move(space), std::move(w));
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    j[mu.space()->id(i)] = {{"weight", mu.weight(i)},
                            {"log_weight", mu.log_weight(i) == kNegInf
                                               ? nlohmann::json(nullptr)
                                               : nlohmann::json(mu.log_weight(i))}};
  }
  return j.dump(2);
}

DiscreteMeasure measure_from_json(SpacePtr space, const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  std::vector<double> w(space->size(), 0.0);
  for (auto& [key, val] : j.items()) {
    bool found = false;
    for (std::size_t i = 0; i < space->size(); ++i)
      if (space->id(i) == key) {
        w[i] = val.contains("weight") ? val["weight"].get<double>() : val.get<double>();
        found = true;
        break;
      }
    if (!found) throw std::runtime_error("measure json: unknown point id " + key);
  }
  return DiscreteMeasure::from_weights(std::move(space), std::move(w));
}

}  // namespace ldlab
