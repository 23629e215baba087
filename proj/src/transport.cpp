#include "ldlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldlab {

// Successive shortest augmenting paths with node potentials on the dense
// bipartite transport graph. Potentials keep reduced costs nonnegative so
// plain Dijkstra applies; with real-valued masses each augmentation
// saturates a source or a sink, so rounds <= #sources + #sinks.
double transport_cost(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const std::function<double(std::size_t, std::size_t)>& cost) {
  constexpr double kBig = std::numeric_limits<double>::infinity();
  constexpr double kMassEps = 1e-15;
  std::vector<std::size_t> src, dst;
  std::vector<double> s_rem, d_rem;
  double total_supply = 0.0, total_demand = 0.0;
  for (std::size_t i = 0; i < supply.size(); ++i) {
    if (supply[i] < 0) throw std::invalid_argument("transport: negative supply");
    total_supply += supply[i];
    if (supply[i] > kMassEps) { src.push_back(i); s_rem.push_back(supply[i]); }
  }
  for (std::size_t j = 0; j < demand.size(); ++j) {
    if (demand[j] < 0) throw std::invalid_argument("transport: negative demand");
    total_demand += demand[j];
    if (demand[j] > kMassEps) { dst.push_back(j); d_rem.push_back(demand[j]); }
  }
  if (std::abs(total_supply - total_demand) > 1e-9)
    throw std::invalid_argument("transport: unbalanced masses");
  if (src.empty() || dst.empty()) return 0.0;

  const std::size_t ns = src.size(), nd = dst.size();
  std::vector<std::vector<double>> c(ns, std::vector<double>(nd));
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = 0; b < nd; ++b) {
      const double v = cost(src[a], dst[b]);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("transport: bad cost entry");
      c[a][b] = v;
    }

  std::vector<std::vector<double>> flow(ns, std::vector<double>(nd, 0.0));
  // Node order: sources [0, ns), sinks [ns, ns + nd).
  const std::size_t n_nodes = ns + nd;
  std::vector<double> pot(n_nodes, 0.0);
  for (std::size_t b = 0; b < nd; ++b) {
    double best = kBig;
    for (std::size_t a = 0; a < ns; ++a) best = std::min(best, c[a][b]);
    pot[ns + b] = best;
  }

  std::vector<double> dist(n_nodes);
  std::vector<std::size_t> prev(n_nodes);
  std::vector<bool> done(n_nodes);
  while (true) {
    bool supply_left = false;
    for (std::size_t a = 0; a < ns; ++a)
      if (s_rem[a] > kMassEps) { supply_left = true; break; }
    if (!supply_left) break;

    std::fill(dist.begin(), dist.end(), kBig);
    std::fill(prev.begin(), prev.end(), n_nodes);
    std::fill(done.begin(), done.end(), false);
    for (std::size_t a = 0; a < ns; ++a)
      if (s_rem[a] > kMassEps) dist[a] = 0.0;

    while (true) {
      std::size_t u = n_nodes;
      double best = kBig;
      for (std::size_t v = 0; v < n_nodes; ++v)
        if (!done[v] && dist[v] < best) { best = dist[v]; u = v; }
      if (u == n_nodes) break;
      done[u] = true;
      if (u < ns) {
        for (std::size_t b = 0; b < nd; ++b) {
          if (done[ns + b]) continue;
          // clamp tiny negative reduced costs from rounding
          const double red = std::max(0.0, c[u][b] + pot[u] - pot[ns + b]);
          if (dist[u] + red < dist[ns + b]) {
            dist[ns + b] = dist[u] + red;
            prev[ns + b] = u;
          }
        }
      } else {
        const std::size_t b = u - ns;
        for (std::size_t a = 0; a < ns; ++a) {
          if (done[a] || flow[a][b] <= kMassEps) continue;
          const double red = std::max(0.0, -c[a][b] + pot[u] - pot[a]);
          if (dist[u] + red < dist[a]) {
            dist[a] = dist[u] + red;
            prev[a] = u;
          }
        }
      }
    }

    std::size_t target = n_nodes;
    double best = kBig;
    for (std::size_t b = 0; b < nd; ++b)
      if (d_rem[b] > kMassEps && dist[ns + b] < best) {
        best = dist[ns + b];
        target = ns + b;
      }
    if (target == n_nodes)
      throw std::runtime_error("transport: no augmenting path");

    // Path root and bottleneck.
    double push = d_rem[target - ns];
    std::size_t v = target;
    while (prev[v] != n_nodes) {
      const std::size_t p = prev[v];
      if (v < ns) push = std::min(push, flow[v][p - ns]);
      v = p;
    }
    push = std::min(push, s_rem[v]);
    if (!(push > 0.0)) throw std::runtime_error("transport: zero augmentation");

    std::size_t w = target;
    while (prev[w] != n_nodes) {
      const std::size_t p = prev[w];
      if (w >= ns) flow[p][w - ns] += push;
      else flow[w][p - ns] -= push;
      w = p;
    }
    s_rem[w] -= push;
    d_rem[target - ns] -= push;

    const double d_t = dist[target];
    for (std::size_t node = 0; node < n_nodes; ++node)
      if (dist[node] < kBig) pot[node] += std::min(dist[node], d_t);
  }

  double total_cost = 0.0;
  for (std::size_t a = 0; a < ns; ++a)
    for (std::size_t b = 0; b < nd; ++b) total_cost += flow[a][b] * c[a][b];
  return total_cost;
}

}  // namespace ldlab
