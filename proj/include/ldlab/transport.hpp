#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ldlab {

// Exact optimal transport cost between two equal-mass nonnegative vectors
// under an arbitrary cost table, via successive shortest augmenting paths
// with node potentials. Cost entries must be finite and nonnegative.
double transport_cost(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const std::function<double(std::size_t, std::size_t)>& cost);

}  // namespace ldlab
