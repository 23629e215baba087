#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldlab {

// Extended-real conventions used throughout: +inf and -inf are ordinary
// values, NaN is always a bug and is rejected at construction boundaries.
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_nan(double x);

// Throws std::invalid_argument with `what` if x is NaN.
double require_not_nan(double x, const char* what);

// log(sum_i exp(v[i])) with -inf entries contributing zero mass.
// Addends are accumulated in descending order, so the result depends only on
// the multiset of inputs, not on their order. Returns -inf for an empty span.
double log_sum_exp(std::span<const double> v);

// Runs fn(i) for i in [begin, end). With threads <= 1 runs inline. Results
// must be written to disjoint per-index slots; the partitioning is by index
// blocks so output never depends on scheduling.
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

// Counter-derived deterministic RNG (splitmix64 core). Stream s of master
// seed m is independent of stream s' for s != s'.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform01();                   // in [0, 1)
  std::size_t below(std::size_t n);     // uniform in [0, n)
  double uniform(double a, double b);

 private:
  std::uint64_t state_;
};

std::string format_double(double x);    // fixed %.17g rendering for reports

}  // namespace ldlab
