#include "ldlab/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace ldlab {

bool is_nan(double x) { return std::isnan(x); }

double require_not_nan(double x, const char* what) {
  if (std::isnan(x)) throw std::invalid_argument(std::string("NaN in ") + what);
  return x;
}

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return kNegInf;
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const double m = sorted.front();
  if (m == kNegInf) return kNegInf;
  if (m == kInf) return kInf;
  double acc = 0.0;
  for (double x : sorted) {
    if (x == kNegInf) continue;
    acc += std::exp(x - m);
  }
  return m + std::log(acc);
}

void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  if (threads <= 1 || count == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const unsigned used = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(used);
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (unsigned t = 0; t < used; ++t) {
    pool.emplace_back([&, t]() {
      const std::size_t lo = begin + count * t / used;
      const std::size_t hi = begin + count * (t + 1) / used;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {
std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  state_ = splitmix64(s);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace ldlab
