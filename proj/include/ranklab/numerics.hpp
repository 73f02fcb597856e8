// Small numeric kernels: compensated summation, bracketed root finding,
// least-squares lines. Everything here is deterministic.

#ifndef RANKLAB_NUMERICS_HPP
#define RANKLAB_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace ranklab {

// Kahan-Neumaier compensated accumulator for sums of exponentials.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;  // rms residual of the fit
  int points = 0;
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Bisection for a monotone-crossing predicate: returns s with |s - root| <= tol,
// assuming pred(lo) != pred(hi). pred(s) is true on the lo side.
double bisect(std::function<bool(double)> pred_lo_side, double lo, double hi, double tol,
              int max_iter = 200);

// Brent-style scalar root of f on [lo, hi] with f(lo), f(hi) of opposite sign.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                  int max_iter = 200);

// Deterministic splitmix64, used for seeding experiment RNG streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over bytes, for cache keys of backend descriptions.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ULL);

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace ranklab

#endif
