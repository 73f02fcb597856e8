// Finite-horizon growth-rate fits for limsup quantities of the form
//   limsup (1/T) log S_T,   S_T a sum of exponential weights over a window.
//
// Window sums of this kind behave like  S_T ~ K e^{P T} / T  whenever the
// underlying rate P is positive, so the reported slope is the least-squares
// slope of  log S_T + log T  over the trailing windows.  The uncorrected
// slope and the max-window lower bound are kept alongside; none of the
// diagnostics are hidden.

#ifndef RANKLAB_GROWTH_HPP
#define RANKLAB_GROWTH_HPP

#include <vector>

#include "ranklab/errors.hpp"
#include "ranklab/numerics.hpp"

namespace ranklab {

struct GrowthWindow {
  double t_upper = 0.0;   // window is [t_upper-1, t_upper)
  double log_sum = 0.0;   // log of the window sum, -inf when empty
  double count = 0.0;     // number of terms in the window
};

struct GrowthRateFit {
  std::vector<GrowthWindow> windows;
  double slope = 0.0;           // least-squares slope of log S_T + log T, last k windows
  double slope_raw = 0.0;       // least-squares slope of log S_T alone
  double intercept = 0.0;
  double residual = 0.0;        // rms residual of the corrected fit
  double max_window_rate = kNegInf;  // max over used windows of log S_T / T
  int fit_windows = 0;          // k actually used
  bool horizon_certified = true;
  bool empty = false;           // no nonempty window at all; slope fields meaningless
};

struct GrowthFitOptions {
  int trailing_windows = 5;   // k
  int min_windows = 3;
  bool certified = true;
  // Window sums over primitive orbit classes behave like e^{PT}/T and want
  // the +log T correction; based path/group-element sums grow like a clean
  // e^{PT} and want the raw slope.
  bool poly_correction = true;
};

// Fits the trailing windows of (T, log S_T). Windows with empty sums are
// skipped. Throws TooFewWindows if fewer than min_windows are usable.
GrowthRateFit fit_growth(const std::vector<GrowthWindow>& windows, const GrowthFitOptions& opt = {});

// Same, but returns an empty-marked fit instead of throwing (used where an
// empty filter is a legitimate outcome and reported as a -inf sentinel).
GrowthRateFit fit_growth_or_empty(const std::vector<GrowthWindow>& windows,
                                  const GrowthFitOptions& opt = {});

// Accumulates windowed sums Sum exp(weight) for window index T = ceil(len)
// (i.e. len in [T-1,T)), T from 1 to t_max. Compensated summation; sums are
// kept in exp-space with a running max shift to avoid overflow.
class WindowAccumulator {
 public:
  explicit WindowAccumulator(double t_max);
  // adds exp(log_weight) to the window containing len; ignores len >= t_max
  void add(double len, double log_weight);
  std::vector<GrowthWindow> windows() const;
  double t_max() const { return t_max_; }

 private:
  struct Cell {
    double shift = kNegInf;  // current exponent shift
    CompensatedSum sum;      // sum of exp(w - shift)
    double count = 0.0;
  };
  double t_max_;
  std::vector<Cell> cells_;
};

}  // namespace ranklab

#endif
