#include "ranklab/growth.hpp"

#include <algorithm>
#include <cmath>

namespace ranklab {

GrowthRateFit fit_growth_or_empty(const std::vector<GrowthWindow>& windows,
                                  const GrowthFitOptions& opt) {
  GrowthRateFit out;
  out.windows = windows;
  out.horizon_certified = opt.certified;
  std::vector<const GrowthWindow*> usable;
  for (const auto& w : windows)
    if (std::isfinite(w.log_sum)) usable.push_back(&w);
  if (static_cast<int>(usable.size()) < opt.min_windows) {
    out.empty = true;
    out.slope = kNegInf;
    out.slope_raw = kNegInf;
    return out;
  }
  int k = std::min<int>(opt.trailing_windows, static_cast<int>(usable.size()));
  std::vector<double> xs, ys, ys_raw;
  for (int i = static_cast<int>(usable.size()) - k; i < static_cast<int>(usable.size()); ++i) {
    xs.push_back(usable[i]->t_upper);
    ys.push_back(usable[i]->log_sum + std::log(usable[i]->t_upper));
    ys_raw.push_back(usable[i]->log_sum);
  }
  LineFit corrected = fit_line(xs, ys);
  LineFit raw = fit_line(xs, ys_raw);
  const LineFit& chosen = opt.poly_correction ? corrected : raw;
  out.slope = chosen.slope;
  out.intercept = chosen.intercept;
  out.residual = chosen.residual_rms;
  out.slope_raw = raw.slope;
  out.fit_windows = k;
  for (const auto* w : usable)
    out.max_window_rate = std::max(out.max_window_rate, w->log_sum / w->t_upper);
  return out;
}

GrowthRateFit fit_growth(const std::vector<GrowthWindow>& windows, const GrowthFitOptions& opt) {
  GrowthRateFit out = fit_growth_or_empty(windows, opt);
  if (out.empty)
    throw Error(ErrorCode::TooFewWindows,
                "need at least " + std::to_string(opt.min_windows) + " nonempty windows");
  return out;
}

WindowAccumulator::WindowAccumulator(double t_max) : t_max_(t_max) {
  int n = static_cast<int>(std::ceil(t_max));
  cells_.resize(std::max(n, 0));
}

void WindowAccumulator::add(double len, double log_weight) {
  if (!(len < t_max_) || len < 0) return;
  int t = static_cast<int>(std::floor(len)) + 1;  // len in [t-1, t)
  if (t < 1 || t > static_cast<int>(cells_.size())) return;
  Cell& c = cells_[t - 1];
  if (!std::isfinite(c.shift)) c.shift = log_weight;
  double e = log_weight - c.shift;
  if (e > 690.0) {
    // rescale the cell so the new term is representable
    double scale = std::exp(c.shift - log_weight);
    CompensatedSum rescaled;
    rescaled.add(c.sum.value() * scale);
    c.sum = rescaled;
    c.shift = log_weight;
    e = 0.0;
  }
  c.sum.add(std::exp(e));
  c.count += 1.0;
}

std::vector<GrowthWindow> WindowAccumulator::windows() const {
  std::vector<GrowthWindow> out;
  out.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    GrowthWindow w;
    w.t_upper = static_cast<double>(i + 1);
    w.count = cells_[i].count;
    double v = cells_[i].sum.value();
    w.log_sum = (cells_[i].count > 0 && v > 0) ? std::log(v) + cells_[i].shift : kNegInf;
    out.push_back(w);
  }
  return out;
}

}  // namespace ranklab
