#include <cmath>
#include <numeric>
#include <string>

#include "star/core/error.hpp"
#include "star/simd/kernels.hpp"
#include "star/temporal/interval.hpp"

namespace star::temporal {

std::optional<std::size_t> infer_period(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return std::nullopt;
  const double mean = simd::sum(series) / static_cast<double>(n);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = series[i] - mean;
  const double var = simd::dot(c, c);
  if (!(var > 0)) return std::nullopt;
  std::optional<std::size_t> best;
  double best_r = 0;
  for (std::size_t lag = 2; lag <= n / 2; ++lag) {
    const std::span<const double> all(c);
    const double r = simd::dot(all.first(n - lag), all.subspan(lag)) / var;
    if (!best || r > best_r) {
      best = lag;
      best_r = r;
    }
  }
  return best;
}

std::vector<double> forecast(const std::vector<double>& series, std::size_t horizon, const ForecastOptions& opts) {
  for (double v : series)
    if (!std::isfinite(v)) throw ValidationError("forecast: series contains non-finite values");
  // Without a detectable season the seasonal component degenerates to
  // "repeat the last value".
  const std::size_t period = opts.period ? *opts.period : infer_period(series).value_or(1);
  const std::size_t window = opts.window ? *opts.window : period;
  if (period == 0 || window == 0) throw ContractError("forecast: period and window must be positive");
  const std::size_t n = series.size();
  if (n < std::max(2 * period, window))
    throw InsufficientDataError("forecast: series of length " + std::to_string(n) + " is too short for period " +
                                std::to_string(period) + " and window " + std::to_string(window));
  const std::span<const double> tail = std::span<const double>(series).last(window);
  const double moving_average = simd::sum(tail) / static_cast<double>(window);
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t h = 1; h <= horizon; ++h) {
    const double seasonal = series[n - period + (h - 1) % period];
    out.push_back((seasonal + moving_average) / 2.0);
  }
  return out;
}

}  // namespace star::temporal
