#include "lpvoc/dsp/pitch.hpp"

#include <algorithm>
#include <cmath>

#include "lpvoc/error.hpp"

namespace lpvoc::dsp {

namespace {
// A local maximum within this fraction of the global peak is preferred
// when it has a shorter lag: multiples of the period (and rounding ties in
// exactly periodic input) otherwise win on non-integer periods.
constexpr double kOctaveTolerance = 0.03;
}  // namespace

double normalized_autocorrelation(std::span<const double> frame, int lag) {
  if (lag <= 0 || static_cast<std::size_t>(lag) >= frame.size()) return 0.0;
  const std::size_t n = frame.size() - static_cast<std::size_t>(lag);
  double cross = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = frame[i];
    const double b = frame[i + static_cast<std::size_t>(lag)];
    cross += a * b;
    e0 += a * a;
    e1 += b * b;
  }
  if (e0 <= 0.0 || e1 <= 0.0) return 0.0;
  return std::clamp(cross / std::sqrt(e0 * e1), 0.0, 1.0);
}

PitchEstimate estimate_pitch(std::span<const double> frame,
                             const PitchConfig& config) {
  const auto& range = config.range;
  if (range.min_lag < 1 || range.max_lag < range.min_lag) {
    throw Error(ErrorCode::kFrameTooShort, "invalid pitch search range");
  }
  if (frame.size() < 2 * static_cast<std::size_t>(range.max_lag)) {
    throw Error(ErrorCode::kFrameTooShort,
                "pitch frame must hold two maximum periods");
  }
  std::vector<double> strength(range.max_lag - range.min_lag + 1);
  double peak = 0.0;
  for (int lag = range.min_lag; lag <= range.max_lag; ++lag) {
    const double s = normalized_autocorrelation(frame, lag);
    strength[lag - range.min_lag] = s;
    peak = std::max(peak, s);
  }
  PitchEstimate out;
  out.period = range.min_lag;
  out.strength = peak;
  if (peak > 0.0) {
    const std::size_t last = strength.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
      const double s = strength[i];
      const bool local = (i == 0 || s >= strength[i - 1]) && (i == last || s >= strength[i + 1]);
      if (local && s >= peak * (1.0 - kOctaveTolerance)) {
        out.period = range.min_lag + static_cast<int>(i);
        break;
      }
    }
  }
  out.voiced = peak >= config.voicing_threshold;
  return out;
}

}  // namespace lpvoc::dsp
