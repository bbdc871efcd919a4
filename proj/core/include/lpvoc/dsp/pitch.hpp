#pragma once

#include <span>
#include <vector>

#include "lpvoc/dsp/types.hpp"

namespace lpvoc::dsp {

struct PitchConfig {
  PitchRange range;
  double voicing_threshold = 0.5;
};

// Normalized autocorrelation at one lag:
//   sum x[n] x[n+lag] / sqrt(sum x[n]^2 * sum x[n+lag]^2)
// over the overlap, clamped to [0, 1]. Zero when either part is silent.
double normalized_autocorrelation(std::span<const double> frame, int lag);

// Integer-lag pitch estimate: the autocorrelation peak, except that the
// shortest local maximum within 3% of it is taken instead (guards against
// picking a multiple of the period). Voiced when the peak reaches the
// voicing threshold. Requires frame length >= 2 * max_lag
// (kFrameTooShort otherwise).
PitchEstimate estimate_pitch(std::span<const double> frame,
                             const PitchConfig& config = {});

}  // namespace lpvoc::dsp
