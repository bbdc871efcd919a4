#include "lpvoc/dsp/types.hpp"

#include <cmath>

namespace lpvoc {

std::vector<double> to_double(const AudioSignal& signal) {
  return {signal.samples.begin(), signal.samples.end()};
}

std::int16_t saturate_pcm(double value) noexcept {
  if (std::isnan(value)) return 0;
  const double r = std::nearbyint(value);
  if (r >= 32767.0) return 32767;
  if (r <= -32768.0) return -32768;
  return static_cast<std::int16_t>(r);
}

AudioSignal from_double(std::span<const double> samples) {
  AudioSignal out;
  out.samples.reserve(samples.size());
  for (double v : samples) out.samples.push_back(saturate_pcm(v));
  return out;
}

}  // namespace lpvoc
