#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpvoc {

inline constexpr int kSampleRate = 8000;
inline constexpr double kFullScale = 32768.0;

// 8 kHz mono 16-bit PCM; the only audio representation crossing module
// boundaries.
struct AudioSignal {
  static constexpr int sample_rate = kSampleRate;
  std::vector<std::int16_t> samples;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// PCM -> floating point in PCM units (no normalization).
std::vector<double> to_double(const AudioSignal& signal);

// Rounds to nearest and saturates to [-32768, 32767].
std::int16_t saturate_pcm(double value) noexcept;
AudioSignal from_double(std::span<const double> samples);

namespace dsp {

// Predictor coefficients q_1..q_M of Q(z) = sum q_i z^-i. The analysis
// (inverse) filter is 1 - Q(z) and the synthesis filter 1 / (1 - Q(z)).
struct LpcCoeffs {
  std::vector<double> q;

  LpcCoeffs() = default;
  explicit LpcCoeffs(std::vector<double> coeffs) : q(std::move(coeffs)) {}
  static LpcCoeffs zeros(std::size_t order) {
    return LpcCoeffs(std::vector<double>(order, 0.0));
  }

  std::size_t order() const noexcept { return q.size(); }
  bool operator==(const LpcCoeffs&) const = default;
};

// Line spectral frequencies in radians, strictly increasing in (0, pi).
struct Lsf {
  std::vector<double> omega;

  std::size_t order() const noexcept { return omega.size(); }
  bool operator==(const Lsf&) const = default;
};

struct PitchEstimate {
  int period = 0;        // samples
  bool voiced = false;
  double strength = 0.0; // normalized autocorrelation peak, [0, 1]
};

struct PitchRange {
  int min_lag = 20;
  int max_lag = 147;
};

}  // namespace dsp
}  // namespace lpvoc
