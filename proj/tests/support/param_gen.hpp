#pragma once

// Random valid parameter units for property tests.

#include <random>

#include "lpvoc/codec/params.hpp"

namespace gen {

inline lpvoc::CelpFrameParams celp(std::mt19937_64& rng) {
  using namespace lpvoc::celp_layout;
  auto bits = [&](int width) {
    return static_cast<std::uint32_t>(rng() & ((1u << width) - 1));
  };
  lpvoc::CelpFrameParams p;
  for (int i = 0; i < 10; ++i) p.lsf_indices[i] = static_cast<std::uint8_t>(bits(kLsfBits[i]));
  for (int s = 0; s < 4; s += 2) {
    const int lag = kMinLag + static_cast<int>(rng() % 128);
    p.pitch[s] = static_cast<std::uint8_t>(lag - kMinLag);
    const int lo = std::max(kMinLag, lag - kDeltaOffset);
    const int hi = std::min(kMaxLag, lag + kDeltaOffset - 1);
    const int next = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    p.pitch[s + 1] = static_cast<std::uint8_t>(next - lag + kDeltaOffset);
  }
  for (int s = 0; s < 4; ++s) {
    p.adaptive_gain[s] = static_cast<std::uint8_t>(bits(5));
    p.stochastic_index[s] = static_cast<std::uint16_t>(bits(9));
    p.stochastic_gain[s] = static_cast<std::uint8_t>(bits(5));
  }
  p.sync_bit = static_cast<std::uint8_t>(bits(1));
  p.error_correction = lpvoc::celp_pitch_parity(p.pitch);
  p.expansion_bit = 0;
  return p;
}

inline lpvoc::LdcelpVectorParams ldcelp(std::mt19937_64& rng) {
  lpvoc::LdcelpVectorParams p;
  p.shape_index = static_cast<std::uint8_t>(rng() % 128);
  p.gain_magnitude = static_cast<std::uint8_t>(rng() % 4);
  p.gain_sign = static_cast<std::uint8_t>(rng() % 2);
  return p;
}

inline lpvoc::MelpFrameParams melp(std::mt19937_64& rng) {
  lpvoc::MelpFrameParams p;
  for (int i = 0; i < 4; ++i) {
    p.lsf_stages[i] = static_cast<std::uint8_t>(
        rng() % (1u << lpvoc::melp_layout::kLsfStageBits[i]));
  }
  p.gains = {static_cast<std::uint8_t>(rng() % 16), static_cast<std::uint8_t>(rng() % 16)};
  p.pitch_index = static_cast<std::uint8_t>(rng() % 64);
  p.overall_voiced = static_cast<std::uint8_t>(rng() % 2);
  if (p.overall_voiced) {
    p.fourier_index = static_cast<std::uint8_t>(rng() % 256);
    p.bandpass_voicing = static_cast<std::uint8_t>(rng() % 16);
    p.aperiodic_flag = static_cast<std::uint8_t>(rng() % 2);
  } else {
    p.error_protection = static_cast<std::uint16_t>(rng() % 8192);
  }
  p.sync_bit = static_cast<std::uint8_t>(rng() % 2);
  return p;
}

}  // namespace gen
