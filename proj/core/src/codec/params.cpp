#include "lpvoc/codec/params.hpp"

#include <bit>

namespace lpvoc {

namespace {
bool fits(std::uint32_t value, int width) { return value < (1u << width); }
}  // namespace

std::optional<std::array<int, 4>> celp_pitch_lags(const CelpFrameParams& p) {
  using namespace celp_layout;
  std::array<int, 4> lags{};
  for (int s = 0; s < 4; ++s) {
    int lag = 0;
    if (s % 2 == 0) {
      lag = kMinLag + p.pitch[s];
    } else {
      lag = lags[s - 1] + static_cast<int>(p.pitch[s]) - kDeltaOffset;
    }
    if (lag < kMinLag || lag > kMaxLag) return std::nullopt;
    lags[s] = lag;
  }
  return lags;
}

std::uint8_t celp_pitch_parity(const std::array<std::uint8_t, 4>& pitch) {
  std::uint8_t out = 0;
  for (int s = 0; s < 4; ++s) {
    out = static_cast<std::uint8_t>(
        (out << 1) | (std::popcount(static_cast<unsigned>(pitch[s])) & 1));
  }
  return out;
}

std::optional<std::string> check_params(const CelpFrameParams& p) {
  using namespace celp_layout;
  for (int i = 0; i < 10; ++i) {
    if (!fits(p.lsf_indices[i], kLsfBits[i])) return "LSF index exceeds field";
  }
  for (int s = 0; s < 4; ++s) {
    const int width = s % 2 == 0 ? kAbsolutePitchBits : kDeltaPitchBits;
    if (!fits(p.pitch[s], width)) return "pitch code exceeds field";
    if (!fits(p.adaptive_gain[s], kGainBits)) return "adaptive gain exceeds field";
    if (!fits(p.stochastic_index[s], kIndexBits)) return "stochastic index exceeds field";
    if (!fits(p.stochastic_gain[s], kGainBits)) return "stochastic gain exceeds field";
  }
  if (!celp_pitch_lags(p)) return "pitch lag outside [20, 147]";
  if (!fits(p.sync_bit, 1) || !fits(p.expansion_bit, 1)) return "flag exceeds field";
  if (!fits(p.error_correction, 4)) return "error correction exceeds field";
  return std::nullopt;
}

std::optional<std::string> check_params(const LdcelpVectorParams& p) {
  if (!fits(p.shape_index, 7)) return "shape index exceeds field";
  if (!fits(p.gain_magnitude, 2)) return "gain magnitude exceeds field";
  if (!fits(p.gain_sign, 1)) return "gain sign exceeds field";
  return std::nullopt;
}

std::optional<std::string> check_params(const MelpFrameParams& p) {
  for (int i = 0; i < 4; ++i) {
    if (!fits(p.lsf_stages[i], melp_layout::kLsfStageBits[i])) {
      return "LSF stage index exceeds field";
    }
  }
  if (!fits(p.gains[0], 4) || !fits(p.gains[1], 4)) return "gain exceeds field";
  if (!fits(p.pitch_index, 6)) return "pitch index exceeds field";
  if (!fits(p.overall_voiced, 1) || !fits(p.sync_bit, 1)) return "flag exceeds field";
  if (p.overall_voiced) {
    if (!fits(p.bandpass_voicing, 4)) return "bandpass voicing exceeds field";
    if (!fits(p.aperiodic_flag, 1)) return "aperiodic flag exceeds field";
    if (p.error_protection != 0) return "voiced frame carries error protection";
  } else {
    if (!fits(p.error_protection, 13)) return "error protection exceeds field";
    if (p.fourier_index != 0 || p.bandpass_voicing != 0 || p.aperiodic_flag != 0) {
      return "unvoiced frame carries voiced-only fields";
    }
  }
  return std::nullopt;
}

}  // namespace lpvoc
