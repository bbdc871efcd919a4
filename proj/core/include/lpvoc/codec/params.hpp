#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

// Coded units of the three vocoders, field for field as they appear in the
// bit allocation. Indices only; the codecs give them meaning and the
// bitstream module gives them a wire layout.

namespace lpvoc {

// One 30 ms CELP frame: 144 bits.
struct CelpFrameParams {
  // Scalar LSF quantizer indices, 3/4/4/4/4/3/3/3/3/3 bits (34 total).
  std::array<std::uint8_t, 10> lsf_indices{};
  // Subframes 0 and 2: absolute lag code (8 bits, lag - 20, at most 127).
  // Subframes 1 and 3: delta code (6 bits, lag = previous + code - 32).
  std::array<std::uint8_t, 4> pitch{};
  // Sign (MSB) + 4-bit magnitude level, 5 bits each.
  std::array<std::uint8_t, 4> adaptive_gain{};
  std::array<std::uint16_t, 4> stochastic_index{};  // 9 bits each
  std::array<std::uint8_t, 4> stochastic_gain{};    // sign + 4-bit level
  std::uint8_t sync_bit = 0;
  std::uint8_t error_correction = 0;  // 4 bits, parity of the pitch codes
  std::uint8_t expansion_bit = 0;

  bool operator==(const CelpFrameParams&) const = default;
};

// One 5-sample LD-CELP vector: 10 bits.
struct LdcelpVectorParams {
  std::uint8_t shape_index = 0;     // 7 bits
  std::uint8_t gain_magnitude = 0;  // 2 bits
  std::uint8_t gain_sign = 0;       // 1 bit, 1 = negative

  bool operator==(const LdcelpVectorParams&) const = default;
};

// One 22.5 ms MELP frame: 54 bits in both layouts. Fields that the layout
// does not carry are held at zero.
struct MelpFrameParams {
  std::array<std::uint8_t, 4> lsf_stages{};  // 7 + 6 + 6 + 6 = 25 bits
  std::array<std::uint8_t, 2> gains{};       // 4 bits each
  std::uint8_t pitch_index = 0;              // 6 bits, log-spaced lag
  std::uint8_t overall_voiced = 0;           // 1 bit
  // Voiced layout only.
  std::uint8_t fourier_index = 0;      // 8 bits
  std::uint8_t bandpass_voicing = 0;   // 4 bits, bands 2..5 (MSB = band 2)
  std::uint8_t aperiodic_flag = 0;     // 1 bit
  // Unvoiced layout only.
  std::uint16_t error_protection = 0;  // 13 bits
  std::uint8_t sync_bit = 0;

  bool operator==(const MelpFrameParams&) const = default;
};

namespace celp_layout {
inline constexpr std::array<int, 10> kLsfBits{3, 4, 4, 4, 4, 3, 3, 3, 3, 3};
inline constexpr int kMinLag = 20;
inline constexpr int kMaxLag = 147;
inline constexpr int kAbsolutePitchBits = 8;
inline constexpr int kDeltaPitchBits = 6;
inline constexpr int kDeltaOffset = 32;
inline constexpr int kGainBits = 5;
inline constexpr int kIndexBits = 9;
}  // namespace celp_layout

namespace melp_layout {
inline constexpr std::array<int, 4> kLsfStageBits{7, 6, 6, 6};
}  // namespace melp_layout

// Absolute lags of the four subframes; nullopt if a code points outside
// [20, 147].
std::optional<std::array<int, 4>> celp_pitch_lags(const CelpFrameParams& p);

// Even parity of each subframe's pitch code, subframe 0 in the MSB.
std::uint8_t celp_pitch_parity(const std::array<std::uint8_t, 4>& pitch);

// Describes the first violated invariant (field width, lag range, layout
// exclusivity), or nullopt when the unit is valid.
std::optional<std::string> check_params(const CelpFrameParams& p);
std::optional<std::string> check_params(const LdcelpVectorParams& p);
std::optional<std::string> check_params(const MelpFrameParams& p);

}  // namespace lpvoc
