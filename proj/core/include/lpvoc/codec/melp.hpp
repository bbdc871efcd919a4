#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lpvoc/codec/params.hpp"
#include "lpvoc/dsp/filters.hpp"
#include "lpvoc/dsp/iir.hpp"
#include "lpvoc/dsp/types.hpp"
#include "lpvoc/rng.hpp"

// 2.4 kb/s mixed-excitation LP vocoder: 180-sample frames, three-way
// voicing, five-band pulse/noise mixing, residual Fourier magnitudes.

namespace lpvoc::melp {

inline constexpr std::size_t kFrameLength = 180;
inline constexpr std::size_t kHalfFrame = 90;
inline constexpr std::size_t kLpcOrder = 10;
inline constexpr std::size_t kBands = 5;
inline constexpr std::size_t kHarmonics = 10;
inline constexpr std::size_t kFourierEntries = 256;
inline constexpr int kPitchLevels = 64;
inline constexpr int kGainLevels = 16;
inline constexpr double kMinGainDb = 10.0;
inline constexpr double kMaxGainDb = 77.0;
inline constexpr double kUnvoicedPitch = 50.0;
inline constexpr std::uint64_t kDefaultSeed = 0x4C50564300000003ull;

enum class VoicingClass { kVoiced, kUnvoiced, kJitteryVoiced };
std::string_view to_string(VoicingClass v) noexcept;

struct ClassifierConfig {
  double voiced_threshold = 0.6;
  double unvoiced_threshold = 0.35;
  double band_threshold = 0.5;  // per-band voicing decision
  dsp::PitchRange range{20, 147};
};

struct Classification {
  VoicingClass voicing = VoicingClass::kUnvoiced;
  double periodicity = 0.0;  // normalized autocorrelation at pitch_lag
  int pitch_lag = 0;
  std::array<double, kBands> band_strength{};
};

// Band-pass bank: 0-500, 500-1000, 1000-2000, 2000-3000, 3000-4000 Hz,
// all 6th order.
const std::array<std::vector<dsp::Biquad>, kBands>& band_filters();
// 6th-order 1 kHz low-pass used for the periodicity statistic.
const std::vector<dsp::Biquad>& pitch_lowpass();

// Classifies `frame` (180 samples) analysed together with the previous 180
// samples (`previous`, empty means silence). Periodicity is the normalized
// autocorrelation of the 1 kHz low-passed window at the chosen lag: the
// smallest local maximum within 15% of the global maximum. Amplitude
// invariant. Throws kBadFrameLength.
Classification melp_classify(std::span<const double> frame,
                             std::span<const double> previous = {},
                             const ClassifierConfig& config = {});

// 6-bit log pitch grid 20 * (147/20)^(k/63).
double pitch_for_index(int index);
int pitch_index_for(double lag);
// 16 uniform levels in dB over [10, 77].
double gain_db_for_index(int index);
int gain_index_for(double db);

// Four-stage additive LSF quantizer (7/6/6/6 bits). Stage 1 holds
// formant-model LSF vectors (entry 0 is the flat spectrum); stages 2-4
// hold zero-led Gaussian refinements of decreasing spread. Search is
// greedy per stage. Decoded vectors are sorted and spaced >= 50 Hz.
class LsfCodebook {
 public:
  explicit LsfCodebook(std::uint64_t seed = kDefaultSeed);

  std::array<std::uint8_t, 4> quantize(const dsp::Lsf& lsf) const;
  dsp::Lsf dequantize(const std::array<std::uint8_t, 4>& indices) const;
  const std::vector<std::array<double, kLpcOrder>>& stage(std::size_t s) const {
    return stages_.at(s);
  }

 private:
  std::array<std::vector<std::array<double, kLpcOrder>>, 4> stages_;
};

// 256 ten-harmonic magnitude shapes, unit RMS; entry 0 is flat.
class FourierCodebook {
 public:
  explicit FourierCodebook(std::uint64_t seed = kDefaultSeed);

  // Nearest entry after normalizing `magnitudes` to unit RMS.
  int quantize(std::span<const double> magnitudes) const;
  const std::array<double, kHarmonics>& entry(std::size_t i) const { return entries_.at(i); }

 private:
  std::vector<std::array<double, kHarmonics>> entries_;
};

// 13-bit unvoiced-frame protection, MSB first: SECDED over LSF stages 1-2
// (6 bits), SECDED over both gains (5 bits), parity of stage 3, parity of
// stage 4.
std::uint16_t protection_bits(const MelpFrameParams& params);

enum class ProtectionStatus { kClean, kCorrected, kDetected };
// Checks an unvoiced frame against its protection field and repairs a
// single-bit error in stages 1-2 or the gains.
ProtectionStatus verify_protection(MelpFrameParams& params);

// Per-band pulse / noise weights. Each pair must sum to 1.
struct MixedExcitationSpec {
  std::array<double, kBands> pulse_weight{};
  std::array<double, kBands> noise_weight{};
  double pitch = 0.0;
  double jitter = 0.0;  // fraction of the period, 0 unless jittery voiced

  // Throws kWeightSumViolation, or kIndexOutOfRange for pitch / jitter.
  void validate() const;
};

// Unit-power impulse train (height sqrt(pitch)) starting at `phase`, each
// spacing perturbed uniformly by +/- jitter * pitch.
std::vector<double> pulse_train(double pitch, double jitter, std::size_t length,
                                Rng& rng, double phase = 0.0);

// sum_b pulse_weight_b BP_b(pulses) + noise_weight_b BP_b(noise), band
// filters starting from rest.
std::vector<double> mixed_excitation(const MixedExcitationSpec& spec,
                                     std::span<const double> pulses,
                                     std::span<const double> noise);
// Same with a pulse train and Gaussian noise drawn from `rng`.
std::vector<double> mixed_excitation(const MixedExcitationSpec& spec,
                                     std::size_t length, Rng& rng);

struct MelpConfig {
  ClassifierConfig classifier;
  double jitter = 0.25;
  std::uint64_t seed = kDefaultSeed;
};

class MelpEncoder {
 public:
  explicit MelpEncoder(MelpConfig config = {});

  // Throws kBadFrameLength unless frame.size() == 180.
  MelpFrameParams encode_frame(std::span<const double> frame);
  const Classification& last_classification() const noexcept { return last_; }

 private:
  MelpConfig config_;
  LsfCodebook lsf_book_;
  FourierCodebook fourier_book_;
  std::vector<double> previous_;
  std::optional<dsp::Lsf> previous_lsf_;
  Classification last_;
  std::uint64_t frames_ = 0;
};

class MelpDecoder {
 public:
  explicit MelpDecoder(MelpConfig config = {});

  // Throws kIndexOutOfRange for invalid params.
  std::vector<double> decode_frame(const MelpFrameParams& params);

  std::uint64_t corrected_frames() const noexcept { return corrected_; }
  std::uint64_t detected_errors() const noexcept { return detected_; }

 private:
  std::vector<double> pulse_track(double pitch, double jitter,
                                  const std::array<double, kHarmonics>& magnitudes);

  MelpConfig config_;
  LsfCodebook lsf_book_;
  FourierCodebook fourier_book_;
  Rng rng_;
  std::array<dsp::SosFilter, kBands> bands_;
  dsp::SynthesisFilter synthesis_;
  std::optional<dsp::Lsf> previous_lsf_;
  std::vector<double> pulse_tail_;
  double next_pulse_ = 0.0;
  double previous_amplitude_ = -1.0;
  std::uint64_t corrected_ = 0;
  std::uint64_t detected_ = 0;
};

}  // namespace lpvoc::melp
