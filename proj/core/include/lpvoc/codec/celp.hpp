#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpvoc/codec/params.hpp"
#include "lpvoc/dsp/filters.hpp"
#include "lpvoc/dsp/types.hpp"

// 4.8 kb/s forward-adaptive CELP: 240-sample frames, four 60-sample
// subframes, adaptive then stochastic codebook analysis-by-synthesis under
// the weighting W(z) = (1 - Q(z)) / (1 - Q(z/gamma)).

namespace lpvoc::celp {

inline constexpr std::size_t kFrameLength = 240;
inline constexpr std::size_t kSubframeLength = 60;
inline constexpr std::size_t kSubframes = 4;
inline constexpr std::size_t kLpcOrder = 10;
inline constexpr std::size_t kCodebookSize = 512;
inline constexpr std::uint64_t kDefaultCodebookSeed = 0x4C505643'00000001ull;

struct CelpConfig {
  double gamma = 0.8;
  std::uint64_t codebook_seed = kDefaultCodebookSeed;
};

// 512 ternary codevectors of 60 samples: seeded unit Gaussian samples,
// center-clipped at +/-1.2 (values outside become their sign, the rest 0).
class StochasticCodebook {
 public:
  explicit StochasticCodebook(std::uint64_t seed = kDefaultCodebookSeed,
                              std::size_t size = kCodebookSize,
                              std::size_t length = kSubframeLength);

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t length() const noexcept { return length_; }
  const std::vector<double>& vector(std::size_t i) const { return vectors_.at(i); }
  // Positions of the nonzero entries of vector i.
  const std::vector<std::uint16_t>& support(std::size_t i) const { return support_.at(i); }

 private:
  std::size_t length_;
  std::vector<std::vector<double>> vectors_;
  std::vector<std::vector<std::uint16_t>> support_;
};

// 5-bit sign + magnitude gain code: bit 4 is the sign, bits 0-3 a level
// into a 16-entry magnitude table whose level 0 is zero.
class GainQuantizer {
 public:
  explicit GainQuantizer(std::array<double, 16> magnitudes)
      : magnitudes_(magnitudes) {}

  // Adaptive codebook gain: 0 then 2^((k - 11) / 4), k = 1..15 (1.0 exact).
  static GainQuantizer adaptive();
  // Stochastic codebook gain: 0 then 2 * 2^(0.85 (k - 1)), k = 1..15.
  static GainQuantizer stochastic();

  static constexpr int kCodes = 32;
  double value(int code) const;
  int nearest(double gain) const;
  // Largest ratio between consecutive nonzero magnitudes.
  double coarsest_step() const;
  const std::array<double, 16>& magnitudes() const noexcept { return magnitudes_; }

 private:
  std::array<double, 16> magnitudes_;
};

struct CodebookMatch {
  int index = 0;            // lag for the adaptive codebook
  double gain = 0.0;        // unquantized optimal gain for `index`
  int gain_code = 0;        // chosen quantizer code (0 when unquantized)
  double applied_gain = 0.0;  // gain actually used: quantized or optimal
  double error = 0.0;       // weighted squared error at the chosen point
};

// Adaptive codebook vector for `lag`: the last `lag` samples of
// `history`, repeated periodically when lag < length.
std::vector<double> adaptive_vector(std::span<const double> history, int lag,
                                    std::size_t length);

// Exhaustive lag search minimizing ||target - g H v_lag||^2 where H is the
// zero-state weighted synthesis filter 1 / (1 - Q_w(z)) truncated to the
// target length. With a quantizer the minimization runs jointly over
// (lag, gain code); without one each lag takes its optimal gain. Ties go to
// the smallest lag (then smallest code). Throws kEmptyHistory when the
// history is shorter than the largest lag.
CodebookMatch adaptive_codebook_search(std::span<const double> target,
                                       std::span<const double> history,
                                       dsp::PitchRange lags,
                                       const dsp::LpcCoeffs& weighted_synthesis,
                                       const GainQuantizer* quantizer);

// Same criterion over the stochastic codebook; ties go to the smallest
// index. Throws kEmptyCodebook.
CodebookMatch stochastic_codebook_search(std::span<const double> target,
                                         const StochasticCodebook& codebook,
                                         const dsp::LpcCoeffs& weighted_synthesis,
                                         const GainQuantizer* quantizer);

// Scalar LSF quantizer, 34 bits (3,4,4,4,4,3,3,3,3,3). Decoded LSFs are
// sorted and spaced at least 25 Hz apart, so they always give a stable
// filter.
std::array<std::uint8_t, 10> quantize_lsf(const dsp::Lsf& lsf);
dsp::Lsf dequantize_lsf(const std::array<std::uint8_t, 10>& indices);

// LSF interpolation weight of the current frame for each subframe.
inline constexpr std::array<double, 4> kInterpolation{0.625, 0.875, 1.0, 1.0};

// Decoder state shared by the encoder's local synthesis and the decoder, so
// both follow bit-identical trajectories.
class SynthesisCore {
 public:
  explicit SynthesisCore(const CelpConfig& config);

  // Predictors for the four subframes, interpolated from the previous
  // frame's LSFs.
  std::array<dsp::LpcCoeffs, 4> subframe_predictors(const dsp::Lsf& current) const;
  std::span<const double> history() const noexcept { return history_; }

  // Builds g_a v_lag + g_s c_index.
  std::vector<double> excitation(int lag, double adaptive_gain, int index,
                                 double stochastic_gain) const;
  // Appends the excitation to the history and runs the synthesis filter.
  void commit(std::span<const double> excitation, const dsp::LpcCoeffs& lpc,
              std::span<double> out);
  void end_frame(const dsp::Lsf& current);

  const StochasticCodebook& codebook() const noexcept { return codebook_; }
  const GainQuantizer& adaptive_gains() const noexcept { return adaptive_q_; }
  const GainQuantizer& stochastic_gains() const noexcept { return stochastic_q_; }
  std::uint64_t frames() const noexcept { return frames_; }

 private:
  StochasticCodebook codebook_;
  GainQuantizer adaptive_q_;
  GainQuantizer stochastic_q_;
  std::vector<double> history_;  // past excitation, oldest first
  dsp::SynthesisFilter synthesis_;
  std::optional<dsp::Lsf> previous_lsf_;
  std::uint64_t frames_ = 0;
};

class CelpEncoder {
 public:
  explicit CelpEncoder(CelpConfig config = {});

  // Throws kBadFrameLength unless frame.size() == 240.
  CelpFrameParams encode_frame(std::span<const double> frame);

  // Local reconstruction of the most recent frame (identical to what the
  // decoder produces from the returned parameters).
  const std::vector<double>& reconstruction() const noexcept { return recon_; }

 private:
  CelpConfig config_;
  SynthesisCore core_;
  std::vector<double> input_memory_;        // last 10 input samples, newest first
  std::vector<double> weighted_error_memory_;  // last 10 weighted errors, newest first
  std::vector<double> recon_;
};

class CelpDecoder {
 public:
  explicit CelpDecoder(CelpConfig config = {});

  // Throws kIndexOutOfRange for params that violate their invariants.
  std::vector<double> decode_frame(const CelpFrameParams& params);

  // Frames whose error-correction field disagreed with the pitch codes.
  std::uint64_t parity_failures() const noexcept { return parity_failures_; }

 private:
  SynthesisCore core_;
  std::uint64_t parity_failures_ = 0;
};

}  // namespace lpvoc::celp
