#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpvoc/codec/params.hpp"
#include "lpvoc/dsp/filters.hpp"
#include "lpvoc/dsp/types.hpp"

// 16 kb/s low-delay CELP. Each 5-sample vector carries only a shape index
// and a sign/magnitude gain; the synthesis predictor and the excitation
// gain are backward-adapted from already decoded output.

namespace lpvoc::ldcelp {

inline constexpr std::size_t kVectorLength = 5;
inline constexpr std::size_t kShapes = 128;
inline constexpr std::size_t kGainLevels = 4;
inline constexpr std::size_t kMaxOrder = 50;
inline constexpr std::uint64_t kDefaultCodebookSeed = 0x4C50564300000002ull;

struct LdcelpConfig {
  std::size_t order = 20;            // backward synthesis predictor
  std::size_t weighting_order = 10;  // encoder-side weighting predictor
  double gamma1 = 0.9;
  double gamma2 = 0.6;
  std::size_t adapt_every = 4;       // vectors between predictor updates
  std::size_t window = 100;          // rectangular analysis window, samples
  double bandwidth = 0.988;          // expansion applied to fitted predictors
  double gain_base = 0.5;            // g0: levels 0.5, 1, 2, 4
  std::size_t gain_memory = 20;      // past excitation vectors in the gain predictor
  double initial_gain = 1.0;
  double min_gain = 1e-3;
  double max_gain = 1e4;
  std::uint64_t codebook_seed = kDefaultCodebookSeed;

  // Throws kUnsupportedOrder or the WeightingSpec errors.
  void validate() const;
};

// 128 seeded Gaussian shapes, each scaled to unit RMS.
class ShapeCodebook {
 public:
  explicit ShapeCodebook(std::uint64_t seed = kDefaultCodebookSeed);
  const std::array<double, kVectorLength>& shape(std::size_t i) const { return shapes_.at(i); }
  std::size_t size() const noexcept { return shapes_.size(); }

 private:
  std::vector<std::array<double, kVectorLength>> shapes_;
};

// Signed gain multiplier for a (magnitude, sign) pair: +/- g0 * 2^magnitude.
double gain_multiplier(const LdcelpConfig& config, int magnitude, int sign);

// Autocorrelation + Levinson on a rectangular window, white-noise
// corrected and bandwidth-expanded. Empty when the history is silent or
// the recursion fails.
std::optional<dsp::LpcCoeffs> fit_predictor(std::span<const double> history,
                                            std::size_t order, double bandwidth);

// Decoder-side state shared by both ends: synthesis predictor, gain
// predictor and quantized-speech history. The predicted gain is the RMS of
// the last `gain_memory` quantized excitation vectors. Cold start is all zero with the
// configured initial gain.
class BackwardState {
 public:
  explicit BackwardState(const LdcelpConfig& config);

  // Refits the synthesis predictor when a new adaptation block starts.
  // Call once before each vector.
  void begin_vector();

  // Predicted excitation gain for the current vector.
  double predicted_gain() const noexcept { return gain_; }
  const dsp::LpcCoeffs& predictor() const noexcept { return lpc_; }
  const dsp::SynthesisFilter& synthesis() const noexcept { return synthesis_; }

  // Runs the excitation through the synthesis filter, then updates the
  // history and the gain predictor.
  std::array<double, kVectorLength> commit(std::span<const double> excitation);

  std::uint64_t vectors() const noexcept { return vectors_; }
  std::uint64_t adaptations() const noexcept { return adaptations_; }
  const ShapeCodebook& codebook() const noexcept { return codebook_; }
  const LdcelpConfig& config() const noexcept { return config_; }

 private:
  LdcelpConfig config_;
  ShapeCodebook codebook_;
  dsp::LpcCoeffs lpc_;
  dsp::SynthesisFilter synthesis_;
  std::vector<double> history_;  // last `window` output samples, oldest first
  std::vector<double> recent_energy_;  // mean-square of the last `gain_memory` excitations
  double gain_;
  std::uint64_t vectors_ = 0;
  std::uint64_t adaptations_ = 0;
};

// Everything the most recent search saw, for inspection.
struct SearchContext {
  std::array<double, kVectorLength> target{};
  dsp::LpcCoeffs synthesis;
  dsp::LpcCoeffs weighting_numerator;    // Q(z/gamma1) coefficients
  dsp::LpcCoeffs weighting_denominator;  // Q(z/gamma2) coefficients
  double predicted_gain = 0.0;
  double error = 0.0;
};

class LdcelpEncoder {
 public:
  explicit LdcelpEncoder(LdcelpConfig config = {});

  // Throws kBadFrameLength unless input.size() == 5.
  LdcelpVectorParams encode_vector(std::span<const double> input);

  const std::array<double, kVectorLength>& reconstruction() const noexcept { return recon_; }
  const SearchContext& last_search() const noexcept { return context_; }
  const BackwardState& state() const noexcept { return state_; }

 private:
  void adapt_weighting();

  BackwardState state_;
  dsp::LpcCoeffs weighting_lpc_;
  dsp::LpcCoeffs numerator_;
  dsp::LpcCoeffs denominator_;
  dsp::PoleZeroFilter input_weighting_;
  dsp::PoleZeroFilter output_weighting_;
  std::vector<double> input_history_;
  std::array<double, kVectorLength> recon_{};
  SearchContext context_;
};

class LdcelpDecoder {
 public:
  explicit LdcelpDecoder(LdcelpConfig config = {});

  // Throws kIndexOutOfRange.
  std::array<double, kVectorLength> decode_vector(const LdcelpVectorParams& params);
  const BackwardState& state() const noexcept { return state_; }

 private:
  BackwardState state_;
};

}  // namespace lpvoc::ldcelp
