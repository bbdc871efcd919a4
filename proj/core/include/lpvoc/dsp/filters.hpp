#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "lpvoc/dsp/types.hpp"

namespace lpvoc::dsp {

// All-pole synthesis filter y[n] = e[n] + sum q_i y[n-i]. The memory holds
// the last M outputs, most recent first, and survives across calls so a
// stream can be filtered block by block.
class SynthesisFilter {
 public:
  explicit SynthesisFilter(std::size_t order = 0) : memory_(order, 0.0) {}

  // Throws kUnstableFilter if 1 - Q(z) is not minimum phase. The order of
  // `lpc` must match the filter order.
  std::vector<double> process(std::span<const double> excitation,
                              const LpcCoeffs& lpc);
  // Same as process() without the stability check; for callers that have
  // already established stability (per-sample codec inner loops).
  void process_unchecked(std::span<const double> excitation,
                         const LpcCoeffs& lpc, std::span<double> out);

  const std::vector<double>& memory() const noexcept { return memory_; }
  void set_memory(std::vector<double> memory) { memory_ = std::move(memory); }
  void reset() { std::fill(memory_.begin(), memory_.end(), 0.0); }

 private:
  std::vector<double> memory_;
};

// Convenience wrapper matching the functional form; `state` is the filter
// memory and is updated in place.
std::vector<double> synthesis_filter(std::span<const double> excitation,
                                     const LpcCoeffs& lpc,
                                     SynthesisFilter& state);

// Pole-zero filter (1 - N(z)) / (1 - D(z)) with N and D given as predictor
// polynomials of the same order. Used for both perceptual weighting forms.
class PoleZeroFilter {
 public:
  PoleZeroFilter() = default;
  explicit PoleZeroFilter(std::size_t order)
      : x_memory_(order, 0.0), y_memory_(order, 0.0) {}

  void process(std::span<const double> in, const LpcCoeffs& numerator,
               const LpcCoeffs& denominator, std::span<double> out);
  void reset();

  std::size_t order() const noexcept { return x_memory_.size(); }

 private:
  std::vector<double> x_memory_;
  std::vector<double> y_memory_;
};

// Perceptual weighting parameters. CELP uses a single gamma,
// W(z) = (1 - Q(z)) / (1 - Q(z/gamma)); LD-CELP uses two,
// W(z) = (1 - Q(z/gamma1)) / (1 - Q(z/gamma2)).
class WeightingSpec {
 public:
  // 0 < gamma <= 1; throws kGammaOutOfRange.
  static WeightingSpec celp(double gamma);
  // 0 < gamma2 < gamma1 <= 1; throws kGammaOutOfRange or
  // kGammaOrderViolation. With `relaxed`, 0 <= gamma2 <= gamma1 is accepted
  // (degenerate identity and pure-FIR checks).
  static WeightingSpec ldcelp(double gamma1, double gamma2,
                              bool relaxed = false);

  double numerator_gamma() const noexcept { return num_gamma_; }
  double denominator_gamma() const noexcept { return den_gamma_; }

 private:
  WeightingSpec(double num, double den) : num_gamma_(num), den_gamma_(den) {}
  double num_gamma_ = 1.0;
  double den_gamma_ = 1.0;
};

// Stateful perceptual weighting filter built from a predictor and a
// WeightingSpec. Throws kUnstableDenominator if the bandwidth-expanded
// denominator is not minimum phase.
class WeightingFilter {
 public:
  WeightingFilter(std::size_t order, WeightingSpec spec)
      : spec_(spec), filter_(order) {}

  std::vector<double> process(std::span<const double> signal,
                              const LpcCoeffs& lpc);
  void reset() { filter_.reset(); }
  const WeightingSpec& spec() const noexcept { return spec_; }

 private:
  WeightingSpec spec_;
  PoleZeroFilter filter_;
};

// Functional forms. `state`, when given, carries the filter memory between
// calls for streaming; otherwise filtering starts from rest.
std::vector<double> apply_weighting_celp(std::span<const double> signal,
                                         const LpcCoeffs& lpc, double gamma,
                                         PoleZeroFilter* state = nullptr);
std::vector<double> apply_weighting_ldcelp(std::span<const double> signal,
                                           const LpcCoeffs& lpc,
                                           double gamma1, double gamma2,
                                           bool relaxed = false,
                                           PoleZeroFilter* state = nullptr);

// Zero-state impulse response of 1 / (1 - Q(z)), `length` taps.
std::vector<double> impulse_response(const LpcCoeffs& lpc, std::size_t length);

}  // namespace lpvoc::dsp
