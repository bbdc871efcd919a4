#include "lpvoc/dsp/filters.hpp"

#include <algorithm>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc::dsp {

std::vector<double> SynthesisFilter::process(std::span<const double> excitation,
                                             const LpcCoeffs& lpc) {
  if (!is_minimum_phase(lpc)) {
    throw Error(ErrorCode::kUnstableFilter, "synthesis filter is unstable");
  }
  std::vector<double> out(excitation.size());
  process_unchecked(excitation, lpc, out);
  return out;
}

void SynthesisFilter::process_unchecked(std::span<const double> excitation,
                                        const LpcCoeffs& lpc,
                                        std::span<double> out) {
  if (memory_.size() != lpc.order()) memory_.assign(lpc.order(), 0.0);
  const std::size_t m = memory_.size();
  for (std::size_t n = 0; n < excitation.size(); ++n) {
    double y = excitation[n];
    for (std::size_t i = 0; i < m; ++i) y += lpc.q[i] * memory_[i];
    for (std::size_t i = m; i-- > 1;) memory_[i] = memory_[i - 1];
    if (m > 0) memory_[0] = y;
    out[n] = y;
  }
}

std::vector<double> synthesis_filter(std::span<const double> excitation,
                                     const LpcCoeffs& lpc,
                                     SynthesisFilter& state) {
  return state.process(excitation, lpc);
}

void PoleZeroFilter::process(std::span<const double> in,
                             const LpcCoeffs& numerator,
                             const LpcCoeffs& denominator,
                             std::span<double> out) {
  const std::size_t m = std::max(numerator.order(), denominator.order());
  if (x_memory_.size() != m) {
    x_memory_.assign(m, 0.0);
    y_memory_.assign(m, 0.0);
  }
  for (std::size_t n = 0; n < in.size(); ++n) {
    const double x = in[n];
    double y = x;
    for (std::size_t i = 0; i < numerator.order(); ++i) {
      y -= numerator.q[i] * x_memory_[i];
    }
    for (std::size_t i = 0; i < denominator.order(); ++i) {
      y += denominator.q[i] * y_memory_[i];
    }
    for (std::size_t i = m; i-- > 1;) {
      x_memory_[i] = x_memory_[i - 1];
      y_memory_[i] = y_memory_[i - 1];
    }
    if (m > 0) {
      x_memory_[0] = x;
      y_memory_[0] = y;
    }
    out[n] = y;
  }
}

void PoleZeroFilter::reset() {
  std::fill(x_memory_.begin(), x_memory_.end(), 0.0);
  std::fill(y_memory_.begin(), y_memory_.end(), 0.0);
}

WeightingSpec WeightingSpec::celp(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kGammaOutOfRange, "CELP gamma must lie in (0, 1]");
  }
  // W(z) = (1 - Q(z)) / (1 - Q(z/gamma))
  return WeightingSpec(1.0, gamma);
}

WeightingSpec WeightingSpec::ldcelp(double gamma1, double gamma2,
                                    bool relaxed) {
  const bool gamma2_ok =
      relaxed ? (gamma2 >= 0.0 && gamma2 <= 1.0) : (gamma2 > 0.0 && gamma2 <= 1.0);
  if (!(gamma1 > 0.0 && gamma1 <= 1.0) || !gamma2_ok) {
    throw Error(ErrorCode::kGammaOutOfRange, "LD-CELP gammas must lie in (0, 1]");
  }
  const bool ordered = relaxed ? gamma2 <= gamma1 : gamma2 < gamma1;
  if (!ordered) {
    throw Error(ErrorCode::kGammaOrderViolation, "require gamma2 < gamma1");
  }
  return WeightingSpec(gamma1, gamma2);
}

namespace {

std::vector<double> run_weighting(std::span<const double> signal,
                                  const LpcCoeffs& lpc, const WeightingSpec& spec,
                                  PoleZeroFilter& filter) {
  const LpcCoeffs num = bandwidth_expand(lpc, spec.numerator_gamma());
  const LpcCoeffs den = bandwidth_expand(lpc, spec.denominator_gamma());
  if (!is_minimum_phase(den)) {
    throw Error(ErrorCode::kUnstableDenominator,
                "weighting denominator is not minimum phase");
  }
  std::vector<double> out(signal.size());
  filter.process(signal, num, den, out);
  return out;
}

}  // namespace

std::vector<double> WeightingFilter::process(std::span<const double> signal,
                                             const LpcCoeffs& lpc) {
  return run_weighting(signal, lpc, spec_, filter_);
}

std::vector<double> apply_weighting_celp(std::span<const double> signal,
                                         const LpcCoeffs& lpc, double gamma,
                                         PoleZeroFilter* state) {
  PoleZeroFilter local(lpc.order());
  return run_weighting(signal, lpc, WeightingSpec::celp(gamma),
                       state ? *state : local);
}

std::vector<double> apply_weighting_ldcelp(std::span<const double> signal,
                                           const LpcCoeffs& lpc,
                                           double gamma1, double gamma2,
                                           bool relaxed,
                                           PoleZeroFilter* state) {
  PoleZeroFilter local(lpc.order());
  return run_weighting(signal, lpc,
                       WeightingSpec::ldcelp(gamma1, gamma2, relaxed),
                       state ? *state : local);
}

std::vector<double> impulse_response(const LpcCoeffs& lpc, std::size_t length) {
  std::vector<double> h(length, 0.0);
  for (std::size_t n = 0; n < length; ++n) {
    double y = n == 0 ? 1.0 : 0.0;
    for (std::size_t i = 0; i < lpc.order() && i < n; ++i) {
      y += lpc.q[i] * h[n - 1 - i];
    }
    h[n] = y;
  }
  return h;
}

}  // namespace lpvoc::dsp
