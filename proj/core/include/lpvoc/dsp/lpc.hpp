#pragma once

#include <span>
#include <vector>

#include "lpvoc/dsp/types.hpp"

namespace lpvoc::dsp {

// r_k = sum_n x[n] x[n-k], k = 0..max_lag.
// Throws kEmptyFrame, kLagTooLarge (max_lag >= frame length).
std::vector<double> autocorrelate(std::span<const double> frame,
                                  std::size_t max_lag);

struct LevinsonResult {
  LpcCoeffs lpc;
  // k_i equals the i-th coefficient of the order-i predictor.
  std::vector<double> reflection;
  // Forward prediction error energy after each order, errors[0] == r_0.
  std::vector<double> errors;

  double prediction_error() const { return errors.back(); }
};

// Solves the order-M normal equations for the autocorrelation sequence.
// Throws kSingularAutocorrelation when r_0 <= 0 or the recursion meets a
// reflection coefficient with magnitude >= 1.
LevinsonResult levinson_durbin(std::span<const double> autocorr,
                               std::size_t order);

// q_i -> gamma^i q_i. Throws kGammaOutOfRange unless 0 <= gamma <= 1.
LpcCoeffs bandwidth_expand(const LpcCoeffs& lpc, double gamma);

// Radius factor that widens every pole bandwidth by `hz` at 8 kHz.
double bandwidth_gamma_for_hz(double hz);

// Step-down recursion from predictor to reflection coefficients. Returns an
// empty vector if some |k_i| >= 1 is met (polynomial not minimum phase).
std::vector<double> lpc_to_reflection(const LpcCoeffs& lpc);

// True when every root of 1 - Q(z) lies strictly inside the unit circle.
bool is_minimum_phase(const LpcCoeffs& lpc);

// Symmetric Hamming window of the given length.
std::vector<double> hamming_window(std::size_t length);

// Applies 1 - Q(z) with zero initial state (prediction residual).
std::vector<double> inverse_filter(std::span<const double> signal,
                                   const LpcCoeffs& lpc);

// Autocorrelation LPC analysis of one frame with a Hamming window.
// Returns a zero predictor when the frame is silent.
LpcCoeffs analyze_frame(std::span<const double> frame, std::size_t order);

}  // namespace lpvoc::dsp
