#pragma once

#include "lpvoc/dsp/types.hpp"

namespace lpvoc::dsp {

// LPC <-> line spectral frequency conversion for even predictor orders.
//
// The sum and difference polynomials P(z) = A(z) + z^-(M+1) A(1/z) and
// Q(z) = A(z) - z^-(M+1) A(1/z) (A = 1 - Q) have their trivial roots at
// z = -1 and z = +1 divided out; the remaining roots lie on the unit circle
// and interleave, P first. Roots are bracketed on a 512-point grid in
// omega (Chebyshev series in cos omega) and refined by bisection.
//
// lpc_to_lsf throws kNonMinimumPhase if the roots do not interleave (the
// input was not minimum phase) and kUnsupportedOrder for odd orders.
Lsf lpc_to_lsf(const LpcCoeffs& lpc);

// Throws kNonMonotoneLsf unless 0 < omega_1 < ... < omega_M < pi.
LpcCoeffs lsf_to_lpc(const Lsf& lsf);

bool is_valid_lsf(const Lsf& lsf) noexcept;

// Sorts and pushes neighbouring frequencies at least `min_gap` radians
// apart inside [min_gap, pi - min_gap]. Used after quantization so decoded
// LSFs always describe a stable filter.
Lsf stabilize_lsf(Lsf lsf, double min_gap);

}  // namespace lpvoc::dsp
