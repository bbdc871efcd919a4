#include "lpvoc/dsp/lpc.hpp"

#include <cmath>
#include <numbers>

#include "lpvoc/error.hpp"

namespace lpvoc::dsp {

std::vector<double> autocorrelate(std::span<const double> frame,
                                  std::size_t max_lag) {
  if (frame.empty()) throw Error(ErrorCode::kEmptyFrame, "autocorrelate");
  if (max_lag >= frame.size()) {
    throw Error(ErrorCode::kLagTooLarge, "max_lag must be below frame length");
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t n = k; n < frame.size(); ++n) sum += frame[n] * frame[n - k];
    r[k] = sum;
  }
  return r;
}

LevinsonResult levinson_durbin(std::span<const double> autocorr,
                               std::size_t order) {
  if (autocorr.size() < order + 1) {
    throw Error(ErrorCode::kSingularAutocorrelation,
                "autocorrelation shorter than order + 1");
  }
  if (!(autocorr[0] > 0.0)) {
    throw Error(ErrorCode::kSingularAutocorrelation, "r_0 must be positive");
  }

  LevinsonResult out;
  out.errors.reserve(order + 1);
  out.reflection.reserve(order);
  std::vector<double> a(order, 0.0);
  std::vector<double> prev(order, 0.0);
  double err = autocorr[0];
  out.errors.push_back(err);

  for (std::size_t i = 0; i < order; ++i) {
    double acc = autocorr[i + 1];
    for (std::size_t j = 0; j < i; ++j) acc -= a[j] * autocorr[i - j];
    const double k = acc / err;
    if (!(std::abs(k) < 1.0)) {
      throw Error(ErrorCode::kSingularAutocorrelation,
                  "autocorrelation is not positive definite");
    }
    prev.assign(a.begin(), a.end());
    a[i] = k;
    for (std::size_t j = 0; j < i; ++j) a[j] = prev[j] - k * prev[i - 1 - j];
    err *= (1.0 - k * k);
    out.reflection.push_back(k);
    out.errors.push_back(err);
  }
  out.lpc = LpcCoeffs(std::move(a));
  return out;
}

LpcCoeffs bandwidth_expand(const LpcCoeffs& lpc, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kGammaOutOfRange, "gamma must lie in [0, 1]");
  }
  LpcCoeffs out = lpc;
  double g = gamma;
  for (double& c : out.q) {
    c *= g;
    g *= gamma;
  }
  return out;
}

double bandwidth_gamma_for_hz(double hz) {
  return std::exp(-std::numbers::pi * hz / kSampleRate);
}

std::vector<double> lpc_to_reflection(const LpcCoeffs& lpc) {
  const std::size_t m = lpc.order();
  std::vector<double> a = lpc.q;
  std::vector<double> k(m, 0.0);
  std::vector<double> tmp(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    const double ki = a[i];
    if (!(std::abs(ki) < 1.0)) return {};
    k[i] = ki;
    const double denom = 1.0 - ki * ki;
    for (std::size_t j = 0; j < i; ++j) {
      tmp[j] = (a[j] + ki * a[i - 1 - j]) / denom;
    }
    for (std::size_t j = 0; j < i; ++j) a[j] = tmp[j];
  }
  return k;
}

bool is_minimum_phase(const LpcCoeffs& lpc) {
  if (lpc.order() == 0) return true;
  return !lpc_to_reflection(lpc).empty();
}

std::vector<double> hamming_window(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / denom);
  }
  return w;
}

std::vector<double> inverse_filter(std::span<const double> signal,
                                   const LpcCoeffs& lpc) {
  std::vector<double> out(signal.size());
  for (std::size_t n = 0; n < signal.size(); ++n) {
    double v = signal[n];
    for (std::size_t i = 0; i < lpc.order() && i < n; ++i) {
      v -= lpc.q[i] * signal[n - 1 - i];
    }
    out[n] = v;
  }
  return out;
}

LpcCoeffs analyze_frame(std::span<const double> frame, std::size_t order) {
  const auto window = hamming_window(frame.size());
  std::vector<double> windowed(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n) windowed[n] = frame[n] * window[n];
  if (frame.size() <= order) return LpcCoeffs::zeros(order);
  auto r = autocorrelate(windowed, order);
  if (!(r[0] > 0.0)) return LpcCoeffs::zeros(order);
  // -40 dB white-noise floor keeps the normal equations well conditioned.
  r[0] *= 1.0001;
  try {
    return levinson_durbin(r, order).lpc;
  } catch (const Error&) {
    return LpcCoeffs::zeros(order);
  }
}

}  // namespace lpvoc::dsp
