#include "lpvoc/dsp/iir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "lpvoc/error.hpp"

namespace lpvoc::dsp {

namespace {

using cplx = std::complex<double>;

enum class Kind { kLow, kHigh, kBand };

void check_edge(double f, double fs) {
  if (!(f > 0.0 && f < fs / 2.0)) {
    throw Error(ErrorCode::kBadWindowConfig, "filter edge must lie in (0, fs/2)");
  }
}

void check_order(int order) {
  if (order < 1 || order > 12) {
    throw Error(ErrorCode::kUnsupportedOrder, "Butterworth order must be 1..12");
  }
}

double prewarp(double f, double fs) { return 2.0 * fs * std::tan(std::numbers::pi * f / fs); }

std::vector<cplx> prototype_poles(int n) {
  std::vector<cplx> p;
  for (int k = -n + 1; k < n; k += 2) {
    p.push_back(-std::exp(cplx(0.0, std::numbers::pi * k / (2.0 * n))));
  }
  return p;
}

cplx response(const std::vector<Biquad>& sos, double omega) {
  const cplx z1 = std::exp(cplx(0.0, -omega));
  const cplx z2 = z1 * z1;
  cplx h = 1.0;
  for (const auto& s : sos) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return h;
}

// Groups digital poles into real-coefficient sections. Every section gets
// the zeros appropriate to the kind; the overall gain is fixed afterwards.
std::vector<Biquad> sections_from_poles(std::vector<cplx> poles, Kind kind) {
  constexpr double kImagTol = 1e-12;
  std::vector<cplx> complex_upper;
  std::vector<double> real;
  for (const auto& p : poles) {
    if (std::abs(p.imag()) <= kImagTol) {
      real.push_back(p.real());
    } else if (p.imag() > 0.0) {
      complex_upper.push_back(p);
    }
  }
  std::sort(complex_upper.begin(), complex_upper.end(),
            [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  std::sort(real.begin(), real.end());

  std::vector<Biquad> out;
  auto numerator = [&](Biquad& s, int zeros) {
    if (kind == Kind::kLow) {
      if (zeros == 2) { s.b0 = 1; s.b1 = 2; s.b2 = 1; } else { s.b0 = 1; s.b1 = 1; s.b2 = 0; }
    } else if (kind == Kind::kHigh) {
      if (zeros == 2) { s.b0 = 1; s.b1 = -2; s.b2 = 1; } else { s.b0 = 1; s.b1 = -1; s.b2 = 0; }
    } else {
      s.b0 = 1; s.b1 = 0; s.b2 = -1;
    }
  };
  for (const auto& p : complex_upper) {
    Biquad s;
    s.a1 = -2.0 * p.real();
    s.a2 = std::norm(p);
    numerator(s, 2);
    out.push_back(s);
  }
  for (std::size_t i = 0; i < real.size(); i += 2) {
    Biquad s;
    if (i + 1 < real.size()) {
      s.a1 = -(real[i] + real[i + 1]);
      s.a2 = real[i] * real[i + 1];
      numerator(s, 2);
    } else {
      s.a1 = -real[i];
      s.a2 = 0.0;
      numerator(s, 1);
    }
    out.push_back(s);
  }
  return out;
}

cplx bilinear(cplx s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

std::vector<Biquad> design(Kind kind, int order, double f1, double f2, double fs) {
  check_order(order);
  check_edge(f1, fs);
  if (kind == Kind::kBand) {
    check_edge(f2, fs);
    if (!(f1 < f2)) throw Error(ErrorCode::kBadWindowConfig, "band edges must increase");
  }
  const auto proto = prototype_poles(order);
  std::vector<cplx> digital;
  double norm_omega = 0.0;
  if (kind == Kind::kLow) {
    const double wo = prewarp(f1, fs);
    for (auto p : proto) digital.push_back(bilinear(p * wo, fs));
  } else if (kind == Kind::kHigh) {
    const double wo = prewarp(f1, fs);
    for (auto p : proto) digital.push_back(bilinear(wo / p, fs));
    norm_omega = std::numbers::pi;
  } else {
    const double w1 = prewarp(f1, fs);
    const double w2 = prewarp(f2, fs);
    const double bw = w2 - w1;
    const double wo = std::sqrt(w1 * w2);
    for (auto p : proto) {
      const cplx half = p * bw / 2.0;
      const cplx root = std::sqrt(half * half - wo * wo);
      digital.push_back(bilinear(half + root, fs));
      digital.push_back(bilinear(half - root, fs));
    }
    norm_omega = 2.0 * std::atan(wo / (2.0 * fs));
  }
  auto sos = sections_from_poles(std::move(digital), kind);
  // Unit magnitude at DC, Nyquist or the band centre.
  const double g = 1.0 / std::abs(response(sos, norm_omega));
  sos.front().b0 *= g;
  sos.front().b1 *= g;
  sos.front().b2 *= g;
  return sos;
}

}  // namespace

SosFilter::SosFilter(std::vector<Biquad> sections)
    : sections_(std::move(sections)),
      s1_(sections_.size(), 0.0),
      s2_(sections_.size(), 0.0) {}

void SosFilter::process(std::span<const double> in, std::span<double> out) {
  for (std::size_t n = 0; n < in.size(); ++n) {
    double x = in[n];
    for (std::size_t k = 0; k < sections_.size(); ++k) {
      const auto& s = sections_[k];
      const double y = s.b0 * x + s1_[k];
      s1_[k] = s.b1 * x - s.a1 * y + s2_[k];
      s2_[k] = s.b2 * x - s.a2 * y;
      x = y;
    }
    out[n] = x;
  }
}

std::vector<double> SosFilter::process(std::span<const double> in) {
  std::vector<double> out(in.size());
  process(in, out);
  return out;
}

void SosFilter::reset() {
  std::fill(s1_.begin(), s1_.end(), 0.0);
  std::fill(s2_.begin(), s2_.end(), 0.0);
}

std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double fs) {
  return design(Kind::kLow, order, cutoff_hz, 0.0, fs);
}

std::vector<Biquad> butterworth_highpass(int order, double cutoff_hz, double fs) {
  return design(Kind::kHigh, order, cutoff_hz, 0.0, fs);
}

std::vector<Biquad> butterworth_bandpass(int prototype_order, double low_hz,
                                         double high_hz, double fs) {
  return design(Kind::kBand, prototype_order, low_hz, high_hz, fs);
}

std::pair<std::vector<double>, std::vector<double>> transfer_function(
    const std::vector<Biquad>& sections) {
  std::vector<double> b{1.0}, a{1.0};
  auto mul = [](const std::vector<double>& p, std::array<double, 3> q) {
    std::vector<double> r(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) r[i + j] += p[i] * q[j];
    }
    return r;
  };
  std::size_t order = 0;
  for (const auto& s : sections) {
    b = mul(b, {s.b0, s.b1, s.b2});
    a = mul(a, {1.0, s.a1, s.a2});
    order += (s.a2 != 0.0 || s.b2 != 0.0) ? 2 : 1;
  }
  b.resize(order + 1);
  a.resize(order + 1);
  return {b, a};
}

}  // namespace lpvoc::dsp
