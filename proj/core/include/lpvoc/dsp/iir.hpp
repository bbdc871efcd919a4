#pragma once

#include <span>
#include <utility>
#include <vector>

namespace lpvoc::dsp {

// y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2]
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Cascade of biquads (direct form II transposed per section).
class SosFilter {
 public:
  SosFilter() = default;
  explicit SosFilter(std::vector<Biquad> sections);

  void process(std::span<const double> in, std::span<double> out);
  std::vector<double> process(std::span<const double> in);
  void reset();

  const std::vector<Biquad>& sections() const noexcept { return sections_; }

 private:
  std::vector<Biquad> sections_;
  std::vector<double> s1_, s2_;
};

// Digital Butterworth designs by the bilinear transform with prewarping.
// Orders 1..12; edges strictly inside (0, fs/2). Throws kUnsupportedOrder
// or kBadWindowConfig.
std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double fs);
std::vector<Biquad> butterworth_highpass(int order, double cutoff_hz, double fs);
// Band-pass from an order-N prototype (filter order 2N).
std::vector<Biquad> butterworth_bandpass(int prototype_order, double low_hz,
                                         double high_hz, double fs);

// Expanded numerator and denominator polynomials in z^-1 (a[0] == 1).
std::pair<std::vector<double>, std::vector<double>> transfer_function(
    const std::vector<Biquad>& sections);

}  // namespace lpvoc::dsp
