#include "lpvoc/dsp/iir.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "butter_reference.hpp"
#include "lpvoc/error.hpp"
#include "oracles.hpp"

namespace lpvoc::dsp {
namespace {

void expect_tf(const std::vector<Biquad>& sos, const reference::TransferFunction& want) {
  const auto [b, a] = transfer_function(sos);
  ASSERT_EQ(b.size(), want.b.size());
  ASSERT_EQ(a.size(), want.a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_NEAR(b[i], want.b[i], 1e-12 * (1.0 + std::abs(want.b[i]))) << "b" << i;
    EXPECT_NEAR(a[i], want.a[i], 1e-11 * (1.0 + std::abs(want.a[i]))) << "a" << i;
  }
}

TEST(Butterworth, MatchesReferenceCoefficients) {
  expect_tf(butterworth_lowpass(6, 500, 8000), reference::kLowpass500);
  expect_tf(butterworth_bandpass(3, 500, 1000, 8000), reference::kBandpass500_1000);
  expect_tf(butterworth_bandpass(3, 1000, 2000, 8000), reference::kBandpass1000_2000);
  expect_tf(butterworth_bandpass(3, 2000, 3000, 8000), reference::kBandpass2000_3000);
  expect_tf(butterworth_highpass(6, 3000, 8000), reference::kHighpass3000);
  expect_tf(butterworth_lowpass(6, 1000, 8000), reference::kLowpass1000);
}

TEST(Butterworth, CascadeMatchesDirectForm) {
  const auto x = oracle::random_signal(3, 2000);
  SosFilter f(butterworth_bandpass(3, 1000, 2000, 8000));
  const auto y = f.process(x);
  const auto want = oracle::lfilter(reference::kBandpass1000_2000.b,
                                    reference::kBandpass1000_2000.a, x);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(y[n], want[n], 1e-10);
}

TEST(Butterworth, HalfPowerAtEdges) {
  // |H|^2 = 1/2 at the (prewarped) cutoff.
  auto mag2 = [](const std::vector<Biquad>& sos, double hz) {
    const auto [b, a] = transfer_function(sos);
    const std::complex<double> z = std::exp(std::complex<double>(0, -2 * std::numbers::pi * hz / 8000));
    std::complex<double> nb = 0, na = 0, zk = 1;
    for (std::size_t k = 0; k < b.size(); ++k, zk *= z) {
      nb += b[k] * zk;
      na += a[k] * zk;
    }
    return std::norm(nb / na);
  };
  EXPECT_NEAR(mag2(butterworth_lowpass(6, 500, 8000), 500), 0.5, 1e-9);
  EXPECT_NEAR(mag2(butterworth_highpass(6, 3000, 8000), 3000), 0.5, 1e-9);
  EXPECT_NEAR(mag2(butterworth_bandpass(3, 1000, 2000, 8000), 1000), 0.5, 1e-9);
  EXPECT_NEAR(mag2(butterworth_bandpass(3, 1000, 2000, 8000), 2000), 0.5, 1e-9);
  EXPECT_NEAR(mag2(butterworth_lowpass(3, 700, 8000), 700), 0.5, 1e-9);
}

TEST(Butterworth, StreamingEqualsBlock) {
  const auto x = oracle::random_signal(4, 999);
  SosFilter a(butterworth_highpass(6, 3000, 8000)), b(a.sections());
  const auto whole = a.process(x);
  std::vector<double> parts;
  for (std::size_t s = 0; s < x.size(); s += 100) {
    const auto chunk = b.process(std::span<const double>(x).subspan(s, std::min<std::size_t>(100, x.size() - s)));
    parts.insert(parts.end(), chunk.begin(), chunk.end());
  }
  EXPECT_EQ(whole, parts);
}

TEST(Butterworth, Errors) {
  EXPECT_THROW(butterworth_lowpass(0, 500, 8000), Error);
  EXPECT_THROW(butterworth_lowpass(6, 4000, 8000), Error);
  EXPECT_THROW(butterworth_bandpass(3, 2000, 1000, 8000), Error);
}

}  // namespace
}  // namespace lpvoc::dsp
