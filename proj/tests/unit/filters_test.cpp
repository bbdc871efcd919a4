#include "lpvoc/dsp/filters.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/rng.hpp"
#include "oracles.hpp"

namespace lpvoc::dsp {
namespace {

TEST(CelpWeighting, UnitGammaIsIdentity) {
  const auto x = oracle::random_signal(3, 10000);
  const LpcCoeffs q(oracle::random_stable_predictor(3, 10));
  const auto y = apply_weighting_celp(x, q, 1.0);
  for (std::size_t n = 0; n < x.size(); ++n) ASSERT_NEAR(y[n], x[n], 1e-10);
}

TEST(CelpWeighting, ZeroPredictorIsIdentity) {
  const auto x = oracle::random_signal(4, 500);
  const auto y = apply_weighting_celp(x, LpcCoeffs::zeros(10), 0.8);
  for (std::size_t n = 0; n < x.size(); ++n) ASSERT_EQ(y[n], x[n]);
}

TEST(CelpWeighting, ImpulseResponseMatchesRecursion) {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    const auto q = oracle::random_stable_predictor(seed, 10);
    std::vector<double> impulse(200, 0.0);
    impulse[0] = 1.0;
    const auto y = apply_weighting_celp(impulse, LpcCoeffs(q), 0.8);
    const auto expected = oracle::pole_zero(impulse, q, oracle::scaled_powers(q, 0.8));
    for (std::size_t n = 0; n < y.size(); ++n) ASSERT_NEAR(y[n], expected[n], 1e-9);
  }
}

TEST(CelpWeighting, StreamingMatchesOneShot) {
  const auto x = oracle::random_signal(5, 600);
  const LpcCoeffs q(oracle::random_stable_predictor(5, 10));
  const auto whole = apply_weighting_celp(x, q, 0.8);
  PoleZeroFilter state(10);
  std::vector<double> pieces;
  for (std::size_t start = 0; start < x.size(); start += 60) {
    const auto part = apply_weighting_celp(
        std::span<const double>(x).subspan(start, 60), q, 0.8, &state);
    pieces.insert(pieces.end(), part.begin(), part.end());
  }
  ASSERT_EQ(pieces.size(), whole.size());
  for (std::size_t n = 0; n < x.size(); ++n) ASSERT_NEAR(pieces[n], whole[n], 1e-9);
}

TEST(CelpWeighting, RejectsBadGammaAndUnstablePredictor) {
  const std::vector<double> x(10, 1.0);
  try {
    apply_weighting_celp(x, LpcCoeffs::zeros(2), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGammaOutOfRange);
  }
  // 1 - 2.5 z^-1 + z^-2 has a root at z = 2.
  try {
    apply_weighting_celp(x, LpcCoeffs({2.5, -1.0}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnstableDenominator);
  }
}

TEST(LdcelpWeighting, EqualGammasAreIdentity) {
  const auto x = oracle::random_signal(6, 10000);
  const LpcCoeffs q(oracle::random_stable_predictor(6, 10));
  const auto y = apply_weighting_ldcelp(x, q, 0.9, 0.9, /*relaxed=*/true);
  for (std::size_t n = 0; n < x.size(); ++n) ASSERT_NEAR(y[n], x[n], 1e-10);
}

TEST(LdcelpWeighting, ZeroGamma2IsPureFir) {
  const auto x = oracle::random_signal(8, 300);
  const auto q = oracle::random_stable_predictor(8, 10);
  const auto y = apply_weighting_ldcelp(x, LpcCoeffs(q), 0.9, 0.0, true);
  const auto expected = oracle::pole_zero(x, oracle::scaled_powers(q, 0.9), {});
  for (std::size_t n = 0; n < x.size(); ++n) ASSERT_NEAR(y[n], expected[n], 1e-9);
}

TEST(LdcelpWeighting, DcGainMatchesPolynomialRatio) {
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const auto q = oracle::random_stable_predictor(seed, 10, 0.7);
    const double g1 = 0.9, g2 = 0.6;
    double num = 1.0, den = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      num -= std::pow(g1, double(i + 1)) * q[i];
      den -= std::pow(g2, double(i + 1)) * q[i];
    }
    const std::vector<double> step(4000, 1.0);
    const auto y = apply_weighting_ldcelp(step, LpcCoeffs(q), g1, g2);
    EXPECT_NEAR(y.back(), num / den, 1e-9 * std::max(1.0, std::abs(num / den)));
  }
}

TEST(LdcelpWeighting, GammaOrderEnforced) {
  const std::vector<double> x(10, 1.0);
  try {
    apply_weighting_ldcelp(x, LpcCoeffs::zeros(2), 0.6, 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGammaOrderViolation);
  }
  EXPECT_THROW(apply_weighting_ldcelp(x, LpcCoeffs::zeros(2), 0.9, 0.9), Error);
  EXPECT_NO_THROW(apply_weighting_ldcelp(x, LpcCoeffs::zeros(2), 0.9, 0.6));
}

TEST(Synthesis, ZeroPredictorPassesExcitation) {
  const auto e = oracle::random_signal(9, 100);
  SynthesisFilter state(10);
  EXPECT_EQ(synthesis_filter(e, LpcCoeffs::zeros(10), state), e);
}

TEST(Synthesis, GeometricImpulseResponse) {
  std::vector<double> e(8, 0.0);
  e[0] = 1.0;
  SynthesisFilter state(1);
  const auto y = synthesis_filter(e, LpcCoeffs({0.5}), state);
  double expect = 1.0;
  for (double v : y) {
    EXPECT_DOUBLE_EQ(v, expect);
    expect *= 0.5;
  }
}

TEST(Synthesis, MatchesRecursionAcrossBlocks) {
  const auto q = oracle::random_stable_predictor(11, 10);
  const auto e = oracle::random_signal(11, 480);
  const auto expected = oracle::all_pole(e, q);
  SynthesisFilter state(10);
  std::vector<double> y;
  for (std::size_t s = 0; s < e.size(); s += 40) {
    auto part = synthesis_filter(std::span<const double>(e).subspan(s, 40),
                                 LpcCoeffs(q), state);
    y.insert(y.end(), part.begin(), part.end());
  }
  for (std::size_t n = 0; n < e.size(); ++n) {
    ASSERT_NEAR(y[n], expected[n], 1e-9 * std::max(1.0, std::abs(expected[n])));
  }
}

TEST(Synthesis, RejectsUnstablePredictor) {
  const std::vector<double> e(4, 1.0);
  SynthesisFilter state(1);
  try {
    synthesis_filter(e, LpcCoeffs({1.5}), state);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kUnstableFilter);
  }
}

TEST(Synthesis, BoundedInputBoundedOutput) {
  const LpcCoeffs q(oracle::random_stable_predictor(12, 10, 0.95));
  SynthesisFilter state(10);
  Rng rng(12);
  std::vector<double> block(10000);
  double peak = 0.0;
  for (int b = 0; b < 100; ++b) {
    for (auto& v : block) v = rng.uniform(-1.0, 1.0);
    for (double v : synthesis_filter(block, q, state)) {
      ASSERT_TRUE(std::isfinite(v));
      peak = std::max(peak, std::abs(v));
    }
  }
  // l1 norm of the impulse response bounds the output for |e| <= 1.
  double l1 = 0.0;
  for (double h : impulse_response(q, 20000)) l1 += std::abs(h);
  EXPECT_LE(peak, l1 + 1e-9);
}

}  // namespace
}  // namespace lpvoc::dsp
