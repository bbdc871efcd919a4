#include "lpvoc/dsp/lsf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lpvoc/dsp/lpc.hpp"
#include "lpvoc/error.hpp"
#include "lpvoc/rng.hpp"
#include "oracles.hpp"

namespace lpvoc::dsp {
namespace {

// Roots of the P/Q polynomials of a flat spectrum, found independently as
// the unit-circle roots of 1 +/- z^-(M+1).
TEST(LpcToLsf, FlatSpectrumIsUniform) {
  const auto lsf = lpc_to_lsf(LpcCoeffs::zeros(10));
  ASSERT_EQ(lsf.order(), 10u);
  std::vector<double> expected;
  for (int k = 1; k <= 10; ++k) {
    // z^11 = -1 gives odd multiples of pi/11, z^11 = 1 even ones.
    const auto roots = oracle::predictor_roots(
        std::vector<double>{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, k % 2 ? -1.0 : 1.0});
    double best = 10.0;
    for (auto z : roots) {
      const double ang = std::arg(z);
      if (ang > 0 && std::abs(ang - k * std::numbers::pi / 11) < std::abs(best - k * std::numbers::pi / 11)) {
        best = ang;
      }
    }
    expected.push_back(best);
  }
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(lsf.omega[k], expected[k], 1e-8);
    EXPECT_NEAR(lsf.omega[k], (k + 1) * std::numbers::pi / 11.0, 1e-8);
  }
}

TEST(LpcToLsf, RoundTripAndMonotonicity) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const LpcCoeffs q(oracle::random_stable_predictor(seed, 10, 0.9));
    const auto lsf = lpc_to_lsf(q);
    ASSERT_TRUE(is_valid_lsf(lsf)) << "seed " << seed;
    const auto back = lsf_to_lpc(lsf);
    for (std::size_t i = 0; i < 10; ++i) {
      ASSERT_NEAR(back.q[i], q.q[i], 1e-6) << "seed " << seed;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(LpcToLsf, RejectsNonMinimumPhase) {
  try {
    lpc_to_lsf(LpcCoeffs({0, 0, 0, 0, 0, 0, 0, 0, 0, 1.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMinimumPhase);
  }
  EXPECT_THROW(lpc_to_lsf(LpcCoeffs({0.5, 0.1, 0.1})), Error);
}

TEST(LsfToLpc, RejectsNonMonotone) {
  Lsf bad{{0.3, 0.2, 0.5, 0.9}};
  try {
    lsf_to_lpc(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMonotoneLsf);
  }
}

TEST(LsfToLpc, AnyMonotoneSetIsStable) {
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    Lsf lsf;
    for (int i = 0; i < 10; ++i) lsf.omega.push_back(rng.uniform(0.01, 3.13));
    lsf = stabilize_lsf(lsf, 0.01);
    ASSERT_TRUE(is_valid_lsf(lsf));
    EXPECT_LT(oracle::max_root_magnitude(lsf_to_lpc(lsf).q), 1.0);
  }
}

TEST(StabilizeLsf, EnforcesGap) {
  const auto out = stabilize_lsf(Lsf{{0.5, 0.5, 0.0, 3.14159}}, 0.05);
  ASSERT_TRUE(is_valid_lsf(out));
  for (std::size_t i = 1; i < out.order(); ++i) {
    EXPECT_GE(out.omega[i] - out.omega[i - 1], 0.05 - 1e-12);
  }
}

}  // namespace
}  // namespace lpvoc::dsp
