#include "lpvoc/dsp/lsf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lpvoc/error.hpp"

namespace lpvoc::dsp {

namespace {

constexpr std::size_t kGridPoints = 512;
constexpr double kBisectionTolerance = 1e-12;

// Evaluates the symmetric polynomial c_0..c_M (M even) on the unit circle,
// with the linear phase removed: 2 sum_{k<h} c_k cos((h-k) w) + c_h, h = M/2,
// as a Chebyshev series in x = cos w (Clenshaw recurrence).
double eval_symmetric(const std::vector<double>& c, double omega) {
  const std::size_t h = (c.size() - 1) / 2;
  const double x = std::cos(omega);
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t n = h; n >= 1; --n) {
    const double coef = 2.0 * c[h - n];
    const double b0 = coef + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[h] + x * b1 - b2;
}

std::vector<double> find_roots(const std::vector<double>& c,
                               std::size_t grid_points) {
  std::vector<double> roots;
  const double step = std::numbers::pi / static_cast<double>(grid_points);
  double lo = 0.0;
  double f_lo = eval_symmetric(c, lo);
  for (std::size_t j = 1; j <= grid_points; ++j) {
    const double hi = step * static_cast<double>(j);
    const double f_hi = eval_symmetric(c, hi);
    if (f_lo == 0.0 && lo > 0.0) {
      roots.push_back(lo);
    } else if ((f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0)) {
      double a = lo;
      double b = hi;
      double fa = f_lo;
      while (b - a > kBisectionTolerance) {
        const double mid = 0.5 * (a + b);
        const double fm = eval_symmetric(c, mid);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  return roots;
}

// Multiplies `poly` (coefficients in z^-1) by (1 + b z^-1 + z^-2).
void multiply_quadratic(std::vector<double>& poly, double b) {
  std::vector<double> out(poly.size() + 2, 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i] += poly[i];
    out[i + 1] += b * poly[i];
    out[i + 2] += poly[i];
  }
  poly = std::move(out);
}

}  // namespace

bool is_valid_lsf(const Lsf& lsf) noexcept {
  double prev = 0.0;
  for (double w : lsf.omega) {
    if (!(w > prev) || !(w < std::numbers::pi)) return false;
    prev = w;
  }
  return true;
}

Lsf lpc_to_lsf(const LpcCoeffs& lpc) {
  const std::size_t m = lpc.order();
  if (m == 0 || m % 2 != 0) {
    throw Error(ErrorCode::kUnsupportedOrder, "LSF conversion needs even order");
  }
  // A(z) = 1 - sum q_i z^-i
  std::vector<double> a(m + 2, 0.0);
  a[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) a[i + 1] = -lpc.q[i];

  std::vector<double> p(m + 1);
  std::vector<double> q(m + 1);
  double prev_p = 0.0;
  double prev_q = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double sum = a[k] + a[m + 1 - k];
    const double diff = a[k] - a[m + 1 - k];
    p[k] = sum - prev_p;   // divide by (1 + z^-1)
    q[k] = diff + prev_q;  // divide by (1 - z^-1)
    prev_p = p[k];
    prev_q = q[k];
  }

  for (std::size_t grid : {kGridPoints, kGridPoints * 8}) {
    const auto p_roots = find_roots(p, grid);
    const auto q_roots = find_roots(q, grid);
    if (p_roots.size() != m / 2 || q_roots.size() != m / 2) continue;
    Lsf out;
    out.omega.reserve(m);
    for (std::size_t i = 0; i < m / 2; ++i) {
      out.omega.push_back(p_roots[i]);
      out.omega.push_back(q_roots[i]);
    }
    if (is_valid_lsf(out)) return out;
  }
  throw Error(ErrorCode::kNonMinimumPhase,
              "LSF roots do not interleave; predictor not minimum phase");
}

LpcCoeffs lsf_to_lpc(const Lsf& lsf) {
  const std::size_t m = lsf.order();
  if (m == 0 || m % 2 != 0) {
    throw Error(ErrorCode::kUnsupportedOrder, "LSF conversion needs even order");
  }
  if (!is_valid_lsf(lsf)) {
    throw Error(ErrorCode::kNonMonotoneLsf,
                "LSFs must be strictly increasing in (0, pi)");
  }
  std::vector<double> p{1.0};
  std::vector<double> q{1.0};
  for (std::size_t i = 0; i < m; i += 2) {
    multiply_quadratic(p, -2.0 * std::cos(lsf.omega[i]));
    multiply_quadratic(q, -2.0 * std::cos(lsf.omega[i + 1]));
  }
  // Restore the trivial roots: P *= (1 + z^-1), Q *= (1 - z^-1).
  std::vector<double> full_p(m + 2, 0.0);
  std::vector<double> full_q(m + 2, 0.0);
  for (std::size_t k = 0; k <= m; ++k) {
    full_p[k] += p[k];
    full_p[k + 1] += p[k];
    full_q[k] += q[k];
    full_q[k + 1] -= q[k];
  }
  LpcCoeffs out = LpcCoeffs::zeros(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.q[i] = -0.5 * (full_p[i + 1] + full_q[i + 1]);
  }
  return out;
}

Lsf stabilize_lsf(Lsf lsf, double min_gap) {
  auto& w = lsf.omega;
  std::sort(w.begin(), w.end());
  const std::size_t m = w.size();
  if (m == 0) return lsf;
  const double top = std::numbers::pi - min_gap;
  for (std::size_t i = 0; i < m; ++i) {
    const double floor = i == 0 ? min_gap : w[i - 1] + min_gap;
    w[i] = std::max(w[i], floor);
  }
  for (std::size_t i = m; i-- > 0;) {
    const double ceil = i + 1 == m ? top : w[i + 1] - min_gap;
    w[i] = std::min(w[i], ceil);
  }
  return lsf;
}

}  // namespace lpvoc::dsp
