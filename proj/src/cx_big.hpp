#pragma once

#include <gmpxx.h>

#include "qknot/common.hpp"

namespace qknot::detail {

/// Complex arithmetic over 256-bit GMP floats. Used where binary64 loses to
/// cancellation: certifying roots of high-degree integer polynomials in the
/// monomial basis and the Ctilde recursion windows.
inline constexpr mp_bitcnt_t kBigPrec = 256;

struct CxBig {
  mpf_class re{0, kBigPrec}, im{0, kBigPrec};

  CxBig() = default;
  CxBig(double r, double i) : re(r, kBigPrec), im(i, kBigPrec) {}
  explicit CxBig(Cx z) : CxBig(z.real(), z.imag()) {}

  CxBig operator+(const CxBig& o) const {
    CxBig r;
    r.re = re + o.re;
    r.im = im + o.im;
    return r;
  }
  CxBig operator-(const CxBig& o) const {
    CxBig r;
    r.re = re - o.re;
    r.im = im - o.im;
    return r;
  }
  CxBig operator*(const CxBig& o) const {
    CxBig r;
    r.re = re * o.re - im * o.im;
    r.im = re * o.im + im * o.re;
    return r;
  }
  CxBig operator/(const CxBig& o) const {
    const mpf_class denom = o.re * o.re + o.im * o.im;
    CxBig r;
    r.re = (re * o.re + im * o.im) / denom;
    r.im = (im * o.re - re * o.im) / denom;
    return r;
  }

  double abs_double() const {
    mpf_class sq = re * re + im * im;
    mpf_class root(0, kBigPrec);
    mpf_sqrt(root.get_mpf_t(), sq.get_mpf_t());
    return root.get_d();
  }
  Cx to_cx() const { return {re.get_d(), im.get_d()}; }
};

/// p(z) with exact integer coefficients, ascending.
inline CxBig horner_big(const std::vector<Int>& coeffs, const CxBig& z) {
  CxBig acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z;
    acc.re += mpf_class(*it, kBigPrec);
  }
  return acc;
}

/// p'(z) with exact integer coefficients.
inline CxBig horner_derivative_big(const std::vector<Int>& coeffs, const CxBig& z) {
  CxBig acc;
  for (size_t k = coeffs.size(); k-- > 1;) {
    acc = acc * z;
    acc.re += mpf_class(coeffs[k] * static_cast<long>(k), kBigPrec);
  }
  return acc;
}

inline CxBig horner_big(const std::vector<CxBig>& coeffs, const CxBig& z) {
  CxBig acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline CxBig horner_derivative_big(const std::vector<CxBig>& coeffs, const CxBig& z) {
  CxBig acc;
  for (size_t k = coeffs.size(); k-- > 1;) {
    CxBig scaled = coeffs[k];
    const mpf_class f(static_cast<double>(k), kBigPrec);
    scaled.re *= f;
    scaled.im *= f;
    acc = acc * z + scaled;
  }
  return acc;
}

/// Simultaneous Aberth iteration at extended precision. Roots whose Newton
/// correction has shrunk to the convergence scale are frozen. Coincident
/// iterates (possible when seeds come from a noise-limited binary64 sweep)
/// are split apart deterministically so the repulsion term can act.
inline void aberth_polish_big(const std::vector<CxBig>& coeffs, std::vector<CxBig>& z,
                              int iterations = 40) {
  const CxBig one(1.0, 0.0);
  const size_t n = z.size();
  std::vector<bool> done(n, false);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if ((z[i] - z[j]).abs_double() < 1e-30 * (1.0 + z[i].abs_double()))
        z[j] = z[j] + CxBig(1e-12 * (1.0 + z[j].abs_double()),
                            1e-12 * (1.0 + z[j].abs_double()));
  for (int iter = 0; iter < iterations; ++iter) {
    bool all_done = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const CxBig value = horner_big(coeffs, z[i]);
      if (value.abs_double() == 0.0) {
        done[i] = true;
        continue;
      }
      const CxBig deriv = horner_derivative_big(coeffs, z[i]);
      if (deriv.abs_double() == 0.0) {
        all_done = false;
        continue;
      }
      const CxBig newton = value / deriv;
      if (newton.abs_double() < 1e-33 * (1.0 + z[i].abs_double())) {
        done[i] = true;
        continue;
      }
      all_done = false;
      CxBig repulsion;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const CxBig d = z[i] - z[j];
        if (d.abs_double() > 0.0) repulsion = repulsion + one / d;
      }
      const CxBig denom = one - newton * repulsion;
      const CxBig step = (denom.abs_double() > 0.0) ? newton / denom : newton;
      z[i] = z[i] - step;
    }
    if (all_done) break;
  }
}

/// True when every iterate is a certified root: the Newton correction of
/// the exact polynomial is at the representation scale. Residuals against
/// the max coefficient are meaningless for these polynomials (the local
/// value scale near the roots can sit thirty orders below the largest
/// coefficient).
inline bool roots_certified_big(const std::vector<CxBig>& coeffs, const std::vector<CxBig>& z,
                                double tol = 1e-25) {
  for (const CxBig& zi : z) {
    const CxBig value = horner_big(coeffs, zi);
    if (value.abs_double() == 0.0) continue;
    const CxBig deriv = horner_derivative_big(coeffs, zi);
    if (deriv.abs_double() == 0.0) return false;
    if ((value / deriv).abs_double() > tol * (1.0 + zi.abs_double())) return false;
  }
  return true;
}

}  // namespace qknot::detail

namespace qknot {
class UniPoly;
struct AberthOptions;

namespace detail {
/// All roots at extended precision: the binary64 Aberth sweep followed by
/// simultaneous Aberth polishing on the exact coefficients, with a full
/// extended-precision restart when the binary64 seeds cannot be certified.
/// The downstream saddle identities need |V(root)| far below what
/// double-rounded roots can reach.
std::vector<CxBig> find_roots_big(const UniPoly& p, const AberthOptions& opts);
}  // namespace detail
}  // namespace qknot
