#pragma once

#include <span>
#include <utility>

#include "qknot/bivar_poly.hpp"
#include "qknot/common.hpp"

namespace qknot::apoly {

enum class NamedPoly { Z, X };

/// Exact transcriptions of the two recursion kernels (10 terms for Z, 9 for
/// X); X - Z = m^2 (l + m^2)^2.
BivarPoly named_poly(NamedPoly which);

enum class Sign { plus, minus };

/// 2x2 matrix over the l/m polynomial ring. Every entry has even m-powers.
struct TwoByTwo {
  BivarPoly a11, a12, a21, a22;

  TwoByTwo mul(const TwoByTwo& rhs) const;
  TwoByTwo transpose() const;
  BivarPoly det() const;
  BivarPoly trace() const;
};

/// The recursion matrices M+ and M-.
TwoByTwo recursion_matrix(Sign sign);

/// (A_p, B_p): the matrix recursion applied to the seed pair. p >= 1 starts
/// from (A_1, B_1) = (l + m^6, m^2 (l+m^2)^2); p <= 0 starts from
/// (A_0, B_0) = (1, 1 + l m^2). Kept exactly as produced, no content
/// normalization.
std::pair<BivarPoly, BivarPoly> ab_pair(int p);

/// A-polynomial of the twist knot K_p via the matrix recursion. p != 0.
BivarPoly apoly_twist(int p);

/// Same value through the independent 3-term recursion
///   A_{p+1} = -X A_p - m^4 (l+m^2)^4 A_{p-1}   (seeds A_1, A_2)
///   A_{-p-1} = X A_{-p} - m^4 (l+m^2)^4 A_{-p+1}  (seeds A_0, A_{-1}).
BivarPoly apoly_twist_3term(int p);

/// A-polynomial 1 + l m^{4p+2} of the torus knot T(2, 2p+1), p >= 1.
BivarPoly apoly_torus(int p);

/// Checks M^t J M = det(M) J (J the standard symplectic matrix),
/// det(M+-) = m^4 (l+m^2)^4, and M+ M- = -m^4 (l+m^2)^4 * Identity, all as
/// exact polynomial identities.
Report verify_matrix_identities();

/// Trace / determinant of M+- against the characteristic polynomial
/// coefficients, plus Cayley-Hamilton F(M) = 0 instantiated symbolically.
Report char_poly_check(Sign sign);

/// Numeric check of the Ctilde recursion at sample (l, m) points for all
/// windows |k| < p_max; samples that hit a pole are skipped with a notice.
Report ctilde_recursion_check(int p_max, std::span<const std::pair<Cx, Cx>> samples);

}  // namespace qknot::apoly
