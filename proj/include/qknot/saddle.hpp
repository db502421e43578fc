#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qknot/common.hpp"
#include "qknot/knot_spec.hpp"
#include "qknot/uni_poly.hpp"

namespace qknot::saddle {

/// Candidate saddle point of the H potential: values (x_0, ..., x_{|p|-1})
/// with the convention x_{|p|} = 1, the parameters m^2 and ell, and one
/// nonnegative residual per constraint equation in exponentiated rational
/// form. A chain is admitted iff every residual is below 1e-8.
struct SaddleChain {
  std::vector<Cx> x;
  Cx m2{1.0, 0.0};
  Cx ell{-1.0, 0.0};
  std::vector<double> residuals;

  static constexpr double admit_tol = 1e-8;
  bool admitted() const {
    for (double r : residuals)
      if (!(r < admit_tol)) return false;
    return !residuals.empty();
  }
  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

/// H potential of the twist knot K_p evaluated on a chain (principal
/// branches; raw Re H is branch-convention dependent, Im H is what feeds the
/// volumes).
Cx h_twist(int p, const SaddleChain& chain);

/// H potential of the torus knot T(2, 2p+1).
Cx h_torus(int p, const SaddleChain& chain);

enum class TrefoilVariant { a, b, c };

/// The three single-variable trefoil potentials.
Cx h_trefoil(TrefoilVariant variant, Cx x, Cx m2);

/// x_0 solving the first constraint equation: (1 + ell m^2)/(ell + m^2) for
/// twist knots, (1 + ell m^{4p+2})/(m^2 (1 + ell m^{4p-2})) for torus knots.
/// Throws on a vanishing denominator.
Cx x0_closed_form(const KnotSpec& knot, Cx ell, Cx m2);

struct ChainPoleError : std::runtime_error {
  ChainPoleError(std::string what, int index) : std::runtime_error(std::move(what)), index(index) {}
  int index;
};

/// C_0(x0), ..., C_kmax(x0) of the family's chain recursion (C_{-k} for
/// negative twist knots). Throws ChainPoleError when the recursion hits a
/// pole.
std::vector<Cx> chain_ratios(const KnotSpec& knot, Cx x0, Cx m2, int kmax);

/// Full chain built from x0 via x_{|p|-k} = x0 C_k(x0); ell comes from the
/// first constraint and residuals are filled in.
SaddleChain chain_from_x0(const KnotSpec& knot, Cx x0, Cx m2);

/// One |LHS - RHS| residual per constraint equation, in exponentiated
/// rational form (never the multivalued log form). Order: ell equation,
/// x_0 equation, then the interior equations i = 1..|p|-1.
std::vector<double> residuals(const KnotSpec& knot, const SaddleChain& chain);

/// exp(x_i dH/dx_i) for i = 0..|p|-1 followed by exp(m^2 dH/dm^2), as
/// closed-form rational expressions (each equals 1, resp. ell, at a saddle).
std::vector<Cx> rational_constraint_values(const KnotSpec& knot, const SaddleChain& chain);

/// Same quantities by central finite differences of H (default step 1e-6).
std::vector<Cx> fd_constraint_values(const KnotSpec& knot, const SaddleChain& chain,
                                     double step = 1e-6);

/// For every root ell of the A-polynomial at this m: rebuild the chain and
/// verify C_p(x0) = 1 and all residuals < 1e-8; additionally verify the
/// bridge identity 1 - C_p(x0) = (1-ell)(1-m^2) Ctilde_p at a non-root ell.
/// Torus knots are checked through the bridge identity and the x0 = 0
/// degeneration (the chain itself is singular at x0 = 0).
Report crosscheck_apoly_saddle(const KnotSpec& knot, Cx m);

struct VPoly {
  int k;
  UniPoly poly;
};

/// V_k(z) = sum_j binom(k + floor(j/2), j) z^j for k > 0 and the
/// V_{-k} variant; V_0 = 1.
VPoly vpoly(int k);

/// 3-term, difference and bilinear identities (exact), the Chu-Vandermonde
/// values at +-2i (exact), and the terminating-hypergeometric forms
/// (numeric, 1e-9) for all |k| <= k_max.
Report vpoly_identity_suite(int k_max, int num_samples = 20, std::uint64_t seed = 20240721);

struct CompleteSolution {
  SaddleChain chain;   // m^2 = 1, ell = -1
  Cx x0;
  double im_h_dsum;    // V-ratio closed form of Im H
  double im_h_direct;  // 3 D(1/x0) + sum D(x_i/x_{i+1}) on the chain values
};

/// All m^2 = 1 saddle chains of K_p: one entry per root of
/// V_{-p}(1 - x0) = 0 (p > 0) or V_p(x0 - 1) = 0 (p < 0). Im H is computed
/// two ways -- the V-ratio closed form and the branch-stable D-function
/// identity on the chain -- and the two are required to agree to 1e-8.
/// (Raw principal-branch Im h_twist is exposed separately but picks up
/// 2 pi log branch corrections on |p| >= 2 chains.)
std::vector<CompleteSolution> complete_solutions(int p);

struct VolumeRow {
  int p;
  double volume;
  Cx x0;
};

/// Largest Im H over the complete solutions, reported with x0 in the
/// negative-imaginary-part convention. K_1 (the trefoil) is not hyperbolic
/// and yields 0.
VolumeRow volume(int p);

/// Volumes for p = 2..p_max approach the regular ideal octahedron volume
/// 4 D(i) monotonically and x0 -> 1 - 2i; also checks the symmetric
/// approach at p = -p_max.
Report whitehead_limit(int p_max);

struct VZeroRow {
  int k;
  Cx root;
  double residual;  // |V_k(root)| / max coefficient
};

/// All roots of each V_k with residual certificates; optionally filtered to
/// the upper half plane.
std::vector<VZeroRow> vzeros(std::span<const int> k_list, bool upper_half_only = false);

}  // namespace qknot::saddle
