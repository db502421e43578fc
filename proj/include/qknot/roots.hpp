#pragma once

#include <span>
#include <vector>

#include "qknot/common.hpp"
#include "qknot/uni_poly.hpp"

namespace qknot {

struct AberthOptions {
  int max_iterations = 400;
  /// Per-root stop: |p(z)| <= stop_tol * max|coeff|. The public contract is
  /// 1e-10; the iteration aims lower to leave margin.
  double stop_tol = 1e-13;
  double accept_tol = 1e-10;
};

struct RootError : std::runtime_error {
  RootError(std::string what, std::vector<Cx> best_iterate, double residual)
      : std::runtime_error(std::move(what)),
        best(std::move(best_iterate)),
        residual(residual) {}
  std::vector<Cx> best;
  double residual;
};

/// All roots (with multiplicity) of a complex-coefficient polynomial given by
/// ascending coefficients, via simultaneous Aberth-Ehrlich iteration.
/// Requires degree >= 1. Throws RootError carrying the best iterate if the
/// iteration cap is hit before |p(root)| <= accept_tol * max|coeff|.
std::vector<Cx> find_roots(std::vector<Cx> ascending_coeffs, const AberthOptions& = {});

/// Exact-integer overload; coefficients are rescaled by a power of two when
/// they exceed binary64 range (roots are scale-invariant).
std::vector<Cx> find_roots(const UniPoly& p, const AberthOptions& = {});

/// |p(z)| / max|coeff|: the normalized residual the contract is stated in.
double root_residual(std::span<const Cx> ascending_coeffs, Cx z);
double root_residual(const UniPoly& p, Cx z);

}  // namespace qknot
