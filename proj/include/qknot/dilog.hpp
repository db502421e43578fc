#pragma once

#include "qknot/common.hpp"

namespace qknot {

struct DilogResult {
  Cx value;
  double est_error;
};

/// Complex dilogarithm Li2, principal branch with the cut along [1, inf)
/// taken continuous from below (the Im z -> 0^- limit). Maclaurin series for
/// |z| <= 1/2, a Bernoulli-accelerated series in -log(1-z) near 1, and the
/// inversion/reflection functional equations elsewhere.
DilogResult li2(Cx z);

/// Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) log|z|. Exactly 0 for
/// real z; continuous across the Li2 cut; D(conj z) = -D(z).
double bloch_wigner(Cx z);

/// |D(z^2) - 2 (D(z) - D(z+1))|.
double pentagon_residual(Cx z);

enum class OctahedronBranch { plus, minus };

/// Partial sum 3 D(2i) +/- sum_{k=0}^{terms-1} D(arg_k^2) with
/// arg_k = k + 1/4 + i/4 (plus branch) or -k - 3/4 + i/4 (minus branch).
/// Converges to 4 D(i).
double octahedron_sum(unsigned terms, OctahedronBranch branch);

}  // namespace qknot
