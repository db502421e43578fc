#pragma once

#include <array>
#include <cstdint>

#include "qknot/common.hpp"
#include "qknot/knot_spec.hpp"
#include "qknot/q_laurent.hpp"

namespace qknot::qjones {

/// Configurable guard on the nested-sum size. The number of admissible
/// chains s_p >= ... >= s_1 >= 0 with s_p <= N-1 is C(N-1+|p|, |p|);
/// requests above the cap are rejected with ResourceCapError.
struct SumLimits {
  std::uint64_t max_chains = 300000;
};

struct ResourceCapError : std::runtime_error {
  ResourceCapError(std::string what, double chains, std::uint64_t cap)
      : std::runtime_error(std::move(what)), chains(chains), cap(cap) {}
  double chains;
  std::uint64_t cap;
};

/// (q^a; q)_n as an exact Laurent polynomial.
QLaurent qpoch(long a, unsigned n);

enum class QBase { q, q_inverse };

/// Gaussian binomial [n over k] in base q or q^{-1}. Requires k <= n.
QLaurent qbinom(unsigned n, unsigned k, QBase base = QBase::q);

/// Colored Jones polynomial of the twist knot K_p, J_unknot(N) = 1.
QLaurent jones_twist(int p, unsigned N, const SumLimits& limits = {});

/// Colored Jones polynomial of the torus knot T(2, 2p+1), p >= 1.
QLaurent jones_torus(int p, unsigned N, const SumLimits& limits = {});

/// The three right-hand-trefoil expressions; all are exactly equal.
std::array<QLaurent, 3> jones_trefoil_variants(unsigned N);

/// Numeric value at q = exp(2 pi i r / N). Requires query.r set and nonzero.
Cx jones_eval(const JonesQuery& query, const SumLimits& limits = {});

/// Relative error of the dilogarithm kernel for log(xq; q)_n with
/// n = floor(n_fraction * N); decays roughly like 1/N.
double check_poch_asymptotics(Cx x, double n_fraction, double r, unsigned N);

}  // namespace qknot::qjones
