#include "qknot/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cx_big.hpp"

namespace qknot {

namespace {

Cx horner(std::span<const Cx> c, Cx z) {
  Cx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Evaluation noise floor sum |c_k| |z|^k * eps: a root of large modulus can
// never push |p(z)| below this in binary64, so stopping compares against it
// (the classic Adams criterion).
double horner_bound(std::span<const Cx> c, Cx z) {
  const double az = std::abs(z);
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

Cx horner_derivative(std::span<const Cx> c, Cx z) {
  Cx acc = 0.0;
  for (size_t k = c.size(); k-- > 1;)
    acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

double max_abs(std::span<const Cx> c) {
  double m = 0.0;
  for (Cx v : c) m = std::max(m, std::abs(v));
  return m;
}

/// Starting points on circles derived from the upper convex hull of
/// (k, log|c_k|): each hull edge from k1 to k2 contributes k2-k1 points at
/// radius (|c_k1|/|c_k2|)^(1/(k2-k1)). This spreads guesses across the
/// annuli that actually contain roots even when coefficients span many
/// orders of magnitude.
std::vector<Cx> initial_points(std::span<const Cx> c) {
  const size_t n = c.size() - 1;  // degree
  std::vector<double> logabs(c.size());
  const double neg_inf = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < c.size(); ++k) {
    const double a = std::abs(c[k]);
    logabs[k] = a > 0.0 ? std::log(a) : neg_inf;
  }

  std::vector<size_t> hull;  // indices of the upper convex hull
  for (size_t k = 0; k < c.size(); ++k) {
    if (logabs[k] == neg_inf) continue;
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const double cross = (logabs[b] - logabs[a]) * static_cast<double>(k - a) -
                           (logabs[k] - logabs[a]) * static_cast<double>(b - a);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  std::vector<Cx> pts;
  pts.reserve(n);
  const double two_pi = 2.0 * std::numbers::pi;
  double angle_offset = 0.37;
  for (size_t seg = 0; seg + 1 < hull.size(); ++seg) {
    const size_t k1 = hull[seg], k2 = hull[seg + 1];
    const size_t count = k2 - k1;
    const double radius =
        std::exp((logabs[k1] - logabs[k2]) / static_cast<double>(count));
    for (size_t j = 0; j < count; ++j) {
      const double theta =
          two_pi * static_cast<double>(j) / static_cast<double>(count) + angle_offset;
      pts.push_back(std::polar(radius, theta));
    }
    angle_offset += 0.91;  // decorrelate angles between annuli
  }
  while (pts.size() < n) pts.push_back(std::polar(1.0, angle_offset += 0.91));
  return pts;
}

}  // namespace

double root_residual(std::span<const Cx> c, Cx z) {
  const double scale = max_abs(c);
  if (scale == 0.0) return 0.0;
  return std::abs(horner(c, z)) / scale;
}

namespace {
std::vector<Cx> scaled_double_coeffs(const UniPoly& p) {
  size_t max_bits = 0;
  for (const Int& c : p.coeffs())
    if (c != 0) max_bits = std::max(max_bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  long shift = 0;
  if (max_bits > 900) shift = static_cast<long>(max_bits) - 512;
  std::vector<Cx> coeffs;
  coeffs.reserve(p.coeffs().size());
  for (const Int& c : p.coeffs()) {
    if (c == 0) {
      coeffs.push_back(Cx(0.0, 0.0));
      continue;
    }
    long e2 = 0;
    const double mant = mpz_get_d_2exp(&e2, c.get_mpz_t());
    coeffs.push_back(Cx(std::ldexp(mant, static_cast<int>(e2 - shift)), 0.0));
  }
  return coeffs;
}
}  // namespace

double root_residual(const UniPoly& p, Cx z) {
  // certified in extended precision: Horner in binary64 is noise-dominated
  // for high-degree polynomials with large coefficients at |z| > 1
  Int max_coeff = 0;
  for (const Int& c : p.coeffs()) {
    Int a = abs(c);
    if (a > max_coeff) max_coeff = a;
  }
  if (max_coeff == 0) return 0.0;
  const detail::CxBig value = detail::horner_big(p.coeffs(), detail::CxBig(z));
  mpf_class sq = value.re * value.re + value.im * value.im;
  mpf_class norm(0, detail::kBigPrec);
  mpf_sqrt(norm.get_mpf_t(), sq.get_mpf_t());
  norm /= mpf_class(max_coeff, detail::kBigPrec);
  return norm.get_d();
}

std::vector<Cx> find_roots(std::vector<Cx> coeffs, const AberthOptions& opts) {
  // Strip leading (high-degree) zeros, then factor out roots at the origin.
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() < 2)
    throw std::invalid_argument("find_roots: degree must be at least 1");

  std::vector<Cx> roots;
  size_t zero_roots = 0;
  while (zero_roots < coeffs.size() - 1 && std::abs(coeffs[zero_roots]) == 0.0)
    ++zero_roots;
  roots.assign(zero_roots, Cx(0.0, 0.0));
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zero_roots));
  if (coeffs.size() < 2) return roots;

  const double scale = max_abs(coeffs);
  for (Cx& v : coeffs) v /= scale;

  std::vector<Cx> z = initial_points(coeffs);
  const size_t n = z.size();
  std::vector<bool> done(n, false);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Cx pv = horner(coeffs, z[i]);
      const double floor_i = 4.0 * eps * horner_bound(coeffs, z[i]);
      if (std::abs(pv) <= std::max(opts.stop_tol, floor_i)) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const Cx dv = horner_derivative(coeffs, z[i]);
      Cx newton = (std::abs(dv) > 0.0) ? pv / dv : Cx(opts.stop_tol, 0.0);
      Cx repulsion = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Cx d = z[i] - z[j];
        if (std::abs(d) > 1e-300) repulsion += 1.0 / d;
      }
      const Cx denom = 1.0 - newton * repulsion;
      const Cx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[i] -= step;
    }
    if (all_done) break;
  }

  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double floor_i = 4.0 * eps * horner_bound(coeffs, z[i]);
    const double excess = std::abs(horner(coeffs, z[i])) - floor_i;
    worst = std::max(worst, excess);
  }
  if (worst > opts.accept_tol) {
    std::vector<Cx> best = roots;
    best.insert(best.end(), z.begin(), z.end());
    throw RootError("find_roots: no convergence after " +
                        std::to_string(opts.max_iterations) +
                        " iterations (residual " + std::to_string(worst) + ")",
                    std::move(best), worst);
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

namespace detail {

std::vector<CxBig> find_roots_big(const UniPoly& p, const AberthOptions& opts) {
  // The binary64 sweep is limited by monomial-basis cancellation once
  // degrees and moduli grow (V_50 at |z| ~ 2.2 loses ten digits), so the
  // whole configuration is polished by Aberth steps on the exact
  // coefficients in extended precision. The simultaneous update keeps the
  // root multiset intact where independent Newton polishing would collapse
  // nearby iterates onto one root.
  const std::vector<Cx> double_coeffs = scaled_double_coeffs(p);
  const std::vector<Cx> seeds = find_roots(double_coeffs, opts);
  std::vector<CxBig> coeffs;
  coeffs.reserve(p.coeffs().size());
  for (const Int& c : p.coeffs()) {
    CxBig cb;
    cb.re = mpf_class(c, kBigPrec);
    coeffs.push_back(cb);
  }
  std::vector<CxBig> z;
  z.reserve(seeds.size());
  for (Cx r : seeds) z.push_back(CxBig(r));
  aberth_polish_big(coeffs, z, 40);
  if (roots_certified_big(coeffs, z)) return z;

  // The binary64 seeds can be pure noise in regions where the monomial
  // basis cancels to thirty digits (V_{-50} near |z| ~ 2); rerun the whole
  // iteration at extended precision from fresh starting circles.
  std::vector<Cx> fresh = initial_points(double_coeffs);
  z.clear();
  for (Cx r : fresh) z.push_back(CxBig(r));
  aberth_polish_big(coeffs, z, 600);
  if (!roots_certified_big(coeffs, z)) {
    std::vector<Cx> best;
    best.reserve(z.size());
    double worst = 0.0;
    for (const CxBig& zi : z) {
      best.push_back(zi.to_cx());
      worst = std::max(worst, horner_big(coeffs, zi).abs_double());
    }
    throw RootError("find_roots: extended-precision iteration did not certify all roots",
                    std::move(best), worst);
  }
  return z;
}

}  // namespace detail

std::vector<Cx> find_roots(const UniPoly& p, const AberthOptions& opts) {
  if (p.degree() < 1)
    throw std::invalid_argument("find_roots: degree must be at least 1");
  // Always certify and polish on the exact coefficients: the monomial basis
  // can cancel so deeply that a binary64 sweep cannot even see the roots.
  const std::vector<detail::CxBig> polished = detail::find_roots_big(p, opts);
  std::vector<Cx> roots;
  roots.reserve(polished.size());
  for (const auto& z : polished) roots.push_back(z.to_cx());
  return roots;
}

}  // namespace qknot
