#include "qknot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qknot/apoly.hpp"
#include "qknot/bivar_poly.hpp"
#include "qknot/dilog.hpp"
#include "qknot/qjones.hpp"
#include "qknot/roots.hpp"
#include "qknot/uni_poly.hpp"

namespace qknot::verify {

namespace {

constexpr double kOctahedron = 3.66386237670887606;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

double cut_distance(Cx z) {  // distance to the Li2 cut [1, inf)
  if (z.real() >= 1.0) return std::abs(z.imag());
  return std::abs(z - Cx(1.0, 0.0));
}

double neg_axis_distance(Cx z) {  // distance to the log cut (-inf, 0]
  if (z.real() <= 0.0) return std::abs(z.imag());
  return std::abs(z);
}

bool chain_is_generic(const KnotSpec& knot, const saddle::SaddleChain& chain) {
  const size_t n = chain.x.size();
  const Cx x0 = chain.x[0];
  const Cx m2 = chain.m2;
  const auto x = [&](size_t i) { return i == n ? Cx(1.0, 0.0) : chain.x[i]; };

  std::vector<Cx> li2_args = {m2, 1.0 / m2, x0 / m2, m2 * x0};
  std::vector<Cx> log_args;
  if (knot.kind == KnotKind::twist && knot.p > 0) {
    li2_args.push_back(x0);
    for (size_t i = 0; i < n; ++i) li2_args.push_back(x(i) / x(i + 1));
    for (size_t i = 1; i < n; ++i) log_args.push_back(x(i) / x0);
  } else if (knot.kind == KnotKind::twist) {
    li2_args.push_back(x0);
    for (size_t i = 0; i < n; ++i) li2_args.push_back(x(i + 1) / x(i));
    log_args.push_back(x0);
    for (size_t i = 1; i < n; ++i) log_args.push_back(x(i) / x0);
  } else {
    for (size_t i = 0; i < n; ++i) li2_args.push_back(x(i) / x(i + 1));
    log_args.push_back(m2);
    for (size_t i = 1; i < n; ++i) log_args.push_back(x(i) / x0);
  }
  for (Cx a : li2_args)
    if (cut_distance(a) < 1e-2) return false;
  for (Cx a : log_args)
    if (neg_axis_distance(a) < 1e-2) return false;
  return true;
}

}  // namespace

const std::vector<TableRow>& volume_table() {
  static const std::vector<TableRow> rows = {
      {-5, 3.57388, {0.99151, -1.91177}}, {-4, 3.52620, {0.98405, -1.86641}},
      {-3, 3.42721, {0.96453, -1.77530}}, {-2, 3.16396, {0.89512, -1.55249}},
      {-1, 2.02988, {0.50000, -0.86603}}, {2, 2.82812, {1.21508, -1.30714}},
      {3, 3.33174, {1.05818, -1.69128}},  {4, 3.48666, {1.02317, -1.82953}},
      {5, 3.55382, {1.01144, -1.89257}},
  };
  return rows;
}

saddle::SaddleChain random_chain(const KnotSpec& knot, std::mt19937_64& rng) {
  const size_t n = static_cast<size_t>(knot.kind == KnotKind::twist ? std::abs(knot.p)
                                                                    : knot.p);
  std::uniform_real_distribution<double> mod_x(0.35, 0.75);
  std::uniform_real_distribution<double> arg_x(0.35, 1.15);
  std::uniform_real_distribution<double> mod_m(0.50, 0.80);
  std::uniform_real_distribution<double> arg_m(0.40, 0.95);

  for (int tries = 0; tries < 4000; ++tries) {
    saddle::SaddleChain chain;
    chain.x.resize(n);
    for (size_t i = 0; i < n; ++i) chain.x[i] = std::polar(mod_x(rng), arg_x(rng));
    chain.m2 = std::polar(mod_m(rng), arg_m(rng));
    chain.ell = Cx(1.0, 0.0);  // irrelevant for gradients
    if (chain_is_generic(knot, chain)) return chain;
  }
  throw std::runtime_error("random_chain: could not sample a generic interior point");
}

namespace {

Report suite_poly() {
  Report report;

  // Ring axioms over a fixed pseudo-random sample of small polynomials.
  std::mt19937_64 rng(991);
  std::uniform_int_distribution<int> deg(0, 3), coef(-4, 4);
  auto random_poly = [&] {
    BivarPoly p;
    for (int t = 0; t < 5; ++t)
      p += BivarPoly::monomial(Int(coef(rng)), deg(rng), deg(rng));
    return p;
  };
  bool ok = true;
  for (int it = 0; it < 30 && ok; ++it) {
    const BivarPoly a = random_poly(), b = random_poly(), c = random_poly();
    if (!((a + b) * c == a * c + b * c)) ok = false;
    if (!((a - a).is_zero())) ok = false;
  }
  report.record(ok, "ring axioms (a+b)c = ac + bc and a - a = 0 on random samples");

  // Canonical text round trip on representative polynomials.
  const BivarPoly zp = apoly::named_poly(apoly::NamedPoly::Z);
  const BivarPoly a2 = apoly::apoly_twist(2);
  ok = BivarPoly::parse(zp.str()) == zp && BivarPoly::parse(a2.str()) == a2;
  {
    const UniPoly v = saddle::vpoly(-3).poly;
    ok = ok && UniPoly::parse(v.str()) == v;
    const QLaurent j = qjones::jones_twist(-1, 3);
    ok = ok && QLaurent::parse(j.str()) == j;
  }
  report.record(ok, "printed canonical forms re-parse to equal values");

  // Root finder: re-expansion and conjugate pairing.
  const UniPoly v5 = saddle::vpoly(5).poly;
  const auto roots = find_roots(v5);
  double worst_coeff_err = 0.0;
  {
    std::vector<Cx> prod = {1.0};
    for (Cx r : roots) {
      std::vector<Cx> next(prod.size() + 1, Cx(0.0, 0.0));
      for (size_t i = 0; i < prod.size(); ++i) {
        next[i] -= prod[i] * r;
        next[i + 1] += prod[i];
      }
      prod = std::move(next);
    }
    const double lead = v5.coeffs().back().get_d();
    double scale = 0.0;
    for (const Int& c : v5.coeffs()) scale = std::max(scale, std::abs(c.get_d()));
    for (size_t i = 0; i < prod.size(); ++i) {
      const double expect = v5.coeff(static_cast<unsigned>(i)).get_d();
      worst_coeff_err = std::max(worst_coeff_err, std::abs(prod[i].real() * lead - expect) / scale);
      worst_coeff_err = std::max(worst_coeff_err, std::abs(prod[i].imag() * lead) / scale);
    }
  }
  report.record(worst_coeff_err < 1e-8, "root product re-expands to the polynomial",
                "worst relative coefficient error " + fmt(worst_coeff_err));

  ok = true;
  for (Cx r : roots) {
    double best = 1e9;
    for (Cx s : roots) best = std::min(best, std::abs(std::conj(r) - s));
    if (best > 1e-8) ok = false;
  }
  report.record(ok, "complex roots of real polynomials pair with conjugates");
  return report;
}

Report suite_jones() {
  Report report;
  using namespace qjones;

  report.record(qpoch(1, 0) == QLaurent(1), "(q;q)_0 = 1");
  report.record(qpoch(1, 2) == QLaurent::parse("1 - q - q^2 + q^3"), "(q;q)_2 expansion");
  report.record(qbinom(2, 1) == QLaurent::parse("1 + q"), "[2 over 1]_q = 1 + q");
  report.record(qbinom(4, 2) == QLaurent::parse("1 + q + 2*q^2 + q^3 + q^4"),
                "[4 over 2]_q Gaussian expansion");

  bool ok = true;
  for (unsigned N = 1; N <= 8; ++N)
    if (!qpoch(1 - static_cast<long>(N), N).is_zero()) ok = false;
  report.record(ok, "truncation: (q^{1-N})_N vanishes exactly");

  report.record(jones_twist(-1, 2) == QLaurent::parse("q^2 - q + 1 - q^-1 + q^-2"),
                "figure-eight Jones at N = 2");
  report.record(jones_twist(1, 2) == QLaurent::parse("q + q^3 - q^4"),
                "left trefoil Jones at N = 2");
  report.record(jones_torus(1, 2) == QLaurent::parse("q^-1 + q^-3 - q^-4"),
                "right trefoil Jones at N = 2");

  ok = true;
  for (unsigned N = 1; N <= 10 && ok; ++N) {
    const QLaurent j = jones_twist(-1, N);
    if (!(j.inverted_q() == j)) ok = false;
  }
  report.record(ok, "amphichirality of the figure-eight through N = 10");

  ok = true;
  for (unsigned N = 1; N <= 10 && ok; ++N) {
    const auto [a, b, c] = jones_trefoil_variants(N);
    if (!(a == b && b == c)) ok = false;
    if (!(jones_twist(1, N).inverted_q() == c)) ok = false;
  }
  report.record(ok, "trefoil variants agree and mirror jones_twist(1, N) through N = 10");

  {
    // Kashaev form at N = 5, r = 1
    const unsigned N = 5;
    Cx expect = 0.0;
    for (unsigned s = 0; s < N; ++s) {
      Cx prod = 1.0;
      for (unsigned i = 1; i <= s; ++i)
        prod *= 1.0 - std::polar(1.0, 2.0 * std::numbers::pi * i / N);
      expect += std::norm(prod);
    }
    const Cx got = jones_eval({KnotSpec::twist(-1), N, 1.0});
    const double err = std::abs(got - expect) / std::abs(expect);
    report.record(err < 1e-12, "jones_eval matches the Kashaev-form sum at N = 5, r = 1",
                  "relative error " + fmt(err));
  }

  {
    const double e200 = check_poch_asymptotics(Cx(0.3, 0.2), 0.5, 1.0, 200);
    const double e400 = check_poch_asymptotics(Cx(0.3, 0.2), 0.5, 1.0, 400);
    report.record(e400 < e200 && e400 < 0.05, "Pochhammer kernel error decays with N",
                  "error(200) = " + fmt(e200) + ", error(400) = " + fmt(e400));
  }
  return report;
}

Report suite_apoly() {
  Report report;
  using namespace apoly;

  report.record(apoly_twist(1).str() == "l + m^6", "A_1 display");
  report.record(
      apoly_twist(-1).str() == "l^2*m^4 - l*m^8 + l*m^6 + 2*l*m^4 + l*m^2 - l + m^4",
      "A_{-1} display");
  report.record(ab_pair(0).first.str() == "1", "A_0 seed");

  bool ok = true;
  int bad = 0;
  for (int p = -6; p <= 6 && ok; ++p) {
    if (p == 0) continue;
    if (!(apoly_twist(p) == apoly_twist_3term(p))) { ok = false; bad = p; }
    if (ok && !apoly_twist(p).even_m_powers()) { ok = false; bad = p; }
  }
  report.record(ok, "matrix route = 3-term route with even m-powers, |p| <= 6",
                ok ? "" : "fails at p=" + std::to_string(bad));

  report.merge(verify_matrix_identities());
  report.merge(char_poly_check(Sign::plus));
  report.merge(char_poly_check(Sign::minus));

  const std::vector<std::pair<Cx, Cx>> samples = {
      {{0.42, 0.17}, {0.73, 0.21}},
      {{-0.35, 0.44}, {0.52, -0.33}},
      {{0.18, -0.62}, {0.61, 0.40}},
      {{0.87, 0.23}, {0.38, 0.51}},
  };
  report.merge(ctilde_recursion_check(5, samples));
  return report;
}

Report suite_dilog() {
  Report report;
  constexpr double pi = std::numbers::pi;

  report.record(std::abs(li2(Cx(0, 0)).value) == 0.0, "Li2(0) = 0");
  report.record(std::abs(li2(Cx(1, 0)).value - pi * pi / 6.0) < 1e-15, "Li2(1) = pi^2/6");
  {
    const Cx v = li2(Cx(0, 1)).value;
    const double err = std::abs(v - Cx(-pi * pi / 48.0, 0.9159655941772190));
    report.record(err < 1e-12, "Li2(i) = -pi^2/48 + i Catalan", "error " + fmt(err));
  }
  {
    const double v = 4.0 * bloch_wigner(Cx(0, 1));
    report.record(std::abs(v - kOctahedron) < 1e-12, "4 D(i) octahedron volume",
                  "got " + fmt(v));
  }

  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> uni(-0.95, 0.95);
  double worst_reflect = 0.0, worst_inv = 0.0, worst_conj = 0.0, worst_pent = 0.0;
  int used = 0;
  while (used < 100) {
    const Cx z(uni(rng), uni(rng));
    if (std::abs(z) > 0.95 || std::abs(z) < 0.05) continue;
    if (cut_distance(z) < 1e-3 || std::abs(z - 1.0) < 0.05 || std::abs(z.imag()) < 1e-6) continue;
    ++used;
    const Cx lhs = li2(z).value + li2(1.0 - z).value;
    const Cx rhs = pi * pi / 6.0 - std::log(z) * std::log(1.0 - z);
    worst_reflect = std::max(worst_reflect, std::abs(lhs - rhs));
    worst_inv = std::max(worst_inv, std::abs(bloch_wigner(1.0 / z) + bloch_wigner(z)));
    worst_conj = std::max(worst_conj, std::abs(bloch_wigner(std::conj(z)) + bloch_wigner(z)));
    worst_pent = std::max(worst_pent, pentagon_residual(z));
  }
  report.record(worst_reflect < 1e-12, "reflection identity on 100 random points",
                "worst " + fmt(worst_reflect));
  report.record(worst_inv < 1e-12, "D(1/z) = -D(z)", "worst " + fmt(worst_inv));
  report.record(worst_conj < 1e-12, "D(conj z) = -D(z)", "worst " + fmt(worst_conj));
  report.record(worst_pent < 1e-10, "pentagon-derived identity on 100 random points",
                "worst " + fmt(worst_pent));

  const double plus = octahedron_sum(10000, OctahedronBranch::plus);
  const double minus = octahedron_sum(10000, OctahedronBranch::minus);
  report.record(std::abs(plus - kOctahedron) < 5e-3 && std::abs(minus - kOctahedron) < 5e-3,
                "octahedron partial sums converge to 4 D(i)",
                "plus gap " + fmt(std::abs(plus - kOctahedron)) + ", minus gap " +
                    fmt(std::abs(minus - kOctahedron)));
  return report;
}

Report suite_saddle() {
  Report report;

  double worst_vol = 0.0, worst_x0 = 0.0;
  for (const TableRow& row : volume_table()) {
    const saddle::VolumeRow got = saddle::volume(row.p);
    worst_vol = std::max(worst_vol, std::abs(got.volume - row.volume));
    worst_x0 = std::max(worst_x0, std::abs(got.x0.real() - row.x0.real()));
    worst_x0 = std::max(worst_x0, std::abs(got.x0.imag() - row.x0.imag()));
  }
  report.record(worst_vol < 1e-5 && worst_x0 < 1e-5, "volume table reproduction",
                "worst volume delta " + fmt(worst_vol) + ", worst x0 component delta " +
                    fmt(worst_x0));

  bool ok = true;
  double worst_res = 0.0;
  for (int p = -6; p <= 6; ++p) {
    if (p == 0) continue;
    try {
      for (const auto& sol : saddle::complete_solutions(p))
        worst_res = std::max(worst_res, sol.chain.max_residual());
    } catch (const std::exception& e) {
      ok = false;
      report.fail("complete_solutions p=" + std::to_string(p), e.what());
    }
  }
  report.record(ok && worst_res < 1e-8,
                "m^2 = 1 chains: dual-path Im H agreement and residuals, |p| <= 6",
                "worst residual " + fmt(worst_res));

  report.merge(saddle::vpoly_identity_suite(12));

  {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> mod(0.45, 0.75), arg(0.25, 1.1);
    for (int p : {1, -1, 2, -2}) {
      Report sub;
      for (int s = 0; s < 3; ++s)
        sub.merge(saddle::crosscheck_apoly_saddle(KnotSpec::twist(p), std::polar(mod(rng), arg(rng))));
      report.record(sub.all_passed(), "A-polynomial/saddle cross-check, twist p=" + std::to_string(p),
                    sub.all_passed() ? "3 m samples" : "see suite details");
      if (!sub.all_passed()) report.merge(sub);
    }
    for (int p : {1, 2, 3}) {
      Report sub;
      for (int s = 0; s < 3; ++s)
        sub.merge(saddle::crosscheck_apoly_saddle(KnotSpec::torus(p), std::polar(mod(rng), arg(rng))));
      report.record(sub.all_passed(), "bridge identity, torus p=" + std::to_string(p),
                    sub.all_passed() ? "3 m samples" : "see suite details");
      if (!sub.all_passed()) report.merge(sub);
    }
  }

  {
    std::mt19937_64 rng(4242);
    double worst = 0.0;
    for (const KnotSpec knot : {KnotSpec::twist(2), KnotSpec::twist(-2), KnotSpec::torus(2)}) {
      for (int s = 0; s < 10; ++s) {
        const auto chain = random_chain(knot, rng);
        const auto rat = saddle::rational_constraint_values(knot, chain);
        const auto fd = saddle::fd_constraint_values(knot, chain);
        for (size_t i = 0; i < rat.size(); ++i)
          worst = std::max(worst, std::abs(rat[i] - fd[i]) / std::max(1.0, std::abs(rat[i])));
      }
    }
    report.record(worst < 1e-5, "finite-difference gradients match rational constraint forms",
                  "worst relative deviation " + fmt(worst));
  }

  report.merge(saddle::whitehead_limit(12));
  return report;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"poly", "jones", "apoly", "dilog", "saddle", "all"};
}

Report run_suite(const std::string& name) {
  if (name == "poly") return suite_poly();
  if (name == "jones") return suite_jones();
  if (name == "apoly") return suite_apoly();
  if (name == "dilog") return suite_dilog();
  if (name == "saddle") return suite_saddle();
  if (name == "all") {
    Report all;
    all.merge(suite_poly());
    all.merge(suite_jones());
    all.merge(suite_apoly());
    all.merge(suite_dilog());
    all.merge(suite_saddle());
    return all;
  }
  throw std::invalid_argument("unknown suite: " + name +
                              " (expected poly, jones, apoly, dilog, saddle or all)");
}

}  // namespace qknot::verify
