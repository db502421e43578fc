#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qknot/apoly.hpp"
#include "qknot/bivar_poly.hpp"
#include "qknot/q_laurent.hpp"
#include "qknot/roots.hpp"
#include "qknot/saddle.hpp"
#include "qknot/uni_poly.hpp"

using namespace qknot;

namespace {

BivarPoly mono(long c, int dl, int dm) { return BivarPoly::monomial(Int(c), dl, dm); }

BivarPoly random_bivar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 3), coef(-5, 5);
  BivarPoly p;
  for (int t = 0; t < 6; ++t) p += mono(coef(rng), deg(rng), deg(rng));
  return p;
}

}  // namespace

TEST_CASE("bivar arithmetic examples") {
  const BivarPoly l = BivarPoly::var_l();
  const BivarPoly m = BivarPoly::var_m();

  CHECK((l + m) * (l - m) == l * l - m * m);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const BivarPoly a = random_bivar(rng);
    CHECK((a - a).is_zero());
  }

  const BivarPoly cube = (BivarPoly(1) + mono(1, 1, 2)).pow(3);
  CHECK(cube.terms().size() == 4);
  CHECK(cube.coeff(0, 0) == 1);
  CHECK(cube.coeff(1, 2) == 3);
  CHECK(cube.coeff(2, 4) == 3);
  CHECK(cube.coeff(3, 6) == 1);
}

TEST_CASE("bivar ring axioms on random samples") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    const BivarPoly a = random_bivar(rng), b = random_bivar(rng), c = random_bivar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("bivar evaluation") {
  const BivarPoly p = BivarPoly(1) + mono(1, 1, 6);  // 1 + l m^6
  const Cx m(0.8, 0.3);
  const Cx l = -1.0 / std::pow(m, 6);
  CHECK(std::abs(p.eval(l, m)) < 1e-12);

  const BivarPoly q = BivarPoly::var_l() + mono(1, 0, 6);
  CHECK(std::abs(q.eval(Cx(1, 0), Cx(1, 0)) - 2.0) < 1e-15);

  // Z at (1,1) equals the sum of its coefficients, summed term by term.
  const BivarPoly z = apoly::named_poly(apoly::NamedPoly::Z);
  Cx coeff_sum = 0.0;
  for (const auto& [key, c] : z.terms()) coeff_sum += c.get_d();
  CHECK(coeff_sum == Cx(4.0, 0.0));
  CHECK(std::abs(z.eval(Cx(1, 0), Cx(1, 0)) - coeff_sum) < 1e-15);
}

TEST_CASE("bivar evaluation overflow raises") {
  Int huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 10, 400);
  const BivarPoly p = BivarPoly(huge);
  CHECK_THROWS_AS(p.eval(Cx(1, 0), Cx(1, 0)), EvalOverflow);
}

TEST_CASE("canonical text format") {
  // the format example from the interface description
  BivarPoly p;
  p += mono(1, 2, 4);
  p += mono(-1, 2, 2);
  p += mono(2, 1, 2);
  p += mono(-1, 1, 0);
  p += mono(1, 0, 4);
  CHECK(p.str() == "l^2*m^4 - l^2*m^2 + 2*l*m^2 - l + m^4");
  CHECK(BivarPoly::parse(p.str()) == p);

  CHECK(BivarPoly().str() == "0");
  CHECK(BivarPoly(-7).str() == "-7");
  CHECK(BivarPoly::parse("0").is_zero());
  CHECK(BivarPoly::parse("l*m^2 + m^2*l") == mono(2, 1, 2));

  CHECK_THROWS_AS(BivarPoly::parse("l^-2"), ParseError);
  CHECK_THROWS_AS(BivarPoly::parse("q + 1"), ParseError);
  CHECK_THROWS_AS(BivarPoly::parse("2 ** l"), ParseError);
  CHECK_THROWS_AS(BivarPoly::parse(""), ParseError);

  const UniPoly v = saddle::vpoly(-2).poly;
  CHECK(v.str() == "z^3 + z^2 + 2*z + 1");
  CHECK(UniPoly::parse(v.str()) == v);

  const QLaurent q = QLaurent::parse("q^2 - q + 1 - q^-1 + q^-2");
  CHECK(q.str() == "q^2 - q + 1 - q^-1 + q^-2");
  CHECK(q.coeff(-1) == -1);
}

TEST_CASE("q-Laurent substitution is an involution") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> exp(-6, 6);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int i = 0; i < 25; ++i) {
    QLaurent p;
    for (int t = 0; t < 7; ++t) p += QLaurent::monomial(Int(coef(rng)), exp(rng));
    CHECK(p.inverted_q().inverted_q() == p);
  }
}

TEST_CASE("roots of z^2 + 1") {
  const auto roots = find_roots(std::vector<Cx>{Cx(1, 0), Cx(0, 0), Cx(1, 0)});
  REQUIRE(roots.size() == 2);
  double best_i = 1e9, best_mi = 1e9;
  for (Cx r : roots) {
    best_i = std::min(best_i, std::abs(r - Cx(0, 1)));
    best_mi = std::min(best_mi, std::abs(r - Cx(0, -1)));
  }
  CHECK(best_i < 1e-12);
  CHECK(best_mi < 1e-12);
}

TEST_CASE("roots of V_1 match the quadratic formula") {
  const UniPoly v1 = saddle::vpoly(1).poly;  // 1 + z + z^2
  const auto roots = find_roots(v1);
  REQUIRE(roots.size() == 2);
  const double s3 = std::sqrt(3.0);
  for (Cx expected : {Cx(-0.5, s3 / 2.0), Cx(-0.5, -s3 / 2.0)}) {
    double best = 1e9;
    for (Cx r : roots) best = std::min(best, std::abs(r - expected));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("V_{-2} has the table root") {
  const UniPoly v = saddle::vpoly(-2).poly;  // 1 + 2z + z^2 + z^3
  const auto roots = find_roots(v);
  REQUIRE(roots.size() == 3);
  double best = 1e9;
  for (Cx r : roots) best = std::min(best, std::abs(r - Cx(-0.21508, 1.30714)));
  CHECK(best < 1e-5);  // table precision
  for (Cx r : roots) CHECK(root_residual(v, r) < 1e-10);
}

TEST_CASE("root product re-expands to the polynomial") {
  auto reconstruct_error = [](const std::vector<Cx>& coeffs) {
    const auto roots = find_roots(coeffs);
    std::vector<Cx> prod = {Cx(1, 0)};
    for (Cx r : roots) {
      std::vector<Cx> next(prod.size() + 1, Cx(0, 0));
      for (size_t i = 0; i < prod.size(); ++i) {
        next[i] -= prod[i] * r;
        next[i + 1] += prod[i];
      }
      prod = std::move(next);
    }
    double scale = 0.0;
    for (Cx c : coeffs) scale = std::max(scale, std::abs(c));
    double worst = 0.0;
    for (size_t i = 0; i < prod.size(); ++i)
      worst = std::max(worst, std::abs(prod[i] * coeffs.back() - coeffs[i]) / scale);
    return worst;
  };

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Cx> coeffs;
    for (int i = 0; i <= 12; ++i) coeffs.push_back(Cx(uni(rng), uni(rng)));
    CHECK(reconstruct_error(coeffs) < 1e-8);
  }

  const UniPoly v5_poly = saddle::vpoly(5).poly;
  std::vector<Cx> v5;
  for (const Int& c : v5_poly.coeffs()) v5.push_back(Cx(c.get_d(), 0));
  CHECK(reconstruct_error(v5) < 1e-8);
}

TEST_CASE("real-coefficient roots pair into conjugates") {
  const UniPoly v = saddle::vpoly(7).poly;
  const auto roots = find_roots(v);
  for (Cx r : roots) {
    double best = 1e9;
    for (Cx s : roots) best = std::min(best, std::abs(std::conj(r) - s));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("root finder reports non-convergence with its best iterate") {
  AberthOptions opts;
  opts.max_iterations = 0;
  const UniPoly v = saddle::vpoly(3).poly;
  try {
    find_roots(v, opts);
    FAIL("expected RootError");
  } catch (const RootError& e) {
    CHECK(e.best.size() == 6);
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("degree-zero input is rejected") {
  CHECK_THROWS_AS(find_roots(std::vector<Cx>{Cx(3, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(find_roots(UniPoly(5)), std::invalid_argument);
}

TEST_CASE("multiple roots are returned with multiplicity") {
  // (z - 1)^2 (z + 2)
  const UniPoly p = UniPoly::parse("z^3 - 3*z + 2");
  const auto roots = find_roots(p);
  REQUIRE(roots.size() == 3);
  int near_one = 0, near_minus_two = 0;
  for (Cx r : roots) {
    if (std::abs(r - Cx(1, 0)) < 1e-5) ++near_one;
    if (std::abs(r - Cx(-2, 0)) < 1e-10) ++near_minus_two;
  }
  CHECK(near_one == 2);
  CHECK(near_minus_two == 1);

  // roots at the origin factor out exactly
  const auto with_zeros = find_roots(std::vector<Cx>{Cx(0, 0), Cx(0, 0), Cx(1, 0), Cx(1, 0)});
  REQUIRE(with_zeros.size() == 3);
  int exact_zero = 0;
  for (Cx r : with_zeros)
    if (r == Cx(0, 0)) ++exact_zero;
  CHECK(exact_zero == 2);
}
