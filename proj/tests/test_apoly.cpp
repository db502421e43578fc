#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qknot/apoly.hpp"

using namespace qknot;
using namespace qknot::apoly;

namespace {

// the classical displayed forms of the twist-knot A-polynomials
const char* kA1 = "l + m^6";
const char* kA2 =
    "-l^3 - l^2*m^10 + l^2*m^8 - 2*l^2*m^4 - 2*l^2*m^2 + l^2 + l*m^14 - 2*l*m^12 - "
    "2*l*m^10 + l*m^6 - l*m^4 - m^14";
const char* kAm1 = "l^2*m^4 - l*m^8 + l*m^6 + 2*l*m^4 + l*m^2 - l + m^4";
const char* kBm1 =
    "l^3*m^6 - l^2*m^10 + 2*l^2*m^8 + 2*l^2*m^6 - l^2*m^2 + l^2 + l*m^10 - l*m^8 + "
    "2*l*m^4 + 2*l*m^2 - l + m^4";

}  // namespace

TEST_CASE("Z and X transcriptions") {
  const BivarPoly Z = named_poly(NamedPoly::Z);
  const BivarPoly X = named_poly(NamedPoly::X);
  CHECK(Z.terms().size() == 10);
  CHECK(X.terms().size() == 9);
  CHECK(std::abs(Z.eval(Cx(1, 0), Cx(1, 0)) - Cx(4, 0)) < 1e-15);
  CHECK(std::abs(X.eval(Cx(1, 0), Cx(1, 0)) - Cx(8, 0)) < 1e-15);
  // X - Z = m^2 (l + m^2)^2, checked against hand subtraction of the displays
  CHECK((X - Z).str() == "l^2*m^2 + 2*l*m^4 + m^6");
}

TEST_CASE("classical displays reproduce exactly") {
  CHECK(apoly_twist(1).str() == kA1);
  CHECK(apoly_twist(2).str() == kA2);
  CHECK(apoly_twist(-1).str() == kAm1);
  CHECK(ab_pair(0).first.str() == "1");
  CHECK(ab_pair(0).second.str() == "l*m^2 + 1");
  CHECK(ab_pair(-1).second.str() == kBm1);  // denominator of the Ctilde_{-1} display
  CHECK(ab_pair(1).second.str() == "l^2*m^2 + 2*l*m^4 + m^6");  // m^2 (l+m^2)^2
  CHECK_THROWS_AS(apoly_twist(0), std::invalid_argument);
}

TEST_CASE("torus closed form") {
  CHECK(apoly_torus(1).str() == "l*m^6 + 1");
  CHECK(apoly_torus(2).str() == "l*m^10 + 1");
  CHECK_THROWS_AS(apoly_torus(0), std::invalid_argument);

  // mirror: apoly_twist(1) under l -> 1/l, multiplied by l, equals apoly_torus(1)
  const BivarPoly twist = apoly_twist(1);
  const BivarPoly torus = apoly_torus(1);
  for (const auto& [key, coef] : twist.terms())
    CHECK(torus.coeff(1 - key.first, key.second) == coef);
}

TEST_CASE("matrix route equals the 3-term route") {
  for (int p = -8; p <= 8; ++p) {
    if (p == 0) continue;
    CAPTURE(p);
    CHECK(apoly_twist(p) == apoly_twist_3term(p));
  }
}

TEST_CASE("A-polynomials have even m-powers and are nondegenerate") {
  for (int p = -8; p <= 8; ++p) {
    if (p == 0) continue;
    const BivarPoly a = apoly_twist(p);
    CAPTURE(p);
    CHECK(a.even_m_powers());
    // A_p(l = 0, m) nonzero: some term with deg_l = 0
    bool has_l0 = false, has_any = false;
    for (const auto& [key, coef] : a.terms()) {
      if (key.first == 0) has_l0 = true;
      has_any = true;
    }
    CHECK(has_any);
    CHECK(has_l0);
    // A_p(l, m = 1) is a nonzero polynomial in l
    bool nonzero_at_m1 = false;
    for (int dl = 0; dl <= a.deg_l() && !nonzero_at_m1; ++dl) {
      Int sum = 0;
      for (const auto& [key, coef] : a.terms())
        if (key.first == dl) sum += coef;
      if (sum != 0) nonzero_at_m1 = true;
    }
    CHECK(nonzero_at_m1);
  }
}

TEST_CASE("matrix identities") {
  const Report report = verify_matrix_identities();
  for (const auto& c : report.checks) {
    CAPTURE(c.identity);
    CAPTURE(c.witness);
    CHECK(c.passed());
  }
  // det M+ at (l, m) = (2, 1) equals m^4 (l+m^2)^4 = 81
  const TwoByTwo mp = recursion_matrix(Sign::plus);
  CHECK(std::abs(mp.det().eval(Cx(2, 0), Cx(1, 0)) - Cx(81, 0)) < 1e-12);
}

TEST_CASE("characteristic polynomial checks") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const Report report = char_poly_check(s);
    for (const auto& c : report.checks) {
      CAPTURE(c.identity);
      CAPTURE(c.witness);
      CHECK(c.passed());
    }
  }
}

TEST_CASE("Ctilde seeds") {
  // Ctilde_0(2, 1) = 1/(1 + l m^2) = 1/3
  const auto [a0, b0] = ab_pair(0);
  const Cx c0 = a0.eval(Cx(2, 0), Cx(1, 0)) / b0.eval(Cx(2, 0), Cx(1, 0));
  CHECK(std::abs(c0 - Cx(1.0 / 3.0, 0)) < 1e-15);

  // Ctilde_1(1, 1) = (l + m^6) / (m^2 (l+m^2)^2) = 2/4
  const auto [a1, b1] = ab_pair(1);
  const Cx c1 = a1.eval(Cx(1, 0), Cx(1, 0)) / b1.eval(Cx(1, 0), Cx(1, 0));
  CHECK(std::abs(c1 - Cx(0.5, 0)) < 1e-15);
}

TEST_CASE("Ctilde recursion residuals over random samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::pair<Cx, Cx>> samples;
  while (samples.size() < 20) {
    const Cx l(uni(rng), uni(rng));
    const Cx m(uni(rng), uni(rng));
    if (std::abs(l) > 1.0 || std::abs(m) > 1.0) continue;
    if (std::abs(l) < 0.15 || std::abs(m) < 0.15) continue;
    samples.push_back({l, m});
  }
  const Report report = ctilde_recursion_check(6, samples);
  for (const auto& c : report.checks) {
    CAPTURE(c.identity);
    CAPTURE(c.witness);
    CHECK(c.passed());
  }
}
