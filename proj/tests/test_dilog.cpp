#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qknot/dilog.hpp"

using namespace qknot;

namespace {

constexpr double kPi = std::numbers::pi;

// Catalan's constant by iterated averaging of the alternating series
// sum (-1)^n / (2n+1)^2; the averaging gives superlinear convergence.
double catalan_series_oracle() {
  std::vector<double> s;
  double acc = 0.0;
  for (int n = 0; n < 60; ++n) {
    const double term = 1.0 / ((2.0 * n + 1.0) * (2.0 * n + 1.0));
    acc += (n % 2 == 0) ? term : -term;
    s.push_back(acc);
  }
  while (s.size() > 1) {
    for (size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s[0];
}

}  // namespace

TEST_CASE("dilogarithm special values") {
  CHECK(li2(Cx(0, 0)).value == Cx(0, 0));
  CHECK(std::abs(li2(Cx(1, 0)).value - Cx(kPi * kPi / 6.0, 0)) < 1e-15);

  const double catalan = catalan_series_oracle();
  CHECK(std::abs(catalan - 0.9159655941772190) < 1e-14);

  const Cx at_i = li2(Cx(0, 1)).value;
  CHECK(std::abs(at_i.real() - (-kPi * kPi / 48.0)) < 1e-15);
  CHECK(std::abs(at_i.imag() - catalan) < 1e-14);

  // classical boundary value, continuous from below on the cut
  const Cx at_2 = li2(Cx(2, 0)).value;
  CHECK(std::abs(at_2 - Cx(kPi * kPi / 4.0, -kPi * std::log(2.0))) < 1e-14);

  // Li2(1+i) = pi^2/16 + i (pi ln2 / 4 + Catalan)
  const Cx at_1i = li2(Cx(1, 1)).value;
  CHECK(std::abs(at_1i - Cx(kPi * kPi / 16.0, kPi * std::log(2.0) / 4.0 + catalan)) < 1e-14);
}

TEST_CASE("estimated error stays within contract") {
  for (Cx z : {Cx(0.3, 0.1), Cx(-1.7, 2.2), Cx(0.9, -0.4), Cx(5.0, 1.0), Cx(0.5, 0.865)}) {
    const auto r = li2(z);
    CHECK(r.est_error <= 1e-12);
    CHECK(r.est_error >= 0.0);
  }
}

TEST_CASE("reflection identity on a random sweep") {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> uni(-0.95, 0.95);
  int used = 0;
  while (used < 100) {
    const Cx z(uni(rng), uni(rng));
    if (std::abs(z) > 0.95 || std::abs(z) < 0.02) continue;
    if (std::abs(z.imag()) < 1e-9) continue;
    ++used;
    const Cx lhs = li2(z).value + li2(1.0 - z).value;
    const Cx rhs = kPi * kPi / 6.0 - std::log(z) * std::log(1.0 - z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("Bloch-Wigner basics") {
  CHECK(bloch_wigner(Cx(0.37, 0.0)) == 0.0);
  CHECK(bloch_wigner(Cx(-123.4, 0.0)) == 0.0);

  const double catalan = catalan_series_oracle();
  CHECK(std::abs(bloch_wigner(Cx(0, 1)) - catalan) < 1e-14);
  CHECK(std::abs(4.0 * bloch_wigner(Cx(0, 1)) - 3.66386237670887606) < 1e-12);

  std::mt19937_64 rng(200);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  int used = 0;
  while (used < 100) {
    const Cx z(uni(rng), uni(rng));
    if (std::abs(z) < 0.05 || std::abs(z.imag()) < 1e-9) continue;
    ++used;
    CHECK(std::abs(bloch_wigner(1.0 / z) + bloch_wigner(z)) < 1e-12);
    CHECK(std::abs(bloch_wigner(std::conj(z)) + bloch_wigner(z)) < 1e-12);
  }

  // continuity across the Li2 cut
  const double above = bloch_wigner(Cx(1.7, 1e-9));
  const double below = bloch_wigner(Cx(1.7, -1e-9));
  CHECK(std::abs(above - below) < 1e-8);
}

TEST_CASE("pentagon-derived identity") {
  CHECK(pentagon_residual(Cx(0.42, 0.0)) == 0.0);

  const double catalan = catalan_series_oracle();
  CHECK(std::abs(bloch_wigner(Cx(1, 1)) - catalan) < 1e-13);
  CHECK(pentagon_residual(Cx(0, 1)) < 1e-13);
  CHECK(pentagon_residual(Cx(0.3, 0.7)) < 1e-10);

  std::mt19937_64 rng(300);
  std::uniform_real_distribution<double> uni(-1.4, 1.4);
  int used = 0;
  while (used < 100) {
    const Cx z(uni(rng), uni(rng));
    if (std::abs(z.imag()) < 1e-6) continue;
    if (std::abs(z) < 1e-3 || std::abs(z - 1.0) < 1e-3) continue;
    if (std::abs(z * z - 1.0) < 1e-3 || std::abs(z + 1.0) < 1e-3) continue;
    ++used;
    CHECK(pentagon_residual(z) < 1e-10);
  }
}

TEST_CASE("octahedron sum partial sums") {
  // definition instantiation at one term
  const double one_term = octahedron_sum(1, OctahedronBranch::plus);
  const Cx arg0 = Cx(0.25, 0.25) * Cx(0.25, 0.25);
  CHECK(std::abs(one_term - (3.0 * bloch_wigner(Cx(0, 2)) + bloch_wigner(arg0))) < 1e-15);

  const double target = 3.66386237670887606;
  CHECK(std::abs(octahedron_sum(10000, OctahedronBranch::plus) - target) < 5e-3);
  CHECK(std::abs(octahedron_sum(10000, OctahedronBranch::minus) - target) < 5e-3);

  // the tail keeps shrinking
  const double g1 = std::abs(octahedron_sum(1000, OctahedronBranch::plus) - target);
  const double g2 = std::abs(octahedron_sum(10000, OctahedronBranch::plus) - target);
  CHECK(g2 < g1);
}
