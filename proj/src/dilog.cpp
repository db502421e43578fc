#include "qknot/dilog.hpp"

#include <cmath>
#include <numbers>

namespace qknot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Coefficients B_{2k} / (2k+1)! of the series
//   Li2(z) = u - u^2/4 + sum_{k>=1} B_{2k} u^{2k+1} / (2k+1)!,  u = -log(1-z),
// computed once from the exact rationals. |u| stays below 1.8 in the region
// this series is used, so sixteen terms reach full binary64 accuracy.
const double* bernoulli_coeffs() {
  static const double table[16] = {
      (1.0 / 6.0) / 6.0,
      (-1.0 / 30.0) / 120.0,
      (1.0 / 42.0) / 5040.0,
      (-1.0 / 30.0) / 362880.0,
      (5.0 / 66.0) / 39916800.0,
      (-691.0 / 2730.0) / 6227020800.0,
      (7.0 / 6.0) / 1307674368000.0,
      (-3617.0 / 510.0) / 355687428096000.0,
      (43867.0 / 798.0) / 121645100408832000.0,
      (-174611.0 / 330.0) / 51090942171709440000.0,
      (854513.0 / 138.0) / 25852016738884976640000.0,
      (-236364091.0 / 2730.0) / 15511210043330985984000000.0,
      (8553103.0 / 6.0) / 10888869450418352160768000000.0,
      (-23749461029.0 / 870.0) / 8841761993739701954543616000000.0,
      (8615841276005.0 / 14322.0) / 8222838654177922817725562880000000.0,
      (-7709321041217.0 / 510.0) / 8683317618811886495518194401280000000.0,
  };
  return table;
}

Cx li2_maclaurin(Cx z) {
  // |z| <= 1/2
  Cx sum = 0.0, zp = z;
  for (int n = 1; n <= 64; ++n) {
    const Cx term = zp / static_cast<double>(n * n);
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    zp *= z;
  }
  return sum;
}

Cx li2_log_series(Cx z) {
  // |z| <= 1, Re z <= 1/2
  const Cx u = -std::log(1.0 - z);
  const Cx u2 = u * u;
  Cx sum = u - u2 * 0.25;
  Cx upow = u * u2;
  const double* c = bernoulli_coeffs();
  for (int k = 0; k < 16; ++k) {
    const Cx term = c[k] * upow;
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    upow *= u2;
  }
  return sum;
}

Cx li2_value(Cx z) {
  const double az = std::abs(z);
  if (az == 0.0) return 0.0;
  if (z.real() == 1.0 && z.imag() == 0.0) return Cx(kPi2Over6, 0.0);
  if (az <= 0.5) return li2_maclaurin(z);
  if (az > 1.0) {
    const Cx lg = std::log(-z);
    return -li2_value(1.0 / z) - kPi2Over6 - 0.5 * lg * lg;
  }
  if (z.real() > 0.5)
    return kPi2Over6 - std::log(z) * std::log(1.0 - z) - li2_value(1.0 - z);
  return li2_log_series(z);
}

}  // namespace

DilogResult li2(Cx z) {
  // Cut convention: values on [1, inf) are the limits from below.
  if (z.imag() == 0.0 && z.real() > 1.0) z = Cx(z.real(), -0.0);
  const Cx value = li2_value(z);
  return {value, 3e-16 * (1.0 + std::abs(value))};
}

double bloch_wigner(Cx z) {
  if (z.imag() == 0.0) return 0.0;
  return li2(z).value.imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double pentagon_residual(Cx z) {
  return std::abs(bloch_wigner(z * z) - 2.0 * (bloch_wigner(z) - bloch_wigner(z + 1.0)));
}

double octahedron_sum(unsigned terms, OctahedronBranch branch) {
  double sum = 3.0 * bloch_wigner(Cx(0.0, 2.0));
  double comp = 0.0;  // Kahan compensation
  for (unsigned k = 0; k < terms; ++k) {
    Cx arg;
    if (branch == OctahedronBranch::plus)
      arg = Cx(static_cast<double>(k) + 0.25, 0.25);
    else
      arg = Cx(-static_cast<double>(k) - 0.75, 0.25);
    double term = bloch_wigner(arg * arg);
    if (branch == OctahedronBranch::minus) term = -term;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace qknot
