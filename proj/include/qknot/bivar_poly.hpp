#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qknot/common.hpp"

namespace qknot {

/// Exact-integer polynomial in l and m. Terms are kept in descending
/// lexicographic order on (deg_l, deg_m), which doubles as the canonical
/// print order, and zero coefficients are never stored.
class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (deg_l, deg_m)
  using Terms = std::map<Key, Int, std::greater<Key>>;

  BivarPoly() = default;
  explicit BivarPoly(long constant) { set(0, 0, Int(constant)); }
  explicit BivarPoly(Int constant) { set(0, 0, std::move(constant)); }

  static BivarPoly monomial(Int coef, int deg_l, int deg_m);
  static BivarPoly var_l() { return monomial(1, 1, 0); }
  static BivarPoly var_m() { return monomial(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int coeff(int deg_l, int deg_m) const;
  int deg_l() const;
  int deg_m() const;

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  BivarPoly operator-() const;
  BivarPoly pow(unsigned n) const;

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Horner evaluation in l then m; exact coefficients become binary64 only
  /// when they enter the accumulation. Throws EvalOverflow on a non-finite
  /// result.
  Cx eval(Cx l, Cx m) const;

  /// Dense coefficient list in l (ascending degree) with m substituted
  /// numerically; feeds the root finder in the saddle cross-checks.
  std::vector<Cx> coeffs_in_l(Cx m) const;

  bool even_m_powers() const;

  /// gcd of all coefficients (positive; 0 for the zero polynomial).
  Int content() const;
  BivarPoly divided_by_content() const;

  std::string str() const;
  static BivarPoly parse(std::string_view text);

 private:
  void set(int deg_l, int deg_m, Int coef);
  Terms terms_;
};

}  // namespace qknot
