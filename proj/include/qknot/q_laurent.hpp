#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qknot/common.hpp"

namespace qknot {

/// Exact-integer Laurent polynomial in q. Exponents are full-range: the
/// torus prefactor q^{p(1-N^2)} pushes them far negative.
class QLaurent {
 public:
  using Terms = std::map<long, Int, std::greater<long>>;  // descending exponent

  QLaurent() = default;
  explicit QLaurent(long constant) { set(0, Int(constant)); }

  static QLaurent monomial(Int coef, long exponent);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int coeff(long exponent) const;
  long min_exponent() const;  // 0 for the zero polynomial
  long max_exponent() const;

  QLaurent& operator+=(const QLaurent& rhs);
  QLaurent& operator-=(const QLaurent& rhs);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);

  friend bool operator==(const QLaurent& a, const QLaurent& b) {
    return a.terms_ == b.terms_;
  }

  /// q -> 1/q. An involution.
  QLaurent inverted_q() const;

  /// Value at q = exp(2*pi*i*r/N), summed term by term with the exact
  /// coefficients converted to binary64 (no Horner across negative
  /// exponents).
  Cx eval_root(double r, unsigned N) const;

  std::string str() const;
  static QLaurent parse(std::string_view text);

 private:
  void set(long exponent, Int coef);
  Terms terms_;
};

}  // namespace qknot
