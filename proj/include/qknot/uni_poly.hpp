#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qknot/common.hpp"

namespace qknot {

/// Exact-integer univariate polynomial in z, dense ascending coefficients.
/// The leading coefficient is nonzero unless the polynomial is 0.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(long constant) : coeffs_{Int(constant)} { trim(); }
  explicit UniPoly(std::vector<Int> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static UniPoly monomial(Int coef, unsigned degree);

  const std::vector<Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Int coeff(unsigned k) const {
    return k < coeffs_.size() ? coeffs_[k] : Int(0);
  }

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  Cx eval(Cx z) const;

  /// Exact evaluation at a Gaussian integer re + im*i.
  std::pair<Int, Int> eval_gaussian(const Int& re, const Int& im) const;

  std::string str() const;
  static UniPoly parse(std::string_view text);

 private:
  void trim();
  std::vector<Int> coeffs_;
};

}  // namespace qknot
