#include "qknot/uni_poly.hpp"

#include <algorithm>

#include "qknot/poly_text.hpp"

namespace qknot {

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(Int coef, unsigned degree) {
  UniPoly p;
  if (coef != 0) {
    p.coeffs_.assign(degree + 1, Int(0));
    p.coeffs_[degree] = std::move(coef);
  }
  return p;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Int(0));
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Int(0));
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  UniPoly out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  out.trim();
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (Int& c : out.coeffs_) c = -c;
  return out;
}

Cx UniPoly::eval(Cx z) const {
  Cx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + it->get_d();
  return acc;
}

std::pair<Int, Int> UniPoly::eval_gaussian(const Int& re, const Int& im) const {
  Int acc_re = 0, acc_im = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    // (acc_re + i acc_im)(re + i im) + coeff
    Int next_re = acc_re * re - acc_im * im + *it;
    Int next_im = acc_re * im + acc_im * re;
    acc_re = std::move(next_re);
    acc_im = std::move(next_im);
  }
  return {acc_re, acc_im};
}

std::string UniPoly::str() const {
  std::vector<text::Term> terms;
  for (int d = degree(); d >= 0; --d) {
    const Int& c = coeffs_[static_cast<size_t>(d)];
    if (c == 0) continue;
    text::Term t;
    t.coef = c;
    if (d != 0) t.factors.push_back({'z', d});
    terms.push_back(std::move(t));
  }
  return text::render(terms);
}

UniPoly UniPoly::parse(std::string_view s) {
  UniPoly out;
  for (const auto& t : text::parse(s, "z", /*allow_negative_exponents=*/false)) {
    unsigned d = 0;
    for (const auto& [var, exp] : t.factors) d += static_cast<unsigned>(exp);
    out += monomial(t.coef, d);
  }
  return out;
}

}  // namespace qknot
