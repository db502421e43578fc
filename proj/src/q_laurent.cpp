#include "qknot/q_laurent.hpp"

#include <cmath>
#include <numbers>

#include "qknot/poly_text.hpp"

namespace qknot {

void QLaurent::set(long e, Int coef) {
  if (coef == 0) return;
  terms_[e] = std::move(coef);
}

QLaurent QLaurent::monomial(Int coef, long exponent) {
  QLaurent p;
  p.set(exponent, std::move(coef));
  return p;
}

Int QLaurent::coeff(long e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

long QLaurent::min_exponent() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

long QLaurent::max_exponent() const {
  return terms_.empty() ? 0 : terms_.begin()->first;
}

QLaurent& QLaurent::operator+=(const QLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) {
    Int& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) {
    Int& slot = terms_[e];
    slot -= c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Int& slot = out.terms_[ea + eb];
      slot += ca * cb;
      if (slot == 0) out.terms_.erase(ea + eb);
    }
  }
  return out;
}

QLaurent QLaurent::inverted_q() const {
  QLaurent out;
  for (const auto& [e, c] : terms_) out.terms_[-e] = c;
  return out;
}

Cx QLaurent::eval_root(double r, unsigned N) const {
  const double two_pi = 2.0 * std::numbers::pi;
  Cx acc = 0.0;
  for (const auto& [e, c] : terms_) {
    const double turns = std::fmod(static_cast<double>(e) * r / static_cast<double>(N), 1.0);
    acc += c.get_d() * std::polar(1.0, two_pi * turns);
  }
  return acc;
}

std::string QLaurent::str() const {
  std::vector<text::Term> terms;
  for (const auto& [e, c] : terms_) {
    text::Term t;
    t.coef = c;
    if (e != 0) t.factors.push_back({'q', e});
    terms.push_back(std::move(t));
  }
  return text::render(terms);
}

QLaurent QLaurent::parse(std::string_view s) {
  QLaurent out;
  for (const auto& t : text::parse(s, "q", /*allow_negative_exponents=*/true)) {
    long e = 0;
    for (const auto& [var, exp] : t.factors) e += exp;
    out += monomial(t.coef, e);
  }
  return out;
}

}  // namespace qknot
