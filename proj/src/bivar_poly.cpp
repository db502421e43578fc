#include "qknot/bivar_poly.hpp"

#include <algorithm>

#include "qknot/poly_text.hpp"

namespace qknot {

void BivarPoly::set(int dl, int dm, Int coef) {
  if (coef == 0) return;
  terms_[{dl, dm}] = std::move(coef);
}

BivarPoly BivarPoly::monomial(Int coef, int deg_l, int deg_m) {
  BivarPoly p;
  p.set(deg_l, deg_m, std::move(coef));
  return p;
}

Int BivarPoly::coeff(int dl, int dm) const {
  auto it = terms_.find({dl, dm});
  return it == terms_.end() ? Int(0) : it->second;
}

int BivarPoly::deg_l() const {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first);
  return d;
}

int BivarPoly::deg_m() const {
  int d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.second);
  return d;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) {
    Int& slot = terms_[key];
    slot += c;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  for (const auto& [key, c] : rhs.terms_) {
    Int& slot = terms_[key];
    slot -= c;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      BivarPoly::Key key{ka.first + kb.first, ka.second + kb.second};
      Int& slot = out.terms_[key];
      slot += ca * cb;
      if (slot == 0) out.terms_.erase(key);
    }
  }
  return out;
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly out;
  for (const auto& [key, c] : terms_) out.terms_[key] = -c;
  return out;
}

BivarPoly BivarPoly::pow(unsigned n) const {
  BivarPoly result(1);
  BivarPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

Cx BivarPoly::eval(Cx l, Cx m) const {
  // Group by descending deg_l (map order), Horner in m inside each group,
  // then Horner in l across groups.
  Cx acc = 0.0;
  int prev_dl = -1;
  auto it = terms_.begin();
  while (it != terms_.end()) {
    const int dl = it->first.first;
    if (prev_dl >= 0)
      for (int i = 0; i < prev_dl - dl; ++i) acc *= l;
    Cx group = 0.0;
    int prev_dm = -1;
    while (it != terms_.end() && it->first.first == dl) {
      const int dm = it->first.second;
      if (prev_dm >= 0)
        for (int i = 0; i < prev_dm - dm; ++i) group *= m;
      group += it->second.get_d();
      prev_dm = dm;
      ++it;
    }
    for (int i = 0; i < prev_dm; ++i) group *= m;
    acc += group;
    prev_dl = dl;
  }
  if (prev_dl > 0)
    for (int i = 0; i < prev_dl; ++i) acc *= l;
  if (!is_finite(acc)) throw EvalOverflow("BivarPoly::eval overflowed to a non-finite value");
  return acc;
}

std::vector<Cx> BivarPoly::coeffs_in_l(Cx m) const {
  std::vector<Cx> out(static_cast<size_t>(deg_l()) + 1, Cx(0.0));
  for (const auto& [key, c] : terms_) {
    out[static_cast<size_t>(key.first)] += c.get_d() * std::pow(m, key.second);
  }
  for (Cx v : out)
    if (!is_finite(v)) throw EvalOverflow("BivarPoly::coeffs_in_l overflowed");
  return out;
}

bool BivarPoly::even_m_powers() const {
  for (const auto& [key, c] : terms_)
    if (key.second % 2 != 0) return false;
  return true;
}

Int BivarPoly::content() const {
  Int g = 0;
  for (const auto& [key, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

BivarPoly BivarPoly::divided_by_content() const {
  const Int g = content();
  if (g == 0 || g == 1) return *this;
  BivarPoly out;
  for (const auto& [key, c] : terms_) out.terms_[key] = c / g;
  return out;
}

std::string BivarPoly::str() const {
  std::vector<text::Term> terms;
  for (const auto& [key, c] : terms_) {
    text::Term t;
    t.coef = c;
    if (key.first != 0) t.factors.push_back({'l', key.first});
    if (key.second != 0) t.factors.push_back({'m', key.second});
    terms.push_back(std::move(t));
  }
  return text::render(terms);
}

BivarPoly BivarPoly::parse(std::string_view s) {
  BivarPoly out;
  for (const auto& t : text::parse(s, "lm", /*allow_negative_exponents=*/false)) {
    int dl = 0, dm = 0;
    for (const auto& [var, exp] : t.factors) {
      if (var == 'l')
        dl += static_cast<int>(exp);
      else
        dm += static_cast<int>(exp);
    }
    out += monomial(t.coef, dl, dm);
  }
  return out;
}

}  // namespace qknot
