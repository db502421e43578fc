#include "qknot/poly_text.hpp"

#include <cctype>
#include <sstream>

namespace qknot::text {

std::string render(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms) {
    Int c = t.coef;
    const bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    if (negative) c = -c;
    const bool unit = (c == 1) && !t.factors.empty();
    if (!unit) {
      out << c.get_str();
      if (!t.factors.empty()) out << "*";
    }
    bool first_factor = true;
    for (const auto& [var, exp] : t.factors) {
      if (!first_factor) out << "*";
      out << var;
      if (exp != 1) out << "^" << exp;
      first_factor = false;
    }
    first = false;
  }
  return out.str();
}

namespace {

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void error(const std::string& what) {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos) +
                     ": " + what);
  }
};

std::string read_digits(Cursor& c) {
  c.skip_ws();
  std::string digits;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
    digits += c.s[c.pos++];
  if (digits.empty()) c.error("expected digits");
  return digits;
}

long read_exponent(Cursor& c, bool allow_negative) {
  bool neg = false;
  if (c.peek() == '-') {
    if (!allow_negative) c.error("negative exponent not allowed here");
    neg = true;
    ++c.pos;
  } else if (c.peek() == '+') {
    ++c.pos;
  }
  const std::string digits = read_digits(c);
  long e = 0;
  try {
    e = std::stol(digits);
  } catch (const std::exception&) {
    c.error("exponent out of range");
  }
  return neg ? -e : e;
}

}  // namespace

std::vector<Term> parse(std::string_view input, std::string_view vars,
                        bool allow_negative_exponents) {
  Cursor c{input};
  std::vector<Term> terms;
  if (c.done()) c.error("empty input");

  bool first = true;
  while (!c.done()) {
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = (ch == '-') ? -1 : 1;
      ++c.pos;
    } else if (!first) {
      c.error("expected '+' or '-' between terms");
    }

    Term term;
    term.coef = sign;
    bool saw_anything = false;

    // optional integer coefficient
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      term.coef = sign * Int(read_digits(c));
      saw_anything = true;
      if (c.peek() == '*') ++c.pos;
    }

    // var^exp factors separated by '*'
    while (vars.find(c.peek()) != std::string_view::npos) {
      const char var = c.peek();
      ++c.pos;
      long exp = 1;
      if (c.peek() == '^') {
        ++c.pos;
        exp = read_exponent(c, allow_negative_exponents);
      }
      bool merged = false;
      for (auto& [v, e] : term.factors) {
        if (v == var) {
          e += exp;
          merged = true;
          break;
        }
      }
      if (!merged) term.factors.push_back({var, exp});
      saw_anything = true;
      if (c.peek() == '*') {
        ++c.pos;
        if (vars.find(c.peek()) == std::string_view::npos &&
            !std::isdigit(static_cast<unsigned char>(c.peek())))
          c.error("dangling '*'");
        // a stray numeric factor after '*' is accepted, e.g. "l*2"
        if (std::isdigit(static_cast<unsigned char>(c.peek())))
          term.coef *= Int(read_digits(c));
      }
    }

    if (!saw_anything) c.error("expected a coefficient or a variable");
    terms.push_back(std::move(term));
    first = false;
  }
  return terms;
}

}  // namespace qknot::text
