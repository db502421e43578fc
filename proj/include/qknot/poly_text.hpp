#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qknot/common.hpp"

namespace qknot::text {

/// One monomial of the canonical text format: integer coefficient times a
/// product of var^exp factors. Shared by the l/m, z and q polynomial types.
struct Term {
  Int coef;
  std::vector<std::pair<char, long>> factors;  // (variable, exponent)
};

/// Renders terms (already in canonical order) as
/// "2*l*m^2 - l + q^-4"-style text. An empty list renders as "0".
std::string render(const std::vector<Term>& terms);

/// Parses the same grammar back. `vars` lists the accepted variable letters;
/// `allow_negative_exponents` is true only for the q format.
std::vector<Term> parse(std::string_view input, std::string_view vars,
                        bool allow_negative_exponents);

}  // namespace qknot::text
