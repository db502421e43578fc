#include "qknot/knot_spec.hpp"

namespace qknot {

KnotSpec KnotSpec::twist(int p) {
  if (p == 0) throw std::invalid_argument("twist knot requires p != 0");
  return {KnotKind::twist, p};
}

KnotSpec KnotSpec::torus(int p) {
  if (p < 1) throw std::invalid_argument("torus knot T(2,2p+1) requires p >= 1");
  return {KnotKind::torus, p};
}

KnotSpec KnotSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("knot spec must look like twist:<p> or torus:<p>");
  const std::string_view kind = text.substr(0, colon);
  const std::string num(text.substr(colon + 1));
  int p = 0;
  size_t used = 0;
  try {
    p = std::stoi(num, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("knot spec has a malformed integer: " + num);
  }
  if (used != num.size())
    throw std::invalid_argument("knot spec has trailing characters: " + num);
  if (kind == "twist") return twist(p);
  if (kind == "torus") return torus(p);
  throw std::invalid_argument("unknown knot kind: " + std::string(kind));
}

std::string KnotSpec::str() const {
  return (kind == KnotKind::twist ? "twist:" : "torus:") + std::to_string(p);
}

}  // namespace qknot
