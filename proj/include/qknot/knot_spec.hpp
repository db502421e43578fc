#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qknot/common.hpp"

namespace qknot {

enum class KnotKind { twist, torus };

/// Twist knot K_p (p nonzero) or torus knot T(2, 2p+1) (p >= 1).
struct KnotSpec {
  KnotKind kind;
  int p;

  static KnotSpec twist(int p);
  static KnotSpec torus(int p);

  /// Accepts "twist:<p>" / "torus:<p>"; rejects twist:0 and torus p < 1.
  static KnotSpec parse(std::string_view text);
  std::string str() const;
};

struct JonesQuery {
  KnotSpec knot;
  unsigned N = 1;              // color
  std::optional<double> r;     // evaluation parameter, nonzero when present
};

}  // namespace qknot
