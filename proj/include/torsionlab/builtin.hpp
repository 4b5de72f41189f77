#pragma once

#include <string>
#include <vector>

#include "torsionlab/ring_spec.hpp"

namespace torsionlab {

/// Ring specs of the builtin corpus, ascending by order. Products of coprime
/// cyclic rings are left out (they are cyclic again).
inline const std::vector<std::string>& builtin_specs() {
  static const std::vector<std::string> specs = {
      "Z(2)",  "Z(3)",  "Z(4)",  "prod(Z(2),Z(2))",  "Z(5)",  "Z(6)",  "Z(7)",  "Z(8)",
      "prod(Z(2),Z(4))",  "prod(Z(2),Z(2),Z(2))",  "UT2(2)",  "Z(9)",  "prod(Z(3),Z(3))",
      "Z(10)",  "Z(11)",  "Z(12)",  "prod(Z(2),Z(6))",  "Z(13)",  "Z(14)",  "Z(15)",  "Z(16)",
      "prod(Z(2),Z(8))",  "prod(Z(4),Z(4))",  "prod(Z(2),Z(2),Z(4))",  "prod(Z(2),Z(2),Z(2),Z(2))",
      "prod(Z(2),UT2(2))",  "M2(2)",
  };
  return specs;
}

struct BuiltinRing {
  std::string spec;
  RingPtr ring;
};

/// Builtin rings with at most `max_order` elements, in list order.
inline std::vector<BuiltinRing> builtin_rings(std::size_t max_order = 16) {
  std::vector<BuiltinRing> out;
  for (const auto& spec : builtin_specs()) {
    auto ring = parse_ring_spec(spec);
    if (ring->order() <= max_order) out.push_back({spec, std::move(ring)});
  }
  return out;
}

}  // namespace torsionlab
