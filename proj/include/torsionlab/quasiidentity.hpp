#pragma once

#include <cctype>
#include <string>
#include <utility>

#include "torsionlab/ideal.hpp"
#include "torsionlab/module.hpp"

namespace torsionlab {

/// q_A : (a_1 x = 0) & ... & (a_k x = 0) -> (x = 0) for A = (a_1, ..., a_k).
class Quasiidentity {
 public:
  explicit Quasiidentity(LeftIdeal ideal) : ideal_(std::move(ideal)) {}

  const LeftIdeal& ideal() const noexcept { return ideal_; }
  const RingPtr& ring() const noexcept { return ideal_.ring(); }

  bool holds_in(const FiniteModule& m) const { return satisfies_quasiidentity(m, ideal_); }

  /// Renders over the generator list, e.g. "(e11·x=0)∧(e12·x=0)→(x=0)".
  /// Integer coefficients are juxtaposed ("(2x=0)"), named ones use "·".
  std::string render() const {
    std::string out;
    for (Index g : ideal_.generators()) {
      if (!out.empty()) out += "∧";
      const std::string& name = ring()->display(g);
      bool numeric = !name.empty();
      for (char c : name) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
      out += "(" + name + (numeric ? "" : "·") + "x=0)";
    }
    return out + "→(x=0)";
  }

 private:
  LeftIdeal ideal_;
};

}  // namespace torsionlab
