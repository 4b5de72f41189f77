#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "torsionlab/error.hpp"
#include "torsionlab/lattice.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

/// Lattice of all submodules: meet is intersection, join is sum.
inline FiniteLattice submodule_lattice(const ModulePtr& m, const std::vector<Submodule>& subs) {
  std::vector<Bitset> family;
  family.reserve(subs.size());
  for (const auto& s : subs) family.push_back(s.elements());
  return FiniteLattice::from_family(std::move(family), [&](const Bitset& a, const Bitset& b) {
    return detail::subgroup_sum(*m, a, b);
  });
}

inline FiniteLattice submodule_lattice(const ModulePtr& m) {
  return submodule_lattice(m, all_submodules(m));
}

/// Which modules a bounded sweep covers.
struct CorpusOptions {
  /// Quotients of R^j for 1 <= j <= bound.
  unsigned bound = 2;
  /// Also include M1 (+) M2 for corpus members with |M1||M2| <= max_sum_order.
  bool direct_sums = false;
  std::size_t max_sum_order = 64;
  /// Refuse to build R^j with more elements than this.
  std::size_t max_free_order = 4096;
};

/// A corpus module with its full, canonically sorted submodule family.
struct CorpusEntry {
  ModulePtr module;
  std::vector<Submodule> submodules;
};

/// Every quotient of R, R^2, ..., R^bound (every module generated by at
/// most `bound` elements, up to isomorphism), in a deterministic order:
/// by free rank, then by canonical order of the submodule factored out.
inline std::vector<CorpusEntry> module_corpus(const RingPtr& ring, const CorpusOptions& options = {}) {
  if (options.bound == 0) throw PreconditionError("corpus bound must be at least 1");
  std::size_t free_order = 1;
  for (unsigned j = 1; j <= options.bound; ++j) {
    free_order *= ring->order();
    if (free_order > options.max_free_order)
      throw PreconditionError("corpus bound " + std::to_string(options.bound) + " needs R^" +
                              std::to_string(j) + " of order " + std::to_string(free_order) +
                              ", above the limit " + std::to_string(options.max_free_order));
  }
  std::vector<CorpusEntry> out;
  for (unsigned j = 1; j <= options.bound; ++j) {
    auto free = power_module(ring, j);
    for (const auto& s : all_submodules(free)) {
      auto q = quotient_module(free, s).module;
      out.push_back(CorpusEntry{q, all_submodules(q)});
    }
  }
  if (options.direct_sums) {
    const std::size_t base = out.size();
    for (std::size_t a = 0; a < base; ++a)
      for (std::size_t b = a; b < base; ++b) {
        if (out[a].module->order() < 2 || out[b].module->order() < 2) continue;
        if (out[a].module->order() * out[b].module->order() > options.max_sum_order) continue;
        auto m = direct_sum(out[a].module, out[b].module);
        out.push_back(CorpusEntry{m, all_submodules(m)});
      }
  }
  return out;
}

}  // namespace torsionlab
