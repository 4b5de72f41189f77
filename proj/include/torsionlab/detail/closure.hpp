#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "torsionlab/bitset.hpp"

namespace torsionlab::detail {

/// A finite abelian group with an action by a finite set of scalars. The
/// action must be additive in the group argument. Left ideals (regular
/// module), submodules, and two-sided ideals (bimodule action) all fit.
template <class G>
concept ActedGroup = requires(const G& g, Index a, Index b) {
  { g.order() } -> std::convertible_to<std::size_t>;
  { g.scalar_count() } -> std::convertible_to<std::size_t>;
  { g.plus(a, b) } -> std::convertible_to<Index>;
  { g.act(a, b) } -> std::convertible_to<Index>;
  { g.zero() } -> std::convertible_to<Index>;
};

/// {s + t : s in a, t in b}. Both arguments must be subgroups.
template <ActedGroup G>
Bitset subgroup_sum(const G& g, const Bitset& a, const Bitset& b) {
  if (a.is_subset_of(b)) return b;
  if (b.is_subset_of(a)) return a;
  Bitset out(g.order());
  const auto bs = b.to_vector();
  a.for_each([&](Index s) {
    for (Index t : bs) out.set(g.plus(s, t));
  });
  return out;
}

/// Adds y to the subgroup s and closes additively.
template <ActedGroup G>
Bitset adjoin(const G& g, const Bitset& s, Index y) {
  if (s.test(y)) return s;
  Bitset multiples(g.order());
  Index k = g.zero();
  do {
    multiples.set(k);
    k = g.plus(k, y);
  } while (k != g.zero());
  return subgroup_sum(g, s, multiples);
}

/// Orbit {act(r, x) : r scalar}.
template <ActedGroup G>
Bitset orbit(const G& g, Index x) {
  Bitset out(g.order());
  for (Index r = 0; r < g.scalar_count(); ++r) out.set(g.act(r, x));
  return out;
}

/// Least action-closed subgroup containing gens. Orbits are closed under the
/// action, so their additive span is too.
template <ActedGroup G>
Bitset generated(const G& g, std::span<const Index> gens) {
  Bitset s = Bitset::singleton(g.order(), g.zero());
  for (Index x : gens) {
    if (s.test(x)) continue;
    orbit(g, x).for_each([&](Index y) { s = adjoin(g, s, y); });
  }
  return s;
}

/// Every action-closed subgroup, each exactly once, in canonical order.
/// Every such subgroup is a sum of cyclic ones, so breadth-first joining of
/// cyclic pieces reaches all of them.
template <ActedGroup G>
std::vector<Bitset> all_closed_subgroups(const G& g) {
  std::vector<Bitset> cyclic;
  {
    std::unordered_set<Bitset, BitsetHash> seen;
    for (Index x = 0; x < g.order(); ++x) {
      const Index one[] = {x};
      Bitset c = generated(g, std::span<const Index>(one));
      if (seen.insert(c).second) cyclic.push_back(std::move(c));
    }
  }
  std::unordered_set<Bitset, BitsetHash> found;
  std::vector<Bitset> frontier{Bitset::singleton(g.order(), g.zero())};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const auto& s : frontier) {
      for (const auto& c : cyclic) {
        if (c.is_subset_of(s)) continue;
        Bitset t = subgroup_sum(g, s, c);
        if (found.insert(t).second) next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Bitset> out(found.begin(), found.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy generator list: scan ascending, keep every element not yet covered.
template <ActedGroup G>
std::vector<Index> greedy_generators(const G& g, const Bitset& s) {
  std::vector<Index> gens;
  Bitset covered = Bitset::singleton(g.order(), g.zero());
  s.for_each([&](Index x) {
    if (covered.test(x)) return;
    gens.push_back(x);
    const Index one[] = {x};
    covered = subgroup_sum(g, covered, generated(g, std::span<const Index>(one)));
  });
  return gens;
}

}  // namespace torsionlab::detail
