#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torsionlab/bitset.hpp"
#include "torsionlab/error.hpp"

namespace torsionlab {

/// A finite lattice with explicit meet and join tables over 0..size-1.
/// Lattices built from a family of sets also keep each member's bitset.
class FiniteLattice {
 public:
  using Table = std::vector<std::vector<Index>>;

  /// Builds from tables and checks every lattice axiom.
  static FiniteLattice from_tables(const Table& meet, const Table& join) {
    FiniteLattice l;
    l.n_ = meet.size();
    if (l.n_ == 0) throw ValidationError("lattice must be nonempty");
    if (join.size() != l.n_) throw ValidationError("meet and join tables differ in size");
    l.meet_.resize(l.n_ * l.n_);
    l.join_.resize(l.n_ * l.n_);
    for (std::size_t a = 0; a < l.n_; ++a) {
      if (meet[a].size() != l.n_ || join[a].size() != l.n_)
        throw ValidationError("lattice table row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < l.n_; ++b) {
        if (meet[a][b] >= l.n_ || join[a][b] >= l.n_)
          throw ValidationError("lattice table entry out of range");
        l.meet_[a * l.n_ + b] = meet[a][b];
        l.join_[a * l.n_ + b] = join[a][b];
      }
    }
    if (auto v = l.axiom_violation()) throw ValidationError(*v);
    return l;
  }

  /// Builds from a family of sets closed under intersection and under
  /// `join`. Meet is intersection. Members are sorted canonically.
  static FiniteLattice from_family(std::vector<Bitset> members,
                                   const std::function<Bitset(const Bitset&, const Bitset&)>& join) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    FiniteLattice l;
    l.n_ = members.size();
    if (l.n_ == 0) throw ValidationError("lattice must be nonempty");
    std::unordered_map<Bitset, Index, BitsetHash> index;
    for (Index i = 0; i < l.n_; ++i) index.emplace(members[i], i);
    auto lookup = [&](const Bitset& b, const char* op) {
      auto it = index.find(b);
      if (it == index.end())
        throw InternalFault(std::string("lattice family is not closed under ") + op);
      return it->second;
    };
    l.meet_.resize(l.n_ * l.n_);
    l.join_.resize(l.n_ * l.n_);
    for (Index a = 0; a < l.n_; ++a)
      for (Index b = a; b < l.n_; ++b) {
        const Index m = lookup(members[a] & members[b], "meet");
        const Index j = lookup(join(members[a], members[b]), "join");
        l.meet_[a * l.n_ + b] = l.meet_[b * l.n_ + a] = m;
        l.join_[a * l.n_ + b] = l.join_[b * l.n_ + a] = j;
      }
    l.members_ = std::move(members);
    return l;
  }

  std::size_t size() const noexcept { return n_; }
  Index meet(Index a, Index b) const noexcept { return meet_[a * n_ + b]; }
  Index join(Index a, Index b) const noexcept { return join_[a * n_ + b]; }
  bool leq(Index a, Index b) const noexcept { return meet(a, b) == a; }

  /// Member bitsets (empty for lattices built from tables).
  const std::vector<Bitset>& members() const noexcept { return members_; }

  /// First failed lattice axiom, checked exhaustively (O(n^3)).
  std::optional<std::string> axiom_violation() const {
    auto at = [](const char* what, std::initializer_list<std::size_t> xs) {
      std::string s = std::string(what) + " fails at (";
      bool first = true;
      for (auto x : xs) {
        s += (first ? "" : ",") + std::to_string(x);
        first = false;
      }
      return s + ")";
    };
    for (Index a = 0; a < n_; ++a) {
      if (meet(a, a) != a || join(a, a) != a) return at("idempotence", {a});
      for (Index b = 0; b < n_; ++b) {
        if (meet(a, b) != meet(b, a) || join(a, b) != join(b, a)) return at("commutativity", {a, b});
        if (join(a, meet(a, b)) != a || meet(a, join(a, b)) != a) return at("absorption", {a, b});
        for (Index c = 0; c < n_; ++c) {
          if (meet(meet(a, b), c) != meet(a, meet(b, c)) || join(join(a, b), c) != join(a, join(b, c)))
            return at("associativity", {a, b, c});
        }
      }
    }
    return std::nullopt;
  }

 private:
  FiniteLattice() = default;

  std::size_t n_ = 0;
  std::vector<Index> meet_;
  std::vector<Index> join_;
  std::vector<Bitset> members_;
};

/// x <= z with x v (y ^ z) != (x v y) ^ z.
struct ModularityWitness {
  Index x;
  Index y;
  Index z;
};

/// First failure of the modular law, or nullopt when the lattice is modular.
inline std::optional<ModularityWitness> modularity_witness(const FiniteLattice& l) {
  const auto n = static_cast<Index>(l.size());
  for (Index x = 0; x < n; ++x)
    for (Index z = 0; z < n; ++z) {
      if (x == z || !l.leq(x, z)) continue;
      for (Index y = 0; y < n; ++y)
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) return ModularityWitness{x, y, z};
    }
  return std::nullopt;
}

inline bool is_modular(const FiniteLattice& l) { return !modularity_witness(l).has_value(); }

/// The pentagon N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c.
inline FiniteLattice pentagon() {
  // 0 = bottom, 1 = a, 2 = c, 3 = b, 4 = top
  const std::vector<std::vector<Index>> leq_pairs = {
      {0, 1, 2, 3, 4}, {1, 2, 4}, {2, 4}, {3, 4}, {4}};
  auto le = [&](Index a, Index b) {
    return std::find(leq_pairs[a].begin(), leq_pairs[a].end(), b) != leq_pairs[a].end();
  };
  FiniteLattice::Table meet(5, std::vector<Index>(5)), join(5, std::vector<Index>(5));
  for (Index a = 0; a < 5; ++a)
    for (Index b = 0; b < 5; ++b) {
      // greatest lower bound / least upper bound by brute force
      Index lo = 0, hi = 4;
      for (Index c = 0; c < 5; ++c) {
        if (le(c, a) && le(c, b) && le(lo, c)) lo = c;
        if (le(a, c) && le(b, c) && le(c, hi)) hi = c;
      }
      meet[a][b] = lo;
      join[a][b] = hi;
    }
  return FiniteLattice::from_tables(meet, join);
}

/// The chain 0 < 1 < ... < k-1.
inline FiniteLattice chain(std::size_t k) {
  FiniteLattice::Table meet(k, std::vector<Index>(k)), join(k, std::vector<Index>(k));
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) {
      meet[a][b] = std::min(a, b);
      join[a][b] = std::max(a, b);
    }
  return FiniteLattice::from_tables(meet, join);
}

}  // namespace torsionlab
