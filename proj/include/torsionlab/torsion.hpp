#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "torsionlab/corpus.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/lattice.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/quasiidentity.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

/// A family of left ideals of R meant to satisfy the five torsion-notion
/// axioms: (1) nonempty order filter, (2) downward directed, (3) closed
/// under generator products (XY), (4) for A in F and r in R some B in F has
/// Br inside A, (5) regularity: Ar = 0 forces r = 0. Only
/// check_torsion_axioms sets the validated flag.
class TorsionNotion {
 public:
  TorsionNotion(RingPtr ring, std::vector<LeftIdeal> members)
      : ring_(std::move(ring)), members_(std::move(members)) {
    for (const auto& a : members_) require_same_ring(ring_, a.ring(), "TorsionNotion");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<LeftIdeal>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool validated() const noexcept { return validated_; }

  bool contains(const Bitset& elements) const noexcept {
    auto it = std::lower_bound(members_.begin(), members_.end(), elements,
                               [](const LeftIdeal& a, const Bitset& b) { return a.elements() < b; });
    return it != members_.end() && it->elements() == elements;
  }
  bool contains(const LeftIdeal& a) const noexcept { return contains(a.elements()); }

  /// {R} is always a torsion notion.
  bool is_trivial() const noexcept { return members_.size() == 1 && members_.front().is_whole(); }

  friend bool operator==(const TorsionNotion& a, const TorsionNotion& b) noexcept {
    return a.members_ == b.members_;
  }

 private:
  friend class TorsionChecker;
  RingPtr ring_;
  std::vector<LeftIdeal> members_;
  bool validated_ = false;
};

/// The first failed axiom with a witness that falsifies it.
struct AxiomViolation {
  int axiom = 0;
  /// Axiom (3) only: which generator reading failed: "stored" (the members'
  /// stored generator lists), "full" (all elements as generators), or
  /// "minimal" (an irredundant generating set of the second ideal).
  std::string reading;
  std::vector<LeftIdeal> ideals;
  std::vector<Index> elements;
  std::vector<Index> xs;
  std::vector<Index> ys;
  std::string message;
  /// Every axiom the family fails, ascending; front() == axiom.
  std::vector<int> violated;
};

using TorsionCheck = std::variant<TorsionNotion, AxiomViolation>;

namespace detail {

inline bool annihilates_right(const LeftIdeal& a, Index r) {
  const auto& ring = *a.ring();
  for (Index g : a.generators())
    if (ring.mul(g, r) != ring.zero()) return false;
  return true;
}

/// Per-ideal regularity: the least nonzero r with A r = 0, if any.
inline std::optional<Index> regularity_witness(const LeftIdeal& a) {
  const auto& ring = *a.ring();
  for (Index r = 0; r < ring.order(); ++r)
    if (r != ring.zero() && annihilates_right(a, r)) return r;
  return std::nullopt;
}

/// Calls f(Y) for every generating set Y of B reached by adding elements in
/// ascending index order, each strictly enlarging the span. This covers
/// every inclusion-minimal generating set.
template <class F>
void for_each_irredundant_generating_set(const LeftIdeal& b, F&& f) {
  const RingPtr& ring = b.ring();
  const auto elements = b.elements().to_vector();
  std::vector<Index> chosen;
  auto rec = [&](auto&& self, std::size_t from, const Bitset& span) -> void {
    if (span == b.elements()) {
      if (chosen.empty()) chosen.push_back(ring->zero());
      f(std::span<const Index>(chosen));
      return;
    }
    for (std::size_t k = from; k < elements.size(); ++k) {
      const Index y = elements[k];
      if (span.test(y)) continue;
      const Index one[] = {y};
      Bitset grown = subgroup_sum(LeftRegularAction{*ring}, span,
                                  generated(LeftRegularAction{*ring}, std::span<const Index>(one)));
      chosen.push_back(y);
      self(self, k + 1, grown);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Bitset::singleton(ring->order(), ring->zero()));
}

}  // namespace detail

class TorsionChecker {
 public:
  static TorsionCheck check(const RingPtr& ring, std::vector<LeftIdeal> family) {
    TorsionNotion f(ring, std::move(family));
    if (auto v = violation(f)) return *v;
    f.validated_ = true;
    return f;
  }

  /// First violation in axiom order; its `violated` lists every failing axiom.
  static std::optional<AxiomViolation> violation(const TorsionNotion& f) {
    std::optional<AxiomViolation> first;
    std::vector<int> failing;
    for (int axiom = 1; axiom <= 5; ++axiom) {
      auto v = check_axiom(f, axiom);
      if (!v) continue;
      failing.push_back(axiom);
      if (!first) first = std::move(v);
      if (axiom == 1 && f.members().empty()) break;
    }
    if (first) first->violated = std::move(failing);
    return first;
  }

  static std::optional<AxiomViolation> check_axiom(const TorsionNotion& f, int axiom) {
    const RingPtr& ring = f.ring();
    const auto& fam = f.members();
    auto v = [axiom](std::vector<LeftIdeal> ideals, std::vector<Index> elements, std::string message) {
      AxiomViolation out;
      out.axiom = axiom;
      out.ideals = std::move(ideals);
      out.elements = std::move(elements);
      out.message = std::move(message);
      return out;
    };
    switch (axiom) {
      case 1: {  // nonempty order filter
        if (fam.empty()) return v({}, {}, "family is empty");
        const auto all = all_left_ideals(ring);
        for (const auto& a : fam)
          for (const auto& b : all)
            if (a.is_subset_of(b) && !f.contains(b))
              return v({a, b}, {}, "not upward closed: a superset of a member is missing");
        return std::nullopt;
      }
      case 2:  // downward directed
        for (std::size_t i = 0; i < fam.size(); ++i)
          for (std::size_t j = i + 1; j < fam.size(); ++j) {
            const Bitset meet = fam[i].elements() & fam[j].elements();
            const bool ok = std::any_of(fam.begin(), fam.end(), [&](const LeftIdeal& c) {
              return c.elements().is_subset_of(meet);
            });
            if (!ok) return v({fam[i], fam[j]}, {}, "no member lies below both");
          }
        return std::nullopt;
      case 3:  // generator products
        for (const auto& a : fam)
          for (const auto& b : fam)
            if (auto w = product_violation(f, a, b)) return w;
        return std::nullopt;
      case 4:  // right translation
        for (const auto& a : fam)
          for (Index r = 0; r < ring->order(); ++r) {
            const bool ok = std::any_of(fam.begin(), fam.end(), [&](const LeftIdeal& b) {
              return right_translate(b, r).is_subset_of(a.elements());
            });
            if (!ok) return v({a}, {r}, "no member B with B*r inside A");
          }
        return std::nullopt;
      case 5:  // regularity
        for (const auto& a : fam)
          if (auto r = detail::regularity_witness(a)) return v({a}, {*r}, "A*r = 0 for a nonzero r");
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

 private:
  static std::optional<AxiomViolation> product_violation(const TorsionNotion& f,
                                                         const LeftIdeal& a,
                                                         const LeftIdeal& b) {
    const RingPtr& ring = f.ring();
    auto fail = [&](const char* reading, std::span<const Index> xs, std::span<const Index> ys,
                    const LeftIdeal& product) {
      AxiomViolation out;
      out.axiom = 3;
      out.reading = reading;
      out.ideals = {a, b, product};
      out.xs.assign(xs.begin(), xs.end());
      out.ys.assign(ys.begin(), ys.end());
      out.message = std::string("(XY) is not a member under the ") + reading + " generator reading";
      return out;
    };
    const auto stored = product_ideal(a.generators(), b.generators(), ring);
    const auto xa = a.elements().to_vector(), yb = b.elements().to_vector();
    if (!f.contains(stored)) {
      auto out = fail("stored", a.generators(), b.generators(), stored);
      const bool full_ok = f.contains(product_ideal(xa, yb, ring));
      out.message += full_ok ? "; the full-element reading passes" : "; the full-element reading fails too";
      return out;
    }
    const auto full = product_ideal(xa, yb, ring);
    if (!f.contains(full)) return fail("full", xa, yb, full);
    // (XY) does not depend on which generating set X of A is used, but it
    // does depend on Y. Smaller Y give smaller (XY), so irredundant
    // generating sets of B are the hardest cases.
    std::optional<AxiomViolation> found;
    detail::for_each_irredundant_generating_set(b, [&](std::span<const Index> ys) {
      if (found) return;
      auto p = product_ideal(a.generators(), ys, ring);
      if (!f.contains(p)) found = fail("minimal", a.generators(), ys, p);
    });
    return found;
  }
};

/// Valid(TorsionNotion) or the first AxiomViolation in axiom order, each
/// with the least witness in canonical order.
inline TorsionCheck check_torsion_axioms(const RingPtr& ring, std::vector<LeftIdeal> family) {
  return TorsionChecker::check(ring, std::move(family));
}

/// Re-derives the violation from its witness alone.
inline bool replays(const AxiomViolation& v, const std::vector<LeftIdeal>& family, const RingPtr& ring) {
  TorsionNotion f(ring, family);
  auto member = [&](const LeftIdeal& a) { return f.contains(a); };
  switch (v.axiom) {
    case 1:
      if (v.ideals.empty()) return family.empty();
      return v.ideals.size() == 2 && member(v.ideals[0]) && v.ideals[0].is_subset_of(v.ideals[1]) &&
             !member(v.ideals[1]);
    case 2: {
      if (v.ideals.size() != 2 || !member(v.ideals[0]) || !member(v.ideals[1])) return false;
      const Bitset meet = v.ideals[0].elements() & v.ideals[1].elements();
      return std::none_of(f.members().begin(), f.members().end(),
                          [&](const LeftIdeal& c) { return c.elements().is_subset_of(meet); });
    }
    case 3: {
      if (v.ideals.size() != 3 || !member(v.ideals[0]) || !member(v.ideals[1])) return false;
      if (left_ideal_closure(ring, v.xs) != v.ideals[0] || left_ideal_closure(ring, v.ys) != v.ideals[1])
        return false;
      return !member(product_ideal(v.xs, v.ys, ring));
    }
    case 4: {
      if (v.ideals.size() != 1 || v.elements.size() != 1 || !member(v.ideals[0])) return false;
      return std::none_of(f.members().begin(), f.members().end(), [&](const LeftIdeal& b) {
        return right_translate(b, v.elements[0]).is_subset_of(v.ideals[0].elements());
      });
    }
    case 5: {
      if (v.ideals.size() != 1 || v.elements.size() != 1 || !member(v.ideals[0])) return false;
      const Index r = v.elements[0];
      return r != ring->zero() && right_translate(v.ideals[0], r).count() == 1;
    }
    default:
      return false;
  }
}

namespace detail {

inline void require_validated(const TorsionNotion& f, const char* op) {
  require(f.validated(), std::string(op) + ": torsion notion has not been validated");
}

/// {m : A m inside S for some A in F}, no preconditions checked.
inline Bitset closure_set(const TorsionNotion& f, const FiniteModule& m, const Bitset& s) {
  Bitset out(m.order());
  for (Index x = 0; x < m.order(); ++x) {
    if (s.test(x)) {
      out.set(x);
      continue;
    }
    for (const auto& a : f.members())
      if (ideal_maps_into(m, a, x, s)) {
        out.set(x);
        break;
      }
  }
  return out;
}

}  // namespace detail

/// {m : A m = 0 for some A in F}.
inline Submodule torsion_elements(const TorsionNotion& f, const ModulePtr& m) {
  detail::require_validated(f, "torsion_elements");
  require_same_ring(f.ring(), m->ring(), "torsion_elements");
  const Bitset zero = Bitset::singleton(m->order(), m->zero());
  const Bitset t = detail::closure_set(f, *m, zero);
  auto sub = submodule_closure(m, canonical_submodule_generators(*m, t));
  detail::fault_unless(sub.elements() == t, "torsion elements do not form a submodule");
  return sub;
}

inline bool is_torsion_free(const TorsionNotion& f, const FiniteModule& m) {
  detail::require_validated(f, "is_torsion_free");
  require_same_ring(f.ring(), m.ring(), "is_torsion_free");
  return std::all_of(f.members().begin(), f.members().end(),
                     [&](const LeftIdeal& a) { return satisfies_quasiidentity(m, a); });
}

/// The relative closure {m : exists A in F with A m inside S}: the least
/// submodule T containing S with M/T torsion-free. M must be torsion-free.
inline Submodule k_closure(const TorsionNotion& f, const ModulePtr& m, const Submodule& s) {
  detail::require_validated(f, "k_closure");
  detail::require(same_module(m, s.module()), "k_closure: S is not a submodule of M");
  if (!is_torsion_free(f, *m))
    throw PreconditionError("k_closure: " + m->name() + " is not torsion-free");
  const Bitset c = detail::closure_set(f, *m, s.elements());
  auto sub = submodule_closure(m, canonical_submodule_generators(*m, c));
  detail::fault_unless(sub.elements() == c, "relative closure is not a submodule");
  return sub;
}

/// M/S torsion-free, tested directly: no m outside S has A m inside S.
inline bool quotient_is_torsion_free(const TorsionNotion& f, const FiniteModule& m, const Bitset& s) {
  for (Index x = 0; x < m.order(); ++x) {
    if (s.test(x)) continue;
    for (const auto& a : f.members())
      if (ideal_maps_into(m, a, x, s)) return false;
  }
  return true;
}

/// Lattice of relative submodules (those S with M/S torsion-free): meet is
/// intersection, join is the closure of the sum.
inline FiniteLattice k_submodules(const TorsionNotion& f, const ModulePtr& m,
                                  const std::vector<Submodule>& subs) {
  detail::require_validated(f, "k_submodules");
  if (!is_torsion_free(f, *m))
    throw PreconditionError("k_submodules: " + m->name() + " is not torsion-free");
  std::vector<Bitset> family;
  for (const auto& s : subs) {
    const bool tf = quotient_is_torsion_free(f, *m, s.elements());
    const bool fixed = detail::closure_set(f, *m, s.elements()) == s.elements();
    detail::fault_unless(tf == fixed, "relative submodules differ from closure fixed points in " + m->name());
    if (tf) family.push_back(s.elements());
  }
  return FiniteLattice::from_family(std::move(family), [&](const Bitset& a, const Bitset& b) {
    return detail::closure_set(f, *m, detail::subgroup_sum(*m, a, b));
  });
}

inline FiniteLattice k_submodules(const TorsionNotion& f, const ModulePtr& m) {
  return k_submodules(f, m, all_submodules(m));
}

/// Disjoint submodules whose closures meet nontrivially.
struct WepWitness {
  Submodule s;
  Submodule t;
};

/// Weak extension principle: S and T disjoint implies their closures are.
inline std::optional<WepWitness> wep_check(const TorsionNotion& f, const ModulePtr& m,
                                           const std::vector<Submodule>& subs) {
  detail::require_validated(f, "wep_check");
  if (!is_torsion_free(f, *m))
    throw PreconditionError("wep_check: " + m->name() + " is not torsion-free");
  std::vector<Bitset> closures;
  closures.reserve(subs.size());
  for (const auto& s : subs) closures.push_back(detail::closure_set(f, *m, s.elements()));
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if ((subs[i].elements() & subs[j].elements()).count() != 1) continue;
      if ((closures[i] & closures[j]).count() != 1) return WepWitness{subs[i], subs[j]};
    }
  return std::nullopt;
}

inline std::optional<WepWitness> wep_check(const TorsionNotion& f, const ModulePtr& m) {
  return wep_check(f, m, all_submodules(m));
}

struct RcmFailure {
  std::string module;
  std::string kind;  // "modularity" or "wep"
  std::string detail;
};

struct RcmReport {
  std::size_t modules_checked = 0;
  std::size_t torsion_free_modules = 0;
  bool all_modular = true;
  bool all_wep = true;
  std::vector<RcmFailure> failures;
  bool passed() const noexcept { return all_modular && all_wep; }
};

/// Relative-lattice modularity and the weak extension principle on every
/// torsion-free module of a prebuilt corpus.
inline RcmReport rcm_verify(const TorsionNotion& f, const std::vector<CorpusEntry>& corpus) {
  detail::require_validated(f, "rcm_verify");
  RcmReport report;
  for (const auto& entry : corpus) {
    ++report.modules_checked;
    if (!is_torsion_free(f, *entry.module)) continue;
    ++report.torsion_free_modules;
    const auto lattice = k_submodules(f, entry.module, entry.submodules);
    if (auto w = modularity_witness(lattice)) {
      report.all_modular = false;
      report.failures.push_back({entry.module->name(), "modularity",
                                 "lattice elements (" + std::to_string(w->x) + "," +
                                     std::to_string(w->y) + "," + std::to_string(w->z) + ")"});
    }
    if (auto w = wep_check(f, entry.module, entry.submodules)) {
      report.all_wep = false;
      report.failures.push_back({entry.module->name(), "wep",
                                 "disjoint submodules with generators of sizes " +
                                     std::to_string(w->s.size()) + " and " + std::to_string(w->t.size())});
    }
  }
  return report;
}

inline RcmReport rcm_verify(const TorsionNotion& f, const CorpusOptions& options = {}) {
  return rcm_verify(f, module_corpus(f.ring(), options));
}

/// Every torsion notion of R, ordered by size then by member list.
/// Candidates are pre-filtered by per-ideal regularity, and only
/// upward-closed candidate sets are tried (anything else fails axiom (1)).
inline std::vector<TorsionNotion> enumerate_torsion_notions(const RingPtr& ring) {
  std::vector<LeftIdeal> candidates;
  for (auto& a : all_left_ideals(ring))
    if (!detail::regularity_witness(a)) candidates.push_back(std::move(a));
  // Largest first, so every superset of a candidate is decided before it.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const LeftIdeal& a, const LeftIdeal& b) { return a.size() > b.size(); });
  const std::size_t c = candidates.size();
  std::vector<std::vector<std::size_t>> supersets(c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (i != j && candidates[i].is_subset_of(candidates[j])) supersets[i].push_back(j);

  std::vector<TorsionNotion> out;
  std::vector<bool> chosen(c, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == c) {
      std::vector<LeftIdeal> family;
      for (std::size_t k = 0; k < c; ++k)
        if (chosen[k]) family.push_back(candidates[k]);
      if (family.empty()) return;
      auto result = TorsionChecker::check(ring, std::move(family));
      if (auto* notion = std::get_if<TorsionNotion>(&result)) out.push_back(std::move(*notion));
      return;
    }
    self(self, i + 1);
    const bool closed = std::all_of(supersets[i].begin(), supersets[i].end(),
                                    [&](std::size_t j) { return chosen[j]; });
    if (closed) {
      chosen[i] = true;
      self(self, i + 1);
      chosen[i] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const TorsionNotion& a, const TorsionNotion& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

struct PrincipalGenerator {
  LeftIdeal ideal;
  Quasiidentity quasiidentity;
  std::string text;
};

/// The unique least member A of a validated notion, and q_A.
inline PrincipalGenerator principal_generator(const TorsionNotion& f) {
  detail::require_validated(f, "principal_generator");
  std::vector<const LeftIdeal*> minima;
  for (const auto& a : f.members()) {
    const bool least = std::all_of(f.members().begin(), f.members().end(),
                                   [&](const LeftIdeal& b) { return a.is_subset_of(b); });
    if (least) minima.push_back(&a);
  }
  detail::fault_unless(minima.size() == 1, "validated torsion notion has no unique least member");
  Quasiidentity q(*minima.front());
  auto text = q.render();
  return PrincipalGenerator{*minima.front(), std::move(q), std::move(text)};
}

}  // namespace torsionlab
