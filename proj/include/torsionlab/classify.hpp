#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "torsionlab/corpus.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/quasiidentity.hpp"
#include "torsionlab/ring.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

/// sum_i r_i x_i = 0, one coefficient per variable.
struct LinearIdentity {
  std::vector<Index> coefficients;
};

/// A module satisfies sum_i r_i x_i = 0 iff every r_i kills it, so the
/// identities carry the strength of the two-sided ideal of their coefficients.
inline TwoSidedIdeal identities_to_ideal(const RingPtr& ring, const std::vector<LinearIdentity>& identities) {
  std::vector<Index> gens;
  for (const auto& id : identities) gens.insert(gens.end(), id.coefficients.begin(), id.coefficients.end());
  return two_sided_closure(ring, std::move(gens));
}

namespace detail {

/// R/S |= q_A, read off the regular module: no x outside S has A x inside S.
inline bool cyclic_satisfies(const FiniteRing& ring, const Bitset& s, const LeftIdeal& a) {
  for (Index x = 0; x < ring.order(); ++x) {
    if (s.test(x)) continue;
    const bool killed = std::all_of(a.generators().begin(), a.generators().end(),
                                    [&](Index g) { return s.test(ring.mul(g, x)); });
    if (killed) return false;
  }
  return true;
}

inline bool cyclic_in_class(const FiniteRing& ring, const Bitset& s, const std::vector<Quasiidentity>& q) {
  return std::all_of(q.begin(), q.end(),
                     [&](const Quasiidentity& x) { return cyclic_satisfies(ring, s, x.ideal()); });
}

/// r M = 0 for every r in I.
inline bool annihilated_by(const FiniteModule& m, const Bitset& ideal) {
  bool ok = true;
  ideal.for_each([&](Index r) {
    for (Index x = 0; ok && x < m.order(); ++x) ok = m.act(r, x) == m.zero();
  });
  return ok;
}

}  // namespace detail

/// The annihilator I of the class K cut out by the Sigma-ideal and Q: the
/// least left ideal S containing Sigma with R/S in K. The passing S are closed
/// under intersection (R/(S cap T) embeds in R/S x R/T), so I is their meet.
inline TwoSidedIdeal annihilator_of_quasivariety(const RingPtr& ring, const std::vector<Quasiidentity>& q,
                                                 const TwoSidedIdeal& sigma) {
  require_same_ring(ring, sigma.ring(), "annihilator_of_quasivariety");
  for (const auto& x : q) require_same_ring(ring, x.ring(), "annihilator_of_quasivariety");
  Bitset meet = Bitset::full(ring->order());
  for (const auto& s : all_left_ideals(ring)) {
    if (!sigma.elements().is_subset_of(s.elements())) continue;
    if (detail::cyclic_in_class(*ring, s.elements(), q)) meet &= s.elements();
  }
  detail::fault_unless(detail::cyclic_in_class(*ring, meet, q),
                       "the meet of all S with R/S in K is not itself in K");
  auto left = left_ideal_from_elements(ring, meet);
  auto two = as_two_sided(left);
  detail::fault_unless(two.has_value(), "annihilator of the class is not two-sided");
  auto out = two_sided_closure(ring, left.generators());
  const auto reg = regular_module(ring);
  const auto quotient = quotient_module(reg, submodule_from_elements(reg, meet));
  detail::fault_unless(annihilator(*quotient.module).elements() == out.elements(),
                       "annihilator of R/I differs from I");
  return out;
}

/// (I, G): members are the modules with I x = 0 and q_A for every A in G.
struct QuasivarietyDescriptor {
  RingPtr ring;
  TwoSidedIdeal identity_part;
  std::vector<LeftIdeal> quasi_part;
};

/// First failure of: I inside each A in G, and regularity modulo I
/// (A r inside I forces r in I). Axioms (1)-(4) are checked on the quotient.
inline std::optional<std::string> descriptor_violation(const QuasivarietyDescriptor& d) {
  const auto& ring = *d.ring;
  const Bitset& i = d.identity_part.elements();
  for (const auto& a : d.quasi_part) {
    if (!i.is_subset_of(a.elements())) return "a member of G does not contain I";
    for (Index r = 0; r < ring.order(); ++r)
      if (!i.test(r) && right_translate(a, r).is_subset_of(i))
        return "regularity modulo I fails for r = " + ring.display(r);
  }
  return std::nullopt;
}

struct RcmOutcome {
  QuasivarietyDescriptor descriptor;
  TorsionNotion notion;  // over R/I
};

struct ClassificationVerdict {
  RingPtr ring;
  std::vector<Quasiidentity> quasi;
  TwoSidedIdeal sigma;
  TwoSidedIdeal annihilator;  // I
  QuotientRing quotient;      // R/I
  std::vector<LeftIdeal> filter;  // the induced family over R/I, canonical order
  std::variant<RcmOutcome, AxiomViolation> outcome;
  bool is_variety = false;
  bool is_trivial = false;
  std::size_t corpus_modules = 0;
  unsigned corpus_bound = 0;

  bool rcm() const noexcept { return std::holds_alternative<RcmOutcome>(outcome); }
  const RcmOutcome& rcm_outcome() const { return std::get<RcmOutcome>(outcome); }
  const AxiomViolation& violation() const { return std::get<AxiomViolation>(outcome); }
};

/// M in K: I M = 0, Sigma M = 0 and every q in Q holds.
inline bool in_class(const FiniteModule& m, const std::vector<Quasiidentity>& q, const TwoSidedIdeal& sigma) {
  if (!detail::annihilated_by(m, sigma.elements())) return false;
  return std::all_of(q.begin(), q.end(), [&](const Quasiidentity& x) { return x.holds_in(m); });
}

/// Membership through the descriptor: I M = 0 and M |= q_A for all A in G.
inline bool membership(const FiniteModule& m, const ClassificationVerdict& v) {
  require_same_ring(m.ring(), v.ring, "membership");
  detail::require(v.rcm(), "membership: verdict is not RCM");
  const auto& d = v.rcm_outcome().descriptor;
  if (!detail::annihilated_by(m, d.identity_part.elements())) return false;
  return std::all_of(d.quasi_part.begin(), d.quasi_part.end(),
                     [&](const LeftIdeal& a) { return satisfies_quasiidentity(m, a); });
}

/// Decides RCM for the class K given by the identities and Q:
/// I := annihilator of K, then F := all left ideals A of R/I with q_A true on
/// every cyclic member of K, then the torsion axioms on F. A one-variable
/// quasiidentity failing in M already fails in the cyclic submodule of the
/// witness, so cyclic members decide it. K is asserted to coincide with the
/// modules of the corpus that are killed by I and torsion-free for F.
inline ClassificationVerdict classify(const RingPtr& ring, std::vector<Quasiidentity> q,
                                      const std::vector<LinearIdentity>& identities,
                                      const std::vector<CorpusEntry>& corpus, unsigned corpus_bound) {
  for (const auto& x : q) require_same_ring(ring, x.ring(), "classify");
  auto sigma = identities_to_ideal(ring, identities);
  auto i = annihilator_of_quasivariety(ring, q, sigma);
  auto quotient = quotient_ring(ring, i);
  const RingPtr& bar = quotient.ring;

  // Cyclic members of K as left ideals of R/I.
  std::vector<Bitset> members;
  for (const auto& s : all_left_ideals(bar)) {
    Bitset pre(ring->order());
    for (Index x = 0; x < ring->order(); ++x)
      if (s.contains(quotient.projection[x])) pre.set(x);
    if (detail::cyclic_in_class(*ring, pre, q)) members.push_back(s.elements());
  }
  // Images of the user's ideals keep their generator lists for display.
  std::vector<LeftIdeal> preferred;
  for (const auto& x : q) preferred.push_back(image_ideal(quotient, x.ideal()));

  std::vector<LeftIdeal> filter;
  for (const auto& a : all_left_ideals(bar)) {
    const bool holds = std::all_of(members.begin(), members.end(),
                                   [&](const Bitset& s) { return detail::cyclic_satisfies(*bar, s, a); });
    if (!holds) continue;
    auto it = std::find(preferred.begin(), preferred.end(), a);
    filter.push_back(it != preferred.end() ? *it : a);
  }
  for (const auto& a : filter)
    for (const auto& b : all_left_ideals(bar))
      if (a.is_subset_of(b))
        detail::fault_unless(std::find(filter.begin(), filter.end(), b) != filter.end(),
                             "induced family is not upward closed");

  ClassificationVerdict v{ring, q, sigma, i, quotient, filter, AxiomViolation{}, false, i.size() == ring->order(),
                          corpus.size(), corpus_bound};
  v.is_variety = filter.size() == 1;

  // K against the torsion-free class of F on the corpus, both directions.
  for (const auto& entry : corpus) {
    const auto& m = *entry.module;
    const bool in_k = in_class(m, q, sigma);
    bool tf = detail::annihilated_by(m, i.elements());
    for (const auto& a : filter) {
      if (!tf) break;
      tf = satisfies_quasiidentity(m, preimage_ideal(quotient, a, i));
    }
    detail::fault_unless(in_k == tf, "class membership and torsion-freeness disagree on " + m.name());
  }

  auto checked = check_torsion_axioms(bar, filter);
  if (auto* f = std::get_if<TorsionNotion>(&checked)) {
    QuasivarietyDescriptor d{ring, i, {}};
    for (const auto& a : f->members()) d.quasi_part.push_back(preimage_ideal(quotient, a, i));
    if (auto bad = descriptor_violation(d)) throw InternalFault("classification descriptor: " + *bad);
    v.outcome = RcmOutcome{std::move(d), std::move(*f)};
  } else {
    v.outcome = std::get<AxiomViolation>(std::move(checked));
  }
  return v;
}

inline ClassificationVerdict classify(const RingPtr& ring, std::vector<Quasiidentity> q,
                                      const std::vector<LinearIdentity>& identities = {},
                                      const CorpusOptions& options = {}) {
  return classify(ring, std::move(q), identities, module_corpus(ring, options), options.bound);
}

/// Replayed steps of the argument that a torsion notion over a commutative
/// ring is trivial.
struct CollapseTrace {
  LeftIdeal minimum;
  bool idempotent_ideal = false;  // A^2 = A
  Index idempotent = 0;           // e with (e) = A
  Index complement = 0;           // 1 - e
  bool complement_annihilated = false;  // A (1 - e) = 0
  std::vector<std::string> steps;
};

inline CollapseTrace commutative_collapse(const TorsionNotion& f) {
  detail::require_validated(f, "commutative_collapse");
  const auto& ring = f.ring();
  detail::require(ring->is_commutative(), "commutative_collapse: ring is not commutative");
  const auto principal = principal_generator(f);
  const LeftIdeal& a = principal.ideal;
  CollapseTrace t{a, false, 0, 0, false, {}};
  t.steps.push_back("least member A has " + std::to_string(a.size()) + " elements");
  detail::fault_unless(as_two_sided(a).has_value(), "least member is not two-sided");
  t.idempotent_ideal = product_ideal(a.generators(), a.generators(), ring) == a;
  detail::fault_unless(t.idempotent_ideal, "A^2 != A for the least member");
  t.steps.push_back("A^2 = A");
  t.idempotent = idempotent_generator(a);
  t.steps.push_back("A = (e) with e = " + ring->display(t.idempotent) + ", e^2 = e");
  t.complement = ring->sub(ring->one(), t.idempotent);
  t.complement_annihilated = right_translate(a, t.complement).count() == 1;
  detail::fault_unless(t.complement_annihilated, "A(1-e) != 0");
  t.steps.push_back("A(1-e) = 0");
  detail::fault_unless(t.complement == ring->zero(), "regularity does not force 1-e = 0");
  detail::fault_unless(a.is_whole() && f.is_trivial(), "collapse did not reach F = {R}");
  t.steps.push_back("regularity gives 1-e = 0, so e = 1, A = R and F = {R}");
  return t;
}

/// q over (XY).
inline Quasiidentity compose_quasiidentities(const RingPtr& ring, std::span<const Index> xs,
                                             std::span<const Index> ys) {
  return Quasiidentity(product_ideal(xs, ys, ring));
}

}  // namespace torsionlab
