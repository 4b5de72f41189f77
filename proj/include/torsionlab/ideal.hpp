#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torsionlab/bitset.hpp"
#include "torsionlab/detail/closure.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

namespace detail {

struct LeftRegularAction {
  const FiniteRing& ring;
  std::size_t order() const noexcept { return ring.order(); }
  std::size_t scalar_count() const noexcept { return ring.order(); }
  Index plus(Index a, Index b) const noexcept { return ring.add(a, b); }
  Index act(Index r, Index x) const noexcept { return ring.mul(r, x); }
  Index zero() const noexcept { return ring.zero(); }
};

/// Scalar k encodes the pair (k / n, k % n) acting as x -> r x s.
struct BimoduleAction {
  const FiniteRing& ring;
  std::size_t order() const noexcept { return ring.order(); }
  std::size_t scalar_count() const noexcept { return ring.order() * ring.order(); }
  Index plus(Index a, Index b) const noexcept { return ring.add(a, b); }
  Index act(Index k, Index x) const noexcept {
    const auto n = static_cast<Index>(ring.order());
    return ring.mul(ring.mul(k / n, x), k % n);
  }
  Index zero() const noexcept { return ring.zero(); }
};

inline void check_indices(const FiniteRing& ring, std::span<const Index> xs, const char* op) {
  for (Index x : xs)
    if (x >= ring.order())
      throw PreconditionError(std::string(op) + ": element index " + std::to_string(x) +
                              " out of range for " + ring.name());
}

}  // namespace detail

/// A left ideal of a finite ring together with the generator list it was
/// built from. Equality and ordering look only at the element set.
class LeftIdeal {
 public:
  struct Trusted {};

  /// Assumes `elements` is the left ideal generated by `generators`.
  LeftIdeal(Trusted, RingPtr ring, Bitset elements, std::vector<Index> generators)
      : ring_(std::move(ring)), elements_(std::move(elements)), generators_(std::move(generators)) {}

  const RingPtr& ring() const noexcept { return ring_; }
  const Bitset& elements() const noexcept { return elements_; }
  const std::vector<Index>& generators() const noexcept { return generators_; }

  bool contains(Index x) const noexcept { return elements_.test(x); }
  std::size_t size() const noexcept { return elements_.count(); }
  bool is_whole() const noexcept { return size() == ring_->order(); }
  bool is_zero() const noexcept { return size() == 1; }
  bool is_subset_of(const LeftIdeal& o) const noexcept { return elements_.is_subset_of(o.elements_); }

  friend bool operator==(const LeftIdeal& a, const LeftIdeal& b) noexcept {
    return a.elements_ == b.elements_;
  }
  friend std::strong_ordering operator<=>(const LeftIdeal& a, const LeftIdeal& b) noexcept {
    return a.elements_ <=> b.elements_;
  }

 private:
  RingPtr ring_;
  Bitset elements_;
  std::vector<Index> generators_;
};

/// A left ideal that is also closed under right multiplication.
class TwoSidedIdeal {
 public:
  struct Trusted {};
  TwoSidedIdeal(Trusted, LeftIdeal ideal) : ideal_(std::move(ideal)) {}

  const LeftIdeal& as_left() const noexcept { return ideal_; }
  const RingPtr& ring() const noexcept { return ideal_.ring(); }
  const Bitset& elements() const noexcept { return ideal_.elements(); }
  const std::vector<Index>& generators() const noexcept { return ideal_.generators(); }
  bool contains(Index x) const noexcept { return ideal_.contains(x); }
  std::size_t size() const noexcept { return ideal_.size(); }

  friend bool operator==(const TwoSidedIdeal& a, const TwoSidedIdeal& b) noexcept {
    return a.ideal_ == b.ideal_;
  }

 private:
  LeftIdeal ideal_;
};

/// Least left ideal containing `gens`; the generator list is kept verbatim.
inline LeftIdeal left_ideal_closure(const RingPtr& ring, std::vector<Index> gens) {
  detail::check_indices(*ring, gens, "left_ideal_closure");
  Bitset elements = detail::generated(detail::LeftRegularAction{*ring}, std::span<const Index>(gens));
  return LeftIdeal(LeftIdeal::Trusted{}, ring, std::move(elements), std::move(gens));
}

/// Generator list used for ideals that come out of enumeration: [1] for R,
/// [0] for the zero ideal, otherwise greedy ascending.
inline std::vector<Index> canonical_generators(const FiniteRing& ring, const Bitset& elements) {
  const auto n = elements.count();
  if (n == ring.order()) return {ring.one()};
  if (n == 1) return {ring.zero()};
  return detail::greedy_generators(detail::LeftRegularAction{ring}, elements);
}

/// Wraps a set known (or checked) to be a left ideal.
inline LeftIdeal left_ideal_from_elements(const RingPtr& ring, const Bitset& elements) {
  auto gens = canonical_generators(*ring, elements);
  auto closed = left_ideal_closure(ring, std::move(gens));
  if (closed.elements() != elements)
    throw PreconditionError("element set is not a left ideal of " + ring->name());
  return closed;
}

inline LeftIdeal whole_ideal(const RingPtr& ring) { return left_ideal_closure(ring, {ring->one()}); }
inline LeftIdeal zero_ideal(const RingPtr& ring) { return left_ideal_closure(ring, {ring->zero()}); }

/// Every left ideal of the ring, in canonical order.
inline std::vector<LeftIdeal> all_left_ideals(const RingPtr& ring) {
  std::vector<LeftIdeal> out;
  for (auto& s : detail::all_closed_subgroups(detail::LeftRegularAction{*ring})) {
    auto gens = canonical_generators(*ring, s);
    out.emplace_back(LeftIdeal::Trusted{}, ring, std::move(s), std::move(gens));
  }
  return out;
}

inline LeftIdeal ideal_sum(const LeftIdeal& a, const LeftIdeal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_sum");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  Bitset elements =
      detail::subgroup_sum(detail::LeftRegularAction{*a.ring()}, a.elements(), b.elements());
  return LeftIdeal(LeftIdeal::Trusted{}, a.ring(), std::move(elements), std::move(gens));
}

inline LeftIdeal ideal_intersect(const LeftIdeal& a, const LeftIdeal& b) {
  require_same_ring(a.ring(), b.ring(), "ideal_intersect");
  Bitset elements = a.elements() & b.elements();
  auto gens = canonical_generators(*a.ring(), elements);
  return LeftIdeal(LeftIdeal::Trusted{}, a.ring(), std::move(elements), std::move(gens));
}

/// The left ideal (XY) generated by all products x*y, x-major.
inline LeftIdeal product_ideal(std::span<const Index> xs, std::span<const Index> ys,
                               const RingPtr& ring) {
  if (xs.empty() || ys.empty()) throw PreconditionError("product_ideal: empty generator list");
  detail::check_indices(*ring, xs, "product_ideal");
  detail::check_indices(*ring, ys, "product_ideal");
  std::vector<Index> products;
  products.reserve(xs.size() * ys.size());
  for (Index x : xs)
    for (Index y : ys) products.push_back(ring->mul(x, y));
  return left_ideal_closure(ring, std::move(products));
}

/// The set A*r = {a r : a in A}.
inline Bitset right_translate(const LeftIdeal& a, Index r) {
  const auto& ring = *a.ring();
  Bitset out(ring.order());
  a.elements().for_each([&](Index x) { out.set(ring.mul(x, r)); });
  return out;
}

/// First r with A*r not inside A, if any.
inline std::optional<Index> two_sided_witness(const LeftIdeal& a) {
  for (Index r = 0; r < a.ring()->order(); ++r)
    if (!right_translate(a, r).is_subset_of(a.elements())) return r;
  return std::nullopt;
}

inline bool is_two_sided(const LeftIdeal& a) { return !two_sided_witness(a).has_value(); }

inline std::optional<TwoSidedIdeal> as_two_sided(const LeftIdeal& a) {
  if (!is_two_sided(a)) return std::nullopt;
  return TwoSidedIdeal(TwoSidedIdeal::Trusted{}, a);
}

/// Least two-sided ideal containing `gens`; generator list kept verbatim.
inline TwoSidedIdeal two_sided_closure(const RingPtr& ring, std::vector<Index> gens) {
  detail::check_indices(*ring, gens, "two_sided_closure");
  Bitset elements = detail::generated(detail::BimoduleAction{*ring}, std::span<const Index>(gens));
  if (gens.empty()) gens.push_back(ring->zero());
  LeftIdeal ideal(LeftIdeal::Trusted{}, ring, std::move(elements), std::move(gens));
  detail::fault_unless(is_two_sided(ideal), "two_sided_closure produced a non-two-sided set");
  return TwoSidedIdeal(TwoSidedIdeal::Trusted{}, std::move(ideal));
}

inline TwoSidedIdeal zero_two_sided(const RingPtr& ring) { return two_sided_closure(ring, {}); }

/// For commutative R and A with (gens A)(gens A) = A, the idempotent e with
/// (e) = A, found by exhaustive search over A in index order.
inline Index idempotent_generator(const LeftIdeal& a) {
  const auto& ring = a.ring();
  detail::require(ring->is_commutative(), "idempotent_generator: ring is not commutative");
  detail::require(product_ideal(a.generators(), a.generators(), ring) == a,
                  "idempotent_generator: ideal is not idempotent");
  std::optional<Index> found;
  a.elements().for_each([&](Index e) {
    if (found || !ring->is_idempotent(e)) return;
    if (left_ideal_closure(ring, {e}) == a) found = e;
  });
  if (!found)
    throw InternalFault("idempotent_generator: no idempotent generator in an idempotent ideal of " +
                        ring->name());
  return *found;
}

/// R/I with the natural projection. Cosets are represented by their least
/// element index and numbered in increasing order of representative.
struct QuotientRing {
  RingPtr ring;
  RingPtr base;
  std::vector<Index> projection;       // base element -> quotient element
  std::vector<Index> representatives;  // quotient element -> least base element
};

inline QuotientRing quotient_ring(const RingPtr& base, const TwoSidedIdeal& ideal) {
  require_same_ring(base, ideal.ring(), "quotient_ring");
  detail::require(is_two_sided(ideal.as_left()), "quotient_ring: ideal is not two-sided");
  const std::size_t n = base->order();
  constexpr Index unset = ~Index{0};
  std::vector<Index> projection(n, unset);
  std::vector<Index> reps;
  for (Index x = 0; x < n; ++x) {
    if (projection[x] != unset) continue;
    const auto q = static_cast<Index>(reps.size());
    reps.push_back(x);
    ideal.elements().for_each([&](Index i) { projection[base->add(x, i)] = q; });
  }
  const std::size_t m = reps.size();
  FiniteRing::Table add(m, std::vector<Index>(m)), mul(m, std::vector<Index>(m));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      add[a][b] = projection[base->add(reps[a], reps[b])];
      mul[a][b] = projection[base->mul(reps[a], reps[b])];
    }
  std::vector<std::string> display(m);
  for (Index a = 0; a < m; ++a) display[a] = base->display(reps[a]);
  const Index one = projection[base->one()];
  const Index zero = projection[base->zero()];
  display[zero] = "0";
  if (one != zero) display[one] = "1";
  std::unordered_map<std::string, Index> atoms;
  for (const auto& [name, idx] : base->atoms()) atoms.emplace(name, projection[idx]);
  std::string gens;
  for (Index g : ideal.generators()) gens += "," + base->display(g);
  auto ring = std::make_shared<const FiniteRing>("quot(" + base->name() + gens + ")", add, mul,
                                                 zero, one, std::move(display), std::move(atoms));
  for (Index x = 0; x < n; ++x) {
    detail::fault_unless((projection[x] == zero) == ideal.contains(x),
                         "quotient_ring: kernel differs from the ideal");
    for (Index y = 0; y < n; ++y) {
      detail::fault_unless(projection[base->add(x, y)] == ring->add(projection[x], projection[y]),
                           "quotient_ring: projection is not additive");
      detail::fault_unless(projection[base->mul(x, y)] == ring->mul(projection[x], projection[y]),
                           "quotient_ring: projection is not multiplicative");
    }
  }
  return QuotientRing{std::move(ring), base, std::move(projection), std::move(reps)};
}

/// nu(A) as a left ideal of the quotient, generators mapped elementwise.
inline LeftIdeal image_ideal(const QuotientRing& q, const LeftIdeal& a) {
  require_same_ring(q.base, a.ring(), "image_ideal");
  std::vector<Index> gens;
  for (Index g : a.generators()) gens.push_back(q.projection[g]);
  return left_ideal_closure(q.ring, std::move(gens));
}

/// nu^{-1}(A) for a left ideal A of the quotient. Generators: representatives
/// of A's generators followed by the generators of the kernel.
inline LeftIdeal preimage_ideal(const QuotientRing& q, const LeftIdeal& a,
                                const TwoSidedIdeal& kernel) {
  require_same_ring(q.ring, a.ring(), "preimage_ideal");
  Bitset elements(q.base->order());
  for (Index x = 0; x < q.base->order(); ++x)
    if (a.contains(q.projection[x])) elements.set(x);
  std::vector<Index> gens;
  for (Index g : a.generators()) gens.push_back(q.representatives[g]);
  for (Index g : kernel.generators())
    if (g != q.base->zero()) gens.push_back(g);
  auto closed = left_ideal_closure(q.base, std::move(gens));
  detail::fault_unless(closed.elements() == elements, "preimage_ideal: generator mismatch");
  return closed;
}

}  // namespace torsionlab
