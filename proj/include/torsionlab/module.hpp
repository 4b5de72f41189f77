#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/bitset.hpp"
#include "torsionlab/detail/closure.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

/// A finite left module over a FiniteRing: an addition table on 0..m-1 and
/// an n-by-m action table giving r*x. Satisfies detail::ActedGroup, so the
/// generic closure machinery applies directly.
class FiniteModule {
 public:
  using Table = std::vector<std::vector<Index>>;
  struct Trusted {};

  /// Validates every module axiom exhaustively.
  FiniteModule(RingPtr ring, std::string name, const Table& add, const Table& act, Index zero,
               std::vector<std::string> display = {})
      : ring_(std::move(ring)), name_(std::move(name)), m_(add.size()), zero_(zero),
        display_(std::move(display)) {
    load(add, act);
    compute_negation();
    validate();
    fill_display();
  }

  /// Skips validation; used by the constructions below, which preserve the
  /// axioms by construction.
  FiniteModule(Trusted, RingPtr ring, std::string name, std::size_t order, std::vector<Index> add,
               std::vector<Index> act, Index zero, std::vector<std::string> display = {})
      : ring_(std::move(ring)), name_(std::move(name)), m_(order), zero_(zero),
        add_(std::move(add)), act_(std::move(act)), display_(std::move(display)) {
    compute_negation();
    fill_display();
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return m_; }
  std::size_t scalar_count() const noexcept { return ring_->order(); }
  Index zero() const noexcept { return zero_; }
  Index plus(Index x, Index y) const noexcept { return add_[x * m_ + y]; }
  Index act(Index r, Index x) const noexcept { return act_[r * m_ + x]; }
  Index neg(Index x) const noexcept { return neg_[x]; }
  const std::string& display(Index x) const { return display_.at(x); }

  std::shared_ptr<const FiniteModule> renamed(std::string name) const {
    auto copy = std::make_shared<FiniteModule>(*this);
    copy->name_ = std::move(name);
    return copy;
  }

  Table add_table() const {
    Table t(m_, std::vector<Index>(m_));
    for (std::size_t x = 0; x < m_; ++x)
      for (std::size_t y = 0; y < m_; ++y) t[x][y] = add_[x * m_ + y];
    return t;
  }
  Table act_table() const {
    const std::size_t n = ring_->order();
    Table t(n, std::vector<Index>(m_));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t x = 0; x < m_; ++x) t[r][x] = act_[r * m_ + x];
    return t;
  }

  /// Throws ValidationError naming the first failed axiom and a witness.
  void validate() const {
    const auto& R = *ring_;
    const auto m = static_cast<Index>(m_);
    const auto n = static_cast<Index>(R.order());
    auto fail = [](const std::string& what) { throw ValidationError(what); };
    auto tup = [](std::initializer_list<Index> xs) {
      std::string s = "(";
      for (Index x : xs) s += (s.size() > 1 ? "," : "") + std::to_string(x);
      return s + ")";
    };
    for (Index x = 0; x < m; ++x) {
      if (plus(zero_, x) != x) fail("module zero is not an additive identity at " + tup({x}));
      for (Index y = 0; y < m; ++y) {
        if (plus(x, y) != plus(y, x)) fail("module addition is not commutative at " + tup({x, y}));
        for (Index z = 0; z < m; ++z)
          if (plus(plus(x, y), z) != plus(x, plus(y, z)))
            fail("module addition is not associative at " + tup({x, y, z}));
      }
    }
    for (Index x = 0; x < m; ++x)
      if (act(R.one(), x) != x) fail("1x != x at " + tup({x}));
    for (Index r = 0; r < n; ++r)
      for (Index x = 0; x < m; ++x) {
        for (Index y = 0; y < m; ++y)
          if (act(r, plus(x, y)) != plus(act(r, x), act(r, y)))
            fail("r(x+y) != rx+ry at (r,x,y) = " + tup({r, x, y}));
        for (Index s = 0; s < n; ++s) {
          if (act(R.add(r, s), x) != plus(act(r, x), act(s, x)))
            fail("(r+s)x != rx+sx at (r,s,x) = " + tup({r, s, x}));
          if (act(R.mul(r, s), x) != act(r, act(s, x)))
            fail("(rs)x != r(sx) at (r,s,x) = " + tup({r, s, x}));
        }
      }
  }

 private:
  void load(const Table& add, const Table& act) {
    if (m_ == 0) throw ValidationError("module order must be positive");
    if (zero_ >= m_) throw ValidationError("module zero index out of range");
    const std::size_t n = ring_->order();
    auto copy = [&](const Table& t, std::size_t rows, const char* which, std::vector<Index>& out) {
      if (t.size() != rows)
        throw ValidationError(std::string(which) + " table has " + std::to_string(t.size()) +
                              " rows, expected " + std::to_string(rows));
      out.resize(rows * m_);
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i].size() != m_)
          throw ValidationError(std::string(which) + " table row " + std::to_string(i) +
                                " has wrong length");
        for (std::size_t j = 0; j < m_; ++j) {
          if (t[i][j] >= m_)
            throw ValidationError(std::string(which) + " table entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") out of range");
          out[i * m_ + j] = t[i][j];
        }
      }
    };
    copy(add, m_, "add", add_);
    copy(act, n, "act", act_);
  }

  void compute_negation() {
    neg_.assign(m_, static_cast<Index>(m_));
    for (Index x = 0; x < m_; ++x)
      for (Index y = 0; y < m_; ++y)
        if (plus(x, y) == zero_) {
          neg_[x] = y;
          break;
        }
    for (Index x = 0; x < m_; ++x)
      if (neg_[x] == m_) throw ValidationError("module element " + std::to_string(x) + " has no inverse");
  }

  void fill_display() {
    if (display_.size() == m_) return;
    display_.clear();
    for (Index x = 0; x < m_; ++x) display_.push_back(std::to_string(x));
  }

  RingPtr ring_;
  std::string name_;
  std::size_t m_;
  Index zero_;
  std::vector<Index> add_;
  std::vector<Index> act_;
  std::vector<Index> neg_;
  std::vector<std::string> display_;
};

using ModulePtr = std::shared_ptr<const FiniteModule>;

inline bool same_module(const ModulePtr& a, const ModulePtr& b) noexcept { return a == b; }

/// A submodule with the generator list it was built from. Comparison looks
/// only at the element set.
class Submodule {
 public:
  struct Trusted {};
  Submodule(Trusted, ModulePtr module, Bitset elements, std::vector<Index> generators)
      : module_(std::move(module)), elements_(std::move(elements)), generators_(std::move(generators)) {}

  const ModulePtr& module() const noexcept { return module_; }
  const Bitset& elements() const noexcept { return elements_; }
  const std::vector<Index>& generators() const noexcept { return generators_; }
  bool contains(Index x) const noexcept { return elements_.test(x); }
  std::size_t size() const noexcept { return elements_.count(); }
  bool is_zero() const noexcept { return size() == 1; }
  bool is_whole() const noexcept { return size() == module_->order(); }

  friend bool operator==(const Submodule& a, const Submodule& b) noexcept {
    return a.elements_ == b.elements_;
  }
  friend std::strong_ordering operator<=>(const Submodule& a, const Submodule& b) noexcept {
    return a.elements_ <=> b.elements_;
  }

 private:
  ModulePtr module_;
  Bitset elements_;
  std::vector<Index> generators_;
};

inline Submodule submodule_closure(const ModulePtr& m, std::vector<Index> gens) {
  for (Index g : gens)
    if (g >= m->order())
      throw PreconditionError("submodule_closure: element " + std::to_string(g) + " out of range");
  Bitset elements = detail::generated(*m, std::span<const Index>(gens));
  return Submodule(Submodule::Trusted{}, m, std::move(elements), std::move(gens));
}

inline std::vector<Index> canonical_submodule_generators(const FiniteModule& m, const Bitset& s) {
  if (s.count() == 1) return {m.zero()};
  return detail::greedy_generators(m, s);
}

/// Wraps a set that must already be a submodule (checked).
inline Submodule submodule_from_elements(const ModulePtr& m, const Bitset& elements) {
  auto closed = submodule_closure(m, canonical_submodule_generators(*m, elements));
  if (closed.elements() != elements) throw PreconditionError("element set is not a submodule");
  return closed;
}

inline Submodule zero_submodule(const ModulePtr& m) { return submodule_closure(m, {m->zero()}); }
inline Submodule whole_submodule(const ModulePtr& m) {
  return Submodule(Submodule::Trusted{}, m, Bitset::full(m->order()),
                   canonical_submodule_generators(*m, Bitset::full(m->order())));
}

/// Every submodule exactly once, canonically sorted.
inline std::vector<Submodule> all_submodules(const ModulePtr& m) {
  std::vector<Submodule> out;
  for (auto& s : detail::all_closed_subgroups(*m)) {
    auto gens = canonical_submodule_generators(*m, s);
    out.emplace_back(Submodule::Trusted{}, m, std::move(s), std::move(gens));
  }
  return out;
}

inline Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  detail::require(same_module(a.module(), b.module()), "submodule_sum: module mismatch");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Submodule(Submodule::Trusted{}, a.module(),
                   detail::subgroup_sum(*a.module(), a.elements(), b.elements()), std::move(gens));
}

inline Submodule submodule_intersect(const Submodule& a, const Submodule& b) {
  detail::require(same_module(a.module(), b.module()), "submodule_intersect: module mismatch");
  Bitset e = a.elements() & b.elements();
  auto gens = canonical_submodule_generators(*a.module(), e);
  return Submodule(Submodule::Trusted{}, a.module(), std::move(e), std::move(gens));
}

// ---------------------------------------------------------------------------
// Constructions

inline ModulePtr regular_module(const RingPtr& ring) {
  const std::size_t n = ring->order();
  std::vector<Index> add(n * n), act(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      add[a * n + b] = ring->add(a, b);
      act[a * n + b] = ring->mul(a, b);
    }
  return std::make_shared<const FiniteModule>(FiniteModule::Trusted{}, ring, "regular(" + ring->name() + ")",
                                              n, std::move(add), std::move(act), ring->zero(),
                                              ring->display_names());
}

/// M1 (+) M2 with (x, y) encoded as x * |M2| + y.
inline ModulePtr direct_sum(const ModulePtr& m1, const ModulePtr& m2) {
  require_same_ring(m1->ring(), m2->ring(), "direct_sum");
  const std::size_t a = m1->order(), b = m2->order(), m = a * b, n = m1->ring()->order();
  std::vector<Index> add(m * m), act(n * m);
  std::vector<std::string> display(m);
  for (Index x = 0; x < m; ++x) {
    const Index x1 = x / b, x2 = x % b;
    display[x] = "(" + m1->display(x1) + "," + m2->display(x2) + ")";
    for (Index y = 0; y < m; ++y) {
      const Index y1 = y / b, y2 = y % b;
      add[x * m + y] = static_cast<Index>(m1->plus(x1, y1) * b + m2->plus(x2, y2));
    }
    for (Index r = 0; r < n; ++r)
      act[r * m + x] = static_cast<Index>(m1->act(r, x1) * b + m2->act(r, x2));
  }
  const auto zero = static_cast<Index>(m1->zero() * b + m2->zero());
  return std::make_shared<const FiniteModule>(FiniteModule::Trusted{}, m1->ring(),
                                              m1->name() + "+" + m2->name(), m, std::move(add),
                                              std::move(act), zero, std::move(display));
}

/// R^k with tuples in mixed radix, first coordinate most significant.
inline ModulePtr power_module(const RingPtr& ring, std::size_t k) {
  if (k == 0) throw PreconditionError("power_module: k must be positive");
  ModulePtr out = regular_module(ring);
  for (std::size_t i = 1; i < k; ++i) out = direct_sum(out, regular_module(ring));
  return out->renamed("R^" + std::to_string(k) + "(" + ring->name() + ")");
}

inline ModulePtr zero_module(const RingPtr& ring) {
  return std::make_shared<const FiniteModule>(FiniteModule::Trusted{}, ring, "0", 1,
                                              std::vector<Index>{0},
                                              std::vector<Index>(ring->order(), 0), 0,
                                              std::vector<std::string>{"0"});
}

/// M/S with the natural projection. Cosets are represented by their least
/// element index and numbered in increasing order of representative.
struct QuotientModule {
  ModulePtr module;
  ModulePtr base;
  std::vector<Index> projection;
  std::vector<Index> representatives;
};

inline QuotientModule quotient_module(const ModulePtr& base, const Submodule& s) {
  detail::require(same_module(base, s.module()), "quotient_module: submodule of another module");
  const std::size_t m = base->order(), n = base->ring()->order();
  constexpr Index unset = ~Index{0};
  std::vector<Index> projection(m, unset);
  std::vector<Index> reps;
  const auto members = s.elements().to_vector();
  for (Index x = 0; x < m; ++x) {
    if (projection[x] != unset) continue;
    const auto q = static_cast<Index>(reps.size());
    reps.push_back(x);
    for (Index t : members) projection[base->plus(x, t)] = q;
  }
  const std::size_t k = reps.size();
  std::vector<Index> add(k * k), act(n * k);
  std::vector<std::string> display(k);
  for (Index a = 0; a < k; ++a) {
    display[a] = a == projection[base->zero()] ? "0" : "[" + base->display(reps[a]) + "]";
    for (Index b = 0; b < k; ++b) add[a * k + b] = projection[base->plus(reps[a], reps[b])];
    for (Index r = 0; r < n; ++r) act[r * k + a] = projection[base->act(r, reps[a])];
  }
  std::string gens;
  for (Index g : s.generators()) gens += (gens.empty() ? "" : ",") + base->display(g);
  auto mod = std::make_shared<const FiniteModule>(FiniteModule::Trusted{}, base->ring(),
                                                  base->name() + "/(" + gens + ")", k,
                                                  std::move(add), std::move(act),
                                                  projection[base->zero()], std::move(display));
  return QuotientModule{std::move(mod), base, std::move(projection), std::move(reps)};
}

// ---------------------------------------------------------------------------
// Quasiidentities q_A and annihilators

/// Least nonzero x with a*x = 0 for every generator a of A, if any. Testing
/// generators suffices: {r : r x = 0} is a left ideal.
inline std::optional<Index> quasiidentity_witness(const FiniteModule& m, const LeftIdeal& a) {
  require_same_ring(m.ring(), a.ring(), "satisfies_quasiidentity");
  for (Index x = 0; x < m.order(); ++x) {
    if (x == m.zero()) continue;
    bool killed = true;
    for (Index g : a.generators())
      if (m.act(g, x) != m.zero()) {
        killed = false;
        break;
      }
    if (killed) return x;
  }
  return std::nullopt;
}

/// M |= (a_1 x = 0) & ... & (a_k x = 0) -> (x = 0).
inline bool satisfies_quasiidentity(const FiniteModule& m, const LeftIdeal& a) {
  return !quasiidentity_witness(m, a).has_value();
}

/// A x inside S, tested on generators (S is a submodule).
inline bool ideal_maps_into(const FiniteModule& m, const LeftIdeal& a, Index x, const Bitset& s) {
  for (Index g : a.generators())
    if (!s.test(m.act(g, x))) return false;
  return true;
}

/// {r : r m = 0 for all m}; always two-sided (asserted).
inline TwoSidedIdeal annihilator(const FiniteModule& m) {
  const auto& ring = m.ring();
  Bitset elements(ring->order());
  for (Index r = 0; r < ring->order(); ++r) {
    bool kills = true;
    for (Index x = 0; x < m.order() && kills; ++x) kills = m.act(r, x) == m.zero();
    if (kills) elements.set(r);
  }
  auto ideal = left_ideal_from_elements(ring, elements);
  auto two = as_two_sided(ideal);
  detail::fault_unless(two.has_value(), "annihilator of " + m.name() + " is not two-sided");
  return *two;
}

}  // namespace torsionlab
