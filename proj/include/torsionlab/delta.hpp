#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/ring.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

/// One difference row D_j = p_j - q_j of a Delta-axiom:
///   a x + b y + sum_i c[i] u_i + sum_i d[i] v_i + sum_i e[i] z_i.
struct DeltaRow {
  Index a = 0;
  Index b = 0;
  std::vector<Index> c;
  std::vector<Index> d;
  std::vector<Index> e;
};

/// A Delta-axiom for R-modules in difference form. It asserts
///   (1) D_j(x, x, u, u, z) = 0 identically, for every j, and
///   (2) (and_j D_j(x, y, u, u, z) = 0) -> (x = y).
class DeltaAxiom {
 public:
  DeltaAxiom(RingPtr ring, std::size_t u_arity, std::size_t z_arity, std::vector<DeltaRow> rows)
      : ring_(std::move(ring)), u_arity_(u_arity), z_arity_(z_arity), rows_(std::move(rows)) {
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const auto& r = rows_[j];
      if (r.c.size() != u_arity_ || r.d.size() != u_arity_ || r.e.size() != z_arity_)
        throw ValidationError("delta row " + std::to_string(j) + ": coefficient arity mismatch");
      auto check = [&](Index x) {
        if (x >= ring_->order())
          throw ValidationError("delta row " + std::to_string(j) + ": coefficient out of range");
      };
      check(r.a);
      check(r.b);
      for (Index x : r.c) check(x);
      for (Index x : r.d) check(x);
      for (Index x : r.e) check(x);
    }
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t u_arity() const noexcept { return u_arity_; }
  std::size_t z_arity() const noexcept { return z_arity_; }
  const std::vector<DeltaRow>& rows() const noexcept { return rows_; }

 private:
  RingPtr ring_;
  std::size_t u_arity_;
  std::size_t z_arity_;
  std::vector<DeltaRow> rows_;
};

/// E_j(X, U) = a_j X + sum_i c_j[i] U_i.
struct ReducedRow {
  Index a = 0;
  std::vector<Index> c;
};

/// The E-form of a Delta-axiom and its encoding ideal A = (a_0, ..., a_{n-1}).
struct ReducedDelta {
  std::vector<ReducedRow> rows;
  LeftIdeal ideal;
};

/// Raised when a row has a nonzero coefficient in D_j(x, x, u, u, z), so the
/// sentence cannot hold in a quasivariety generating all of R-Mod.
class NotReducible : public Error {
 public:
  NotReducible(std::size_t row, std::string coefficient, const std::string& what)
      : Error(what), row_(row), coefficient_(std::move(coefficient)) {}
  std::size_t row() const noexcept { return row_; }
  const std::string& coefficient() const noexcept { return coefficient_; }

 private:
  std::size_t row_;
  std::string coefficient_;
};

/// Checks a_j + b_j = c_j[i] + d_j[i] = e_j[i] = 0 and returns the E-form.
inline ReducedDelta reduce_delta(const DeltaAxiom& delta) {
  const auto& ring = *delta.ring();
  auto fail = [&](std::size_t j, std::string coef, Index value) {
    throw NotReducible(j, coef,
                       "not a Delta-axiom over a quasivariety generating R-Mod: row " +
                           std::to_string(j) + " has " + coef + " = " + ring.display(value) + " != 0");
  };
  std::vector<ReducedRow> rows;
  std::vector<Index> gens;
  for (std::size_t j = 0; j < delta.rows().size(); ++j) {
    const auto& r = delta.rows()[j];
    if (Index s = ring.add(r.a, r.b); s != ring.zero()) fail(j, "a+b", s);
    for (std::size_t i = 0; i < r.c.size(); ++i)
      if (Index s = ring.add(r.c[i], r.d[i]); s != ring.zero())
        fail(j, "c[" + std::to_string(i) + "]+d[" + std::to_string(i) + "]", s);
    for (std::size_t i = 0; i < r.e.size(); ++i)
      if (r.e[i] != ring.zero()) fail(j, "e[" + std::to_string(i) + "]", r.e[i]);
    rows.push_back(ReducedRow{r.a, r.c});
    gens.push_back(r.a);
  }
  return ReducedDelta{std::move(rows), left_ideal_closure(delta.ring(), std::move(gens))};
}

/// The Delta-axiom written with E-rows: b = -a, d = -c, no z variables.
inline DeltaAxiom induced_delta(const RingPtr& ring, const ReducedDelta& reduced) {
  std::vector<DeltaRow> rows;
  const std::size_t k = reduced.rows.empty() ? 0 : reduced.rows.front().c.size();
  for (const auto& r : reduced.rows) {
    DeltaRow row;
    row.a = r.a;
    row.b = ring->neg(r.a);
    row.c = r.c;
    for (Index c : r.c) row.d.push_back(ring->neg(c));
    rows.push_back(std::move(row));
  }
  return DeltaAxiom(ring, k, 0, std::move(rows));
}

enum class DeltaEngine {
  automatic,   ///< exhaustive when small enough, otherwise linear
  exhaustive,  ///< literal quantification over every variable assignment
  linear,      ///< uses additivity of module terms to avoid the product space
};

namespace detail {

/// D_j(x, y, u, v, z) evaluated with module operations.
inline Index eval_row(const FiniteModule& m, const DeltaRow& r, Index x, Index y,
                      const std::vector<Index>& u, const std::vector<Index>& v,
                      const std::vector<Index>& z) {
  Index acc = m.plus(m.act(r.a, x), m.act(r.b, y));
  for (std::size_t i = 0; i < u.size(); ++i) acc = m.plus(acc, m.act(r.c[i], u[i]));
  for (std::size_t i = 0; i < v.size(); ++i) acc = m.plus(acc, m.act(r.d[i], v[i]));
  for (std::size_t i = 0; i < z.size(); ++i) acc = m.plus(acc, m.act(r.e[i], z[i]));
  return acc;
}

/// Odometer over all tuples in M^k; f returns false to stop early.
template <class F>
bool for_each_tuple(std::size_t m, std::size_t k, F&& f) {
  std::vector<Index> t(k, 0);
  while (true) {
    if (!f(t)) return false;
    std::size_t pos = 0;
    while (pos < k && ++t[pos] == m) t[pos++] = 0;
    if (pos == k) return true;
  }
}

inline double exhaustive_cost(const FiniteModule& m, const DeltaAxiom& d) {
  double cost = 1;
  for (std::size_t i = 0; i < 2 + d.u_arity() + d.z_arity(); ++i) cost *= static_cast<double>(m.order());
  return cost;
}

inline bool delta_exhaustive(const FiniteModule& m, const DeltaAxiom& d) {
  const std::size_t k = d.u_arity(), l = d.z_arity(), n = m.order();
  // (1): D_j(x, x, u, u, z) = 0 for all x, u, z
  const bool identities = for_each_tuple(n, 1 + k + l, [&](const std::vector<Index>& t) {
    const Index x = t[0];
    const std::vector<Index> u(t.begin() + 1, t.begin() + 1 + static_cast<long>(k));
    const std::vector<Index> z(t.begin() + 1 + static_cast<long>(k), t.end());
    for (const auto& r : d.rows())
      if (eval_row(m, r, x, x, u, u, z) != m.zero()) return false;
    return true;
  });
  if (!identities) return false;
  // (2): and_j D_j(x, y, u, u, z) = 0 implies x = y
  return for_each_tuple(n, 2 + k + l, [&](const std::vector<Index>& t) {
    const Index x = t[0], y = t[1];
    if (x == y) return true;
    const std::vector<Index> u(t.begin() + 2, t.begin() + 2 + static_cast<long>(k));
    const std::vector<Index> z(t.begin() + 2 + static_cast<long>(k), t.end());
    for (const auto& r : d.rows())
      if (eval_row(m, r, x, y, u, u, z) != m.zero()) return true;
    return false;
  });
}

/// Each D_j is additive in the whole variable tuple, so (1) holds iff it
/// holds with one variable slot nonzero at a time, and (2) reduces to asking
/// whether (a_j x + b_j y)_j lies in the image of the (u, z) part.
inline bool delta_linear(const FiniteModule& m, const DeltaAxiom& d) {
  const std::size_t k = d.u_arity(), l = d.z_arity(), n = m.order(), rows = d.rows().size();
  for (Index t = 0; t < n; ++t)
    for (const auto& r : d.rows()) {
      if (m.plus(m.act(r.a, t), m.act(r.b, t)) != m.zero()) return false;
      for (std::size_t i = 0; i < k; ++i)
        if (m.plus(m.act(r.c[i], t), m.act(r.d[i], t)) != m.zero()) return false;
      for (std::size_t i = 0; i < l; ++i)
        if (m.act(r.e[i], t) != m.zero()) return false;
    }
  if (rows == 0) return n == 1;
  double span = 1;
  for (std::size_t j = 0; j < rows; ++j) span *= static_cast<double>(n);
  if (span > 1.8e19) return delta_exhaustive(m, d);
  auto encode = [&](const std::vector<Index>& v) {
    std::uint64_t code = 0;
    for (Index x : v) code = code * n + x;
    return code;
  };
  auto decode = [&](std::uint64_t code) {
    std::vector<Index> v(rows);
    for (std::size_t j = rows; j-- > 0;) {
      v[j] = static_cast<Index>(code % n);
      code /= n;
    }
    return v;
  };
  // Image of (u, z) -> (sum_i (c_ji + d_ji) u_i + sum_i e_ji z_i)_j, one slot at a time.
  std::unordered_set<std::uint64_t> image{encode(std::vector<Index>(rows, m.zero()))};
  auto absorb = [&](auto&& slot_value) {
    std::unordered_set<std::uint64_t> slot;
    for (Index t = 0; t < n; ++t) {
      std::vector<Index> v(rows);
      for (std::size_t j = 0; j < rows; ++j) v[j] = slot_value(d.rows()[j], t);
      slot.insert(encode(v));
    }
    if (slot.size() == 1) return;
    std::unordered_set<std::uint64_t> next;
    for (auto s : image) {
      const auto sv = decode(s);
      for (auto g : slot) {
        auto gv = decode(g);
        for (std::size_t j = 0; j < rows; ++j) gv[j] = m.plus(gv[j], sv[j]);
        next.insert(encode(gv));
      }
    }
    image = std::move(next);
  };
  for (std::size_t i = 0; i < k; ++i)
    absorb([&](const DeltaRow& r, Index t) { return m.plus(m.act(r.c[i], t), m.act(r.d[i], t)); });
  for (std::size_t i = 0; i < l; ++i)
    absorb([&](const DeltaRow& r, Index t) { return m.act(r.e[i], t); });
  std::vector<Index> v(rows);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (x == y) continue;
      for (std::size_t j = 0; j < rows; ++j) {
        const auto& r = d.rows()[j];
        v[j] = m.neg(m.plus(m.act(r.a, x), m.act(r.b, y)));
      }
      if (image.count(encode(v))) return false;
    }
  return true;
}

}  // namespace detail

/// Both conditions of the Delta-axiom, evaluated on M.
inline bool delta_satisfied(const FiniteModule& m, const DeltaAxiom& d,
                            DeltaEngine engine = DeltaEngine::automatic) {
  require_same_ring(m.ring(), d.ring(), "delta_satisfied");
  if (engine == DeltaEngine::automatic)
    engine = detail::exhaustive_cost(m, d) <= double(1 << 12) ? DeltaEngine::exhaustive : DeltaEngine::linear;
  return engine == DeltaEngine::exhaustive ? detail::delta_exhaustive(m, d) : detail::delta_linear(m, d);
}

/// delta_satisfied(M, D), asserted equal to M |= q_A for the encoding ideal.
inline bool delta_equiv_qA(const FiniteModule& m, const DeltaAxiom& d) {
  const auto reduced = reduce_delta(d);
  const bool direct = delta_satisfied(m, d);
  const bool via_ideal = satisfies_quasiidentity(m, reduced.ideal);
  detail::fault_unless(direct == via_ideal,
                       "Delta-axiom and its encoding quasiidentity disagree on " + m.name());
  return direct;
}

/// A m inside S (tested on every element of A). When true, m lies in the
/// relative closure of S; that implication is asserted.
inline bool delta_membership_witness(const TorsionNotion& f, const ModulePtr& m, const Submodule& s,
                                     Index element, const LeftIdeal& a) {
  detail::require_validated(f, "delta_membership_witness");
  detail::require(f.contains(a), "delta_membership_witness: A is not a member of F");
  detail::require(element < m->order(), "delta_membership_witness: element out of range");
  bool inside = true;
  a.elements().for_each([&](Index r) { inside = inside && s.contains(m->act(r, element)); });
  if (inside)
    detail::fault_unless(k_closure(f, m, s).contains(element),
                         "Delta witness does not place m in the relative closure");
  return inside;
}

/// Random Delta-axiom with a = -b, c = -d, e = 0 (so reduce_delta succeeds).
template <class Rng>
DeltaAxiom random_reducible_delta(const RingPtr& ring, Rng& rng, std::size_t max_rows = 3,
                                  std::size_t max_u = 2, std::size_t max_z = 1) {
  auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };
  auto element = [&] { return static_cast<Index>(pick(ring->order() - 1)); };
  const std::size_t rows = 1 + pick(max_rows - 1), k = pick(max_u), l = pick(max_z);
  std::vector<DeltaRow> out(rows);
  for (auto& r : out) {
    r.a = element();
    r.b = ring->neg(r.a);
    for (std::size_t i = 0; i < k; ++i) {
      r.c.push_back(element());
      r.d.push_back(ring->neg(r.c.back()));
    }
    r.e.assign(l, ring->zero());
  }
  return DeltaAxiom(ring, k, l, std::move(out));
}

/// Random Delta-axiom with unconstrained coefficients.
template <class Rng>
DeltaAxiom random_delta(const RingPtr& ring, Rng& rng, std::size_t max_rows = 2,
                        std::size_t max_u = 1, std::size_t max_z = 1) {
  auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };
  auto element = [&] { return static_cast<Index>(pick(ring->order() - 1)); };
  const std::size_t rows = 1 + pick(max_rows - 1), k = pick(max_u), l = pick(max_z);
  std::vector<DeltaRow> out(rows);
  for (auto& r : out) {
    r.a = element();
    r.b = element();
    for (std::size_t i = 0; i < k; ++i) {
      r.c.push_back(element());
      r.d.push_back(element());
    }
    for (std::size_t i = 0; i < l; ++i) r.e.push_back(element());
  }
  return DeltaAxiom(ring, k, l, std::move(out));
}

}  // namespace torsionlab
