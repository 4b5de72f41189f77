#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torsionlab/torsionlab.hpp"

using namespace torsionlab;

namespace {

constexpr Index e11 = 4, e12 = 2, e22 = 1;

/// The example axiom (e11 x = e11 y) & (e12 x = e12 y) -> x = y, written
/// with b = a since -1 = 1 in characteristic two.
DeltaAxiom ut2_axiom(const RingPtr& r) {
  return DeltaAxiom(r, 0, 0, {DeltaRow{e11, e11, {}, {}, {}}, DeltaRow{e12, e12, {}, {}, {}}});
}

/// Literal evaluation of both conditions by nested enumeration of every
/// assignment, with its own odometer.
bool delta_oracle(const FiniteModule& m, const DeltaAxiom& d) {
  const std::size_t k = d.u_arity(), l = d.z_arity(), n = m.order();
  auto row = [&](const DeltaRow& r, Index x, Index y, const std::vector<Index>& u,
                 const std::vector<Index>& z) {
    Index acc = m.zero();
    acc = m.plus(acc, m.act(r.a, x));
    acc = m.plus(acc, m.act(r.b, y));
    for (std::size_t i = 0; i < k; ++i) acc = m.plus(acc, m.plus(m.act(r.c[i], u[i]), m.act(r.d[i], u[i])));
    for (std::size_t i = 0; i < l; ++i) acc = m.plus(acc, m.act(r.e[i], z[i]));
    return acc;
  };
  std::vector<Index> vars(2 + k + l, 0);
  while (true) {
    const Index x = vars[0], y = vars[1];
    std::vector<Index> u(vars.begin() + 2, vars.begin() + 2 + static_cast<std::ptrdiff_t>(k));
    std::vector<Index> z(vars.begin() + 2 + static_cast<std::ptrdiff_t>(k), vars.end());
    bool all_zero = true;
    for (const auto& r : d.rows()) {
      if (row(r, x, x, u, z) != m.zero()) return false;
      all_zero = all_zero && row(r, x, y, u, z) == m.zero();
    }
    if (all_zero && x != y) return false;
    std::size_t i = 0;
    while (i < vars.size() && ++vars[i] == n) vars[i++] = 0;
    if (i == vars.size()) return true;
  }
}

}  // namespace

TEST(Reduce, Examples) {
  auto r = upper_triangular(2);
  auto red = reduce_delta(ut2_axiom(r));
  EXPECT_EQ(red.ideal, left_ideal_closure(r, {e11, e12}));
  EXPECT_EQ(red.ideal.generators(), (std::vector<Index>{e11, e12}));
  ASSERT_EQ(red.rows.size(), 2u);
  EXPECT_EQ(red.rows[1].a, e12);

  auto z5 = cyclic_ring(5);
  auto trivial = reduce_delta(DeltaAxiom(z5, 0, 0, {DeltaRow{1, 4, {}, {}, {}}}));
  EXPECT_TRUE(trivial.ideal.is_whole());

  auto z6 = cyclic_ring(6);
  auto red6 = reduce_delta(DeltaAxiom(z6, 1, 0, {DeltaRow{2, 4, {3}, {3}, {}}}));
  EXPECT_EQ(red6.ideal.elements().to_vector(), (std::vector<Index>{0, 2, 4}));
  ASSERT_EQ(red6.rows.size(), 1u);
  EXPECT_EQ(red6.rows[0].a, 2u);
  EXPECT_EQ(red6.rows[0].c, std::vector<Index>{3});
}

TEST(Reduce, NotReducibleNamesRowAndCoefficient) {
  auto z6 = cyclic_ring(6);
  try {
    reduce_delta(DeltaAxiom(z6, 1, 1, {DeltaRow{1, 5, {1}, {5}, {0}}, DeltaRow{2, 4, {1}, {4}, {0}}}));
    FAIL() << "expected NotReducible";
  } catch (const NotReducible& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.coefficient(), "c[0]+d[0]");
  }
  try {
    reduce_delta(DeltaAxiom(z6, 0, 1, {DeltaRow{1, 5, {}, {}, {3}}}));
    FAIL() << "expected NotReducible";
  } catch (const NotReducible& e) {
    EXPECT_EQ(e.row(), 0u);
    EXPECT_EQ(e.coefficient(), "e[0]");
  }
  EXPECT_THROW(reduce_delta(DeltaAxiom(z6, 0, 0, {DeltaRow{1, 1, {}, {}, {}}})), NotReducible);
}

TEST(Reduce, ArityValidation) {
  auto z4 = cyclic_ring(4);
  EXPECT_THROW(DeltaAxiom(z4, 1, 0, {DeltaRow{1, 3, {}, {}, {}}}), ValidationError);
  EXPECT_THROW(DeltaAxiom(z4, 0, 0, {DeltaRow{4, 0, {}, {}, {}}}), ValidationError);
}

// A sentence refused by reduce_delta already fails its identities on R.
TEST(Reduce, RefusalMatchesFreeModuleIdentity) {
  std::mt19937_64 rng(31);
  for (const auto& b : builtin_rings(8)) {
    auto reg = regular_module(b.ring);
    for (int trial = 0; trial < 30; ++trial) {
      auto d = random_delta(b.ring, rng);
      bool reducible = true;
      try {
        reduce_delta(d);
      } catch (const NotReducible&) {
        reducible = false;
      }
      if (reducible) continue;
      EXPECT_FALSE(delta_satisfied(*reg, d)) << b.spec;
    }
  }
}

TEST(Reduce, IdempotentOnInducedAxiom) {
  std::mt19937_64 rng(5);
  for (const auto& b : builtin_rings(16))
    for (int trial = 0; trial < 10; ++trial) {
      auto red = reduce_delta(random_reducible_delta(b.ring, rng));
      auto again = reduce_delta(induced_delta(b.ring, red));
      EXPECT_EQ(again.ideal, red.ideal);
      EXPECT_EQ(again.ideal.generators(), red.ideal.generators());
      ASSERT_EQ(again.rows.size(), red.rows.size());
      for (std::size_t j = 0; j < red.rows.size(); ++j) {
        EXPECT_EQ(again.rows[j].a, red.rows[j].a);
        EXPECT_EQ(again.rows[j].c, red.rows[j].c);
      }
    }
}

// E_j(0, 0, ..., 0) = 0 for every reduced row.
TEST(Reduce, ConditionOneVacuousOnZero) {
  std::mt19937_64 rng(6);
  for (const auto& b : builtin_rings(16)) {
    const auto& r = *b.ring;
    for (int trial = 0; trial < 10; ++trial)
      for (const auto& row : reduce_delta(random_reducible_delta(b.ring, rng)).rows) {
        Index acc = r.mul(row.a, r.zero());
        for (Index c : row.c) acc = r.add(acc, r.mul(c, r.zero()));
        EXPECT_EQ(acc, r.zero());
      }
  }
}

TEST(Satisfied, Examples) {
  auto r = upper_triangular(2);
  auto d = ut2_axiom(r);
  auto reg = regular_module(r);
  EXPECT_TRUE(delta_satisfied(*reg, d));
  auto q = quotient_module(reg, submodule_closure(reg, {e11, e12})).module;
  EXPECT_FALSE(delta_satisfied(*q, d));
  EXPECT_TRUE(delta_satisfied(*zero_module(r), d));
  EXPECT_TRUE(delta_equiv_qA(*reg, d));
  EXPECT_FALSE(delta_equiv_qA(*q, d));
  EXPECT_TRUE(delta_equiv_qA(*zero_module(r), d));
}

TEST(Satisfied, RingMismatch) {
  auto r = upper_triangular(2);
  EXPECT_THROW(delta_satisfied(*regular_module(cyclic_ring(8)), ut2_axiom(r)), PreconditionError);
}

TEST(Satisfied, TrivialAxiomEverywhere) {
  for (const auto& b : builtin_rings(8)) {
    auto d = DeltaAxiom(b.ring, 0, 0, {DeltaRow{b.ring->one(), b.ring->neg(b.ring->one()), {}, {}, {}}});
    for (const auto& e : module_corpus(b.ring)) EXPECT_TRUE(delta_equiv_qA(*e.module, d));
  }
}

// Both engines agree with the literal oracle, on reducible and arbitrary
// sentences alike.
TEST(Satisfied, EnginesMatchOracle) {
  std::mt19937_64 rng(2024);
  for (const auto& b : builtin_rings(8)) {
    CorpusOptions opts;
    opts.bound = b.ring->order() <= 4 ? 2 : 1;
    const auto corpus = module_corpus(b.ring, opts);
    for (int trial = 0; trial < 12; ++trial) {
      auto d = trial % 2 ? random_delta(b.ring, rng) : random_reducible_delta(b.ring, rng, 3, 1, 1);
      for (const auto& e : corpus) {
        const bool want = delta_oracle(*e.module, d);
        EXPECT_EQ(delta_satisfied(*e.module, d, DeltaEngine::exhaustive), want) << e.module->name();
        EXPECT_EQ(delta_satisfied(*e.module, d, DeltaEngine::linear), want) << e.module->name();
      }
    }
  }
}

TEST(Satisfied, LinearEngineOnLargerModules) {
  std::mt19937_64 rng(77);
  for (const auto& b : builtin_rings(4)) {
    auto m = power_module(b.ring, 2);
    for (int trial = 0; trial < 6; ++trial) {
      auto d = random_reducible_delta(b.ring, rng, 2, 1, 1);
      EXPECT_EQ(delta_satisfied(*m, d, DeltaEngine::linear), delta_satisfied(*m, d, DeltaEngine::exhaustive));
    }
  }
}

// Satisfying a reducible sentence is the same as satisfying q_A.
TEST(Satisfied, EquivalentToQuasiidentity) {
  std::mt19937_64 rng(99);
  for (const auto& b : builtin_rings(16)) {
    const auto corpus = module_corpus(b.ring, CorpusOptions{.bound = b.ring->order() <= 8 ? 2u : 1u});
    for (int trial = 0; trial < 6; ++trial) {
      auto d = random_reducible_delta(b.ring, rng);
      const auto a = reduce_delta(d).ideal;
      for (const auto& e : corpus) {
        EXPECT_EQ(delta_equiv_qA(*e.module, d), oracle::satisfies_full(*e.module, a.elements()))
            << b.spec << " " << e.module->name();
      }
    }
  }
}

TEST(Membership, Examples) {
  auto r = upper_triangular(2);
  auto a = left_ideal_closure(r, {e11, e12});
  auto f = std::get<TorsionNotion>(check_torsion_axioms(r, {a, whole_ideal(r)}));
  auto reg = regular_module(r);
  auto s = submodule_closure(reg, {e11, e12});
  EXPECT_TRUE(delta_membership_witness(f, reg, s, r->one(), a));
  EXPECT_FALSE(delta_membership_witness(f, reg, zero_submodule(reg), e22, a));
  EXPECT_THROW(delta_membership_witness(f, reg, s, e11, left_ideal_closure(r, {e11})), PreconditionError);

  auto z6 = cyclic_ring(6);
  auto trivial = std::get<TorsionNotion>(check_torsion_axioms(z6, {whole_ideal(z6)}));
  auto m = regular_module(z6);
  auto s3 = submodule_closure(m, {3});
  EXPECT_TRUE(delta_membership_witness(trivial, m, s3, 3, whole_ideal(z6)));
}

// The closure is exactly the set of elements with some member witness.
TEST(Membership, WitnessesCharacterizeClosure) {
  for (const auto& b : builtin_rings(8))
    for (const auto& f : enumerate_torsion_notions(b.ring))
      for (const auto& e : module_corpus(b.ring)) {
        if (!is_torsion_free(f, *e.module)) continue;
        for (const auto& s : e.submodules) {
          Bitset witnessed(e.module->order());
          for (Index x = 0; x < e.module->order(); ++x)
            for (const auto& a : f.members())
              if (delta_membership_witness(f, e.module, s, x, a)) witnessed.set(x);
          EXPECT_EQ(witnessed, k_closure(f, e.module, s).elements()) << e.module->name();
        }
      }
}

TEST(DeltaFile, LoadsExamples) {
  const std::string dir = TORSIONLAB_TEST_DATA;
  auto ut = load_delta_file(dir + "/delta_ut2.json");
  EXPECT_EQ(reduce_delta(ut).ideal.size(), 4u);
  auto z6 = load_delta_file(dir + "/delta_z6.json");
  EXPECT_EQ(reduce_delta(z6).ideal.size(), 3u);
  EXPECT_THROW(reduce_delta(load_delta_file(dir + "/delta_bad.json")), NotReducible);
  EXPECT_TRUE(reduce_delta(load_delta_file(dir + "/delta_trivial.json")).ideal.is_whole());
}
