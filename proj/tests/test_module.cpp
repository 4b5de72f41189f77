#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torsionlab/torsionlab.hpp"

using namespace torsionlab;

namespace {

constexpr Index e11 = 4, e12 = 2, e22 = 1;

/// Submodules by testing every subset of a small module.
std::vector<std::uint64_t> submodule_masks(const FiniteModule& m) {
  std::vector<std::uint64_t> out;
  const std::size_t n = m.order();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto in = [&](Index x) { return (mask >> x) & 1; };
    if (!in(m.zero())) continue;
    bool ok = true;
    for (Index a = 0; ok && a < n; ++a) {
      if (!in(a)) continue;
      for (Index b = 0; ok && b < n; ++b)
        if (in(b) && !in(m.plus(a, b))) ok = false;
      for (Index r = 0; ok && r < m.scalar_count(); ++r)
        if (!in(m.act(r, a))) ok = false;
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

}  // namespace

TEST(Module, RegularModule) {
  auto r = upper_triangular(2);
  auto m = regular_module(r);
  EXPECT_EQ(m->order(), 8u);
  for (Index a = 0; a < 8; ++a)
    for (Index x = 0; x < 8; ++x) EXPECT_EQ(m->act(a, x), r->mul(a, x));
  EXPECT_NO_THROW(m->validate());
  EXPECT_EQ(annihilator(*m).size(), 1u);
}

TEST(Module, ValidationWitnesses) {
  auto z4 = cyclic_ring(4);
  FiniteModule::Table add = {{0, 1}, {1, 0}};
  // Z(4) acting on Z(2) with 1 acting as zero: fails 1x = x.
  FiniteModule::Table bad = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
  EXPECT_THROW(FiniteModule(z4, "bad", add, bad, 0), ValidationError);
  FiniteModule::Table good = {{0, 0}, {0, 1}, {0, 0}, {0, 1}};
  FiniteModule ok(z4, "Z(2)", add, good, 0);
  EXPECT_EQ(annihilator(ok).elements().to_vector(), (std::vector<Index>{0, 2}));
  // Z(3) acting on Z(2) through the identity map is not additive in the scalar.
  FiniteModule::Table wrong = {{0, 0}, {0, 1}, {0, 1}};
  EXPECT_THROW(FiniteModule(cyclic_ring(3), "bad", add, wrong, 0), ValidationError);
}

TEST(Module, DirectSumAndPower) {
  auto z2 = cyclic_ring(2);
  auto r2 = power_module(z2, 2);
  EXPECT_EQ(r2->order(), 4u);
  EXPECT_NO_THROW(r2->validate());
  EXPECT_EQ(all_submodules(r2).size(), 5u);
  auto s = direct_sum(regular_module(cyclic_ring(4)), regular_module(cyclic_ring(4)));
  EXPECT_EQ(s->order(), 16u);
  EXPECT_NO_THROW(s->validate());
}

TEST(Module, SubmodulesMatchSubsetOracle) {
  for (const auto& b : builtin_rings(16)) {
    for (const auto& e : module_corpus(b.ring, CorpusOptions{b.ring->order() <= 4 ? 2u : 1u})) {
      if (e.module->order() > 16) continue;
      std::vector<std::uint64_t> got;
      for (const auto& s : e.submodules) got.push_back(oracle::to_mask(s.elements()));
      EXPECT_EQ(got, submodule_masks(*e.module)) << e.module->name();
    }
  }
}

TEST(Module, QuotientModule) {
  auto r = upper_triangular(2);
  auto reg = regular_module(r);
  auto a = submodule_closure(reg, {e11, e12});
  auto q = quotient_module(reg, a);
  EXPECT_EQ(q.module->order(), 2u);
  EXPECT_NO_THROW(q.module->validate());
  EXPECT_EQ(annihilator(*q.module).elements(), a.elements());
  for (Index x = 0; x < 8; ++x)
    for (Index s = 0; s < 8; ++s) EXPECT_EQ(q.projection[r->mul(s, x)], q.module->act(s, q.projection[x]));
}

TEST(Module, AnnihilatorsAreTwoSided) {
  for (const auto& b : builtin_rings(16))
    for (const auto& e : module_corpus(b.ring, CorpusOptions{1})) {
      auto ann = annihilator(*e.module);
      EXPECT_TRUE(is_two_sided(ann.as_left()));
      for (Index r = 0; r < b.ring->order(); ++r) {
        bool kills = true;
        for (Index x = 0; x < e.module->order(); ++x) kills = kills && e.module->act(r, x) == e.module->zero();
        EXPECT_EQ(kills, ann.contains(r));
      }
    }
}

TEST(Module, Quasiidentities) {
  auto r = upper_triangular(2);
  auto reg = regular_module(r);
  auto a = left_ideal_closure(r, {e11, e12});
  EXPECT_TRUE(satisfies_quasiidentity(*reg, a));
  auto q = quotient_module(reg, submodule_closure(reg, {e11, e12})).module;
  EXPECT_FALSE(satisfies_quasiidentity(*q, a));
  EXPECT_TRUE(quasiidentity_witness(*q, a).has_value());
  EXPECT_TRUE(satisfies_quasiidentity(*zero_module(r), a));
  EXPECT_FALSE(satisfies_quasiidentity(*reg, left_ideal_closure(r, {e22})));
  EXPECT_EQ(Quasiidentity(a).render(), "(e11·x=0)∧(e12·x=0)→(x=0)");
  EXPECT_EQ(Quasiidentity(left_ideal_closure(cyclic_ring(4), {2})).render(), "(2x=0)→(x=0)");
}

// Generators decide q_A: the generator reading and the all-elements reading agree.
TEST(Module, QuasiidentityGeneratorReading) {
  std::mt19937_64 rng(5);
  for (const auto& b : builtin_rings(8))
    for (const auto& e : module_corpus(b.ring, CorpusOptions{2}))
      for (const auto& a : all_left_ideals(b.ring)) {
        std::vector<Index> gens;
        for (int k = 0; k < 2; ++k) gens.push_back(static_cast<Index>(rng() % b.ring->order()));
        auto other = ideal_sum(a, left_ideal_closure(b.ring, gens));
        EXPECT_EQ(satisfies_quasiidentity(*e.module, other), oracle::satisfies_full(*e.module, other.elements()));
      }
}

TEST(Module, CorpusCounts) {
  // Quotients of R: one per left ideal.
  EXPECT_EQ(module_corpus(upper_triangular(2), CorpusOptions{1}).size(), 7u);
  auto c = module_corpus(cyclic_ring(2), CorpusOptions{2});
  EXPECT_EQ(c.size(), 2u + 5u);
  auto sums = module_corpus(cyclic_ring(2), CorpusOptions{1, true});
  EXPECT_EQ(sums.size(), 3u);
  EXPECT_THROW(module_corpus(cyclic_ring(16), CorpusOptions{4}), PreconditionError);
  EXPECT_THROW(module_corpus(cyclic_ring(2), CorpusOptions{0}), PreconditionError);
}

TEST(Module, SumAndIntersection) {
  auto reg = regular_module(upper_triangular(2));
  auto a = submodule_closure(reg, {e11});
  auto b = submodule_closure(reg, {e12});
  EXPECT_EQ(submodule_sum(a, b).size(), 4u);
  EXPECT_EQ(submodule_intersect(a, b).size(), 1u);
  EXPECT_THROW(submodule_sum(a, submodule_closure(regular_module(upper_triangular(2)), {1})), PreconditionError);
}
