#include "support.hpp"

#include "vertexlab/vertex.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vertexlab;
using vertexlab::testing::boson;
using vertexlab::testing::fermion;
using vertexlab::testing::free_lattice;

namespace {

LatticeVA make_va(const SuperLattice& lat, TensorSign sign = TensorSign::printed) {
  FockSpace F(lat);
  return LatticeVA(F, build_epsilon(lat).function(), sign);
}

SuperLattice a1() { return free_lattice({{2}}); }
SuperLattice mixed() { return free_lattice({{0, 1}, {1, 2}}, {{0, 1}, {-1, 0}}); }

} // namespace

TEST(Translate, ActsAsDerivation) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState vac = F.vacuum();
  EXPECT_TRUE(va.translate(vac).empty());
  EXPECT_EQ(va.translate(boson(F, 0, 1, vac)), boson(F, 0, 2, vac));
  EXPECT_EQ(va.translate(fermion(F, 1, 2, vac)), fermion(F, 1, 3, vac) * Rational(2));
  const Coords a{1, -1};
  QVec ia;
  for (auto x : F.iota_free(a)) ia.push_back(rat(x));
  EXPECT_EQ(va.translate(F.exp_sector(a)), b_mode(F, ia, -1, F.exp_sector(a)));
}

TEST(Gamma, ZeroSectorIsIdentity) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState s = fermion(F, 0, 1, boson(F, 1, 2, F.exp_sector({1, 0})));
  for (long long n = -3; n <= 2; ++n) EXPECT_EQ(va.gamma_mode({0, 0}, n, s), n == -1 ? s : FockState{});
}

TEST(Gamma, FirstOrderCreationTerm) {
  LatticeVA va = make_va(free_lattice({{0}}));
  const FockSpace& F = va.space();
  EXPECT_EQ(va.gamma_mode({1}, -1, F.vacuum()), F.exp_sector({1}));
  EXPECT_EQ(va.gamma_mode({1}, -2, F.vacuum()), boson(F, 0, 1, F.exp_sector({1})));
}

TEST(Fields, VacuumAndGeneratorFields) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState vac = F.vacuum();
  const auto basis = window_basis(F, 1, 2);
  for (const auto& w : basis)
    for (long long n = -3; n <= 3; ++n) {
      EXPECT_EQ(va.y_mode(vac, n, w), n == -1 ? w : FockState{});
      for (int v = 0; v < 2; ++v) {
        EXPECT_EQ(va.y_mode(boson(F, v, 1, vac), n, w), b_mode(F, v, n, w));
        // the odd generator passes e^beta with sign (-1)^{chi+(beta, beta)}
        const Coords& beta = w.begin()->first.sector;
        EXPECT_EQ(va.y_mode(fermion(F, v, 1, vac), n, w), f_mode(F, v, n, w) * sign_power(F.sector_pair(beta, beta)))
            << format_state(F, w) << " n=" << n;
      }
    }
  EXPECT_EQ(va.y_mode(boson(F, 0, 1, vac), 1, boson(F, 1, 1, vac)), vac * rat(F.chi_plus(0, 1)));
}

TEST(Fields, LatticeVertexOperatorOnA1) {
  LatticeVA va = make_va(a1());
  const FockSpace& F = va.space();
  const FockState e = F.exp_sector({1}), em = F.exp_sector({-1});
  const FockState vac = F.vacuum();
  const int s = va.epsilon({1}, {-1});
  // z^{-2} exp(sum_k b_{-k} z^k / k) e^0: coefficients of z^0, z^1, z^2
  EXPECT_EQ(va.y_mode(e, 1, em), vac * Rational(s));
  EXPECT_EQ(va.y_mode(e, 0, em), boson(F, 0, 1, vac) * Rational(s));
  const FockState z2 = boson(F, 0, 2, vac) * (Rational(1) / 2) + boson(F, 0, 1, boson(F, 0, 1, vac)) * (Rational(1) / 2);
  EXPECT_EQ(va.y_mode(e, -1, em), z2 * Rational(s));
  EXPECT_TRUE(va.y_mode(e, 2, em).empty());
  EXPECT_EQ(va.mode_upper_bound(e, em), 1);
}

TEST(Fields, ReconstructionAgreesWithDirectEvaluation) {
  for (const auto& lat : {a1(), mixed()}) {
    LatticeVA va = make_va(lat);
    const auto basis = window_basis(va.space(), 1, 2);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int k = 0; k < 30; ++k) {
      const FockState& u = basis[pick(rng)];
      const FockState& w = basis[pick(rng)];
      for (long long n = -4; n <= 3; ++n) EXPECT_EQ(va.y_mode(u, n, w), va.y_mode_reconstructed(u, n, w));
    }
  }
}

TEST(Axioms, VacuumCreation) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  EXPECT_TRUE(check_vacuum_creation(va, F.vacuum(), 4).ok);
  EXPECT_TRUE(check_vacuum_creation(va, boson(F, 0, 1, F.vacuum()), 4).ok);
  EXPECT_TRUE(check_vacuum_creation(va, F.exp_sector({1, -1}), 4).ok);
  EXPECT_TRUE(check_vacuum_creation(va, fermion(F, 1, 2, F.exp_sector({0, 1})), 4).ok);
}

TEST(Axioms, SkewSymmetryIncludingCocycleSigns) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState vac = F.vacuum();
  EXPECT_TRUE(check_skew(va, vac, boson(F, 0, 2, vac), 5).ok);
  EXPECT_TRUE(check_skew(va, boson(F, 0, 1, vac), boson(F, 0, 1, vac), 5).ok);
  EXPECT_TRUE(check_skew(va, F.exp_sector({1, 0}), F.exp_sector({0, 1}), 5).ok);
  EXPECT_TRUE(check_skew(va, fermion(F, 0, 1, vac), fermion(F, 1, 1, F.exp_sector({1, 0})), 5).ok);
  LatticeVA rank1 = make_va(free_lattice({{3}}));
  EXPECT_TRUE(check_skew(rank1, rank1.space().exp_sector({1}), rank1.space().exp_sector({1}), 5).ok);
}

TEST(Axioms, SkewSymmetryDetectsAWrongCocycle) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  FockSpace F(lat);
  LatticeVA wrong(F, [](const Coords&, const Coords&) { return 1; });
  EXPECT_FALSE(check_skew(wrong, F.exp_sector({1, 0}), F.exp_sector({0, 1}), 3).ok);
}

TEST(Axioms, WeakAssociativityExponents) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState vac = F.vacuum();
  auto r0 = check_weak_assoc(va, vac, boson(F, 0, 1, vac), F.exp_sector({1, 0}), 8, 2);
  ASSERT_TRUE(r0.ok);
  EXPECT_EQ(r0.minimal_n, 0);
  auto r1 = check_weak_assoc(va, boson(F, 0, 1, vac), boson(F, 1, 1, vac), boson(F, 0, 2, vac), 8, 2);
  ASSERT_TRUE(r1.ok);
  EXPECT_LE(*r1.minimal_n, 6);
  auto r2 = check_weak_assoc(va, F.exp_sector({1, 0}), F.exp_sector({0, 1}), F.exp_sector({-1, 0}), 8, 2);
  EXPECT_TRUE(r2.ok);
}

TEST(Axioms, LocalityOrders) {
  LatticeVA va = make_va(mixed());
  const FockSpace& F = va.space();
  const FockState vac = F.vacuum();
  const std::vector<FockState> probes{vac, boson(F, 1, 1, F.exp_sector({1, 0}))};
  auto bb = check_locality(va, boson(F, 0, 1, vac), boson(F, 1, 1, vac), probes, 8, 2);
  ASSERT_TRUE(bb.ok);
  EXPECT_EQ(bb.minimal_n, 2);
  auto bv = check_locality(va, boson(F, 0, 1, vac), vac, probes, 8, 2);
  ASSERT_TRUE(bv.ok);
  EXPECT_EQ(bv.minimal_n, 0);

  for (long long q : {-2, 0, 2}) {
    LatticeVA r1 = make_va(free_lattice({{q}}));
    const FockSpace& G = r1.space();
    auto g = check_locality(r1, G.exp_sector({1}), G.exp_sector({1}), {G.vacuum(), G.exp_sector({-1})}, 8, 2);
    ASSERT_TRUE(g.ok) << q;
    EXPECT_EQ(g.minimal_n, std::max<long long>(0, -q)) << q;
  }
}

TEST(Axioms, SuiteOnSmallLatticeBothTensorSigns) {
  for (TensorSign sign : {TensorSign::printed, TensorSign::standard}) {
    LatticeVA va = make_va(mixed(), sign);
    AxiomSuiteOptions opt;
    opt.depth = 2;
    opt.samples = 10;
    opt.triples = 4;
    opt.max_z = 4;
    AxiomSuiteReport rep = run_axiom_suite(va, opt);
    EXPECT_TRUE(rep.ok()) << to_string(sign);
    EXPECT_EQ(rep.axioms.size(), 5u);
  }
}
