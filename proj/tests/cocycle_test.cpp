#include "support.hpp"

#include "vertexlab/cocycle.hpp"
#include "vertexlab/geometry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vertexlab;
using vertexlab::testing::free_lattice;

namespace {

/// Independent check of normalization, commutation and associativity on a window.
std::size_t count_violations(const SignFunction& eps, const SuperLattice& lat, int window) {
  const auto& g = lat.bplus;
  const IntMatrix gram = bplus_gram(lat);
  auto chi = [&](const Coords& a, const Coords& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram[i][j] * b[j];
    return s;
  };
  const auto elems = window_elements(g, window);
  std::size_t bad = 0;
  for (const auto& a : elems) {
    if (eps(a, g.zero()) != 1 || eps(g.zero(), a) != 1) ++bad;
    for (const auto& b : elems) {
      if (eps(a, b) * eps(b, a) != sign_power(chi(a, b) + chi(a, a) * chi(b, b))) ++bad;
      for (const auto& c : elems)
        if (eps(a, b) * eps(g.add(a, b), c) != eps(a, g.add(b, c)) * eps(b, c)) ++bad;
    }
  }
  return bad;
}

SuperLattice random_lattice(std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<long long> d(-3, 3);
  IntMatrix m(static_cast<std::size_t>(rank), std::vector<long long>(static_cast<std::size_t>(rank)));
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j) m[i][j] = m[j][i] = d(rng);
  return free_lattice(m);
}

} // namespace

TEST(BuildEpsilon, RankOneIsTrivial) {
  for (long long q : {-2, 0, 1, 3}) {
    SuperLattice lat = free_lattice({{q}});
    SignCocycle eps = build_epsilon(lat);
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b) EXPECT_EQ(eps({a}, {b}), 1);
  }
}

TEST(BuildEpsilon, HyperbolicRankTwoSigns) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  SignCocycle eps = build_epsilon(lat);
  EXPECT_EQ(eps({0, 1}, {1, 0}), -1);
  EXPECT_EQ(eps({1, 0}, {0, 1}), 1);
  EXPECT_EQ(count_violations(eps.function(), lat, 2), 0u);
}

TEST(BuildEpsilon, SolvesTheEquationsOnRandomLattices) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 12; ++k) {
    SuperLattice lat = random_lattice(rng, 1 + k % 3);
    SignCocycle eps = build_epsilon(lat);
    CocycleReport rep = verify_cocycle(eps, lat, 2);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(count_violations(eps.function(), lat, 1), 0u);
  }
}

TEST(BuildEpsilon, ZeroIsNormalized) {
  SuperLattice lat = free_lattice({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  SignCocycle eps = build_epsilon(lat);
  for (const auto& b : window_elements(lat.bplus, 1)) {
    EXPECT_EQ(eps({0, 0, 0}, b), 1);
    EXPECT_EQ(eps(b, {0, 0, 0}), 1);
  }
}

TEST(BuildEpsilon, TorsionSentToAnOddClassIsObstructed) {
  // B+ = Z/2 mapped onto a generator of odd self-pairing: no sign system can exist
  SuperLattice lat = free_lattice({{1}});
  lat.bplus = FGAbelianGroup(0, {2});
  lat.iota = {{1}};
  EXPECT_THROW(build_epsilon(lat), TorsionObstruction);
  EXPECT_FALSE(validate_superlattice(lat).empty());
}

TEST(VerifyCocycle, AllPlusTableBreaksCommutation) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  SignCocycle plus(lat.bplus, {{1, 1}, {1, 1}});
  CocycleReport rep = verify_cocycle(plus, lat, 2);
  ASSERT_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations) found = found || v.rule == "commutation";
  EXPECT_TRUE(found);
  // the exponent chi(e1, e2) + chi(e1, e1) chi(e2, e2) = 1 is odd
  EXPECT_EQ(commutation_exponent(bplus_gram(lat), {1, 0}, {0, 1}) % 2, 1);
  EXPECT_EQ(rep.total_violations > 0, count_violations(plus.function(), lat, 2) > 0);
}

TEST(VerifyCocycle, ExhaustiveTripleCountOnRankThree) {
  SuperLattice lat = free_lattice({{2, 1, 0}, {1, -2, 1}, {0, 1, 4}});
  CocycleReport rep = verify_cocycle(build_epsilon(lat), lat, 2);
  EXPECT_TRUE(rep.ok());
  EXPECT_GE(rep.triples_checked, 15625u);
}

TEST(VerifyCocycle, EulerSignSolvesTheSymmetrizedEquations) {
  for (const char* name : {"p1", "p2", "elliptic"}) {
    SCOPED_TRACE(name);
    VarietyModel m = builtin(name);
    SuperLattice lat = superlattice_of(m, Variant::general);
    SignCocycle eps = variant_epsilon(m, Variant::general);
    EXPECT_TRUE(verify_cocycle(eps, lat, 2).ok());
    EXPECT_EQ(count_violations(eps.function(), lat, 1), 0u);
  }
}

TEST(Twist, TrivialEtaIsIdentity) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 2}});
  SignCocycle eps = build_epsilon(lat);
  SignMap eta;
  for (const auto& a : window_elements(lat.bplus, 2)) eta[a] = 1;
  SignTable t = twist(eps, eta);
  for (const auto& [ab, s] : t.entries()) EXPECT_EQ(s, eps(ab.first, ab.second));
}

TEST(Twist, RankOneParityEta) {
  SuperLattice lat = free_lattice({{3}});
  SignCocycle eps = build_epsilon(lat);
  SignMap eta;
  for (long long k = -2; k <= 2; ++k) eta[{k}] = sign_power(k);
  SignTable t = twist(eps, eta);
  EXPECT_EQ(t({1}, {1}), eps({1}, {1}) * eta[{2}]);
  EXPECT_EQ(t({1}, {-1}), eps({1}, {-1}) * eta[{1}] * eta[{-1}]);
  EXPECT_THROW(t({2}, {2}), WindowExceeded);
  SignMap bad = eta;
  bad[{0}] = -1;
  EXPECT_THROW(twist(eps, bad), std::invalid_argument);
}

TEST(Twist, KeepsTheEquations) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  SignCocycle eps = build_epsilon(lat);
  std::mt19937_64 rng(5);
  SignMap eta;
  for (const auto& a : window_elements(lat.bplus, 2)) eta[a] = (rng() & 1) ? 1 : -1;
  eta[{0, 0}] = 1;
  EXPECT_TRUE(verify_cocycle(twist(eps, eta), lat, 1).ok());
}

TEST(Cohomologous, FindsWitnesses) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  SignCocycle eps = build_epsilon(lat);
  auto same = cohomologous(eps.function(), eps.function(), lat, 2);
  ASSERT_TRUE(same);
  for (const auto& [a, s] : *same) EXPECT_EQ(s, 1);

  // the transposed solution is another valid sign system for the same form
  SignCocycle other(lat.bplus, {{-1, -1}, {1, 1}});
  ASSERT_TRUE(verify_cocycle(other, lat, 2).ok());
  auto w = cohomologous(eps.function(), other.function(), lat, 2);
  ASSERT_TRUE(w);
  SignTable t = twist(eps, *w);
  for (const auto& [ab, s] : t.entries()) EXPECT_EQ(s, other(ab.first, ab.second));
}

TEST(Cohomologous, RejectsNonCoboundaries) {
  SuperLattice lat = free_lattice({{0, 1}, {1, 0}});
  SignCocycle eps = build_epsilon(lat);
  // flipping s_01 alone changes eps(a,b)/eps(b,a), which no coboundary can do
  SignCocycle flipped(lat.bplus, {{eps.signs()[0][0], -eps.signs()[0][1]}, {eps.signs()[1][0], eps.signs()[1][1]}});
  EXPECT_FALSE(cohomologous(eps.function(), flipped.function(), lat, 2));
}
