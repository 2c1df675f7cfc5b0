#include "support.hpp"

#include "vertexlab/fock.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vertexlab;
using vertexlab::testing::boson;
using vertexlab::testing::fermion;
using vertexlab::testing::free_lattice;

namespace {

FockSpace mixed_space() { return FockSpace(free_lattice({{0, 1}, {1, 2}}, {{0, 1}, {-1, 0}})); }

/// Random combination of up to three window states.
FockState random_state(const std::vector<FockState>& basis, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  FockState s;
  for (int k = 0; k < 3; ++k) s += basis[pick(rng)] * Rational(coef(rng));
  return s;
}

} // namespace

TEST(Boson, AnnihilatesAgainstCreation) {
  FockSpace F = mixed_space();
  const FockState vac = F.vacuum();
  EXPECT_EQ(b_mode(F, 0, 1, boson(F, 1, 1, vac)), vac * rat(F.chi_plus(0, 1)));
  EXPECT_EQ(b_mode(F, 1, 1, boson(F, 1, 1, vac)), vac * Rational(2));
  EXPECT_EQ(b_mode(F, 1, 2, boson(F, 1, 2, vac)), vac * Rational(4));
}

TEST(Boson, ZeroModeReadsTheSector) {
  FockSpace F = mixed_space();
  const FockState e = F.exp_sector({2, -1});
  // chi+(iota alpha, v1) = 2*0 - 1*1, chi+(iota alpha, v2) = 2*1 - 1*2
  EXPECT_EQ(b_mode(F, 0, 0, e), e * Rational(-1));
  EXPECT_EQ(b_mode(F, 1, 0, e), FockState{});
  EXPECT_TRUE(b_mode(F, 0, 3, e).empty());
}

TEST(Boson, RationalVectorsAreLinear) {
  FockSpace F = mixed_space();
  const FockState s = boson(F, 0, 1, boson(F, 1, 2, F.exp_sector({1, 1})));
  const QVec v{Rational(1) / 2, Rational(-3)};
  for (long long n = -2; n <= 2; ++n)
    EXPECT_EQ(b_mode(F, v, n, s), b_mode(F, 0, n, s) * v[0] + b_mode(F, 1, n, s) * v[1]);
}

TEST(Fermion, AnticommutatorValueAndExteriorSquare) {
  FockSpace F = mixed_space();
  const FockState vac = F.vacuum();
  EXPECT_EQ(f_mode(F, 0, 2, fermion(F, 1, 2, vac)), vac * rat(2 * F.chi_minus(0, 1)));
  EXPECT_TRUE(fermion(F, 0, 1, fermion(F, 0, 1, vac)).empty());
  EXPECT_TRUE(f_mode(F, 0, 0, fermion(F, 1, 1, vac)).empty());
  EXPECT_TRUE(f_mode(F, 1, 0, vac).empty());
}

TEST(Commutators, HeisenbergAndCliffordRelations) {
  FockSpace F = mixed_space();
  const auto basis = window_basis(F, 1, 3);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const FockState s = random_state(basis, rng);
    for (long long m = -3; m <= 3; ++m)
      for (long long n = -3; n <= 3; ++n)
        for (int v = 0; v < 2; ++v)
          for (int w = 0; w < 2; ++w) {
            const Rational scale = m + n == 0 ? rat(m) : Rational(0);
            FockState bb = b_mode(F, v, m, b_mode(F, w, n, s)) - b_mode(F, w, n, b_mode(F, v, m, s));
            EXPECT_EQ(bb, s * (scale * rat(F.chi_plus(v, w))));
            FockState ff = f_mode(F, v, m, f_mode(F, w, n, s)) + f_mode(F, w, n, f_mode(F, v, m, s));
            EXPECT_EQ(ff, s * (scale * rat(F.chi_minus(v, w))));
            FockState bf = b_mode(F, v, m, f_mode(F, w, n, s)) - f_mode(F, w, n, b_mode(F, v, m, s));
            EXPECT_TRUE(bf.empty());
          }
  }
}

TEST(Degree, PrintedGrading) {
  FockSpace F = mixed_space();
  const FockState vac = F.vacuum();
  EXPECT_EQ(degree(F, vac), 2);
  EXPECT_EQ(degree(F, boson(F, 0, 1, vac)), 4);
  EXPECT_EQ(degree(F, fermion(F, 0, 1, vac)), 3);
  EXPECT_EQ(degree(F, fermion(F, 1, 2, boson(F, 0, 3, vac))), 11);
  // chi+(a, a) for a = (1, 1) is 0 + 1 + 1 + 2 = 4
  EXPECT_EQ(degree(F, F.exp_sector({1, 1})), -2);
  EXPECT_EQ(degree(F, F.exp_sector({1, 1}), DegreeShift::form), 4);
  EXPECT_EQ(degree(F, vac, DegreeShift::form), 0);
  EXPECT_FALSE(degree(F, vac + boson(F, 0, 1, vac)));
}

TEST(WindowBasis, CountsMonomials) {
  FockSpace F(free_lattice({{2}}));
  // partitions of 0..3 in one variable: 1 + 1 + 2 + 3, over three sectors
  EXPECT_EQ(window_basis(F, 1, 3).size(), 21u);
  FockSpace G(free_lattice({{0}}, {{0}}));
  // weight <= 2 with one boson and one fermion generator: 1, b1, f1, b1^2, b2, f2, b1 f1
  EXPECT_EQ(window_basis(G, 0, 2).size(), 7u);
}

TEST(Format, PrintsInTheExpressionGrammar) {
  FockSpace F = mixed_space();
  const FockState s = boson(F, 1, 2, F.exp_sector({1, 0})) * (Rational(2) / 3) - fermion(F, 0, 1, F.vacuum());
  const std::string text = format_state(F, s);
  EXPECT_NE(text.find("2/3"), std::string::npos);
  EXPECT_NE(text.find("b(v2,2)"), std::string::npos);
  EXPECT_NE(text.find("f(w1,1)"), std::string::npos);
}
