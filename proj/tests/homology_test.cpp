#include "vertexlab/homology.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vertexlab;

namespace {

JoyceVA joyce(const std::string& name, Variant variant) {
  VarietyModel m = builtin(name);
  return JoyceVA(m, variant, variant_epsilon(m, variant).function());
}

MuMonomial mu_power(const Coords& alpha, int v, int i, int e) {
  MuMonomial m;
  m.sector = alpha;
  m.even.emplace_back(Mode{v, i}, e);
  return m;
}

UMonomial u_power(const Coords& alpha, int v, int i, int e) {
  UMonomial m;
  m.sector = alpha;
  m.even.emplace_back(Mode{v, i}, e);
  return m;
}

/// Every even mu-monomial in generators gens with total depth exactly weight (depth >= 1).
std::vector<MuMonomial> mu_monomials(const Coords& alpha, const std::vector<int>& gens, int weight) {
  std::vector<MuMonomial> all;
  enumerate_monomials<CohomologyTag>(alpha, gens, {}, weight, all);
  std::vector<MuMonomial> out;
  for (const auto& m : all)
    if (m.weight() == weight) out.push_back(m);
  return out;
}

/// Coefficient of tau^k in prod over factors of sum_j tau^j / j! mu_{v, i - j}, as mu-monomials with depth >= 0.
std::map<MuMonomial, Rational> pullback_coefficient(const MuMonomial& mu, int k) {
  std::map<std::pair<int, MuMonomial>, Rational> acc;
  MuMonomial start;
  start.sector = mu.sector;
  acc[{0, start}] = 1;
  for (const auto& [mode, e] : mu.even)
    for (int r = 0; r < e; ++r) {
      std::map<std::pair<int, MuMonomial>, Rational> next;
      for (const auto& [key, c] : acc)
        for (int j = 0; j <= mode.depth && key.first + j <= k; ++j) {
          MuMonomial m = key.second;
          m.even.emplace_back(Mode{mode.gen, mode.depth - j}, 1);
          canonicalize(m);
          next[{key.first + j, m}] += c / factorial(j);
        }
      acc = std::move(next);
    }
  std::map<MuMonomial, Rational> out;
  for (const auto& [key, c] : acc)
    if (key.first == k) out[key.second] += c;
  return out;
}

} // namespace

TEST(Pairing, ClosedFormValues) {
  const Coords zero{0, 0};
  EXPECT_EQ(mu_pair(mu_power(zero, 0, 3, 2), u_power(zero, 0, 3, 2)), Rational(1) / 2);
  EXPECT_EQ(mu_pair(mu_power(zero, 0, 1, 1), u_power(zero, 1, 1, 1)), 0);
  MuMonomial one;
  one.sector = zero;
  UMonomial uone;
  uone.sector = zero;
  EXPECT_EQ(mu_pair(one, uone), 1);
  // prod m!/((i-1)!)^m over two variables
  MuMonomial mu = mu_power(zero, 0, 2, 3);
  mu.even.emplace_back(Mode{1, 4}, 2);
  UMonomial u = u_power(zero, 0, 2, 3);
  u.even.emplace_back(Mode{1, 4}, 2);
  EXPECT_EQ(mu_pair(mu, u), Rational(6) * Rational(2) / 36);
}

TEST(Cap, ClosedFormOnPowers) {
  const Coords zero{0, 0};
  EXPECT_EQ(cap(HClass(u_power(zero, 0, 2, 2), 1), mu_power(zero, 0, 2, 1)), HClass(u_power(zero, 0, 2, 1), 2));
  EXPECT_EQ(cap(HClass(u_power(zero, 0, 1, 1), 1), mu_power(zero, 0, 1, 1)), unit_class(zero));
  EXPECT_TRUE(cap(HClass(u_power(zero, 0, 1, 1), 1), mu_power(zero, 0, 1, 2)).empty());
  for (int n = 0; n <= 5; ++n)
    for (int m = 1; m <= 5; ++m)
      for (int i = 1; i <= 4; ++i) {
        HClass got = cap(HClass(u_power(zero, 1, i, n), 1), mu_power(zero, 1, i, m));
        if (n < m) {
          EXPECT_TRUE(got.empty());
          continue;
        }
        Rational f = 1;
        for (int k = 0; k < m; ++k) f *= factorial(i - 1);
        const Rational want = factorial(n) / (factorial(n - m) * f);
        UMonomial rest = n == m ? UMonomial{zero, {}, {}} : u_power(zero, 1, i, n - m);
        EXPECT_EQ(got, HClass(rest, want)) << n << " " << m << " " << i;
      }
}

TEST(Cap, IsDualToCup) {
  // <eta cap mu1, mu2> = <eta, mu1 mu2> on even monomials of p2
  JoyceVA geo = joyce("p2", Variant::general);
  const Coords zero{0, 0, 0};
  const auto top = mu_monomials(zero, {0, 1, 2}, 4);
  for (const auto& m1 : mu_monomials(zero, {0, 1, 2}, 2))
    for (const auto& m2 : mu_monomials(zero, {0, 1, 2}, 2)) {
      MuMonomial prod = m1;
      prod.even.insert(prod.even.end(), m2.even.begin(), m2.even.end());
      canonicalize(prod);
      for (const auto& t : top) {
        UMonomial u{zero, t.even, {}};
        const HClass c = cap(HClass(u, 1), m1);
        Rational lhs = 0;
        for (const auto& [r, x] : c) lhs += x * mu_pair(m2, r);
        EXPECT_EQ(lhs, mu_pair(prod, u));
      }
    }
}

TEST(Cap, DepthZeroFactorsReadTheSector) {
  JoyceVA geo = joyce("p2", Variant::general);
  const Coords alpha{2, -1, 3};
  const HClass eta = geo.u_class(alpha, {{0, 1}, {2, 2}});
  for (int w = 0; w < 3; ++w) {
    MuMonomial mu;
    mu.sector = alpha;
    mu.even.emplace_back(Mode{w, 0}, 1);
    EXPECT_EQ(geo.cap(eta, mu), eta * rat(alpha[static_cast<std::size_t>(w)]));
  }
}

TEST(Pushforward, AddsSectorsAndMultiplies) {
  VarietyModel e = builtin("elliptic");
  const FGAbelianGroup g = e.bplus();
  const Coords a{1, 0}, b{0, -2};
  EXPECT_EQ(phi_push(g, u_generator(e, a, 0, 1), u_generator(e, b, 0, 1)),
            HClass(u_power(g.add(a, b), 0, 1, 2), 1));
  EXPECT_EQ(phi_push(g, unit_class(a), unit_class(b)), unit_class(g.add(a, b)));
  EXPECT_TRUE(phi_push(g, u_generator(e, a, 2, 1), u_generator(e, b, 2, 1)).empty());
  const HClass ab = phi_push(g, u_generator(e, a, 2, 1), u_generator(e, b, 3, 1));
  const HClass ba = phi_push(g, u_generator(e, b, 3, 1), u_generator(e, a, 2, 1));
  EXPECT_EQ(ab, ba * Rational(-1));
}

TEST(Psi, TranslationOfGenerators) {
  for (const auto& name : {"p1", "elliptic"}) {
    JoyceVA geo = joyce(name, Variant::general);
    const Coords zero = geo.sectors().zero();
    for (int v = 0; v < static_cast<int>(geo.model().kbasis.size()); ++v)
      for (int i = 0; i <= 4; ++i)
        EXPECT_EQ(geo.psi_push(i, u_generator(geo.model(), zero, v, 1)), u_generator(geo.model(), zero, v, i + 1));
    for (int k = 0; k <= 3; ++k)
      EXPECT_EQ(geo.psi_push(k, unit_class(zero)), k == 0 ? unit_class(zero) : HClass{});
  }
}

TEST(Psi, SectorUnitsPickUpTheirClass) {
  JoyceVA geo = joyce("p1", Variant::general);
  const Coords alpha{2, -1};
  const HClass want = geo.u_class(alpha, {{0, 1}}) * Rational(2) - geo.u_class(alpha, {{1, 1}});
  EXPECT_EQ(geo.psi_push(1, unit_class(alpha)), want);
}

TEST(Psi, AdjointToTheCohomologyPullback) {
  JoyceVA geo = joyce("p2", Variant::general);
  const Coords zero{0, 0, 0};
  const std::vector<HClass> etas{geo.u_class(zero, {{0, 1}, {1, 1}}), geo.u_class(zero, {{2, 2}}),
                                 geo.u_class(zero, {{0, 1}, {0, 1}, {1, 2}})};
  for (const auto& eta : etas)
    for (int k = 0; k <= 3; ++k) {
      const HClass pushed = geo.psi_push(k, eta);
      const int weight = eta.begin()->first.weight() + k;
      for (const auto& mu : mu_monomials(zero, {0, 1, 2}, weight)) {
        Rational lhs = 0;
        for (const auto& [u, c] : pushed) lhs += c * mu_pair(mu, u);
        Rational rhs = 0;
        for (const auto& [m, c] : pullback_coefficient(mu, k)) {
          bool scalar = false;
          for (const auto& [mode, e] : m.even) scalar = scalar || mode.depth == 0;
          if (scalar) continue;  // a_v(0) = 0
          for (const auto& [u, x] : eta) rhs += c * x * mu_pair(m, u);
        }
        EXPECT_EQ(lhs, rhs) << format_class(geo.model(), eta) << " k=" << k;
      }
    }
}

TEST(ExtComplex, RankIsTheWorkingForm) {
  for (auto [name, variant] : {std::pair{"p2", Variant::general}, std::pair{"elliptic", Variant::cy}}) {
    JoyceVA geo = joyce(name, variant);
    for (const auto& a : window_elements(geo.sectors(), 1))
      for (const auto& b : window_elements(geo.sectors(), 1)) EXPECT_EQ(geo.ext_rank(a, b), rat(geo.sector_form(a, b)));
    EXPECT_EQ(geo.ext_rank(geo.sectors().zero(), geo.sectors().generator(0)), 0);
  }
}

TEST(GeometricField, VacuumField) {
  JoyceVA geo = joyce("elliptic", Variant::cy);
  const Coords zero{0, 0};
  const HClass w = geo.u_class({1, -1}, {{0, 2}, {2, 1}});
  for (long long n = -3; n <= 3; ++n) EXPECT_EQ(geo.mode(unit_class(zero), n, w), n == -1 ? w : HClass{});
}

TEST(GeometricField, GeneratorFieldMatchesClosedForm) {
  for (auto [name, variant] : {std::pair{"p1", Variant::general}, std::pair{"elliptic", Variant::cy},
                               std::pair{"elliptic", Variant::general}}) {
    JoyceVA geo = joyce(name, variant);
    const Coords zero = geo.sectors().zero();
    const auto states = std::vector<HClass>{geo.u_class({1, 0}, {{0, 1}}), geo.u_class({0, 1}, {{1, 2}, {1, 1}}),
                                            geo.u_class({-1, 1}, {}), geo.u_class(zero, {{0, 3}})};
    for (int v = 0; v < static_cast<int>(geo.model().kbasis.size()); ++v)
      for (const auto& eta : states)
        for (long long n = -3; n <= 3; ++n)
          EXPECT_EQ(geo.mode(u_generator(geo.model(), zero, v, 1), n, eta), geo.generator_mode(v, n, eta))
              << name << " v=" << v << " n=" << n;
  }
}

TEST(GeometricField, AnnihilationValue) {
  JoyceVA geo = joyce("p2", Variant::general);
  const Coords alpha{1, 0, -1};
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w)
      for (int n = 1; n <= 3; ++n) {
        const HClass got = geo.mode(u_generator(geo.model(), {0, 0, 0}, v, 1), n, geo.u_class(alpha, {{w, n}}));
        EXPECT_EQ(got, unit_class(alpha) * rat(n * geo.form(v, w)));
      }
}

TEST(GeometricField, CreationMultipliesBySign) {
  JoyceVA geo = joyce("elliptic", Variant::cy);
  const Coords alpha{1, 1};
  const HClass eta = geo.u_class(alpha, {{3, 1}});
  // odd generator A passes a sector with chi~(alpha, alpha) = chi(O,pt) + chi(pt,O) = 0
  EXPECT_EQ(geo.mode(u_generator(geo.model(), {0, 0}, 2, 1), -2, eta),
            phi_push(geo.sectors(), u_generator(geo.model(), {0, 0}, 2, 2), eta));
  EXPECT_EQ(geo.hat_degree(geo.u_class({0, 0}, {{0, 2}})), 6);
  EXPECT_EQ(geo.hat_degree(geo.u_class({0, 0}, {{2, 2}})), 5);
}
