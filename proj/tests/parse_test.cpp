#include "support.hpp"

#include "vertexlab/compare.hpp"
#include "vertexlab/parse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vertexlab;
using vertexlab::testing::boson;
using vertexlab::testing::fermion;
using vertexlab::testing::free_lattice;

namespace {

FockSpace space() {
  SuperLattice lat = free_lattice({{2}}, {{0, 1}, {-1, 0}});
  lat.even_names = {"v1"};
  lat.odd_names = {"w", "x"};
  return FockSpace(lat);
}

} // namespace

TEST(ParseState, GrammarExamples) {
  FockSpace F = space();
  EXPECT_EQ(parse_state(F, "vac"), F.vacuum());
  EXPECT_EQ(parse_state(F, "2/3 * e[1] * b(v1,2)"), boson(F, 0, 2, F.exp_sector({1})) * (Rational(2) / 3));
  EXPECT_TRUE(parse_state(F, "f(w,1)*f(w,1)").empty());
  EXPECT_EQ(parse_state(F, "f(x,1)*f(w,1)"), parse_state(F, "f(w,1)*f(x,1)") * Rational(-1));
  EXPECT_EQ(parse_state(F, "e[1]*e[-1]"), F.vacuum());
  EXPECT_EQ(parse_state(F, "3"), F.vacuum() * Rational(3));
  EXPECT_TRUE(parse_state(F, "0").empty());
  EXPECT_EQ(parse_state(F, "-b(v1,1) + b(v1,1)"), FockState{});
  EXPECT_EQ(parse_state(F, " f(w, 2) *\n e[2] "), fermion(F, 0, 2, F.exp_sector({2})));
}

TEST(ParseState, ErrorsCarryPositions) {
  FockSpace F = space();
  auto position = [&](const std::string& text) {
    try {
      parse_state(F, text);
    } catch (const SyntaxError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair{0, 0};
  };
  EXPECT_EQ(position("b(q,1)"), (std::pair{1, 3}));
  EXPECT_EQ(position("vac +"), (std::pair{1, 6}));
  EXPECT_EQ(position("vac\n  * b(v1,0)"), (std::pair{2, 10}));
  EXPECT_EQ(position("e[1,2]").first, 1);
  EXPECT_THROW(parse_state(F, ""), SyntaxError);
  EXPECT_THROW(parse_state(F, "g(v1,1)"), SyntaxError);
  EXPECT_THROW(parse_state(F, "1/0*vac"), SyntaxError);
  EXPECT_THROW(parse_state(F, "vac vac"), SyntaxError);
}

TEST(ParseState, PrintThenParseIsIdentity) {
  FockSpace F = space();
  const auto basis = window_basis(F, 2, 3);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  for (int k = 0; k < 200; ++k) {
    FockState s;
    for (int t = 0; t < 3; ++t) s += basis[pick(rng)] * (Rational(num(rng)) / den(rng));
    EXPECT_EQ(parse_state(F, format_state(F, s)), s) << format_state(F, s);
  }
}

TEST(ParseClass, GrammarAndRoundTrip) {
  VarietyModel e = builtin("elliptic");
  const HClass c = parse_class(e, "2*u(1,0; O,1)*u(0,1; A,2)");
  UMonomial m;
  m.sector = {1, 1};
  m.even.emplace_back(Mode{0, 1}, 1);
  m.odd.push_back(Mode{2, 2});
  EXPECT_EQ(c, HClass(m, 2));
  EXPECT_TRUE(parse_class(e, "u(0,0; B,1)*u(0,0; B,1)").empty());
  EXPECT_EQ(parse_class(e, "vac"), unit_class({0, 0}));

  VarietyModel p1 = builtin("p1");
  EXPECT_EQ(parse_class(p1, "u(0,0; O(1),2)"), u_generator(p1, {0, 0}, 1, 2));
  EXPECT_THROW(parse_class(p1, "u(0; O,1)"), SyntaxError);
  EXPECT_THROW(parse_class(p1, "u(0,0; O(2),1)"), SyntaxError);
  EXPECT_THROW(parse_class(p1, "b(O,1)"), SyntaxError);

  JoyceVA geo(e, Variant::cy, variant_epsilon(e, Variant::cy).function());
  for (const auto& w : window_basis(geo, 1, 3)) {
    const HClass x = w * (Rational(-3) / 4);
    EXPECT_EQ(parse_class(e, format_class(e, x)), x) << format_class(e, x);
  }
}
