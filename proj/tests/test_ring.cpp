#include <doctest.h>

#include <random>
#include <vector>

#include "kflag/errors.hpp"
#include "kflag/rational_fn.hpp"

using namespace kflag;

namespace {

// Rank-1 and rank-2 helpers; alpha is the simple root of A1 in weight
// coordinates (alpha = 2*omega).
LaurentPoly e1(int k) { return LaurentPoly::e(std::vector<int>{k}); }
LaurentPoly e2(int a, int b) { return LaurentPoly::e(std::vector<int>{a, b}); }
const LaurentPoly Y = LaurentPoly::y();

LaurentPoly random_poly(std::mt19937& rng, int rank, int max_terms) {
  std::uniform_int_distribution<int> nterms(0, max_terms), ex(-2, 2), co(-4, 4);
  std::vector<LaurentPoly::Term> terms;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    for (int i = 0; i < rank; ++i) m.exp[i] = ex(rng);
    m.exp[kYSlot] = ex(rng);
    m.exp[kZSlot] = ex(rng);
    terms.push_back({m, co(rng)});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("laurent basics") {
  const LaurentPoly a = e1(2);
  CHECK(((1 - a) + a) == LaurentPoly(1));
  CHECK((a * a.scaled(Monomial::one(), -1)).to_string() == "-e^(4)");
  CHECK(LaurentPoly(0).is_zero());
  CHECK((Y * Y).coeff(Monomial::y(2)) == 1);
}

TEST_CASE("exact division") {
  const LaurentPoly a = e1(2);
  auto q = exact_divide(1 - a * a, 1 - a);
  REQUIRE(q);
  CHECK(*q == 1 + a);

  auto q2 = exact_divide((1 + Y) * (1 + Y * a), 1 + Y * a);
  REQUIRE(q2);
  CHECK(*q2 == 1 + Y);

  CHECK_FALSE(exact_divide(1 + Y * a, 1 - a));
  CHECK(exact_divide(LaurentPoly(0), 1 - a)->is_zero());
  CHECK_THROWS_AS(exact_divide(a, LaurentPoly(0)), ArithmeticError);

  // fewer terms in the dividend than the divisor
  CHECK(*exact_divide(1 - a * a * a, 1 + a + a * a) == 1 - a);
  // coefficient divisibility
  CHECK_FALSE(exact_divide(LaurentPoly(3) + a, LaurentPoly(2) + 2 * a));
}

TEST_CASE("rational arithmetic") {
  const LaurentPoly a = e1(2);
  RationalFn f = RationalFn::fraction(1 - a, 1 - a);
  CHECK(f == RationalFn(1));
  CHECK(f.is_polynomial());

  RationalFn g = RationalFn::fraction(1 - a * a, 1 - a);
  CHECK(g.is_polynomial());
  CHECK(*g.as_polynomial() == 1 + a);

  // 1/(1-e^a) + 1/(1-e^{-a}) = 1
  RationalFn h = RationalFn::fraction(1, 1 - a) + RationalFn::fraction(1, 1 - e1(-2));
  CHECK(h == RationalFn(1));
  CHECK(h.is_polynomial());

  CHECK_THROWS_AS(RationalFn(1) / RationalFn(0), ArithmeticError);
  CHECK_THROWS_AS(RationalFn(1) / RationalFn(1 + a + a * a), ArithmeticError);

  // dividing by an expanded product with hints
  FactorHints hints{DenomFactor{1, -1, Monomial::weight(std::vector<int>{2})},
                    DenomFactor{1, 1, Monomial::y() * Monomial::weight(std::vector<int>{2})}};
  RationalFn p = RationalFn::divide(RationalFn(1), RationalFn((1 - a) * (1 + Y * a) * (1 + Y)), hints);
  CHECK(p * RationalFn((1 - a) * (1 + Y * a) * (1 + Y)) == RationalFn(1));
  CHECK(p.den().size() == 3);
}

TEST_CASE("denominator canonical form") {
  const LaurentPoly a = e1(2);
  // 1 - e^{-a} is stored as 1 - e^{a} with the unit moved up
  RationalFn f = RationalFn::fraction(1, 1 - e1(-2));
  REQUIRE(f.den().size() == 1);
  CHECK(f.den()[0].first.kind() == DenomFactor::Kind::OneMinusE);
  CHECK(f.den()[0].first.m == Monomial::weight(std::vector<int>{2}));
  CHECK(f * RationalFn(1 - e1(-2)) == RationalFn(1));

  // 1 + y^{-1} e^a = y^{-1} e^a (1 + y e^{-a})
  RationalFn g = RationalFn::fraction(1, 1 + Y.scaled(Monomial::y(-2)) * a);
  CHECK(g.den()[0].first.kind() == DenomFactor::Kind::OnePlusYE);

  RationalFn c = RationalFn::fraction(1, LaurentPoly(-6));
  CHECK(c.den()[0].first.kind() == DenomFactor::Kind::Constant);
  CHECK(c * RationalFn(-6) == RationalFn(1));
  CHECK(RationalFn::fraction(1, LaurentPoly(1) - LaurentPoly::z(2) * a).den()[0].first.kind() ==
        DenomFactor::Kind::OneMinusQE);
}

TEST_CASE("dual involution") {
  const LaurentPoly a = e1(2);
  CHECK(dual_involution(RationalFn(a + Y)) == RationalFn(e1(-2) + LaurentPoly::y(-1)));
  RationalFn f = RationalFn::fraction(1 + Y * a, (1 - a)) + RationalFn(LaurentPoly::z(3));
  CHECK(dual_involution(dual_involution(f)) == f);
  CHECK(dual_involution(RationalFn(1 + Y * e1(-2))) == RationalFn(1 + LaurentPoly::y(-1) * a));
}

TEST_CASE("substitution") {
  const LaurentPoly a = e1(2);
  CHECK(substitute(RationalFn(1 + Y * e1(-2)), Substitution::non_equivariant()) == RationalFn(1 + Y));
  RationalFn f = RationalFn::fraction(1 - a, 1 - a) * RationalFn(1 + Y);
  CHECK(substitute(f, Substitution::non_equivariant()) == RationalFn(1 + Y));
  CHECK(substitute(RationalFn(1 + Y * a), Substitution::y_minus_q_inverse()) ==
        RationalFn(1 - LaurentPoly::z(-2) * a));
  CHECK_THROWS_AS(substitute(RationalFn::fraction(1, 1 - a), Substitution::non_equivariant()), PoleError);
  // y -> 1/2 gives an integer denominator
  RationalFn h = substitute(RationalFn(1 + Y), Substitution::y_value(Rational(1, 2)));
  CHECK(h == RationalFn::fraction(3, LaurentPoly(2)));
  CHECK_THROWS_AS(substitute(RationalFn(LaurentPoly::y(-1)), Substitution::y_value(0)), PoleError);
  // pole only through the denominator
  CHECK_THROWS_AS(substitute(RationalFn::fraction(1, 1 + Y), Substitution::y_value(-1)), PoleError);
  CHECK(substitute(RationalFn::fraction(1, 1 + Y * a), Substitution::y_value(2)) ==
        RationalFn::fraction(1, 1 + 2 * a));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(12345);
  for (int it = 0; it < 60; ++it) {
    LaurentPoly a = random_poly(rng, 3, 20), b = random_poly(rng, 3, 20), c = random_poly(rng, 3, 8);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!b.is_zero()) {
      auto q = exact_divide(a * b, b);
      REQUIRE(q);
      CHECK(*q == a);
    }
    CHECK(dual_involution(dual_involution(a)) == a);
  }
}

TEST_CASE("rational equality agrees with reduced form") {
  std::mt19937 rng(777);
  const std::vector<LaurentPoly> dens{1 - e2(2, -1), 1 + Y * e2(-1, 2), 1 - LaurentPoly::z(2) * e2(1, 1),
                                      1 - e2(-2, 1)};
  std::uniform_int_distribution<std::size_t> pick(0, dens.size() - 1);
  for (int it = 0; it < 40; ++it) {
    LaurentPoly n = random_poly(rng, 2, 6);
    const LaurentPoly& d1 = dens[pick(rng)];
    const LaurentPoly& d2 = dens[pick(rng)];
    RationalFn f = RationalFn::fraction(n, d1);
    // same value written with an extra common factor
    RationalFn g = RationalFn::fraction(n * d2, d1) / RationalFn(d2);
    CHECK(f == g);
    CHECK(f.num() == g.num());
    CHECK(f.den() == g.den());
    CHECK((f - g).is_zero());
    CHECK(dual_involution(dual_involution(f)) == f);
  }
}
