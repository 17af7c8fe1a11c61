#include <doctest.h>

#include <set>

#include "kflag/errors.hpp"
#include "kflag/weyl.hpp"

using namespace kflag;

namespace {

WeylGroup group(char t, int n) { return WeylGroup(RootSystem::build(t, n)); }

// Independent Bruhat oracle: u <= w iff u is the product of a subword of a
// reduced word of w.
bool subword_leq(const WeylGroup& W, Elt u, Elt w) {
  const auto& wd = W.word(w);
  const std::size_t k = wd.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Elt x = W.identity();
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) x = W.mul_simple_right(x, wd[i]);
    if (x == u) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("root counts") {
  struct Case {
    char t;
    int n;
    int np;
  };
  for (auto c : {Case{'A', 1, 1}, Case{'A', 2, 3}, Case{'A', 3, 6}, Case{'A', 5, 15}, Case{'B', 2, 4}, Case{'B', 3, 9},
                 Case{'C', 3, 9}, Case{'C', 4, 16}, Case{'D', 4, 12}, Case{'D', 5, 20}, Case{'E', 6, 36},
                 Case{'E', 7, 63}, Case{'E', 8, 120}, Case{'F', 4, 24}, Case{'G', 2, 6}}) {
    auto rs = RootSystem::build(c.t, c.n);
    CHECK(rs->num_positive() == c.np);
    // weight coordinates = Cartan * simple coordinates
    for (int r = 0; r < rs->num_roots(); ++r) {
      auto s = rs->root_simple_coords(r);
      for (int i = 0; i < c.n; ++i) {
        int acc = 0;
        for (int j = 0; j < c.n; ++j) acc += rs->cartan(i, j) * s[j];
        CHECK(acc == rs->root_weight(r)[i]);
      }
    }
  }
}

TEST_CASE("invalid root systems") {
  CHECK_THROWS_AS(RootSystem::build('D', 3), ConfigError);
  CHECK_THROWS_AS(RootSystem::build('B', 1), ConfigError);
  CHECK_THROWS_AS(RootSystem::build('E', 5), ConfigError);
  CHECK_THROWS_AS(RootSystem::build('G', 3), ConfigError);
  CHECK_THROWS_AS(RootSystem::build('X', 2), ConfigError);
  try {
    RootSystem::build('D', 3);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("A3") != std::string::npos);
  }
  CHECK_THROWS_AS(group('E', 7), ResourceError);
}

TEST_CASE("B2 positive roots") {
  auto rs = RootSystem::build('B', 2);
  std::set<std::vector<int>> got;
  for (int r = 0; r < rs->num_positive(); ++r) got.insert(rs->root_simple_coords(r));
  CHECK(got == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}, {1, 2}});
}

TEST_CASE("enumeration") {
  WeylGroup A2 = group('A', 2);
  REQUIRE(A2.size() == 6);
  std::vector<int> lens;
  for (Elt w = 0; w < A2.size(); ++w) lens.push_back(A2.length(w));
  CHECK(lens == std::vector<int>{0, 1, 1, 2, 2, 3});
  CHECK(A2.format(0) == "e");
  CHECK(A2.format(1) == "s1");
  CHECK(A2.format(3) == "s1 s2");
  CHECK(A2.format(5) == "s1 s2 s1");

  WeylGroup A1 = group('A', 1);
  CHECK(A1.size() == 2);

  WeylGroup B2 = group('B', 2);
  CHECK(B2.size() == 8);
  CHECK(B2.longest() == B2.parse("s1 s2 s1 s2"));
  CHECK(B2.longest() == B2.parse("2 1 2 1"));

  CHECK(group('G', 2).size() == 12);
  CHECK(group('F', 4).size() == 1152);
  CHECK(group('D', 4).size() == 192);
  CHECK(group('E', 6).size() == 51840);
}

TEST_CASE("group operations") {
  WeylGroup W = group('A', 2);
  auto rs = W.root_system();
  const int a1 = rs->simple_root(0), a2 = rs->simple_root(1);
  CHECK(W.apply_to_root(W.simple(0), a1) == rs->negate(a1));
  CHECK(rs->root_simple_coords(W.apply_to_root(W.simple(0), a2)) == std::vector<int>{1, 1});
  CHECK(W.mul(W.simple(0), W.simple(0)) == W.identity());
  CHECK(W.parse("s1s2") == W.parse("s1 s2"));
  CHECK(W.parse("id") == 0);
  CHECK_THROWS_AS(W.parse("s3"), UsageError);
  CHECK_THROWS_AS(W.parse("t1"), UsageError);

  // apply_to_weight(s_i, lambda) = lambda - lambda_i alpha_i
  Weight lam{3, -2};
  Weight s1lam = W.apply_to_weight(W.simple(0), lam);
  CHECK(s1lam[0] == 3 - 3 * 2);
  CHECK(s1lam[1] == -2 - 3 * (-1));

  for (char t : {'A', 'B', 'G'}) {
    WeylGroup G = group(t, t == 'A' ? 3 : 2);
    for (Elt u = 0; u < G.size(); ++u) {
      CHECK(G.mul(u, G.inverse(u)) == G.identity());
      CHECK(G.length(G.inverse(u)) == G.length(u));
      for (Elt v = 0; v < G.size(); v += 3) {
        // functoriality of the action on weights
        Weight mu{1, 2, 3};
        CHECK(G.apply_to_weight(G.mul(u, v), mu) == G.apply_to_weight(u, G.apply_to_weight(v, mu)));
      }
    }
  }
}

TEST_CASE("bruhat and reflections") {
  WeylGroup W = group('A', 2);
  CHECK(W.bruhat_leq(W.parse("s1"), W.parse("s1 s2")));
  CHECK_FALSE(W.bruhat_leq(W.parse("s1 s2"), W.parse("s2 s1")));
  for (Elt w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(0, w));

  auto rs = W.root_system();
  int highest = rs->find_root(Weight{1, 1});
  REQUIRE(highest >= 0);
  CHECK(W.reflection(highest) == W.parse("s1 s2 s1"));
  CHECK(W.right_descents(W.longest()) == std::vector<int>{0, 1});
  WeylGroup A1 = group('A', 1);
  CHECK(A1.reflection(0) == A1.simple(0));
}

TEST_CASE("exhaustive invariants up to rank 3") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'G', 2}, {'B', 3}, {'C', 3}}) {
    WeylGroup W = group(t, n);
    const auto& R = W.roots();
    const Elt w0 = W.longest();
    CAPTURE(R.label());
    for (Elt w = 0; w < W.size(); ++w) {
      CHECK(W.length(w) + W.length(W.mul(w, w0)) == W.length(w0));
      CHECK(W.length(W.mul(W.mul(w0, w), w0)) == W.length(w));
      int flips = 0;
      for (int b = 0; b < R.num_positive(); ++b) flips += !R.is_positive(W.apply_to_root(w, b));
      CHECK(flips == W.length(w));
      // w permutes the roots
      std::set<int> img;
      for (int r = 0; r < R.num_roots(); ++r) img.insert(W.apply_to_root(w, r));
      CHECK(static_cast<int>(img.size()) == R.num_roots());
    }
    for (Elt u = 0; u < W.size(); ++u)
      for (Elt w = 0; w < W.size(); ++w) {
        bool le = W.bruhat_leq(u, w);
        CHECK(le == W.bruhat_leq(W.mul(w0, w), W.mul(w0, u)));
        if (W.size() <= 48) CHECK(le == subword_leq(W, u, w));
      }
    // reflections: s_beta is an involution sending beta to -beta
    for (int b = 0; b < R.num_positive(); ++b) {
      Elt r = W.reflection(b);
      CHECK(W.mul(r, r) == 0);
      CHECK(W.apply_to_root(r, b) == R.negate(b));
      CHECK(W.reflection_root(r) == b);
    }
    // u s v^{-1} < u v^{-1} whenever us > u and vs < v
    if (W.size() <= 48) {
      for (Elt u = 0; u < W.size(); ++u)
        for (Elt v = 0; v < W.size(); ++v)
          for (int b = 0; b < R.num_positive(); ++b) {
            Elt s = W.reflection(b);
            Elt us = W.mul(u, s), vs = W.mul(v, s);
            if (W.length(us) > W.length(u) && W.length(vs) < W.length(v)) {
              Elt lhs = W.mul(us, W.inverse(v)), rhs = W.mul(u, W.inverse(v));
              CHECK(lhs != rhs);
              CHECK(W.bruhat_leq(lhs, rhs));
            }
          }
    }
  }
}

TEST_CASE("root lattice coordinates") {
  auto A2 = RootSystem::build('A', 2);
  CHECK(*A2->to_root_coordinates(Weight{-2, 1}) == std::vector<int>{-1, 0});
  CHECK_FALSE(A2->to_root_coordinates(Weight{1, 0}));
  auto G2 = RootSystem::build('G', 2);
  for (int r = 0; r < G2->num_roots(); ++r) CHECK(*G2->to_root_coordinates(G2->root_weight(r)) == G2->root_simple_coords(r));
}
