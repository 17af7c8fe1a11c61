#include <doctest.h>

#include <fstream>

#include "kflag/errors.hpp"
#include "kflag/heckeops.hpp"
#include "kflag/motivic.hpp"

using namespace kflag;
using json = nlohmann::json;

namespace {

LaurentPoly E(std::vector<int> w) { return LaurentPoly::e(w); }
const LaurentPoly Y = LaurentPoly::y();
RationalFn R(const LaurentPoly& p) { return RationalFn(p); }

json load(const std::string& name) {
  std::ifstream in(std::string(KFLAG_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

// Coefficient list in y after e -> 1.
std::vector<long> y_coefficients(const RationalFn& f) {
  LaurentPoly p = substitute(f, Substitution::non_equivariant()).polynomial_or_throw("test");
  std::vector<long> out;
  for (const auto& t : p.terms()) {
    const int d = t.mono.y_exp();
    REQUIRE(d >= 0);
    if (static_cast<int>(out.size()) <= d) out.resize(d + 1);
    out[d] = t.coeff.convert_to<long>();
  }
  return out;
}

std::vector<long> trimmed(std::vector<long> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

// Checks a golden table of non-equivariant expansions.
void check_golden(const FlagPtr& fv, const json& g, const std::function<LocalizedClass(Elt)>& cls, Basis b) {
  const auto& W = fv->W();
  for (auto& [wname, row] : g["classes"].items()) {
    const Elt w = W.parse(wname);
    auto ex = expand(cls(w), b, true);
    for (Elt u = 0; u < W.size(); ++u) {
      CAPTURE(wname);
      CAPTURE(W.format(u));
      std::vector<long> want;
      if (row.contains(W.format(u))) want = row[W.format(u)].get<std::vector<long>>();
      CHECK(trimmed(y_coefficients(ex.coeff[u])) == trimmed(want));
    }
  }
}

}  // namespace

TEST_CASE("A1 motivic classes") {
  auto fv = FlagVariety::make('A', 1);
  const Elt s = 1;
  auto x = mc_cell_X(fv, s);
  // additivity oracle: lambda_y(T^*P^1) - iota_e
  CHECK(x == lambda_y_cotangent(fv) - mc_cell_X(fv, 0));
  CHECK(x.at(0) == R((1 + Y) * E({2})));
  CHECK(x.at(s) == R(1 + Y * E({-2})));
  auto ye = mc_cell_Y(fv, 0);
  CHECK(ye == lambda_y_cotangent(fv) - fixed_point_class(fv, s));
  CHECK(ye.at(s) == R(E({-2}) * (1 + Y)));
  CHECK(ye.at(0) == R(1 + Y * E({2})));
  // dual class at e
  CHECK(mc_dual_cell(fv, 0).at(0) == R(-(LaurentPoly::y(-1) + E({-2}))));
  CHECK(mc_dual_cell(fv, s) == fixed_point_class(fv, s));
  CHECK(mc_dual_normalized(fv, s) == fixed_point_class(fv, s));
  CHECK(mc_variety(fv, Side::X, s) == lambda_y_cotangent(fv));
}

TEST_CASE("closed-form diagonals") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}}) {
    auto fv = FlagVariety::make(t, n);
    CAPTURE(fv->label());
    for (Elt w = 0; w < fv->size(); ++w) {
      CHECK(mc_cell_X(fv, w).at(w) == mc_X_diagonal(fv, w));
      CHECK(mc_cell_Y(fv, w).at(w) == mc_Y_diagonal(fv, w));
      CHECK(mc_dual_cell(fv, w).at(w) == mc_dual_diagonal(fv, w));
      // the dual diagonal is forced by Hecke duality
      RationalFn top(1);
      for (int a = 0; a < fv->dim(); ++a)
        top *= R(1 + Y * LaurentPoly::monomial(fv->e_root(a).inverse())) *
               R(1 - LaurentPoly::monomial(fv->e_root(w, a)));
      const int k = fv->W().length(w) - fv->dim();
      top *= R(LaurentPoly::monomial(Monomial::y(k), k % 2 ? -1 : 1));
      CHECK(mc_dual_diagonal(fv, w) == RationalFn::divide(top, mc_X_diagonal(fv, w), fv->hints()));
    }
  }
}

TEST_CASE("all construction routes agree") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}, {'A', 3}}) {
    auto fv = FlagVariety::make(t, n);
    CAPTURE(fv->label());
    auto xo = mc_cell_X_by_operators(fv), xl = mc_cell_X_by_localization(fv);
    auto yl = mc_cell_Y_by_localization(fv), yt = mc_cell_Y_by_twist(fv);
    auto d1 = mc_dual_cell_by_operators(fv), d2 = mc_dual_cell_by_localization(fv), d3 = mc_dual_cell_by_duality(fv);
    for (Elt w = 0; w < fv->size(); ++w) {
      CHECK(xo[w] == xl[w]);
      CHECK(yl[w] == yt[w]);
      CHECK(d1[w] == d2[w]);
      CHECK(d1[w] == d3[w]);
      CHECK(d2[w] == d3[w]);
    }
  }
}

TEST_CASE("a corrupted route is detected") {
  auto fv = FlagVariety::make('A', 2);
  auto xo = mc_cell_X_by_operators(fv), xl = mc_cell_X_by_localization(fv);
  xl[3].at(0) += R(Y);
  bool differs = false;
  for (Elt w = 0; w < fv->size(); ++w) differs = differs || !(xo[w] == xl[w]);
  CHECK(differs);
}

TEST_CASE("motivic identities hold exhaustively") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}}) {
    auto fv = FlagVariety::make(t, n);
    CAPTURE(fv->label());
    Report r = verify_motivic(fv);
    INFO(r.first_failure());
    CHECK(r.ok());
  }
}

TEST_CASE("Fl(3) golden tables") {
  auto fv = FlagVariety::make('A', 2);
  check_golden(fv, load("fl3_mc_cells.json"), [&](Elt w) { return mc_cell_X(fv, w); }, Basis::Schubert);
  check_golden(fv, load("fl3_dual_normalized.json"), [&](Elt w) { return mc_dual_normalized(fv, w); },
               Basis::OppositeSchubert);
  // non-equivariant Hecke duality: (1+y)^3 delta
  for (Elt u = 0; u < fv->size(); ++u)
    for (Elt v = 0; v < fv->size(); ++v) {
      RationalFn p = substitute(pairing(mc_cell_X(fv, u), mc_dual_normalized(fv, v), true),
                                Substitution::non_equivariant());
      CHECK(p == (u == v ? R((1 + Y).pow(3)) : R(0)));
    }
}

TEST_CASE("Fl(4) normalized dual coefficient") {
  auto fv = FlagVariety::make('A', 3);
  const auto& W = fv->W();
  for (const auto& e : load("fl4_dual_normalized_entry.json")["entries"]) {
    auto ex = expand(mc_dual_normalized(fv, W.parse(e["w"].get<std::string>())), Basis::OppositeSchubert, true);
    CHECK(trimmed(y_coefficients(ex.coeff[W.parse(e["u"].get<std::string>())])) ==
          e["coefficient"].get<std::vector<long>>());
  }
}

TEST_CASE("specializations and variety classes") {
  auto fv = FlagVariety::make('A', 2);
  const auto& W = fv->W();
  for (Elt w = 0; w < W.size(); ++w) {
    CHECK(substitute(mc_cell_X(fv, w), Substitution::y_value(-1)) == fixed_point_class(fv, w));
    CHECK(substitute(mc_cell_X(fv, w), Substitution::y_value(0)) == ideal_sheaf_class(fv, w));
    CHECK(substitute(mc_variety(fv, Side::Y, w), Substitution::y_value(0)) == opposite_schubert_class(fv, w));
  }
  CHECK(mc_variety(fv, Side::Y, 0) == lambda_y_cotangent(fv));
  CHECK(mc_dual_normalized(fv, W.longest()) == fixed_point_class(fv, W.longest()));
  CHECK(mc_dual_cell(fv, W.longest()) == fixed_point_class(fv, W.longest()));
}

TEST_CASE("family access and caching") {
  auto fv = FlagVariety::make('A', 2);
  for (const auto& name : mc_family_names()) CHECK(mc_family(fv, name).size() == 6u);
  CHECK(&mc_family(fv, "MC_X_cell") == &mc_family(fv, "MC_X_cell"));
  CHECK_THROWS_AS(mc_family(fv, "MC_Z"), UsageError);
  CHECK(natural_basis("MC_X_variety") == Basis::Schubert);
  CHECK(natural_basis("MC_dual_Y_cell") == Basis::OppositeSchubert);
}

TEST_CASE("root coordinates") {
  auto A2 = RootSystem::build('A', 2);
  // e^{-alpha_1} = e^{(-2, 1)} -> x1
  auto rc = to_root_coordinates(*A2, E({-2, 1}));
  REQUIRE(rc.in_cone);
  CHECK(rc.table.size() == 1);
  CHECK(rc.table.begin()->first == std::make_pair(0, std::vector<int>{1, 0}));
  auto c = to_root_coordinates(*A2, 1 + 2 * Y);
  CHECK(c.in_cone);
  CHECK(c.table.at({0, {0, 0}}) == 1);
  CHECK(c.table.at({1, {0, 0}}) == 2);
  auto w1 = to_root_coordinates(*A2, E({1, 0}));
  CHECK_FALSE(w1.in_cone);
  CHECK(w1.offending.size() == 1);
  CHECK_FALSE(to_root_coordinates(*A2, E({2, -1})).in_cone);  // alpha_1 itself
}

TEST_CASE("positivity scan") {
  auto fv = FlagVariety::make('A', 1);
  Report r = positivity_scan(fv, PositivityMode::Equivariant);
  CHECK(r.ok());
  CHECK(r.extra()["label"] == "CONJECTURE");
  // c(s; e) = -(1 + y + y e^{-alpha}); signed: {y^0: 1, y^1: 1 + x}
  auto ex = expand(mc_cell_X(fv, 1), Basis::Schubert, true);
  auto rc = to_root_coordinates(fv->roots(), -ex.polynomial(0));
  CHECK(rc.table.size() == 3);
  CHECK(rc.table.at({0, {0}}) == 1);
  CHECK(rc.table.at({1, {0}}) == 1);
  CHECK(rc.table.at({1, {1}}) == 1);

  auto A2 = FlagVariety::make('A', 2);
  for (auto mode : {PositivityMode::Equivariant, PositivityMode::NonEquivariant}) {
    Report s = positivity_scan(A2, mode);
    CHECK(s.ok());
    CHECK(s.extra()["summary"]["pairs"] == 19);
  }
  // Fl(3) intro entries
  const auto& W = A2->W();
  auto e12 = expand(mc_cell_X(A2, W.parse("s1 s2")), Basis::Schubert, true);
  CHECK(trimmed(y_coefficients(e12.coeff[0])) == std::vector<long>{1, 5, 5});
  CHECK(trimmed(y_coefficients(e12.coeff[W.parse("s2")])) == std::vector<long>{-1, -4, -3});
}

TEST_CASE("divisibility") {
  auto fv = FlagVariety::make('A', 1);
  Report r = divisibility_check(fv);
  CHECK(r.ok());
  CHECK(r.extra()["comparable_pairs"] == 3);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}}) {
    auto f = FlagVariety::make(t, n);
    CAPTURE(f->label());
    Report d = divisibility_check(f);
    INFO(d.first_failure());
    CHECK(d.ok());
  }
  CHECK(divisibility_check(FlagVariety::make('A', 2)).extra()["comparable_pairs"] == 19);
}
