// Acceptance run: one PASS/FAIL line per criterion, exact equality throughout.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kflag/casselman.hpp"
#include "kflag/heckeops.hpp"
#include "kflag/motivic.hpp"
#include "kflag/stable.hpp"

using namespace kflag;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

const LaurentPoly Y = LaurentPoly::y();
RationalFn R(const LaurentPoly& p) { return RationalFn(p); }

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

json load(const std::string& name) {
  std::ifstream in(std::string(KFLAG_GOLDEN_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing golden file " + name);
  return json::parse(in);
}

std::vector<long> y_coefficients(const RationalFn& f) {
  const LaurentPoly p = substitute(f, Substitution::non_equivariant()).polynomial_or_throw("golden");
  std::vector<long> out;
  for (const auto& t : p.terms()) {
    const int d = t.mono.y_exp();
    if (d < 0) throw std::runtime_error("negative y power in " + f.to_string());
    if (static_cast<int>(out.size()) <= d) out.resize(d + 1);
    out[d] = t.coeff.convert_to<long>();
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

void golden_table(Outcome& o, const FlagPtr& fv, const json& g, const std::function<LocalizedClass(Elt)>& cls,
                  Basis b) {
  const auto& W = fv->W();
  int rows = 0;
  for (auto& [wname, row] : g["classes"].items()) {
    const Elt w = W.parse(wname);
    const auto ex = expand(cls(w), b, true);
    for (Elt u = 0; u < W.size(); ++u) {
      std::vector<long> want;
      if (row.contains(W.format(u))) want = row[W.format(u)].get<std::vector<long>>();
      while (!want.empty() && want.back() == 0) want.pop_back();
      o.require(y_coefficients(ex.coeff[u]) == want, "w=" + wname + ", u=" + W.format(u));
    }
    ++rows;
  }
  o.require(rows == W.size(), "golden table has " + std::to_string(rows) + " rows");
}

RationalFn prod_one_plus_y_e_minus(const FlagPtr& fv) {
  RationalFn p(1);
  for (int a = 0; a < fv->dim(); ++a) p *= R(1 + Y * LaurentPoly::monomial(fv->e_root(a).inverse()));
  return p;
}

RationalFn signed_y_power(int k) { return R(LaurentPoly::monomial(Monomial::y(k), k % 2 ? -1 : 1)); }

const std::vector<std::pair<char, int>> kRankAtMost3 = {{'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2},
                                                        {'A', 3}, {'B', 3}, {'C', 3}};

// --- criteria -------------------------------------------------------------------------

Outcome fl3_golden() {
  Outcome o;
  const auto t = Clock::now();
  auto fv = FlagVariety::make('A', 2);
  golden_table(o, fv, load("fl3_mc_cells.json"), [&](Elt w) { return mc_cell_X(fv, w); }, Basis::Schubert);
  const double s = since(t);
  o.require(s < 1.0, "runtime " + secs(s));
  o.note += (o.note.empty() ? "" : "; ") + secs(s);
  return o;
}

Outcome fl3_dual_golden() {
  Outcome o;
  auto fv = FlagVariety::make('A', 2);
  golden_table(o, fv, load("fl3_dual_normalized.json"), [&](Elt w) { return mc_dual_normalized(fv, w); },
               Basis::OppositeSchubert);
  const RationalFn top = R((1 + Y) * (1 + Y) * (1 + Y));
  int pairs = 0;
  for (Elt u = 0; u < fv->size(); ++u)
    for (Elt v = 0; v < fv->size(); ++v) {
      const RationalFn p = substitute(pairing(mc_cell_X(fv, u), mc_dual_normalized(fv, v)), Substitution::non_equivariant());
      o.require(p == (u == v ? top : RationalFn(0)), "pairing u=" + fv->W().format(u) + ", v=" + fv->W().format(v));
      ++pairs;
    }
  o.require(pairs == 36, "pair count");
  return o;
}

Outcome fl4_spot() {
  Outcome o;
  const auto t = Clock::now();
  auto fv = FlagVariety::make('A', 3);
  for (Elt w = 0; w < fv->size(); ++w) mc_dual_normalized(fv, w);
  const double s = since(t);
  const auto ex = expand(mc_dual_normalized(fv, 0), Basis::OppositeSchubert, true);
  const LaurentPoly want = Y * Y * (4 * Y - 1) * (1 + Y) * (1 + Y) * (1 + Y);
  const Elt u = fv->W().parse("s3 s1 s2");
  o.require(substitute(ex.coeff[u], Substitution::non_equivariant()) == R(want), "coefficient of O^{s3 s1 s2}");
  // the stored golden entry agrees with the closed form
  for (const auto& e : load("fl4_dual_normalized_entry.json")["entries"])
    o.require(y_coefficients(expand(mc_dual_normalized(fv, fv->W().parse(e["w"].get<std::string>())),
                                    Basis::OppositeSchubert, true)
                                 .coeff[fv->W().parse(e["u"].get<std::string>())]) ==
                  e["coefficient"].get<std::vector<long>>(),
              "golden entry");
  o.require(s < 30.0, "runtime " + secs(s));
  o.note += (o.note.empty() ? "" : "; ") + secs(s) + " for the A3 family";
  return o;
}

Outcome hecke_duality() {
  Outcome o;
  double a3 = 0;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'A', 3}}) {
    const auto t = Clock::now();
    auto fv = FlagVariety::make(type, rank);
    const RationalFn prod = prod_one_plus_y_e_minus(fv);
    for (Elt u = 0; u < fv->size(); ++u)
      for (Elt v = 0; v < fv->size(); ++v) {
        const RationalFn want = u == v ? signed_y_power(fv->W().length(u) - fv->dim()) * prod : RationalFn(0);
        o.require(pairing(mc_cell_X(fv, u), mc_dual_cell(fv, v)) == want,
                  fv->label() + " u=" + fv->W().format(u) + ", v=" + fv->W().format(v));
      }
    if (type == 'A' && rank == 3) a3 = since(t);
  }
  o.require(a3 < 120.0, "A3 runtime " + secs(a3));
  o.note += (o.note.empty() ? "" : "; ") + secs(a3) + " for A3";
  return o;
}

Outcome relations() {
  Outcome o;
  for (auto [type, rank] : kRankAtMost3) {
    const Report r = verify_relations(FlagVariety::make(type, rank));
    o.require(r.ok(), r.first_failure());
    bool braid = false, leading = false;
    for (const auto& e : r.entries()) {
      braid = braid || (e.relation.find("braid") != std::string::npos && e.checked > 0);
      leading = leading || (e.relation.find("leading coefficient") != std::string::npos && e.checked > 0);
    }
    // rank one has no braid relation to check
    o.require((braid || rank == 1) && leading,
              std::string(1, type) + std::to_string(rank) + ": braid or leading-term check missing");
  }
  return o;
}

Outcome routes() {
  Outcome o;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}}) {
    auto fv = FlagVariety::make(type, rank);
    const std::string at = fv->label();
    const auto xo = mc_cell_X_by_operators(fv), xl = mc_cell_X_by_localization(fv);
    const auto yl = mc_cell_Y_by_localization(fv), yt = mc_cell_Y_by_twist(fv);
    const auto d1 = mc_dual_cell_by_operators(fv), d2 = mc_dual_cell_by_localization(fv),
               d3 = mc_dual_cell_by_duality(fv);
    const auto sm = stab_minus_by_recursion(fv), sp = stab_plus_by_recursion(fv);
    const auto sp2 = stab_plus_from_minus(fv, sm), sm2 = stab_minus_from_plus(fv, sp);
    for (Elt w = 0; w < fv->size(); ++w) {
      const std::string wn = at + " w=" + fv->W().format(w);
      o.require(xo[w] == xl[w], "MC(X) routes " + wn);
      o.require(yl[w] == yt[w], "MC(Y) routes " + wn);
      o.require(d1[w] == d2[w] && d2[w] == d3[w], "dual routes " + wn);
      o.require(sp[w] == sp2[w] && sm[w] == sm2[w], "stable chambers " + wn);
      for (Elt u = 0; u < fv->size(); ++u) {
        if (!fv->bruhat_leq(u, w)) continue;
        const RationalFn rr = r_by_ratio(fv, u, w);
        o.require(m_by_ratio(fv, u, w) == m_by_expansion(fv, u, w), "m routes " + wn);
        o.require(rr == r_by_mobius(fv, u, w) && rr == r_by_expansion(fv, u, w), "r routes " + wn);
      }
    }
    // Schubert expansions: pairing against the dual basis vs triangular solve
    for (Elt w = 0; w < fv->size(); ++w) {
      const auto a = expand_by_pairing(mc_cell_X(fv, w), Basis::Schubert);
      const auto b = expand_by_triangular_solve(mc_cell_X(fv, w), Basis::Schubert);
      for (Elt u = 0; u < fv->size(); ++u) o.require(a.coeff[u] == b.coeff[u], "expansion routes " + at);
    }
  }
  return o;
}

Outcome specializations() {
  Outcome o;
  for (auto [type, rank] : kRankAtMost3) {
    auto fv = FlagVariety::make(type, rank);
    const auto y0 = Substitution::y_value(Rational(0)), ym1 = Substitution::y_value(Rational(-1));
    for (Elt w = 0; w < fv->size(); ++w) {
      const std::string at = fv->label() + " w=" + fv->W().format(w);
      o.require(substitute(mc_cell_X(fv, w), y0) == ideal_sheaf_class(fv, w), "y=0 gives I_w at " + at);
      o.require(substitute(mc_variety(fv, Side::Y, w), y0) == opposite_schubert_class(fv, w), "y=0 gives O^w at " + at);
      o.require(substitute(mc_cell_X(fv, w), ym1) == fixed_point_class(fv, w), "y=-1 gives iota_w at " + at);
    }
  }
  return o;
}

Outcome bnn() {
  Outcome o;
  int a3_singular = 0;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'A', 3}, {'G', 2}}) {
    auto fv = FlagVariety::make(type, rank);
    int singular = 0;
    for (Elt w = 0; w < fv->size(); ++w)
      for (Elt u = 0; u < fv->size(); ++u) {
        if (!fv->bruhat_leq(u, w)) continue;
        const bool f = factorization_holds(fv, u, w), m = smooth_via_mc(fv, u, w), k = smooth_via_kumar(fv, u, w);
        o.require(f == m && m == k, fv->label() + " u=" + fv->W().format(u) + ", w=" + fv->W().format(w));
        singular += f ? 0 : 1;
      }
    const Report scan = bnn_scan(fv);
    o.require(scan.ok(), scan.first_failure());
    o.require(scan.extra()["singular_pairs"].get<int>() == singular, fv->label() + ": scan count differs");
    if (type == 'A' && rank == 3) a3_singular = singular;
  }
  o.require(a3_singular > 0, "no singular pair in A3");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(a3_singular) + " singular pairs in A3";
  return o;
}

Outcome kl_bridge() {
  Outcome o;
  auto fv = FlagVariety::make('A', 3);
  const auto& W = fv->W();
  const Elt w0 = W.longest();
  int pairs = 0;
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt u = 0; u < W.size(); ++u) {
      if (!fv->bruhat_leq(u, w)) continue;
      o.require(kl_is_one(fv, W.mul(w0, W.inverse(w)), W.mul(w0, W.inverse(u))) == factorization_holds(fv, u, w),
                "u=" + W.format(u) + ", w=" + W.format(w));
      ++pairs;
    }
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(pairs) + " comparable pairs";
  return o;
}

Outcome divisibility_holomorphy() {
  Outcome o;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 2}}) {
    auto fv = FlagVariety::make(type, rank);
    for (const Report& r : {divisibility_check(fv), holomorphy_check(fv)}) o.require(r.ok(), r.first_failure());
  }
  return o;
}

Outcome stable() {
  Outcome o;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}}) {
    const Report r = verify_stable(FlagVariety::make(type, rank));
    o.require(r.ok(), r.first_failure());
  }
  return o;
}

// Reported, never asserted: the outcome is a finding about a conjecture.
Outcome positivity() {
  Outcome o;
  for (auto [type, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 2}}) {
    auto fv = FlagVariety::make(type, rank);
    for (auto mode : {PositivityMode::Equivariant, PositivityMode::NonEquivariant}) {
      const Report r = positivity_scan(fv, mode);
      const auto& s = r.extra()["summary"];
      const int bad = s["violations"].get<int>(), zero = s["vanishing"].get<int>();
      const std::string tag = fv->label() + (mode == PositivityMode::Equivariant ? " equivariant" : " non-equivariant");
      if (bad > 0 || zero > 0)
        std::cout << "FINDING positivity " << tag << ": " << bad << " sign violations, " << zero
                  << " vanishing coefficients\n";
      o.note += (o.note.empty() ? "" : "; ") + tag + " " + std::to_string(s["pairs"].get<int>()) + " pairs, " +
                std::to_string(bad) + " violations";
    }
  }
  return o;
}

Outcome gindikin_karpelevich() {
  Outcome o;
  auto fv = FlagVariety::make('A', 3);
  const auto& W = fv->W();
  const auto& rs = fv->roots();
  for (Elt w = 0; w < W.size(); ++w) {
    // {alpha > 0 : w^-1 alpha < 0} read off a reduced word s_{i1}...s_{il} of w
    RationalFn want(1);
    Elt prefix = W.identity();
    for (int i : W.word(w)) {
      const Weight beta = W.apply_to_weight(prefix, rs.root_weight(rs.simple_root(i)));
      const LaurentPoly e = LaurentPoly::monomial(fv->e_weight(beta));
      want *= RationalFn::fraction(1 + LaurentPoly::y(-1) * e, 1 - e);
      prefix = W.mul_simple_right(prefix, i);
    }
    o.require(m_coeff(fv, W.identity(), w) == want, "w=" + W.format(w));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "Fl(3) golden table of MC(X(w)o)", fl3_golden},
      {2, "Fl(3) normalized dual classes and (1+y)^3 pairing", fl3_dual_golden},
      {3, "Fl(4) coefficient y^2(4y-1)(1+y)^3", fl4_spot},
      {4, "Hecke duality in A1, A2, B2, A3", hecke_duality},
      {5, "operator relations at rank <= 3", relations},
      {6, "construction routes agree in A1-A3 and B2", routes},
      {7, "specializations y=0 and y=-1 at rank <= 3", specializations},
      {8, "BNN equivalence in A2, B2, A3, G2", bnn},
      {9, "KL bridge in A3", kl_bridge},
      {10, "divisibility and holomorphy in A3 and B2", divisibility_holomorphy},
      {11, "stable envelopes in A1, A2, B2", stable},
      {12, "positivity scan reported for A2, A3, B2", positivity},
      {13, "Gindikin-Karpelevich in A3", gindikin_karpelevich},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name;
    if (!o.note.empty()) std::cout << " (" << o.note << ")";
    std::cout << " [" << secs(since(t)) << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
