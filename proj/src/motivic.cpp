#include "kflag/motivic.hpp"

#include <sstream>

#include "kflag/errors.hpp"
#include "kflag/heckeops.hpp"
#include "kflag/parallel.hpp"

namespace kflag {

namespace {

LaurentPoly mono(const Monomial& m) { return LaurentPoly::monomial(m); }
const LaurentPoly kY = LaurentPoly::y();
const LaurentPoly kYInv = LaurentPoly::y(-1);

std::string cell_tag(const WeylGroup& W, const char* fmt, Elt w) {
  std::string s = fmt;
  return s.replace(s.find('@'), 1, W.format(w));
}

// MC(X(w s_i)^o)|_u from MC(X(w)^o) = F:
//   (-(1+y) F(u) + (1 + y e^{u alpha_i}) F(u s_i)) / (1 - e^{-u alpha_i})
// The Y-side recursion has the same shape.
RationalFn cell_step(const FlagPtr& fv, const LocalizedClass& F, int i, Elt u) {
  const Elt us = fv->W().mul_simple_right(u, i);
  if (F.at(u).is_zero() && F.at(us).is_zero()) return {};
  const Monomial ea = fv->e_root(u, fv->roots().simple_root(i));
  RationalFn num = F.at(u) * RationalFn(-(1 + kY)) + F.at(us) * RationalFn(1 + kY * mono(ea));
  return num * RationalFn::fraction(1, 1 - mono(ea.inverse()));
}

// MC^vee(Y(w)^o)|_u from G = MC^vee(Y(w s_i)^o):
//   (1 + y^-1)/(e^{u alpha_i} - 1) G(u) + (y^-1 + e^{-u alpha_i})/(e^{-u alpha_i} - 1) G(u s_i)
RationalFn dual_step(const FlagPtr& fv, const LocalizedClass& G, int i, Elt u) {
  const Elt us = fv->W().mul_simple_right(u, i);
  if (G.at(u).is_zero() && G.at(us).is_zero()) return {};
  const Monomial ea = fv->e_root(u, fv->roots().simple_root(i));
  RationalFn a = G.at(u) * RationalFn::fraction(1 + kYInv, mono(ea) - 1);
  RationalFn b = G.at(us) * RationalFn::fraction(kYInv + mono(ea.inverse()), mono(ea.inverse()) - 1);
  return a + b;
}

// Builds a cell family from a localization recursion: support test,
// closed-form diagonal, two-term step off the diagonal.  Every value the
// step produces is checked against the support and the diagonal.
ClassFamily localization_route(const FlagPtr& fv, bool ascending, Elt base, const char* tag,
                               const std::function<bool(Elt u, Elt w)>& in_support,
                               const std::function<RationalFn(Elt)>& diagonal,
                               const std::function<RationalFn(const LocalizedClass&, int, Elt)>& step) {
  const WeylGroup& W = fv->W();
  ClassFamily fam(W.size());
  fam[base] = fixed_point_class(fv, base);
  fam[base].set_tag(cell_tag(W, tag, base));
  if (!(fam[base].at(base) == diagonal(base)))
    throw InvariantViolation(std::string(tag) + ": base class does not match the diagonal formula");
  for_each_by_length(W, ascending, [&](Elt w) {
    if (w == base) return;
    // the step goes from w s_i to w; pick the largest admissible i
    int i = -1;
    for (int j = W.rank() - 1; j >= 0 && i < 0; --j)
      if (W.right_descent(w, j) == ascending) i = j;
    const LocalizedClass& prev = fam[W.mul_simple_right(w, i)];
    LocalizedClass c(fv, cell_tag(W, tag, w));
    for (Elt u = 0; u < W.size(); ++u) {
      RationalFn v = step(prev, i, u);
      if (!v.is_polynomial())
        throw InvariantViolation(c.tag() + "|_" + W.format(u) + " does not cancel to a polynomial: " + v.to_string());
      if (u == w) {
        RationalFn d = diagonal(w);
        if (!(v == d))
          throw InvariantViolation(c.tag() + ": recursion gives " + v.to_string() + " on the diagonal, closed form " +
                                   d.to_string());
      } else if (!in_support(u, w)) {
        if (!v.is_zero()) throw InvariantViolation(c.tag() + " is nonzero at " + W.format(u) + ", outside its support");
      }
      c.at(u) = std::move(v);
    }
    fam[w] = std::move(c);
  });
  return fam;
}

void compare_routes(const FlagPtr& fv, const ClassFamily& a, const ClassFamily& b, const std::string& family,
                    const std::string& ra, const std::string& rb) {
  for (Elt w = 0; w < fv->size(); ++w)
    if (!(a[w] == b[w]))
      throw InvariantViolation(family + ": routes '" + ra + "' and '" + rb + "' disagree at w = " + fv->W().format(w));
}

LaurentPoly prod_one_plus_y_neg(const FlagPtr& fv) {
  LaurentPoly p(1);
  for (int a = 0; a < fv->dim(); ++a) p *= 1 + kY * mono(fv->e_root(a).inverse());
  return p;
}

}  // namespace

// --- closed forms -----------------------------------------------------------------

RationalFn mc_X_diagonal(const FlagPtr& fv, Elt w) {
  LaurentPoly p(1);
  for (int a = 0; a < fv->dim(); ++a) {
    const int r = fv->W().apply_to_root(w, a);
    const LaurentPoly e = mono(fv->e_root(r));
    p *= fv->roots().is_positive(r) ? 1 - e : 1 + kY * e;
  }
  return p;
}

RationalFn mc_Y_diagonal(const FlagPtr& fv, Elt w) {
  LaurentPoly p(1);
  for (int a = 0; a < fv->dim(); ++a) {
    const int r = fv->W().apply_to_root(w, a);
    const LaurentPoly e = mono(fv->e_root(r));
    p *= fv->roots().is_positive(r) ? 1 + kY * e : 1 - e;
  }
  return p;
}

RationalFn mc_dual_diagonal(const FlagPtr& fv, Elt w) {
  LaurentPoly p((fv->dim() - fv->W().length(w)) % 2 ? -1 : 1);
  for (int a = 0; a < fv->dim(); ++a) {
    const int r = fv->W().apply_to_root(w, a);
    const Monomial e = fv->e_root(r);
    p *= fv->roots().is_positive(r) ? kYInv + mono(e.inverse()) : 1 - mono(e);
  }
  return p;
}

// --- routes ---------------------------------------------------------------------

ClassFamily mc_cell_X_by_operators(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  ClassFamily fam(W.size());
  fam[0] = fixed_point_class(fv, 0);
  for_each_by_length(W, true, [&](Elt w) {
    if (w == 0) return;
    const int last = W.word(w).back();
    fam[w] = op_T(last, fam[W.mul_simple_right(w, last)]);
  });
  for (Elt w = 0; w < W.size(); ++w) fam[w].set_tag(cell_tag(W, "MC(X(@)o)", w));
  return fam;
}

ClassFamily mc_cell_X_by_localization(const FlagPtr& fv) {
  return localization_route(
      fv, true, 0, "MC(X(@)o)", [&](Elt u, Elt w) { return fv->bruhat_leq(u, w); },
      [&](Elt w) { return mc_X_diagonal(fv, w); },
      [&](const LocalizedClass& F, int i, Elt u) { return cell_step(fv, F, i, u); });
}

ClassFamily mc_cell_Y_by_localization(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  return localization_route(
      fv, false, W.longest(), "MC(Y(@)o)", [&](Elt u, Elt w) { return fv->bruhat_leq(w, u); },
      [&](Elt w) { return mc_Y_diagonal(fv, w); },
      [&](const LocalizedClass& F, int i, Elt u) { return cell_step(fv, F, i, u); });
}

ClassFamily mc_cell_Y_by_twist(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const Elt w0 = W.longest();
  ClassFamily X(W.size());
  for (Elt w = 0; w < W.size(); ++w) X[w] = mc_cell_X(fv, w);
  ClassFamily fam(W.size());
  parallel_range(0, W.size(), [&](int w) {
    fam[w] = weyl_twist_class(w0, X[W.mul(w0, w)]);
    fam[w].set_tag(cell_tag(W, "MC(Y(@)o)", w));
  });
  return fam;
}

ClassFamily mc_dual_cell_by_operators(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const Elt w0 = W.longest();
  ClassFamily fam(W.size());
  const LocalizedClass top = fixed_point_class(fv, w0);
  parallel_range(0, W.size(), [&](int w) {
    // (T^vee_v)^{-1} = (T^vee_{i_k})^{-1} ... (T^vee_{i_1})^{-1} for v = s_{i_1} ... s_{i_k}
    LocalizedClass c = top;
    for (int letter : W.word(W.mul(w0, w))) c = op_T_dual_inverse(letter, c);
    c.set_tag(cell_tag(W, "MCv(Y(@)o)", w));
    fam[w] = std::move(c);
  });
  return fam;
}

ClassFamily mc_dual_cell_by_localization(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  return localization_route(
      fv, false, W.longest(), "MCv(Y(@)o)", [&](Elt u, Elt w) { return fv->bruhat_leq(w, u); },
      [&](Elt w) { return mc_dual_diagonal(fv, w); },
      [&](const LocalizedClass& G, int i, Elt u) { return dual_step(fv, G, i, u); });
}

ClassFamily mc_dual_cell_by_duality(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  ClassFamily Y(W.size());
  for (Elt w = 0; w < W.size(); ++w) Y[w] = mc_cell_Y(fv, w);
  const RationalFn top = prod_one_plus_y_neg(fv);
  // 1 / lambda_y(T^*_u) with factored denominator
  std::vector<RationalFn> inv_lambda(W.size());
  for (Elt u = 0; u < W.size(); ++u) {
    RationalFn::FactorList den;
    for (int a = 0; a < fv->dim(); ++a) den.push_back({DenomFactor{1, 1, Monomial::y() * fv->e_root(u, a)}, 1});
    inv_lambda[u] = RationalFn::assemble(LaurentPoly(1), den);
  }
  ClassFamily fam(W.size());
  parallel_range(0, W.size(), [&](int w) {
    LocalizedClass D = serre_duality(Y[w]);
    fam[w] = D.map([&](Elt u, const RationalFn& v) { return v * top * inv_lambda[u]; });
    fam[w].set_tag(cell_tag(W, "MCv(Y(@)o)", w));
  });
  return fam;
}

// --- cached families ------------------------------------------------------------------

namespace {

const ClassFamily& X_cells(const FlagPtr& fv) {
  return fv->family("MC_X_cell", [&] {
    ClassFamily a = mc_cell_X_by_operators(fv);
    ClassFamily b = mc_cell_X_by_localization(fv);
    compare_routes(fv, a, b, "MC_X_cell", "Demazure-Lusztig operators", "localization recursion");
    return a;
  });
}

const ClassFamily& Y_cells(const FlagPtr& fv) {
  return fv->family("MC_Y_cell", [&] {
    ClassFamily a = mc_cell_Y_by_localization(fv);
    ClassFamily b = mc_cell_Y_by_twist(fv);
    compare_routes(fv, a, b, "MC_Y_cell", "localization recursion", "w0 twist of X-side");
    return a;
  });
}

const ClassFamily& dual_cells(const FlagPtr& fv) {
  return fv->family("MC_dual_Y_cell", [&] {
    ClassFamily a = mc_dual_cell_by_operators(fv);
    ClassFamily b = mc_dual_cell_by_localization(fv);
    ClassFamily c = mc_dual_cell_by_duality(fv);
    compare_routes(fv, a, b, "MC_dual_Y_cell", "inverse operator chain", "localization recursion");
    compare_routes(fv, a, c, "MC_dual_Y_cell", "inverse operator chain", "Serre duality closed form");
    compare_routes(fv, b, c, "MC_dual_Y_cell", "localization recursion", "Serre duality closed form");
    return a;
  });
}

ClassFamily bruhat_sums(const FlagPtr& fv, const ClassFamily& cells, bool upward, const char* tag) {
  const WeylGroup& W = fv->W();
  ClassFamily fam(W.size());
  parallel_range(0, W.size(), [&](int w) {
    LocalizedClass c(fv, cell_tag(W, tag, w));
    for (Elt v = 0; v < W.size(); ++v)
      if (upward ? fv->bruhat_leq(w, v) : fv->bruhat_leq(v, w)) c += cells[v];
    fam[w] = std::move(c);
  });
  return fam;
}

const ClassFamily& normalized(const FlagPtr& fv) {
  return fv->family("MC_dual_normalized", [&] {
    const WeylGroup& W = fv->W();
    const ClassFamily& D = dual_cells(fv);
    ClassFamily fam(W.size());
    parallel_range(0, W.size(), [&](int w) {
      const int k = fv->dim() - W.length(w);
      LocalizedClass c = D[w] * RationalFn(LaurentPoly::monomial(Monomial::y(k), k % 2 ? -1 : 1));
      c.set_tag(cell_tag(W, "MC~(Y(@)o)", w));
      SchubertExpansion ex = expand(c, Basis::OppositeSchubert, true);
      for (Elt u = 0; u < W.size(); ++u)
        if (!ex.coeff[u].is_zero() && ex.polynomial(u).min_exp(kYSlot) < 0)
          throw InvariantViolation(c.tag() + ": coefficient of O^" + W.format(u) +
                                   " has negative powers of y: " + ex.coeff[u].to_string());
      fam[w] = std::move(c);
    });
    return fam;
  });
}

}  // namespace

LocalizedClass mc_cell_X(const FlagPtr& fv, Elt w) { return X_cells(fv)[w]; }
LocalizedClass mc_cell_Y(const FlagPtr& fv, Elt w) { return Y_cells(fv)[w]; }
LocalizedClass mc_dual_cell(const FlagPtr& fv, Elt w) { return dual_cells(fv)[w]; }
LocalizedClass mc_dual_normalized(const FlagPtr& fv, Elt w) { return normalized(fv)[w]; }

LocalizedClass mc_variety(const FlagPtr& fv, Side side, Elt w) {
  return mc_family(fv, side == Side::X ? "MC_X_variety" : "MC_Y_variety")[w];
}

LocalizedClass mc_dual_variety(const FlagPtr& fv, Elt w) { return mc_family(fv, "MC_dual_Y_variety")[w]; }

const std::vector<std::string>& mc_family_names() {
  static const std::vector<std::string> names = {"MC_X_cell",      "MC_Y_cell",         "MC_X_variety",
                                                 "MC_Y_variety",   "MC_dual_Y_cell",    "MC_dual_Y_variety",
                                                 "MC_dual_normalized"};
  return names;
}

const ClassFamily& mc_family(const FlagPtr& fv, const std::string& name) {
  if (name == "MC_X_cell") return X_cells(fv);
  if (name == "MC_Y_cell") return Y_cells(fv);
  if (name == "MC_dual_Y_cell") return dual_cells(fv);
  if (name == "MC_dual_normalized") return normalized(fv);
  if (name == "MC_X_variety")
    return fv->family(name, [&] { return bruhat_sums(fv, X_cells(fv), false, "MC(X(@))"); });
  if (name == "MC_Y_variety")
    return fv->family(name, [&] { return bruhat_sums(fv, Y_cells(fv), true, "MC(Y(@))"); });
  if (name == "MC_dual_Y_variety")
    return fv->family(name, [&] { return bruhat_sums(fv, dual_cells(fv), true, "MCv(Y(@))"); });
  std::string known;
  for (const auto& n : mc_family_names()) known += " " + n;
  throw UsageError("unknown class family '" + name + "'; expected one of:" + known);
}

Basis natural_basis(const std::string& family) {
  return family.rfind("MC_X", 0) == 0 ? Basis::Schubert : Basis::OppositeSchubert;
}

// --- verification -------------------------------------------------------------------

Report verify_motivic(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  Report rep("motivic", fv->label());
  const ClassFamily& X = X_cells(fv);
  const ClassFamily& Y = Y_cells(fv);
  const ClassFamily& D = dual_cells(fv);
  const ClassFamily& N = normalized(fv);
  const ClassFamily& XV = mc_family(fv, "MC_X_variety");
  const ClassFamily& YV = mc_family(fv, "MC_Y_variety");
  const ClassFamily& DV = mc_family(fv, "MC_dual_Y_variety");
  const LaurentPoly top = prod_one_plus_y_neg(fv);
  auto pair_name = [&](Elt u, Elt v) { return "u=" + W.format(u) + ", v=" + W.format(v); };

  // Hecke duality, all pairs
  {
    std::vector<char> ok(static_cast<std::size_t>(n) * n, 1);
    parallel_range(0, n, [&](int u) {
      for (Elt v = 0; v < n; ++v) {
        RationalFn got = pairing(X[u], D[v]);
        RationalFn want;
        if (u == v) {
          const int k = W.length(u) - fv->dim();  // <= 0
          want = RationalFn(top * LaurentPoly::monomial(Monomial::y(k), k % 2 ? -1 : 1));
        }
        ok[static_cast<std::size_t>(u) * n + v] = got == want;
        RationalFn gotn = pairing(X[u], N[v]);
        ok[static_cast<std::size_t>(u) * n + v] &= gotn == (u == v ? RationalFn(top) : RationalFn());
      }
    });
    for (Elt u = 0; u < n; ++u)
      for (Elt v = 0; v < n; ++v) {
        const bool g = ok[static_cast<std::size_t>(u) * n + v];
        rep.record("Hecke duality <MC(X(u)o), MCv(Y(v)o)> = delta (-y)^{l(u)-dim} prod(1+y e^-alpha)", g,
                   pair_name(u, v));
      }
  }

  // operator actions on the cells
  for (Elt w = 0; w < n; ++w)
    for (int i = 0; i < W.rank(); ++i) {
      const Elt ws = W.mul_simple_right(w, i);
      const bool up = W.length(ws) > W.length(w);
      const std::string at = "w=" + W.format(w) + ", i=" + std::to_string(i + 1);
      LocalizedClass t = op_T(i, X[w]);
      rep.record("T_i MC(X(w)o)", t == (up ? X[ws] : X[w] * RationalFn(-(1 + kY)) - X[ws] * RationalFn(kY)), at);
      LocalizedClass td = op_T_dual(i, D[w]);
      rep.record("T_i^vee MCv(Y(w)o)", td == (up ? D[ws] : D[w] * RationalFn(-(1 + kY)) - D[ws] * RationalFn(kY)), at);
      LocalizedClass ti = op_T_dual_inverse(i, D[ws]);
      LocalizedClass want = up ? D[w]
                               : D[w] * RationalFn(-kYInv) - D[ws] * RationalFn::fraction(1 + kY, kY);
      rep.record("(T_i^vee)^-1 MCv(Y(w s_i)o)", ti == want, at);
    }

  // supports and GKM
  for (Elt w = 0; w < n; ++w) {
    bool sx = true, sy = true, sd = true;
    for (Elt u = 0; u < n; ++u) {
      if (!fv->bruhat_leq(u, w)) sx = sx && X[w].at(u).is_zero();
      if (!fv->bruhat_leq(w, u)) sy = sy && Y[w].at(u).is_zero() && D[w].at(u).is_zero();
    }
    sd = X[w].is_polynomial() && Y[w].is_polynomial() && D[w].is_polynomial();
    rep.record("support of MC(X(w)o) in {u <= w}", sx, W.format(w));
    rep.record("support of MC(Y(w)o), MCv(Y(w)o) in {u >= w}", sy, W.format(w));
    rep.record("cell localizations are Laurent polynomials", sd, W.format(w));
    rep.record("GKM condition for MC(X(w)o)", !gkm_violation(X[w]), W.format(w));
    rep.record("GKM condition for MCv(Y(w)o)", !gkm_violation(D[w]), W.format(w));
  }

  // specializations
  const Substitution ym1 = Substitution::y_value(-1), y0 = Substitution::y_value(0);
  for (Elt w = 0; w < n; ++w) {
    rep.record("y=-1: MC(X(w)o) = iota_w", substitute(X[w], ym1) == fixed_point_class(fv, w), W.format(w));
    rep.record("y=0: MC(X(w)o) = I_w", substitute(X[w], y0) == ideal_sheaf_class(fv, w), W.format(w));
    rep.record("y=0: MC(Y(w)) = O^w", substitute(YV[w], y0) == opposite_schubert_class(fv, w), W.format(w));
  }
  const LocalizedClass lam = lambda_y_cotangent(fv);
  rep.record("MC(Y(id)) = lambda_y(T^*)", YV[0] == lam);
  rep.record("MC(X(w0)) = lambda_y(T^*)", XV[W.longest()] == lam);

  // variety-level duality
  for (Elt w = 0; w < n; ++w) {
    LocalizedClass S = serre_duality(YV[w]);
    bool ok = true;
    for (Elt u = 0; u < n && ok; ++u)
      ok = DV[w].at(u) * lam.at(u) == S.at(u) * RationalFn(top);
    rep.record("MCv(Y(w)) lambda_y(T^*) = prod(1+y e^-alpha) D(MC(Y(w)))", ok, W.format(w));
  }
  return rep;
}

// --- positivity -----------------------------------------------------------------------

bool RootCoordinates::nonnegative() const {
  for (const auto& [k, c] : table)
    if (c < 0) return false;
  return true;
}

nlohmann::ordered_json RootCoordinates::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["in_cone"] = in_cone;
  if (!in_cone) j["offending"] = offending;
  auto& rows = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [k, c] : table) rows.push_back({{"y", k.first}, {"x", k.second}, {"coeff", c.str()}});
  return j;
}

RootCoordinates to_root_coordinates(const RootSystem& rs, const LaurentPoly& f) {
  RootCoordinates out;
  for (const auto& t : f.terms()) {
    Weight wt{};
    for (int i = 0; i < rs.rank(); ++i) wt[i] = t.mono.weight_coord(i);
    auto c = rs.to_root_coordinates(wt);
    bool ok = c.has_value() && t.mono.z_exp() == 0;
    std::vector<int> x(rs.rank());
    for (int i = 0; ok && i < rs.rank(); ++i) {
      if ((*c)[i] > 0) ok = false;
      x[i] = -(*c)[i];
    }
    if (!ok) {
      out.in_cone = false;
      out.offending.push_back(monomial_to_string(t.mono, rs.rank()));
      continue;
    }
    out.table[{t.mono.y_exp(), x}] += t.coeff;
  }
  return out;
}

Report positivity_scan(const FlagPtr& fv, PositivityMode mode) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  const bool eq = mode == PositivityMode::Equivariant;
  Report rep("positivity", fv->label());
  rep.extra()["label"] = "CONJECTURE";
  rep.extra()["mode"] = eq ? "equivariant" : "non_equivariant";
  std::vector<SchubertExpansion> ex(n);
  parallel_range(0, n, [&](int w) { ex[w] = expand(mc_cell_X(fv, w), Basis::Schubert, true); });

  auto& rows = rep.extra()["coefficients"] = nlohmann::ordered_json::array();
  int positive = 0, negative = 0, vanishing = 0;
  for (Elt w = 0; w < n; ++w)
    for (Elt u = 0; u < n; ++u) {
      const std::string at = "w=" + W.format(w) + ", u=" + W.format(u);
      const LaurentPoly c = ex[w].polynomial(u);
      if (!fv->bruhat_leq(u, w)) {
        rep.record("expansion supported on {u <= w}", c.is_zero(), at);
        continue;
      }
      const LaurentPoly s = (W.length(w) - W.length(u)) % 2 ? -c : c;
      nlohmann::ordered_json row = {{"w", W.format(w)}, {"u", W.format(u)}};
      bool pos = true, nonzero = true;
      if (eq) {
        RootCoordinates rc = to_root_coordinates(fv->roots(), s);
        pos = rc.in_cone && rc.nonnegative();
        nonzero = !s.is_zero();
        row["signed_coefficient"] = rc.to_json();
      } else {
        LaurentPoly p = substitute(s, Substitution::non_equivariant()).polynomial_or_throw("non-equivariant coefficient");
        for (const auto& t : p.terms()) pos = pos && t.coeff > 0 && t.mono.y_exp() >= 0;
        nonzero = !p.is_zero();
        row["signed_coefficient"] = p.to_string();
      }
      row["nonnegative"] = pos;
      row["nonvanishing"] = nonzero;
      (pos ? positive : negative)++;
      if (!nonzero) ++vanishing;
      rows.push_back(std::move(row));
      rep.record("CONJECTURE: (-1)^{l(w)-l(u)} c(w;u) has nonnegative coefficients", pos, at);
      rep.record("CONJECTURE: c(w;u) != 0 for u <= w", nonzero, at);
    }
  rep.extra()["summary"] = {{"pairs", positive + negative}, {"nonnegative", positive}, {"violations", negative},
                            {"vanishing", vanishing}};
  return rep;
}

// --- divisibility ---------------------------------------------------------------------

Report divisibility_check(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  Report rep("divisibility", fv->label());
  std::vector<Elt> refl(fv->dim());
  for (int a = 0; a < fv->dim(); ++a) refl[a] = W.reflection(a);

  struct Row {
    Elt w, u;
    bool ok;
    std::string witness;
  };
  std::vector<std::vector<Row>> rows(n);
  const ClassFamily& Y = Y_cells(fv);
  parallel_range(0, n, [&](int w) {
    const LocalizedClass& cell = Y[w];
    for (Elt u = 0; u < n; ++u) {
      if (!fv->bruhat_leq(w, u)) continue;
      Row r{w, u, true, {}};
      const auto value = cell.at(u).as_polynomial();
      if (!value) {
        r.ok = false;
        r.witness = "localization does not cancel: " + cell.at(u).to_string();
      } else {
        LaurentPoly divisor(1);
        for (int a = 0; a < fv->dim(); ++a) {
          const LaurentPoly e = mono(fv->e_root(u, a));
          const int ua = W.apply_to_root(u, a);
          if (fv->roots().is_positive(ua)) divisor *= 1 + kY * e;
          const Elt us = W.mul(u, refl[a]);
          if (fv->bruhat_leq(us, u) && us != u && !fv->bruhat_leq(w, us)) divisor *= 1 - e;
        }
        if (!exact_divide(*value, divisor)) {
          r.ok = false;
          r.witness = value->to_string() + " is not divisible by " + divisor.to_string();
        }
      }
      rows[w].push_back(std::move(r));
    }
  });
  int pairs = 0;
  for (const auto& rs : rows)
    for (const auto& r : rs) {
      ++pairs;
      rep.record("MC(Y(w)o)|_u divisible by the expected product",
                 r.ok, "w=" + W.format(r.w) + ", u=" + W.format(r.u) + (r.ok ? "" : ": " + r.witness));
    }
  rep.extra()["comparable_pairs"] = pairs;
  return rep;
}

}  // namespace kflag
