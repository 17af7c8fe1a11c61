#include "kflag/stable.hpp"

#include "kflag/errors.hpp"
#include "kflag/motivic.hpp"
#include "kflag/parallel.hpp"

namespace kflag {

namespace {

LaurentPoly mono(const Monomial& m) { return LaurentPoly::monomial(m); }
const LaurentPoly kQ = LaurentPoly::z(2);
const LaurentPoly kQInv = LaurentPoly::z(-2);
const RationalFn kZInv = RationalFn(LaurentPoly::z(-1));

std::string row_tag(const WeylGroup& W, Chamber c, Elt w) {
  return std::string(c == Chamber::Plus ? "stab+(" : "stab-(") + W.format(w) + ")";
}

// stab_-(w)|_u from P = stab_-(w s_i), w s_i > w:
//   z^-1 [ (1-q)/(1-e^{-u a_i}) P(u) + (1 - q e^{-u a_i})/(1 - e^{u a_i}) P(u s_i) ]
RationalFn minus_step(const FlagPtr& fv, const LocalizedClass& P, int i, Elt u) {
  const Elt us = fv->W().mul_simple_right(u, i);
  if (P.at(u).is_zero() && P.at(us).is_zero()) return {};
  const Monomial ea = fv->e_root(u, fv->roots().simple_root(i));
  const LaurentPoly e = mono(ea), ei = mono(ea.inverse());
  RationalFn v = P.at(u) * RationalFn::fraction(1 - kQ, 1 - ei) + P.at(us) * RationalFn::fraction(1 - kQ * ei, 1 - e);
  return v * kZInv;
}

// stab_+(w)|_u from P = stab_+(w s_i), w s_i < w:
//   z^-1 [ (q-1)/(1-e^{u a_i}) P(u) - (e^{u a_i} - q)/(1 - e^{-u a_i}) P(u s_i) ]
RationalFn plus_step(const FlagPtr& fv, const LocalizedClass& P, int i, Elt u) {
  const Elt us = fv->W().mul_simple_right(u, i);
  if (P.at(u).is_zero() && P.at(us).is_zero()) return {};
  const Monomial ea = fv->e_root(u, fv->roots().simple_root(i));
  const LaurentPoly e = mono(ea), ei = mono(ea.inverse());
  RationalFn v = P.at(u) * RationalFn::fraction(kQ - 1, 1 - e) - P.at(us) * RationalFn::fraction(e - kQ, 1 - ei);
  return v * kZInv;
}

std::vector<LocalizedClass> recursion(const FlagPtr& fv, Chamber c) {
  const WeylGroup& W = fv->W();
  const bool plus = c == Chamber::Plus;
  const Elt base = plus ? 0 : W.longest();
  auto diagonal = [&](Elt w) { return plus ? stab_plus_diagonal(fv, w) : stab_minus_diagonal(fv, w); };
  std::vector<LocalizedClass> rows(W.size());
  rows[base] = LocalizedClass(fv, row_tag(W, c, base));
  rows[base].at(base) = diagonal(base);
  for_each_by_length(W, plus, [&](Elt w) {
    if (w == base) return;
    // plus steps up from w s_i < w, minus steps down from w s_i > w
    int i = -1;
    for (int j = W.rank() - 1; j >= 0 && i < 0; --j)
      if (W.right_descent(w, j) == plus) i = j;
    const LocalizedClass& prev = rows[W.mul_simple_right(w, i)];
    LocalizedClass row(fv, row_tag(W, c, w));
    for (Elt u = 0; u < W.size(); ++u) {
      RationalFn v = plus ? plus_step(fv, prev, i, u) : minus_step(fv, prev, i, u);
      if (!v.is_polynomial())
        throw InvariantViolation(row.tag() + "|_" + W.format(u) + " does not cancel to a polynomial: " + v.to_string());
      const bool in_support = plus ? fv->bruhat_leq(u, w) : fv->bruhat_leq(w, u);
      if (u == w) {
        RationalFn d = diagonal(w);
        if (!(v == d))
          throw InvariantViolation(row.tag() + ": recursion gives " + v.to_string() + " on the diagonal, closed form " +
                                   d.to_string());
      } else if (!in_support && !v.is_zero()) {
        throw InvariantViolation(row.tag() + " is nonzero at " + W.format(u) + ", outside its support");
      }
      row.at(u) = std::move(v);
    }
    rows[w] = std::move(row);
  });
  return rows;
}

// F -> w0.(F)^vee, scaled by z^k.
LocalizedClass reflect(const FlagPtr& fv, const LocalizedClass& F, int k) {
  return weyl_twist_class(fv->W().longest(), dual_values(F)) * RationalFn(LaurentPoly::z(k));
}

void compare_rows(const FlagPtr& fv, const std::vector<LocalizedClass>& a, const std::vector<LocalizedClass>& b,
                  const std::string& what) {
  const WeylGroup& W = fv->W();
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt u = 0; u < W.size(); ++u)
      if (!(a[w].at(u) == b[w].at(u)))
        throw InvariantViolation(what + " fails at w = " + W.format(w) + ", u = " + W.format(u) + ": " +
                                 a[w].at(u).to_string() + " vs " + b[w].at(u).to_string());
}

const std::vector<LocalizedClass>& minus_rows(const FlagPtr& fv) {
  return fv->family("stab_minus", [&] {
    auto rec = stab_minus_by_recursion(fv);
    compare_rows(fv, rec, stab_minus_from_plus(fv, stab_plus_by_recursion(fv)),
                 "stab_- recursion vs w0-duality image of stab_+");
    return rec;
  });
}

const std::vector<LocalizedClass>& plus_rows(const FlagPtr& fv) {
  return fv->family("stab_plus", [&] {
    auto rec = stab_plus_by_recursion(fv);
    compare_rows(fv, stab_plus_from_minus(fv, minus_rows(fv)), rec, "w0.(stab_-(u))^vee = q^{-dim/2} stab_+(w0 u)");
    return rec;
  });
}

RationalFn delta(Elt a, Elt b) { return a == b ? RationalFn(1) : RationalFn(); }

}  // namespace

RationalFn stab_minus_diagonal(const FlagPtr& fv, Elt w) {
  LaurentPoly p = LaurentPoly::z(fv->W().length(w));
  for (int a = 0; a < fv->dim(); ++a) {
    const int r = fv->W().apply_to_root(w, a);
    const LaurentPoly ei = mono(fv->e_root(r).inverse());
    p *= fv->roots().is_positive(r) ? 1 - kQ * ei : 1 - ei;
  }
  return p;
}

RationalFn stab_plus_diagonal(const FlagPtr& fv, Elt w) {
  LaurentPoly p = LaurentPoly::z(fv->W().length(w));
  for (int a = 0; a < fv->dim(); ++a) {
    const int r = fv->W().apply_to_root(w, a);
    const LaurentPoly e = mono(fv->e_root(r));
    p *= fv->roots().is_positive(r) ? 1 - e : 1 - kQInv * e;
  }
  return p;
}

std::vector<LocalizedClass> stab_minus_by_recursion(const FlagPtr& fv) { return recursion(fv, Chamber::Minus); }
std::vector<LocalizedClass> stab_plus_by_recursion(const FlagPtr& fv) { return recursion(fv, Chamber::Plus); }

std::vector<LocalizedClass> stab_plus_from_minus(const FlagPtr& fv, const std::vector<LocalizedClass>& minus) {
  const WeylGroup& W = fv->W();
  std::vector<LocalizedClass> rows(W.size());
  for (Elt u = 0; u < W.size(); ++u) {
    const Elt w = W.mul(W.longest(), u);
    rows[w] = reflect(fv, minus[u], fv->dim());
    rows[w].set_tag(row_tag(W, Chamber::Plus, w));
  }
  return rows;
}

std::vector<LocalizedClass> stab_minus_from_plus(const FlagPtr& fv, const std::vector<LocalizedClass>& plus) {
  const WeylGroup& W = fv->W();
  std::vector<LocalizedClass> rows(W.size());
  for (Elt u = 0; u < W.size(); ++u) {
    // (stab_-(u))^vee = z^-dim w0.stab_+(w0 u); the twist and the dual commute
    rows[u] = reflect(fv, plus[W.mul(W.longest(), u)], fv->dim());
    rows[u].set_tag(row_tag(W, Chamber::Minus, u));
  }
  return rows;
}

StabMatrix stab_minus_matrix(const FlagPtr& fv) { return {Chamber::Minus, minus_rows(fv)}; }
StabMatrix stab_plus_matrix(const FlagPtr& fv) { return {Chamber::Plus, plus_rows(fv)}; }

RationalFn cotangent_pairing(const LocalizedClass& F, const LocalizedClass& G) {
  const FlagPtr& fv = F.flag();
  RationalFn sum;
  for (Elt v = 0; v < fv->size(); ++v) {
    if (F.at(v).is_zero() || G.at(v).is_zero()) continue;
    RationalFn t = F.at(v) * G.at(v);
    for (int a = 0; a < fv->dim(); ++a) {
      const Monomial e = fv->e_root(v, a);
      t *= RationalFn::fraction(1, 1 - mono(e)) * RationalFn::fraction(1, 1 - kQ * mono(e.inverse()));
    }
    sum += t;
  }
  return sum;
}

LocalizedClass stab_prime_plus(const FlagPtr& fv, Elt w) {
  LocalizedClass c = serre_duality(plus_rows(fv)[w]);
  c.set_tag("stab'+(" + fv->W().format(w) + ")");
  return c;
}

LocalizedClass stab_prime_minus(const FlagPtr& fv, Elt w) {
  // omega|_u = e^{2 u rho} and the Euler sign of D, times q^{-dim}
  Weight two_rho{};
  for (int i = 0; i < fv->roots().rank(); ++i) two_rho[i] = 2;
  const int sign = fv->dim() % 2 ? -1 : 1;
  LocalizedClass c = minus_rows(fv)[w].map([&](Elt u, const RationalFn& v) {
    if (v.is_zero()) return RationalFn{};
    Monomial m = weight_monomial(fv->W().apply_to_weight(u, two_rho)) * Monomial::z(-2 * fv->dim());
    return v * RationalFn(LaurentPoly::monomial(m, sign));
  });
  c.set_tag("stab'-(" + fv->W().format(w) + ")");
  return c;
}

bool even_in_z(const RationalFn& f) {
  for (const auto& t : f.num().terms())
    if (t.mono.z_exp() % 2) return false;
  for (const auto& [d, mult] : f.den())
    if (d.m.z_exp() % 2) return false;
  return true;
}

Report stab_orthogonality(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  Report rep("stable", fv->label());
  std::vector<LocalizedClass> P, M;
  try {
    P = stab_plus_matrix(fv).rows;
    M = stab_minus_matrix(fv).rows;
  } catch (const InvariantViolation& e) {
    rep.record("stable envelope matrices", false, e.what());
    return rep;
  }
  // i^* G / lambda_{-q}(T(G/B)): divide by prod (1 - q e^{-v alpha})
  std::vector<LocalizedClass> M_over(W.size());
  parallel_range(0, W.size(), [&](int u) {
    M_over[u] = M[u].map([&](Elt v, const RationalFn& x) {
      RationalFn r = x;
      for (int a = 0; a < fv->dim(); ++a) r *= RationalFn::fraction(1, 1 - kQ * mono(fv->e_root(v, a).inverse()));
      return r;
    });
  });
  std::vector<std::vector<char>> direct(W.size(), std::vector<char>(W.size())), zero(direct);
  parallel_range(0, W.size(), [&](int w) {
    for (Elt u = 0; u < W.size(); ++u) {
      direct[w][u] = cotangent_pairing(P[w], M[u]) == delta(w, u);
      zero[w][u] = pairing(P[w], M_over[u]) == delta(w, u);
    }
  });
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt u = 0; u < W.size(); ++u) {
      const std::string at = "w=" + W.format(w) + ", u=" + W.format(u);
      rep.record("<stab_+(w), stab_-(u)>_{T^*} = delta_{w,u}", direct[w][u], at);
      rep.record("<i^*stab_+(w), i^*stab_-(u)/lambda_{-q}(T)> = delta_{w,u}", zero[w][u], at);
    }
  LaurentPoly target(1);
  for (int a = 0; a < fv->dim(); ++a) {
    const LaurentPoly e = mono(fv->e_root(a));
    target *= (1 - kQ * e) * (1 - kQ * mono(fv->e_root(a).inverse()));
  }
  const LocalizedClass cot = substitute(lambda_y_cotangent(fv), Substitution{false, std::make_pair(Rational(-1), 2), {}});
  for (Elt v = 0; v < W.size(); ++v) {
    LaurentPoly tan(1);
    for (int a = 0; a < fv->dim(); ++a) tan *= 1 - kQ * mono(fv->e_root(v, a).inverse());
    rep.record("lambda_{-q}(T^*) lambda_{-q}(T) = prod_{alpha>0}(1 - q e^alpha)(1 - q e^-alpha)",
               cot.at(v) * RationalFn(tan) == RationalFn(target), W.format(v));
  }
  return rep;
}

Report compare_with_mc(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  Report rep("stable", fv->label());
  const Substitution s = Substitution::y_minus_q_inverse();
  std::vector<LocalizedClass> SP(W.size()), SM(W.size()), XP(W.size()), YM(W.size());
  try {
    parallel_range(0, W.size(), [&](int w) {
      SP[w] = stab_prime_plus(fv, w) * RationalFn(LaurentPoly::z(-W.length(w)));
      SM[w] = stab_prime_minus(fv, w) * RationalFn(LaurentPoly::z(W.length(w)));
      XP[w] = substitute(mc_cell_X(fv, w), s);
      YM[w] = substitute(mc_cell_Y(fv, w), s);
    });
  } catch (const InvariantViolation& e) {
    rep.record("stable envelope and motivic families", false, e.what());
    return rep;
  }
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt u = 0; u < W.size(); ++u) {
      const std::string at = "w=" + W.format(w) + ", u=" + W.format(u);
      rep.record("q^{-l(w)/2} stab'_+(w)|_u = MC_{-q^-1}(X(w)o)|_u", SP[w].at(u) == XP[w].at(u),
                 at + ", side +: " + SP[w].at(u).to_string() + " vs " + XP[w].at(u).to_string());
      rep.record("q^{l(w)/2} stab'_-(w)|_u = MC_{-q^-1}(Y(w)o)|_u", SM[w].at(u) == YM[w].at(u),
                 at + ", side -: " + SM[w].at(u).to_string() + " vs " + YM[w].at(u).to_string());
      rep.record("normalized stable envelopes are even in z", even_in_z(SP[w].at(u)) && even_in_z(SM[w].at(u)),
                 at);
    }
  return rep;
}

Report verify_stable(const FlagPtr& fv) {
  Report rep("stable", fv->label());
  try {
    stab_minus_matrix(fv);
    rep.record("stab_- recursion = w0-duality image of the stab_+ recursion", true);
    stab_plus_matrix(fv);
    rep.record("w0.(stab_-(u))^vee = q^{-dim/2} stab_+(w0 u)", true);
  } catch (const InvariantViolation& e) {
    rep.record("stable envelope chambers agree", false, e.what());
    return rep;
  }
  rep.merge(stab_orthogonality(fv));
  rep.merge(compare_with_mc(fv));
  return rep;
}

}  // namespace kflag
