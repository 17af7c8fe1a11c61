#include "kflag/heckeops.hpp"

#include "kflag/errors.hpp"

namespace kflag {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::Demazure: return "d";
    case Gen::T: return "T";
    case Gen::TDual: return "Tv";
    case Gen::TInverse: return "T^-1";
    case Gen::TDualInverse: return "Tv^-1";
  }
  return "?";
}

namespace {

void check_index(const LocalizedClass& F, int i) {
  if (i < 0 || i >= F.W().rank()) throw UsageError("simple root index out of range");
}

// 1 + y e^{u alpha_i}
LaurentPoly one_plus_y(const FlagVariety& fv, Elt u, int i) {
  return LaurentPoly(1) + LaurentPoly::monomial(Monomial::y() * fv.e_root(u, fv.roots().simple_root(i)));
}

}  // namespace

LocalizedClass demazure(int i, const LocalizedClass& F) {
  check_index(F, i);
  const FlagVariety& fv = *F.flag();
  const WeylGroup& W = fv.W();
  LocalizedClass r(F.flag(), "d" + std::to_string(i + 1) + "(" + F.tag() + ")");
  for (Elt u = 0; u < W.size(); ++u) {
    const Elt us = W.mul_simple_right(u, i);
    const RationalFn& a = F.at(u);
    const RationalFn& b = F.at(us);
    if (a.is_zero() && b.is_zero()) continue;
    const Monomial e = fv.e_root(u, fv.roots().simple_root(i));
    RationalFn num = a - b * RationalFn(LaurentPoly::monomial(e));
    if (num.is_zero()) continue;
    r.at(u) = num * fv.inverse_one_minus(u, i);
  }
  return r;
}

LocalizedClass op_T(int i, const LocalizedClass& F) {
  const FlagVariety& fv = *F.flag();
  LocalizedClass d = demazure(i, F);
  LocalizedClass r = d.map([&](Elt u, const RationalFn& v) {
    RationalFn out = v.is_zero() ? RationalFn{} : v * RationalFn(one_plus_y(fv, u, i));
    return out - F.at(u);
  });
  r.set_tag("T" + std::to_string(i + 1) + "(" + F.tag() + ")");
  return r;
}

LocalizedClass op_T_dual(int i, const LocalizedClass& F) {
  const FlagVariety& fv = *F.flag();
  LocalizedClass g = F.map([&](Elt u, const RationalFn& v) {
    return v.is_zero() ? RationalFn{} : v * RationalFn(one_plus_y(fv, u, i));
  });
  LocalizedClass r = demazure(i, g) - F;
  r.set_tag("Tv" + std::to_string(i + 1) + "(" + F.tag() + ")");
  return r;
}

namespace {

// -y^{-1} G(F) - (1 + y) y^{-1} F
LocalizedClass invert_quadratic(const LocalizedClass& GF, const LocalizedClass& F) {
  const RationalFn a(-LaurentPoly::y(-1));
  const RationalFn b(-(LaurentPoly::y(-1) + LaurentPoly(1)));
  return GF * a + F * b;
}

}  // namespace

LocalizedClass op_T_inverse(int i, const LocalizedClass& F) {
  LocalizedClass r = invert_quadratic(op_T(i, F), F);
  r.set_tag("T" + std::to_string(i + 1) + "^-1(" + F.tag() + ")");
  return r;
}

LocalizedClass op_T_dual_inverse(int i, const LocalizedClass& F) {
  LocalizedClass r = invert_quadratic(op_T_dual(i, F), F);
  r.set_tag("Tv" + std::to_string(i + 1) + "^-1(" + F.tag() + ")");
  return r;
}

LocalizedClass apply_generator(Gen g, int i, const LocalizedClass& F) {
  switch (g) {
    case Gen::Demazure: return demazure(i, F);
    case Gen::T: return op_T(i, F);
    case Gen::TDual: return op_T_dual(i, F);
    case Gen::TInverse: return op_T_inverse(i, F);
    case Gen::TDualInverse: return op_T_dual_inverse(i, F);
  }
  throw UsageError("unknown generator");
}

LocalizedClass composite(const std::vector<int>& word, Gen g, const LocalizedClass& F) {
  if (!F.W().is_reduced(word)) throw UsageError("composite: word is not reduced");
  LocalizedClass r = F;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply_generator(g, *it, r);
  return r;
}

LocalizedClass composite(Elt w, Gen g, const LocalizedClass& F) {
  const auto& wd = F.W().word(w);
  return composite(std::vector<int>(wd.begin(), wd.end()), g, F);
}

// --- OperatorExpr -------------------------------------------------------------------

OperatorExpr OperatorExpr::identity() { return OperatorExpr{{Term{RationalFn(1), {}}}}; }

OperatorExpr OperatorExpr::generator(Gen g, int i) { return OperatorExpr{{Term{RationalFn(1), {Letter{g, i}}}}}; }

OperatorExpr OperatorExpr::word(Gen g, const std::vector<int>& letters) {
  Term t{RationalFn(1), {}};
  for (int i : letters) t.word.push_back(Letter{g, i});
  return OperatorExpr{{t}};
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
  OperatorExpr r = *this;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const { return *this + o.scaled(RationalFn(-1)); }

OperatorExpr OperatorExpr::operator*(const OperatorExpr& o) const {
  OperatorExpr r;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      Term t{a.scalar * b.scalar, a.word};
      t.word.insert(t.word.end(), b.word.begin(), b.word.end());
      r.terms.push_back(std::move(t));
    }
  return r;
}

OperatorExpr OperatorExpr::scaled(const RationalFn& c) const {
  OperatorExpr r = *this;
  for (auto& t : r.terms) t.scalar *= c;
  return r;
}

LocalizedClass OperatorExpr::apply(const LocalizedClass& F) const {
  LocalizedClass out(F.flag());
  for (const auto& t : terms) {
    LocalizedClass c = F;
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) c = apply_generator(it->gen, it->i, c);
    out += c * t.scalar;
  }
  return out;
}

// --- relation verifier ----------------------------------------------------------------

namespace {

int braid_order(const RootSystem& R, int i, int j) {
  switch (R.cartan(i, j) * R.cartan(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
  }
  return 0;
}

std::vector<int> alternating(int i, int j, int m) {
  std::vector<int> w;
  for (int k = 0; k < m; ++k) w.push_back(k % 2 ? j : i);
  return w;
}

std::string at(const WeylGroup& W, const char* what, Elt w, int i) {
  return std::string(what) + " on iota(" + W.format(w) + "), i=" + std::to_string(i + 1);
}

void check_leading_coefficients(const FlagPtr& fv, Report& rep) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  for (Gen variant : {Gen::T, Gen::TDual}) {
    const Gen inv = variant == Gen::T ? Gen::TInverse : Gen::TDualInverse;
    const std::string name = variant == Gen::T ? "leading coefficient of T_u T_v^-1" : "leading coefficient of Tv_u (Tv_v)^-1";
    // B_x = T_{x^{-1}}(O_id): triangular with respect to the Bruhat order.
    std::vector<LocalizedClass> B(n);
    B[0] = fixed_point_class(fv, 0);
    for (Elt x = 1; x < n; ++x) {
      int last = W.word(x).back();
      B[x] = apply_generator(variant, last, B[W.mul_simple_right(x, last)]);
    }
    for (Elt u = 0; u < n; ++u)
      for (Elt v = 0; v < n; ++v) {
        const Elt uvi = W.mul(u, W.inverse(v));
        if (W.length(uvi) != W.length(u) + W.length(v)) continue;
        // T_v^{-1} = T_{i_k}^{-1} ... T_{i_1}^{-1} for v = s_{i_1} ... s_{i_k}
        LocalizedClass c = B[0];
        for (int letter : W.word(v)) c = apply_generator(inv, letter, c);
        const auto& uw = W.word(u);
        for (auto it = uw.rbegin(); it != uw.rend(); ++it) c = apply_generator(variant, *it, c);
        // triangular solve against B
        std::vector<RationalFn> coeff(n);
        bool ok = true;
        std::string witness;
        for (Elt x = n - 1; x >= 0 && ok; --x) {
          RationalFn rhs = c.at(x);
          for (Elt z = x + 1; z < n; ++z)
            if (!coeff[z].is_zero() && !B[z].at(x).is_zero()) rhs -= coeff[z] * B[z].at(x);
          if (rhs.is_zero()) continue;
          coeff[x] = RationalFn::divide(rhs, B[x].at(x), fv->hints());
          bool y_only = !coeff[x].num().is_zero();
          for (const auto& t : coeff[x].num().terms()) y_only = y_only && !t.mono.has_weight();
          for (const auto& [f, m] : coeff[x].den()) y_only = y_only && !f.m.has_weight();
          if (!y_only) {
            ok = false;
            witness = "coefficient at " + W.format(x) + " depends on e: " + coeff[x].to_string();
          }
        }
        const Elt target = W.inverse(uvi);  // B_x = T_{x^{-1}} O_id
        const RationalFn expected(LaurentPoly::monomial(Monomial::y(-W.length(v)), W.length(v) % 2 ? -1 : 1));
        if (ok && !(coeff[target] == expected)) {
          ok = false;
          witness = "leading coefficient " + coeff[target].to_string() + ", expected " + expected.to_string();
        }
        // nothing above the leading term
        for (Elt x = 0; x < n && ok; ++x)
          if (!coeff[x].is_zero() && x != target && !W.bruhat_leq(x, target)) {
            ok = false;
            witness = "term above the leading one at " + W.format(x);
          }
        rep.record(name, ok, ok ? "" : "u=" + W.format(u) + ", v=" + W.format(v) + ": " + witness);
      }
  }
}

}  // namespace

Report verify_relations(const FlagPtr& fv, int max_rank) {
  const WeylGroup& W = fv->W();
  const RootSystem& R = fv->roots();
  if (R.rank() > max_rank)
    throw ResourceError("relations suite: rank " + std::to_string(R.rank()) + " exceeds the verification cap " +
                        std::to_string(max_rank));
  const int n = W.size(), r = R.rank();
  Report rep("relations", fv->label());
  std::vector<LocalizedClass> iota;
  for (Elt w = 0; w < n; ++w) iota.push_back(fixed_point_class(fv, w));
  const RationalFn y(LaurentPoly::y());

  for (Elt w = 0; w < n; ++w) {
    const LocalizedClass& b = iota[w];
    for (int i = 0; i < r; ++i) {
      for (Gen g : {Gen::T, Gen::TDual}) {
        const char* name = g == Gen::T ? "quadratic (T_i+1)(T_i+y)=0" : "quadratic (Tv_i+1)(Tv_i+y)=0";
        LocalizedClass a = apply_generator(g, i, b) + b * y;
        LocalizedClass c = apply_generator(g, i, a) + a;
        rep.record(name, c.is_zero(), at(W, name, w, i));
        const char* iname = g == Gen::T ? "inverse T_i^-1 T_i = id" : "inverse Tv_i^-1 Tv_i = id";
        Gen ig = g == Gen::T ? Gen::TInverse : Gen::TDualInverse;
        rep.record(iname, apply_generator(ig, i, apply_generator(g, i, b)) == b, at(W, iname, w, i));
      }
      LocalizedClass d = demazure(i, b);
      rep.record("idempotence d_i^2 = d_i", demazure(i, d) == d, at(W, "d_i^2", w, i));
      // specializations at y = 0 and y = -1
      const Substitution y0 = Substitution::y_value(0), ym1 = Substitution::y_value(-1);
      LocalizedClass dm = d - b;
      rep.record("T_i at y=0 is d_i - id", substitute(op_T(i, b), y0) == dm, at(W, "T_i|y=0", w, i));
      rep.record("Tv_i at y=0 is d_i - id", substitute(op_T_dual(i, b), y0) == dm, at(W, "Tv_i|y=0", w, i));
      const Elt ws = W.mul_simple_right(w, i);
      rep.record("T_i at y=-1 sends iota_w to iota_{ws_i}", substitute(op_T(i, b), ym1) == iota[ws],
                 at(W, "T_i|y=-1", w, i));
      const Monomial e = fv->e_root(w, R.simple_root(i));
      rep.record("Tv_i at y=-1 sends iota_w to -e^{w alpha_i} iota_{ws_i}",
                 substitute(op_T_dual(i, b), ym1) == iota[ws] * RationalFn(LaurentPoly::monomial(e, -1)),
                 at(W, "Tv_i|y=-1", w, i));
    }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        const int m = braid_order(R, i, j);
        const auto lhs = alternating(i, j, m), rhs = alternating(j, i, m);
        for (Gen g : {Gen::Demazure, Gen::T, Gen::TDual}) {
          const std::string name = std::string("braid relation for ") + gen_name(g);
          LocalizedClass x = b, z = b;
          for (auto it = lhs.rbegin(); it != lhs.rend(); ++it) x = apply_generator(g, *it, x);
          for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) z = apply_generator(g, *it, z);
          rep.record(name, x == z,
                     "iota(" + W.format(w) + "), i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) +
                         ", m=" + std::to_string(m));
        }
      }
  }

  // <T_i a, b> = <a, Tv_i b> on the fixed-point basis
  for (int i = 0; i < r; ++i) {
    std::vector<LocalizedClass> Ta, Tvb;
    for (Elt w = 0; w < n; ++w) {
      Ta.push_back(op_T(i, iota[w]));
      Tvb.push_back(op_T_dual(i, iota[w]));
    }
    for (Elt a = 0; a < n; ++a)
      for (Elt b = 0; b < n; ++b) {
        bool ok = pairing(Ta[a], iota[b]) == pairing(iota[a], Tvb[b]);
        rep.record("adjointness <T_i a, b> = <a, Tv_i b>", ok,
                   "a=iota(" + W.format(a) + "), b=iota(" + W.format(b) + "), i=" + std::to_string(i + 1));
      }
  }

  check_leading_coefficients(fv, rep);
  return rep;
}

}  // namespace kflag
