#include "kflag/casselman.hpp"

#include <sstream>

#include "kflag/errors.hpp"
#include "kflag/io.hpp"
#include "kflag/motivic.hpp"
#include "kflag/parallel.hpp"

namespace kflag {

// --- CohomPoly --------------------------------------------------------------------

CohomPoly::CohomPoly(int rank, long c) : rank_(rank) {
  if (c != 0) terms_[std::vector<int>(rank, 0)] = c;
}

CohomPoly CohomPoly::linear(const CohomWeight& w) {
  CohomPoly p(static_cast<int>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    std::vector<int> e(w.size(), 0);
    e[i] = 1;
    p.terms_[e] = w[i];
  }
  return p;
}

CohomPoly& CohomPoly::operator+=(const CohomPoly& o) {
  if (rank_ == 0) rank_ = o.rank_;
  for (const auto& [e, c] : o.terms_) {
    Integer& t = terms_[e];
    t += c;
    if (t == 0) terms_.erase(e);
  }
  return *this;
}

CohomPoly operator*(const CohomPoly& a, const CohomPoly& b) {
  CohomPoly r(std::max(a.rank_, b.rank_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int> e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      Integer& t = r.terms_[e];
      t += ca * cb;
      if (t == 0) r.terms_.erase(e);
    }
  return r;
}

std::string CohomPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool constant = true;
    for (int x : e) constant = constant && x == 0;
    if (a != 1 || constant) os << a;
    bool star = a != 1 && !constant;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (star ? "*" : "") << "a" << i + 1;
      if (e[i] > 1) os << "^" << e[i];
      star = true;
    }
    first = false;
  }
  return os.str();
}

// --- helpers ----------------------------------------------------------------------------

namespace {

const LaurentPoly kY = LaurentPoly::y();
LaurentPoly mono(const Monomial& m) { return LaurentPoly::monomial(m); }

// f(y) -> f(y^-1)
RationalFn bar(const RationalFn& f) {
  return f.map_exponents([](const Monomial& m) {
    Monomial r = m;
    r.exp[kYSlot] = -r.exp[kYSlot];
    return r;
  });
}

// e^lambda -> e^-lambda, y fixed
RationalFn e_inverse(const RationalFn& f) {
  return f.map_exponents([](const Monomial& m) {
    Monomial r = m;
    for (int i = 0; i < kMaxRank; ++i) r.exp[i] = -r.exp[i];
    return r;
  });
}

void require_leq(const FlagPtr& fv, Elt u, Elt w, const char* what) {
  if (!fv->bruhat_leq(u, w))
    throw UsageError(std::string(what) + " requires u <= w; got u = " + fv->W().format(u) + ", w = " + fv->W().format(w));
}

RationalFn cell_ratio(const FlagPtr& fv, const RationalFn& num, Elt w) {
  return RationalFn::divide(num, mc_cell_Y(fv, w).at(w), fv->hints());
}

// Cached tables: row u holds the coefficients for every w at position w.
const ClassFamily& m_table(const FlagPtr& fv) {
  return fv->family("casselman_m", [&] {
    const int n = fv->size();
    mc_family(fv, "MC_Y_variety");
    mc_family(fv, "MC_dual_Y_variety");
    ClassFamily t(n);
    parallel_range(0, n, [&](int u) {
      LocalizedClass row(fv, "m(" + fv->W().format(u) + ", -)");
      for (Elt w = 0; w < n; ++w) {
        if (!fv->bruhat_leq(u, w)) continue;
        RationalFn a = m_by_ratio(fv, u, w), b = m_by_expansion(fv, u, w);
        if (!(a == b))
          throw InvariantViolation("m_{" + fv->W().format(u) + "," + fv->W().format(w) +
                                   "}: localization ratio " + a.to_string() + " differs from b-expansion " + b.to_string());
        row.at(w) = std::move(a);
      }
      t[u] = std::move(row);
    });
    return t;
  });
}

const ClassFamily& r_table(const FlagPtr& fv) {
  return fv->family("casselman_r", [&] {
    const int n = fv->size();
    m_table(fv);
    mc_family(fv, "MC_dual_Y_cell");
    ClassFamily t(n);
    parallel_range(0, n, [&](int u) {
      LocalizedClass row(fv, "r(" + fv->W().format(u) + ", -)");
      for (Elt w = 0; w < n; ++w) {
        if (!fv->bruhat_leq(u, w)) continue;
        RationalFn a = r_by_ratio(fv, u, w), b = r_by_mobius(fv, u, w), c = r_by_expansion(fv, u, w);
        const std::string at = "r_{" + fv->W().format(u) + "," + fv->W().format(w) + "}";
        if (!(a == b)) throw InvariantViolation(at + ": ratio route differs from the Mobius sum");
        if (!(a == c)) throw InvariantViolation(at + ": ratio route differs from the b-expansion of the dual cell");
        row.at(w) = std::move(a);
      }
      t[u] = std::move(row);
    });
    return t;
  });
}

}  // namespace

// --- b_w, m, r -----------------------------------------------------------------------

LocalizedClass b_class(const FlagPtr& fv, Elt w) {
  LocalizedClass b = casselman_basis_class(fv, w);
  if (!(b.at(w) == mc_dual_cell(fv, w).at(w)))
    throw InvariantViolation("b_" + fv->W().format(w) + " does not match MCv(Y(w)o) at w");
  return b;
}

RationalFn m_by_ratio(const FlagPtr& fv, Elt u, Elt w) {
  return dual_involution(cell_ratio(fv, mc_variety(fv, Side::Y, u).at(w), w));
}

RationalFn m_by_expansion(const FlagPtr& fv, Elt u, Elt w) {
  // localizing MCv(Y(u)) = sum m_{u,x} b_x at w isolates m_{u,w}
  return RationalFn::divide(mc_dual_variety(fv, u).at(w), casselman_basis_class(fv, w).at(w), fv->hints());
}

RationalFn r_by_ratio(const FlagPtr& fv, Elt u, Elt w) {
  // (bar r)^vee = ratio, so r = bar((ratio)^vee), i.e. e^lambda -> e^-lambda
  return e_inverse(cell_ratio(fv, mc_cell_Y(fv, u).at(w), w));
}

RationalFn r_by_mobius(const FlagPtr& fv, Elt u, Elt w) {
  const ClassFamily& m = m_table(fv);
  RationalFn sum;
  for (Elt x = 0; x < fv->size(); ++x) {
    if (!fv->bruhat_leq(u, x) || !fv->bruhat_leq(x, w)) continue;
    RationalFn t = bar(m[x].at(w));
    if ((fv->W().length(x) - fv->W().length(u)) % 2) t = -t;
    sum += t;
  }
  return sum;
}

RationalFn r_by_expansion(const FlagPtr& fv, Elt u, Elt w) {
  return bar(RationalFn::divide(mc_dual_cell(fv, u).at(w), casselman_basis_class(fv, w).at(w), fv->hints()));
}

RationalFn m_coeff(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "m_coeff");
  return m_table(fv)[u].at(w);
}

RationalFn r_coeff(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "r_coeff");
  return r_table(fv)[u].at(w);
}

// --- S sets and smoothness --------------------------------------------------------------

std::vector<int> s_set(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "s_set");
  const WeylGroup& W = fv->W();
  std::vector<int> out;
  for (int b = 0; b < fv->dim(); ++b) {
    const Elt x = W.mul(W.reflection(b), w);
    if (W.length(x) < W.length(w) && fv->bruhat_leq(u, x)) out.push_back(b);
  }
  return out;
}

std::vector<int> s_prime_set(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "s_prime_set");
  const WeylGroup& W = fv->W();
  std::vector<int> out;
  for (int a = 0; a < fv->dim(); ++a) {
    const Elt x = W.mul(w, W.reflection(a));
    if (W.length(x) < W.length(w) && fv->bruhat_leq(u, x)) out.push_back(a);
  }
  return out;
}

bool factorization_holds(const FlagPtr& fv, Elt u, Elt w) {
  RationalFn p(1);
  for (int b : s_set(fv, u, w)) {
    const LaurentPoly e = mono(fv->e_root(b));
    p *= RationalFn::fraction(1 + LaurentPoly::y(-1) * e, 1 - e);
  }
  return m_coeff(fv, u, w) == p;
}

bool smooth_via_mc(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "smooth_via_mc");
  const WeylGroup& W = fv->W();
  LaurentPoly p(1);
  for (int a = 0; a < fv->dim(); ++a) {
    const Elt x = W.mul(w, W.reflection(a));
    const LaurentPoly e = mono(fv->e_root(w, a));
    if (fv->bruhat_leq(u, x))
      p *= 1 + kY * e;
    else
      p *= 1 - e;
  }
  return mc_variety(fv, Side::Y, u).at(w) == RationalFn(p);
}

CohomPoly billey_localization(const FlagPtr& fv, Elt u, Elt w, const std::vector<int>& word) {
  const WeylGroup& W = fv->W();
  const RootSystem& R = fv->roots();
  const int r = R.rank();
  if (W.from_word(word) != w || !W.is_reduced(word)) throw UsageError("billey_localization needs a reduced word for w");
  // root_j = s_{a_1} ... s_{a_{j-1}} (alpha_{a_j})
  std::vector<CohomWeight> roots;
  Elt prefix = 0;
  for (int a : word) {
    const int idx = W.apply_to_root(prefix, R.simple_root(a));
    const auto& c = R.root_simple_coords(idx);
    roots.emplace_back(c.begin(), c.begin() + r);
    prefix = W.mul_simple_right(prefix, a);
  }
  // sum over reduced subwords with product u
  CohomPoly total(r);
  const int len = static_cast<int>(word.size());
  std::function<void(int, Elt, const CohomPoly&)> walk = [&](int j, Elt cur, const CohomPoly& acc) {
    if (W.length(u) - W.length(cur) > len - j) return;
    if (j == len) {
      if (cur == u) total += acc;
      return;
    }
    walk(j + 1, cur, acc);
    const Elt next = W.mul_simple_right(cur, word[j]);
    if (W.length(next) > W.length(cur) && fv->bruhat_leq(next, u)) walk(j + 1, next, acc * CohomPoly::linear(roots[j]));
  };
  walk(0, 0, CohomPoly(r, 1));
  return total;
}

CohomPoly billey_localization(const FlagPtr& fv, Elt u, Elt w) {
  const auto& wd = fv->W().word(w);
  return billey_localization(fv, u, w, std::vector<int>(wd.begin(), wd.end()));
}

bool smooth_via_kumar(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "smooth_via_kumar");
  const WeylGroup& W = fv->W();
  const int r = fv->roots().rank();
  CohomPoly rhs(r, 1);
  for (int b = 0; b < fv->dim(); ++b)
    if (!fv->bruhat_leq(u, W.mul(W.reflection(b), w))) {
      const auto& c = fv->roots().root_simple_coords(b);
      rhs = rhs * CohomPoly::linear(CohomWeight(c.begin(), c.begin() + r));
    }
  return billey_localization(fv, u, w) == rhs;
}

std::vector<CohomWeight> tangent_weights(const FlagPtr& fv, Elt u, Elt w) {
  const WeylGroup& W = fv->W();
  const int r = fv->roots().rank();
  std::vector<CohomWeight> out;
  for (int a = 0; a < fv->dim(); ++a)
    if (fv->bruhat_leq(u, W.mul(w, W.reflection(a)))) {
      const auto& c = fv->roots().root_simple_coords(W.apply_to_root(w, a));
      CohomWeight x(c.begin(), c.begin() + r);
      for (auto& v : x) v = -v;
      out.push_back(std::move(x));
    }
  return out;
}

bool kl_is_one(const FlagPtr& fv, Elt u, Elt w) {
  require_leq(fv, u, w, "kl_is_one");
  const WeylGroup& W = fv->W();
  for (Elt x = 0; x < W.size(); ++x) {
    if (!fv->bruhat_leq(u, x) || !fv->bruhat_leq(x, w)) continue;
    int count = 0;
    for (int b = 0; b < fv->dim(); ++b) {
      const Elt rx = W.mul(W.reflection(b), x);
      if (W.length(rx) > W.length(x) && fv->bruhat_leq(rx, w)) ++count;
    }
    if (count != W.length(w) - W.length(x)) return false;
  }
  return true;
}

// --- reports ---------------------------------------------------------------------------

Report verify_casselman(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  const Elt w0 = W.longest();
  Report rep("casselman", fv->label());
  try {
    m_table(fv);
    rep.record("m: localization ratio = b-expansion (all u <= w)", true);
    r_table(fv);
    rep.record("r: ratio = Mobius sum = b-expansion of the dual cell (all u <= w)", true);
  } catch (const InvariantViolation& e) {
    rep.record("transition coefficient routes agree", false, e.what());
    return rep;
  }

  for (Elt w = 0; w < n; ++w) {
    const std::string at = W.format(w);
    bool diag = true;
    try {
      b_class(fv, w);
    } catch (const InvariantViolation&) {
      diag = false;
    }
    rep.record("b_w|_w = MCv(Y(w)o)|_w", diag, at);
    rep.record("m_{w,w} = 1", m_coeff(fv, w, w) == RationalFn(1), at);
    rep.record("r_{w,w} = 1", r_coeff(fv, w, w) == RationalFn(1), at);
    // Gindikin-Karpelevich
    RationalFn gk(1);
    for (int a = 0; a < fv->dim(); ++a)
      if (!fv->roots().is_positive(W.apply_to_root(W.inverse(w), a))) {
        const LaurentPoly e = mono(fv->e_root(a));
        gk *= RationalFn::fraction(1 + LaurentPoly::y(-1) * e, 1 - e);
      }
    rep.record("Gindikin-Karpelevich: m_{id,w} = prod_{alpha>0, w^-1 alpha<0} (1 + y^-1 e^alpha)/(1 - e^alpha)",
               m_coeff(fv, 0, w) == gk, at);
  }
  for (Elt u = 0; u < n; ++u) {
    // triangularity of the b-expansion of MCv(Y(u))
    SchubertExpansion ex = expand(mc_dual_variety(fv, u), Basis::Casselman);
    bool tri = true;
    for (Elt w = 0; w < n; ++w) tri = tri && (fv->bruhat_leq(u, w) || ex.coeff[w].is_zero());
    rep.record("b-expansion of MCv(Y(u)) supported on {w >= u}", tri, W.format(u));
    for (Elt w = 0; w < n; ++w) {
      if (!fv->bruhat_leq(u, w)) continue;
      const std::string at = "u=" + W.format(u) + ", w=" + W.format(w);
      rep.record("b-expansion coefficient equals m_{u,w}", ex.coeff[w] == m_coeff(fv, u, w), at);
      std::vector<int> S = s_set(fv, u, w), image;
      for (int a : s_prime_set(fv, u, w)) image.push_back(fv->roots().negate(W.apply_to_root(w, a)));
      std::sort(image.begin(), image.end());
      rep.record("S(u,w) = -w(S'(u,w))", S == image, at);
      const Elt su = W.mul(W.mul(w0, W.inverse(u)), w0), sw = W.mul(W.mul(w0, W.inverse(w)), w0);
      rep.record("kl_is_one(u,w) = kl_is_one(w0 u^-1 w0, w0 w^-1 w0)", kl_is_one(fv, u, w) == kl_is_one(fv, su, sw), at);
      auto tw = tangent_weights(fv, u, w);
      if (smooth_via_kumar(fv, u, w))
        rep.record("smooth: #tangent weights = dim - l(u)", static_cast<int>(tw.size()) == fv->dim() - W.length(u), at);
    }
  }
  return rep;
}

Report bnn_scan(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  Report rep("bnn", fv->label());
  m_table(fv);
  struct Row {
    Elt u, w;
    bool f, mc, k, kl;
  };
  std::vector<std::vector<Row>> rows(n);
  const bool simply_laced = std::string("ADE").find(fv->roots().type()) != std::string::npos;
  const Elt w0 = W.longest();
  parallel_range(0, n, [&](int u) {
    for (Elt w = 0; w < n; ++w) {
      if (!fv->bruhat_leq(u, w)) continue;
      rows[u].push_back({u, w, factorization_holds(fv, u, w), smooth_via_mc(fv, u, w), smooth_via_kumar(fv, u, w),
                         kl_is_one(fv, W.mul(w0, W.inverse(w)), W.mul(w0, W.inverse(u)))});
    }
  });
  auto& table = rep.extra()["table"] = nlohmann::ordered_json::array();
  int pairs = 0, singular = 0;
  for (const auto& rs : rows)
    for (const Row& r : rs) {
      ++pairs;
      if (!r.k) ++singular;
      const std::string at = "u=" + W.format(r.u) + ", w=" + W.format(r.w);
      rep.record("factorization == smooth_via_mc", r.f == r.mc, at);
      rep.record("smooth_via_mc == smooth_via_kumar", r.mc == r.k, at);
      if (simply_laced) rep.record("simply laced: factorization == (P_{w0 w^-1, w0 u^-1} = 1)", r.f == r.kl, at);
      table.push_back({{"u", W.format(r.u)},
                       {"w", W.format(r.w)},
                       {"factorization", r.f},
                       {"smooth_mc", r.mc},
                       {"smooth_kumar", r.k},
                       {"kl_one", r.kl}});
    }
  rep.extra()["comparable_pairs"] = pairs;
  rep.extra()["singular_pairs"] = singular;
  return rep;
}

Report holomorphy_check(const FlagPtr& fv) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  Report rep("holomorphy", fv->label());
  r_table(fv);
  for (Elt u = 0; u < n; ++u)
    for (Elt w = 0; w < n; ++w) {
      if (!fv->bruhat_leq(u, w)) continue;
      LaurentPoly p(1);
      for (int b : s_set(fv, u, w)) p *= 1 - mono(fv->e_root(b));
      const RationalFn pm = RationalFn(p) * m_coeff(fv, u, w), pr = RationalFn(p) * r_coeff(fv, u, w);
      const std::string at = "u=" + W.format(u) + ", w=" + W.format(w);
      rep.record("prod_{S(u,w)}(1 - e^alpha) m_{u,w} has no e-denominator", pm.e_denominator_free(),
                 at + ": " + pm.to_string());
      rep.record("prod_{S(u,w)}(1 - e^alpha) r_{u,w} has no e-denominator", pr.e_denominator_free(),
                 at + ": " + pr.to_string());
    }
  return rep;
}

nlohmann::ordered_json casselman_table(const FlagPtr& fv, const std::optional<Substitution>& subst) {
  const WeylGroup& W = fv->W();
  const int n = W.size();
  const Elt w0 = W.longest();
  m_table(fv);
  r_table(fv);
  std::vector<std::vector<nlohmann::ordered_json>> rows(n);
  parallel_range(0, n, [&](int u) {
    for (Elt w = 0; w < n; ++w) {
      if (!fv->bruhat_leq(u, w)) continue;
      nlohmann::ordered_json S = nlohmann::ordered_json::array();
      for (int b : s_set(fv, u, w)) {
        const auto& c = fv->roots().root_simple_coords(b);
        S.push_back(std::vector<int>(c.begin(), c.begin() + fv->roots().rank()));
      }
      nlohmann::ordered_json row = {{"u", W.format(u)},
                                    {"w", W.format(w)},
                                    {"m", pretty(fv->roots(), m_coeff(fv, u, w))},
                                    {"r", pretty(fv->roots(), r_coeff(fv, u, w))},
                                    {"S", S},
                                    {"factorization", factorization_holds(fv, u, w)},
                                    {"smooth_mc", smooth_via_mc(fv, u, w)},
                                    {"smooth_kumar", smooth_via_kumar(fv, u, w)},
                                    {"kl_one", kl_is_one(fv, W.mul(w0, W.inverse(w)), W.mul(w0, W.inverse(u)))}};
      if (subst) {
        try {
          row["m_subst"] = pretty(fv->roots(), substitute(m_coeff(fv, u, w), *subst));
          row["r_subst"] = pretty(fv->roots(), substitute(r_coeff(fv, u, w), *subst));
        } catch (const PoleError& e) {
          throw PoleError("substitution has a pole at (u, w) = (" + W.format(u) + ", " + W.format(w) + "): " + e.what());
        }
      }
      rows[u].push_back(std::move(row));
    }
  });
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto& rs : rows)
    for (auto& r : rs) out.push_back(std::move(r));
  return out;
}

std::string casselman_table_tsv(const nlohmann::ordered_json& table) {
  std::ostringstream os;
  os << "u\tw\tm\tr\tS\tfactorization\tsmooth_mc\tsmooth_kumar\tkl_one";
  const bool subst = !table.empty() && table[0].contains("m_subst");
  if (subst) os << "\tm_subst\tr_subst";
  os << "\n";
  for (const auto& row : table) {
    os << row["u"].get<std::string>() << '\t' << row["w"].get<std::string>() << '\t' << row["m"].get<std::string>()
       << '\t' << row["r"].get<std::string>() << '\t' << row["S"].dump() << '\t' << row["factorization"] << '\t'
       << row["smooth_mc"] << '\t' << row["smooth_kumar"] << '\t' << row["kl_one"];
    if (subst) os << '\t' << row["m_subst"].get<std::string>() << '\t' << row["r_subst"].get<std::string>();
    os << "\n";
  }
  return os.str();
}

}  // namespace kflag
