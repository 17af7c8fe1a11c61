#include "kflag/kclass.hpp"

#include <sstream>

#include "kflag/errors.hpp"
#include "kflag/heckeops.hpp"
#include "kflag/parallel.hpp"

namespace kflag {

// --- FlagVariety ----------------------------------------------------------------

FlagVariety::FlagVariety(std::shared_ptr<const RootSystem> rs, std::size_t cap) : W_(std::move(rs), cap) {
  const RootSystem& R = W_.roots();
  for (int r = 0; r < R.num_roots(); ++r) root_mono_.push_back(weight_monomial(R.root_weight(r)));
  for (int b = 0; b < R.num_positive(); ++b) {
    root_factors_.push_back({DenomFactor{1, -1, root_mono_[b]}, 1});
    hints_.push_back(DenomFactor{1, -1, root_mono_[b]});
  }
  for (int r = 0; r < R.num_roots(); ++r) hints_.push_back(DenomFactor{1, 1, Monomial::y() * root_mono_[r]});
  for (int r = 0; r < R.num_roots(); ++r) hints_.push_back(DenomFactor{1, -1, Monomial::q() * root_mono_[r]});
  hints_.push_back(DenomFactor{1, 1, Monomial::y()});
  hints_.push_back(DenomFactor{1, -1, Monomial::q()});
}

std::shared_ptr<const FlagVariety> FlagVariety::make(char type, int rank, std::size_t cap) {
  return std::make_shared<const FlagVariety>(RootSystem::build(type, rank), cap);
}

LaurentPoly FlagVariety::tangent_euler(Elt u) const {
  LaurentPoly p(1);
  for (int a = 0; a < roots().num_positive(); ++a) p *= LaurentPoly(1) - LaurentPoly::monomial(e_root(u, a));
  return p;
}

Monomial FlagVariety::euler_unit(Elt u) const {
  Monomial m;
  for (int a = 0; a < roots().num_positive(); ++a) {
    int r = W_.apply_to_root(u, a);
    if (!roots().is_positive(r)) m = m * root_mono_[r];
  }
  return m;
}

RationalFn FlagVariety::inverse_tangent_euler(Elt u) const {
  const int sign = W_.length(u) % 2 ? -1 : 1;
  return RationalFn::assemble(LaurentPoly::monomial(euler_unit(u).inverse(), sign), root_factors_);
}

RationalFn FlagVariety::inverse_one_minus(Elt u, int i) const {
  return RationalFn::fraction(1, LaurentPoly(1) - LaurentPoly::monomial(e_root(u, roots().simple_root(i))));
}

const FlagVariety::Family& FlagVariety::family(const std::string& name, const std::function<Family()>& build) const {
  std::shared_ptr<FamilySlot> slot;
  std::shared_ptr<const Persistence> persist;
  {
    std::lock_guard lock(mu_);
    auto& s = families_[name];
    if (!s) s = std::make_shared<FamilySlot>();
    slot = s;
    persist = persistence_;
  }
  std::call_once(slot->once, [&] {
    std::optional<Family> loaded;
    if (persist && persist->load) loaded = persist->load(name);
    if (loaded) {
      slot->classes = std::move(*loaded);
    } else {
      slot->classes = build();
      if (persist && persist->store) persist->store(name, slot->classes);
    }
    slot->ready = true;
  });
  return slot->classes;
}

void FlagVariety::set_persistence(Persistence p) const {
  std::lock_guard lock(mu_);
  persistence_ = std::make_shared<const Persistence>(std::move(p));
}

std::vector<std::pair<std::string, const FlagVariety::Family*>> FlagVariety::built_families() const {
  std::lock_guard lock(mu_);
  std::vector<std::pair<std::string, const Family*>> out;
  for (const auto& [name, slot] : families_)
    if (slot->ready) out.emplace_back(name, &slot->classes);
  return out;
}

bool FlagVariety::bruhat_leq(Elt u, Elt w) const {
  const std::size_t n = W_.size();
  std::call_once(bruhat_once_, [&] {
    std::vector<char> t(n * n);
    parallel_range(0, static_cast<int>(n), [&](int a) {
      for (std::size_t b = 0; b < n; ++b) t[a * n + b] = W_.bruhat_leq(a, static_cast<Elt>(b));
    });
    bruhat_ = std::move(t);
  });
  return bruhat_[static_cast<std::size_t>(u) * n + w];
}

void FlagVariety::clear_cache() const {
  std::lock_guard lock(mu_);
  families_.clear();
}

// --- LocalizedClass ---------------------------------------------------------------

LocalizedClass::LocalizedClass(FlagPtr fv, std::string tag)
    : fv_(std::move(fv)), values_(fv_->size()), tag_(std::move(tag)) {}

bool LocalizedClass::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

std::vector<Elt> LocalizedClass::support() const {
  std::vector<Elt> s;
  for (Elt u = 0; u < size(); ++u)
    if (!values_[u].is_zero()) s.push_back(u);
  return s;
}

bool LocalizedClass::is_polynomial() const {
  for (const auto& v : values_)
    if (!v.is_polynomial()) return false;
  return true;
}

void LocalizedClass::check_same(const LocalizedClass& o) const {
  if (!fv_ || !o.fv_ || !(fv_->roots() == o.fv_->roots()))
    throw UsageError("classes over different root systems");
}

LocalizedClass LocalizedClass::operator-() const {
  LocalizedClass r = *this;
  for (auto& v : r.values_) v = -v;
  return r;
}

LocalizedClass& LocalizedClass::operator+=(const LocalizedClass& o) {
  check_same(o);
  for (Elt u = 0; u < size(); ++u) values_[u] += o.values_[u];
  return *this;
}

LocalizedClass& LocalizedClass::operator-=(const LocalizedClass& o) {
  check_same(o);
  for (Elt u = 0; u < size(); ++u) values_[u] -= o.values_[u];
  return *this;
}

LocalizedClass& LocalizedClass::operator*=(const RationalFn& c) {
  for (auto& v : values_)
    if (!v.is_zero()) v *= c;
  return *this;
}

LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b) {
  a.check_same(b);
  LocalizedClass r(a.fv_);
  for (Elt u = 0; u < a.size(); ++u) r.values_[u] = a.values_[u] * b.values_[u];
  return r;
}

bool operator==(const LocalizedClass& a, const LocalizedClass& b) {
  a.check_same(b);
  for (Elt u = 0; u < a.size(); ++u)
    if (!(a.values_[u] == b.values_[u])) return false;
  return true;
}

LocalizedClass LocalizedClass::map(const std::function<RationalFn(Elt, const RationalFn&)>& f) const {
  LocalizedClass r(fv_, tag_);
  for (Elt u = 0; u < size(); ++u) r.values_[u] = f(u, values_[u]);
  return r;
}

LocalizedClass substitute(const LocalizedClass& c, const Substitution& s) {
  return c.map([&](Elt, const RationalFn& v) { return substitute(v, s); });
}

// --- standard classes ---------------------------------------------------------------

LocalizedClass fixed_point_class(const FlagPtr& fv, Elt w) {
  LocalizedClass c(fv, "iota(" + fv->W().format(w) + ")");
  c.at(w) = fv->tangent_euler(w);
  return c;
}

namespace {

const FlagVariety::Family& schubert_family(const FlagPtr& fv) {
  return fv->family("O_lower", [&] {
    const WeylGroup& W = fv->W();
    FlagVariety::Family fam(W.size());
    fam[0] = fixed_point_class(fv, 0);
    for (Elt w = 1; w < W.size(); ++w) {
      int last = W.word(w).back();
      fam[w] = demazure(last, fam[W.mul_simple_right(w, last)]);
    }
    for (Elt w = 0; w < W.size(); ++w) fam[w].set_tag("O_" + W.format(w));
    return fam;
  });
}

const FlagVariety::Family& opposite_schubert_family(const FlagPtr& fv) {
  return fv->family("O_upper", [&] {
    const WeylGroup& W = fv->W();
    FlagVariety::Family fam(W.size());
    fam[W.longest()] = fixed_point_class(fv, W.longest());
    for (Elt w = W.longest() - 1; w >= 0; --w) {
      for (int i = 0; i < W.rank(); ++i) {
        Elt ws = W.mul_simple_right(w, i);
        if (W.length(ws) > W.length(w)) {
          fam[w] = demazure(i, fam[ws]);
          break;
        }
      }
    }
    for (Elt w = 0; w < W.size(); ++w) fam[w].set_tag("O^" + W.format(w));
    return fam;
  });
}

const FlagVariety::Family& ideal_family(const FlagPtr& fv, bool opposite) {
  return fv->family(opposite ? "I_upper" : "I_lower", [&] {
    const WeylGroup& W = fv->W();
    const auto& O = opposite ? opposite_schubert_family(fv) : schubert_family(fv);
    FlagVariety::Family fam;
    for (Elt w = 0; w < W.size(); ++w) {
      LocalizedClass c(fv, (opposite ? "I^" : "I_") + W.format(w));
      for (Elt v = 0; v < W.size(); ++v) {
        bool in = opposite ? W.bruhat_leq(w, v) : W.bruhat_leq(v, w);
        if (!in) continue;
        if ((W.length(w) - W.length(v)) % 2 == 0)
          c += O[v];
        else
          c -= O[v];
      }
      fam.push_back(std::move(c));
    }
    return fam;
  });
}

}  // namespace

LocalizedClass schubert_class(const FlagPtr& fv, Elt w) { return schubert_family(fv)[w]; }
LocalizedClass opposite_schubert_class(const FlagPtr& fv, Elt w) { return opposite_schubert_family(fv)[w]; }
LocalizedClass ideal_sheaf_class(const FlagPtr& fv, Elt w) { return ideal_family(fv, false)[w]; }
LocalizedClass opposite_ideal_sheaf_class(const FlagPtr& fv, Elt w) { return ideal_family(fv, true)[w]; }

LocalizedClass schubert_class_from_word(const FlagPtr& fv, const std::vector<int>& word) {
  if (!fv->W().is_reduced(word)) throw UsageError("word is not reduced");
  LocalizedClass c = fixed_point_class(fv, 0);
  for (int i : word) c = demazure(i, c);
  return c;
}

LocalizedClass line_bundle_class(const FlagPtr& fv, const Weight& lambda) {
  LocalizedClass c(fv, "L");
  for (Elt u = 0; u < fv->size(); ++u)
    c.at(u) = LaurentPoly::monomial(weight_monomial(fv->W().apply_to_weight(u, lambda)));
  return c;
}

LocalizedClass lambda_y_cotangent(const FlagPtr& fv) {
  LocalizedClass c(fv, "lambda_y(T*)");
  for (Elt u = 0; u < fv->size(); ++u) {
    LaurentPoly p(1);
    for (int a = 0; a < fv->dim(); ++a) p *= LaurentPoly(1) + LaurentPoly::monomial(Monomial::y() * fv->e_root(u, a));
    c.at(u) = p;
  }
  return c;
}

LocalizedClass constant_class(const FlagPtr& fv, const RationalFn& v) {
  LocalizedClass c(fv);
  for (Elt u = 0; u < fv->size(); ++u) c.at(u) = v;
  return c;
}

RationalFn pairing(const LocalizedClass& F, const LocalizedClass& G, bool require_polynomial) {
  const FlagPtr& fv = F.flag();
  if (!fv || !G.flag() || !(fv->roots() == G.flag()->roots())) throw UsageError("pairing of classes over different root systems");
  // prod_{alpha>0}(1 - e^{u alpha}) = (-1)^{l(u)} e^{mu_u} prod_{beta>0}(1 - e^beta),
  // so the sum is taken over the common denominator prod(1 - e^beta).
  RationalFn total;
  for (Elt u = 0; u < fv->size(); ++u) {
    if (F.at(u).is_zero() || G.at(u).is_zero()) continue;
    const int sign = fv->W().length(u) % 2 ? -1 : 1;
    total += F.at(u) * G.at(u) * RationalFn(LaurentPoly::monomial(fv->euler_unit(u).inverse(), sign));
  }
  RationalFn result = total * RationalFn::assemble(LaurentPoly(1), fv->positive_root_factors());
  if (require_polynomial && !result.is_polynomial())
    throw InvariantViolation("pairing <" + F.tag() + ", " + G.tag() + "> does not cancel to a Laurent polynomial: " +
                             result.to_string());
  return result;
}

LocalizedClass dual_values(const LocalizedClass& F) {
  return F.map([](Elt, const RationalFn& v) { return dual_involution(v); });
}

LocalizedClass serre_duality(const LocalizedClass& F) {
  const FlagPtr& fv = F.flag();
  Weight two_rho{};
  for (int i = 0; i < fv->roots().rank(); ++i) two_rho[i] = 2;
  const int sign = fv->dim() % 2 ? -1 : 1;
  LocalizedClass r = F.map([&](Elt u, const RationalFn& v) {
    if (v.is_zero()) return RationalFn{};
    return dual_involution(v) *
           RationalFn(LaurentPoly::monomial(weight_monomial(fv->W().apply_to_weight(u, two_rho)), sign));
  });
  r.set_tag("D(" + F.tag() + ")");
  return r;
}

RationalFn weyl_twist(const WeylGroup& W, Elt w, const RationalFn& f) {
  const int n = W.rank();
  const std::vector<int> M = W.action_matrix(w);
  return f.map_exponents([&](const Monomial& m) {
    Monomial r = m;
    for (int i = 0; i < n; ++i) {
      int acc = 0;
      for (int k = 0; k < n; ++k) acc += M[i * n + k] * m.exp[k];
      r.exp[i] = acc;
    }
    return r;
  });
}

LocalizedClass weyl_twist_class(Elt w, const LocalizedClass& F) {
  const WeylGroup& W = F.W();
  const Elt winv = W.inverse(w);
  LocalizedClass r(F.flag(), W.format(w) + "." + F.tag());
  for (Elt u = 0; u < W.size(); ++u) {
    const RationalFn& v = F.at(W.mul(winv, u));
    if (!v.is_zero()) r.at(u) = weyl_twist(W, w, v);
  }
  return r;
}

std::optional<std::string> gkm_violation(const LocalizedClass& F) {
  const FlagPtr& fv = F.flag();
  const WeylGroup& W = fv->W();
  auto mult_of = [](const RationalFn& f, const DenomFactor& d) {
    for (const auto& [g, m] : f.den())
      if (g == d) return m;
    return 0;
  };
  for (Elt u = 0; u < W.size(); ++u) {
    for (int b = 0; b < fv->dim(); ++b) {
      Elt v = W.mul(u, W.reflection(b));
      if (v < u) continue;
      const LaurentPoly lin = LaurentPoly(1) - LaurentPoly::monomial(fv->e_root(u, b));
      if (F.at(u).is_polynomial() && F.at(v).is_polynomial()) {
        const LaurentPoly pd = F.at(u).num() - F.at(v).num();
        if (pd.is_zero() || exact_divide(pd, lin)) continue;
        std::ostringstream os;
        os << F.tag() << ": value at " << W.format(u) << " minus value at " << W.format(v) << " is not divisible by "
           << lin.to_string();
        return os.str();
      }
      RationalFn diff = F.at(u) - F.at(v);
      if (diff.is_zero()) continue;
      RationalFn q = diff * RationalFn::fraction(1, lin);
      const DenomFactor d = RationalFn::fraction(1, lin).den().front().first;
      if (mult_of(q, d) > std::max(mult_of(F.at(u), d), mult_of(F.at(v), d))) {
        std::ostringstream os;
        os << F.tag() << ": value at " << W.format(u) << " minus value at " << W.format(v) << " is not divisible by "
           << lin.to_string();
        return os.str();
      }
    }
  }
  return std::nullopt;
}

// --- expansions ---------------------------------------------------------------------

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::Schubert: return "O_w";
    case Basis::OppositeSchubert: return "O^w";
    case Basis::FixedPoint: return "iota_w";
    case Basis::Casselman: return "b_w";
  }
  return "?";
}

LocalizedClass casselman_basis_class(const FlagPtr& fv, Elt w) {
  return fv->family("b", [&] {
    const WeylGroup& W = fv->W();
    FlagVariety::Family fam;
    for (Elt x = 0; x < W.size(); ++x) {
      RationalFn c((fv->dim() - W.length(x)) % 2 ? -1 : 1);
      for (int a = 0; a < fv->dim(); ++a) {
        const int r = W.apply_to_root(x, a);
        if (!fv->roots().is_positive(r)) continue;
        const Monomial m = fv->e_root(r);
        c *= RationalFn::fraction(LaurentPoly::y(-1) + LaurentPoly::monomial(m.inverse()),
                                  LaurentPoly(1) - LaurentPoly::monomial(m));
      }
      LocalizedClass b = fixed_point_class(fv, x) * c;
      b.set_tag("b_" + W.format(x));
      fam.push_back(std::move(b));
    }
    return fam;
  })[w];
}

LocalizedClass basis_class(const FlagPtr& fv, Basis b, Elt w) {
  switch (b) {
    case Basis::Schubert: return schubert_class(fv, w);
    case Basis::OppositeSchubert: return opposite_schubert_class(fv, w);
    case Basis::FixedPoint: return fixed_point_class(fv, w);
    case Basis::Casselman: return casselman_basis_class(fv, w);
  }
  throw UsageError("unknown basis");
}

LaurentPoly SchubertExpansion::polynomial(Elt u) const {
  return coeff[u].polynomial_or_throw(std::string("coefficient in the ") + basis_name(basis) + " basis");
}

SchubertExpansion expand_by_pairing(const LocalizedClass& F, Basis b) {
  const FlagPtr& fv = F.flag();
  SchubertExpansion e{b, std::vector<RationalFn>(fv->size())};
  for (Elt u = 0; u < fv->size(); ++u) {
    switch (b) {
      case Basis::Schubert:
        e.coeff[u] = pairing(F, opposite_ideal_sheaf_class(fv, u));
        break;
      case Basis::OppositeSchubert:
        e.coeff[u] = pairing(F, ideal_sheaf_class(fv, u));
        break;
      case Basis::FixedPoint:
        e.coeff[u] = F.at(u) * fv->inverse_tangent_euler(u);
        break;
      case Basis::Casselman: {
        // b_u|_u = (-1)^{dim-l(u)} prod_{u alpha>0}(y^{-1}+e^{-u alpha}) prod_{u alpha<0}(1-e^{u alpha})
        const WeylGroup& W = fv->W();
        RationalFn inv((fv->dim() - W.length(u)) % 2 ? -1 : 1);
        for (int a = 0; a < fv->dim(); ++a) {
          const int r = W.apply_to_root(u, a);
          const Monomial m = fv->e_root(r);
          if (fv->roots().is_positive(r))
            inv *= RationalFn::fraction(1, LaurentPoly::y(-1) + LaurentPoly::monomial(m.inverse()));
          else
            inv *= RationalFn::fraction(1, LaurentPoly(1) - LaurentPoly::monomial(m));
        }
        e.coeff[u] = F.at(u) * inv;
        break;
      }
    }
  }
  return e;
}

SchubertExpansion expand_by_triangular_solve(const LocalizedClass& F, Basis b) {
  const FlagPtr& fv = F.flag();
  const int n = fv->size();
  SchubertExpansion e{b, std::vector<RationalFn>(n)};
  std::vector<LocalizedClass> basis;
  basis.reserve(n);
  for (Elt u = 0; u < n; ++u) basis.push_back(basis_class(fv, b, u));
  auto solve_at = [&](Elt v, RationalFn rhs) {
    const RationalFn& diag = basis[v].at(v);
    e.coeff[v] = rhs.is_zero() ? RationalFn{} : RationalFn::divide(rhs, diag, fv->hints());
  };
  switch (b) {
    case Basis::Schubert:
      // O_u is supported on {v <= u}; solve from the top.
      for (Elt v = n - 1; v >= 0; --v) {
        RationalFn rhs = F.at(v);
        for (Elt u = v + 1; u < n; ++u)
          if (!e.coeff[u].is_zero() && !basis[u].at(v).is_zero()) rhs -= e.coeff[u] * basis[u].at(v);
        solve_at(v, std::move(rhs));
      }
      break;
    case Basis::OppositeSchubert:
      for (Elt v = 0; v < n; ++v) {
        RationalFn rhs = F.at(v);
        for (Elt u = 0; u < v; ++u)
          if (!e.coeff[u].is_zero() && !basis[u].at(v).is_zero()) rhs -= e.coeff[u] * basis[u].at(v);
        solve_at(v, std::move(rhs));
      }
      break;
    case Basis::FixedPoint:
    case Basis::Casselman:
      for (Elt v = 0; v < n; ++v) solve_at(v, F.at(v));
      break;
  }
  return e;
}

SchubertExpansion expand(const LocalizedClass& F, Basis b, bool require_polynomial) {
  SchubertExpansion p = expand_by_pairing(F, b);
  SchubertExpansion t = expand_by_triangular_solve(F, b);
  const WeylGroup& W = F.W();
  for (Elt u = 0; u < W.size(); ++u) {
    if (!(p.coeff[u] == t.coeff[u]))
      throw InvariantViolation("expansion of " + F.tag() + " in the " + basis_name(b) + " basis: pairing gives " +
                               p.coeff[u].to_string() + " but triangular solve gives " + t.coeff[u].to_string() +
                               " at " + W.format(u));
    if (require_polynomial && !p.coeff[u].is_polynomial())
      throw InvariantViolation("expansion of " + F.tag() + ": coefficient at " + W.format(u) +
                               " is not a Laurent polynomial: " + p.coeff[u].to_string());
  }
  return p;
}

LocalizedClass reconstruct(const FlagPtr& fv, const SchubertExpansion& e) {
  LocalizedClass c(fv);
  for (Elt u = 0; u < fv->size(); ++u)
    if (!e.coeff[u].is_zero()) c += basis_class(fv, e.basis, u) * e.coeff[u];
  return c;
}

}  // namespace kflag
