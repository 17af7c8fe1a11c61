#pragma once

// Localized equivariant K-theory of G/B (and of T^*(G/B) via the extra
// variables y, z): a class is the vector of its restrictions to the torus
// fixed points e_w, w in W.

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kflag/rational_fn.hpp"
#include "kflag/weyl.hpp"

namespace kflag {

inline Monomial weight_monomial(const Weight& w) {
  Monomial m;
  for (int i = 0; i < kMaxRank; ++i) m.exp[i] = w[i];
  return m;
}

class LocalizedClass;

/// Root system, Weyl group and the per-fixed-point data every computation
/// reuses.  Also owns the in-process cache of class families.
class FlagVariety : public std::enable_shared_from_this<FlagVariety> {
 public:
  static std::shared_ptr<const FlagVariety> make(char type, int rank, std::size_t cap = WeylGroup::kDefaultCap);

  const RootSystem& roots() const { return W_.roots(); }
  const WeylGroup& W() const { return W_; }
  std::string label() const { return roots().label(); }
  int dim() const { return roots().num_positive(); }
  int size() const { return W_.size(); }

  /// e^{w(root)} for a root index.
  Monomial e_root(Elt w, int root_idx) const { return root_mono_[W_.apply_to_root(w, root_idx)]; }
  Monomial e_root(int root_idx) const { return root_mono_[root_idx]; }
  Monomial e_weight(const Weight& w) const { return weight_monomial(w); }

  /// prod_{alpha>0} (1 - e^{u alpha}), expanded.
  LaurentPoly tangent_euler(Elt u) const;
  /// 1 / prod_{alpha>0} (1 - e^{u alpha}) with factored denominator.
  RationalFn inverse_tangent_euler(Elt u) const;
  /// prod_{alpha>0} (1 - e^{u alpha}) = sign * e^{mu} * prod_{beta>0} (1 - e^beta)
  /// with sign = (-1)^{l(u)} and mu = sum of the negative roots u alpha.
  Monomial euler_unit(Elt u) const;
  /// Denominator factors 1 - e^beta, beta > 0.
  const std::vector<std::pair<DenomFactor, int>>& positive_root_factors() const { return root_factors_; }
  /// 1 / (1 - e^{u alpha_i}).
  RationalFn inverse_one_minus(Elt u, int i) const;

  /// Binomials tried when dividing by expanded polynomials.
  const FactorHints& hints() const { return hints_; }

  /// Memoized family of classes; `build` runs at most once per name (again
  /// only if it threw).  The map lock is not held while building, so builds
  /// may fetch other families from any thread.
  using Family = std::vector<LocalizedClass>;
  const Family& family(const std::string& name, const std::function<Family()>& build) const;
  /// Families built so far (name, classes), sorted by name.
  std::vector<std::pair<std::string, const Family*>> built_families() const;

  /// Optional persistence consulted by family(): `load` runs before a
  /// build and may supply the classes; `store` receives freshly built ones.
  struct Persistence {
    std::function<std::optional<Family>(const std::string&)> load;
    std::function<void(const std::string&, const Family&)> store;
  };
  void set_persistence(Persistence p) const;
  /// Bruhat order u <= w from a table built on first use.
  bool bruhat_leq(Elt u, Elt w) const;

  /// Drops cached families (used by timing tests).
  void clear_cache() const;

  explicit FlagVariety(std::shared_ptr<const RootSystem> rs, std::size_t cap);

 private:
  WeylGroup W_;
  std::vector<Monomial> root_mono_;
  std::vector<std::pair<DenomFactor, int>> root_factors_;
  FactorHints hints_;
  struct FamilySlot {
    std::once_flag once;
    std::atomic<bool> ready{false};
    Family classes;
  };
  mutable std::mutex mu_;
  mutable std::shared_ptr<const Persistence> persistence_;
  mutable std::once_flag bruhat_once_;
  mutable std::vector<char> bruhat_;
  mutable std::map<std::string, std::shared_ptr<FamilySlot>> families_;
};

using FlagPtr = std::shared_ptr<const FlagVariety>;

class LocalizedClass {
 public:
  LocalizedClass() = default;
  explicit LocalizedClass(FlagPtr fv, std::string tag = {});

  const FlagPtr& flag() const { return fv_; }
  const WeylGroup& W() const { return fv_->W(); }
  const std::string& tag() const { return tag_; }
  void set_tag(std::string t) { tag_ = std::move(t); }

  const RationalFn& at(Elt u) const { return values_[u]; }
  RationalFn& at(Elt u) { return values_[u]; }
  const std::vector<RationalFn>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  bool is_zero() const;
  std::vector<Elt> support() const;
  /// True iff every value is a Laurent polynomial.
  bool is_polynomial() const;

  LocalizedClass operator-() const;
  LocalizedClass& operator+=(const LocalizedClass& o);
  LocalizedClass& operator-=(const LocalizedClass& o);
  LocalizedClass& operator*=(const RationalFn& c);
  friend LocalizedClass operator+(LocalizedClass a, const LocalizedClass& b) { return a += b; }
  friend LocalizedClass operator-(LocalizedClass a, const LocalizedClass& b) { return a -= b; }
  friend LocalizedClass operator*(LocalizedClass a, const RationalFn& c) { return a *= c; }
  friend LocalizedClass operator*(const RationalFn& c, LocalizedClass a) { return a *= c; }
  /// Pointwise product of classes (tensor product).
  friend LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b);
  friend bool operator==(const LocalizedClass& a, const LocalizedClass& b);

  /// Applies f to every value.
  LocalizedClass map(const std::function<RationalFn(Elt, const RationalFn&)>& f) const;

 private:
  FlagPtr fv_;
  std::vector<RationalFn> values_;
  std::string tag_;

  void check_same(const LocalizedClass& o) const;
};

LocalizedClass substitute(const LocalizedClass& c, const Substitution& s);

// --- standard classes ---------------------------------------------------------

/// iota_w: supported at w with value prod_{alpha>0}(1 - e^{w alpha}).
LocalizedClass fixed_point_class(const FlagPtr& fv, Elt w);
/// O_w (Schubert variety X(w)), built with Demazure operators.
LocalizedClass schubert_class(const FlagPtr& fv, Elt w);
/// O^w (opposite Schubert variety Y(w)).
LocalizedClass opposite_schubert_class(const FlagPtr& fv, Elt w);
/// O_w along an explicit reduced word (for word-independence tests).
LocalizedClass schubert_class_from_word(const FlagPtr& fv, const std::vector<int>& word);
/// I_w = sum_{v<=w} (-1)^{l(w)-l(v)} O_v.
LocalizedClass ideal_sheaf_class(const FlagPtr& fv, Elt w);
/// I^w = sum_{v>=w} (-1)^{l(v)-l(w)} O^v.
LocalizedClass opposite_ideal_sheaf_class(const FlagPtr& fv, Elt w);
/// Line bundle L_lambda: value e^{u lambda} at u.
LocalizedClass line_bundle_class(const FlagPtr& fv, const Weight& lambda);
/// lambda_y(T^*(G/B)): value prod_{alpha>0}(1 + y e^{u alpha}) at u.
LocalizedClass lambda_y_cotangent(const FlagPtr& fv);
/// The constant class c.
LocalizedClass constant_class(const FlagPtr& fv, const RationalFn& c);

/// sum_u F|_u G|_u / prod_{alpha>0}(1 - e^{u alpha}).  With
/// require_polynomial the result must cancel to a Laurent polynomial,
/// otherwise InvariantViolation is thrown with the residue.
RationalFn pairing(const LocalizedClass& F, const LocalizedClass& G, bool require_polynomial = false);

/// Grothendieck-Serre duality: (-1)^dim e^{2u rho} (F|_u)^vee.
LocalizedClass serre_duality(const LocalizedClass& F);
/// Pointwise dual involution.
LocalizedClass dual_values(const LocalizedClass& F);
/// Left Weyl group action: (wF)|_u = w(F|_{w^{-1}u}), w acting on weights.
LocalizedClass weyl_twist_class(Elt w, const LocalizedClass& F);
/// Exponent map e^lambda -> e^{w lambda} on a single value.
RationalFn weyl_twist(const WeylGroup& W, Elt w, const RationalFn& f);

/// GKM condition: F|_u - F|_{u s_beta} divisible by 1 - e^{u beta} for
/// all u and positive beta.  Returns a description of the first failure.
std::optional<std::string> gkm_violation(const LocalizedClass& F);

// --- expansions -----------------------------------------------------------------

enum class Basis { Schubert, OppositeSchubert, FixedPoint, Casselman };
const char* basis_name(Basis b);

/// The b_w classes: (-1)^{dim-l(w)} prod_{alpha>0, w alpha>0}
/// (y^{-1} + e^{-w alpha}) / (1 - e^{w alpha}) * iota_w.
LocalizedClass casselman_basis_class(const FlagPtr& fv, Elt w);
/// Basis element by kind.
LocalizedClass basis_class(const FlagPtr& fv, Basis b, Elt w);

struct SchubertExpansion {
  Basis basis = Basis::Schubert;
  std::vector<RationalFn> coeff;  // indexed by Weyl element

  /// Coefficient as a Laurent polynomial; InvariantViolation otherwise.
  LaurentPoly polynomial(Elt u) const;
};

/// Expansion by the dual-basis pairing (Schubert bases), or pointwise
/// division (fixed point / Casselman bases).
SchubertExpansion expand_by_pairing(const LocalizedClass& F, Basis b);
/// Expansion by triangular solve against the basis localizations.
SchubertExpansion expand_by_triangular_solve(const LocalizedClass& F, Basis b);
/// Runs both routes and throws InvariantViolation if they disagree.  With
/// require_polynomial, non-polynomial coefficients also throw.
SchubertExpansion expand(const LocalizedClass& F, Basis b, bool require_polynomial = false);
LocalizedClass reconstruct(const FlagPtr& fv, const SchubertExpansion& e);

}  // namespace kflag
