#pragma once

// Casselman transition data on the geometric side: the b_w basis, the
// coefficients m_{u,w} and r_{u,w}, the sets S(u,w), and the smoothness
// criteria they are compared with.

#include <map>
#include <string>
#include <vector>

#include "kflag/kclass.hpp"
#include "kflag/report.hpp"

namespace kflag {

/// A linear form in the simple roots (additive weights).
using CohomWeight = std::vector<int>;

/// Polynomial over Z in alpha_1, ..., alpha_r.
class CohomPoly {
 public:
  CohomPoly() = default;
  explicit CohomPoly(int rank, long c = 0);
  static CohomPoly linear(const CohomWeight& w);

  int rank() const { return rank_; }
  const std::map<std::vector<int>, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  CohomPoly& operator+=(const CohomPoly& o);
  friend CohomPoly operator+(CohomPoly a, const CohomPoly& b) { return a += b; }
  friend CohomPoly operator*(const CohomPoly& a, const CohomPoly& b);
  friend bool operator==(const CohomPoly& a, const CohomPoly& b) { return a.terms_ == b.terms_; }
  std::string to_string() const;

 private:
  int rank_ = 0;
  std::map<std::vector<int>, Integer> terms_;  // exponent vector -> coefficient, no zeros
};

/// b_w; asserts b_w|_w = MC^vee(Y(w)^o)|_w.
LocalizedClass b_class(const FlagPtr& fv, Elt w);

/// m_{u,w} for u <= w (UsageError otherwise); zero rows are not stored.
RationalFn m_coeff(const FlagPtr& fv, Elt u, Elt w);
/// r_{u,w} for u <= w.
RationalFn r_coeff(const FlagPtr& fv, Elt u, Elt w);

/// Independent routes, exposed for tests.
RationalFn m_by_ratio(const FlagPtr& fv, Elt u, Elt w);
RationalFn m_by_expansion(const FlagPtr& fv, Elt u, Elt w);
RationalFn r_by_ratio(const FlagPtr& fv, Elt u, Elt w);
RationalFn r_by_mobius(const FlagPtr& fv, Elt u, Elt w);
RationalFn r_by_expansion(const FlagPtr& fv, Elt u, Elt w);

/// S(u,w) = {beta > 0 : u <= s_beta w < w} as positive root indices, and
/// S'(u,w) = {alpha > 0 : u <= w s_alpha < w}.
std::vector<int> s_set(const FlagPtr& fv, Elt u, Elt w);
std::vector<int> s_prime_set(const FlagPtr& fv, Elt u, Elt w);

/// m_{u,w} = prod_{beta in S(u,w)} (1 + y^-1 e^beta)/(1 - e^beta).
bool factorization_holds(const FlagPtr& fv, Elt u, Elt w);
/// MC_y(Y(u))|_w = prod_{ws_a >= u}(1 + y e^{wa}) prod_{u !<= ws_a}(1 - e^{wa}).
bool smooth_via_mc(const FlagPtr& fv, Elt u, Elt w);
/// [Y(u)]|_w by Billey's formula along a reduced word of w.
CohomPoly billey_localization(const FlagPtr& fv, Elt u, Elt w, const std::vector<int>& word);
CohomPoly billey_localization(const FlagPtr& fv, Elt u, Elt w);
/// [Y(u)]|_w = prod_{beta > 0, u !<= s_beta w} beta.
bool smooth_via_kumar(const FlagPtr& fv, Elt u, Elt w);
/// {-w alpha : alpha > 0, w s_alpha >= u}, in simple-root coordinates.
std::vector<CohomWeight> tangent_weights(const FlagPtr& fv, Elt u, Elt w);
/// #{reflections r : x < r x <= w} = l(w) - l(x) for all u <= x <= w.
bool kl_is_one(const FlagPtr& fv, Elt u, Elt w);

/// Identities among the transition data (route agreement, diagonal values,
/// Gindikin-Karpelevich, S/S' bijection, KL symmetry, triangularity).
Report verify_casselman(const FlagPtr& fv);
/// factorization == smooth_via_mc == smooth_via_kumar for all u <= w; the
/// full table goes into extra()["table"].
Report bnn_scan(const FlagPtr& fv);
/// prod_{S(u,w)}(1 - e^alpha) m_{u,w} and r_{u,w} have no e-denominators.
Report holomorphy_check(const FlagPtr& fv);

/// Rows (u, w, m, r, S, factorization, smooth_mc, smooth_kumar, kl_one) for
/// all u <= w.  With y_to set, m and r are also given after substituting
/// y (e.g. y = -q').
nlohmann::ordered_json casselman_table(const FlagPtr& fv, const std::optional<Substitution>& subst = {});
std::string casselman_table_tsv(const nlohmann::ordered_json& table);

}  // namespace kflag
