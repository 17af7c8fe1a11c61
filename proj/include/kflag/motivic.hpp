#pragma once

// Motivic Chern classes of Schubert cells and varieties in G/B, their duals,
// and the scans built on them.  Each cell family is computed by at least two
// independent routes; the cached accessors compare the routes and throw
// InvariantViolation on any mismatch.

#include <map>
#include <string>
#include <vector>

#include "kflag/kclass.hpp"
#include "kflag/report.hpp"

namespace kflag {

enum class Side { X, Y };

using ClassFamily = std::vector<LocalizedClass>;

// --- routes (uncached, exposed for tests) -----------------------------------------

/// MC_y(X(w)^o) = T_{i_k} ... T_{i_1}(iota_id) along the canonical word.
ClassFamily mc_cell_X_by_operators(const FlagPtr& fv);
/// Localization recursion: support on {u <= w}, closed-form diagonal, and
/// the two-term recursion off the diagonal.  Throws if the recursion is
/// inconsistent with the diagonal or the support.
ClassFamily mc_cell_X_by_localization(const FlagPtr& fv);
/// Descending localization recursion from MC_y(Y(w0)^o) = iota_{w0}.
ClassFamily mc_cell_Y_by_localization(const FlagPtr& fv);
/// w0 applied to MC_y(X(w0 w)^o), twisting the coefficients.
ClassFamily mc_cell_Y_by_twist(const FlagPtr& fv);
/// (T^vee_{w0 w})^{-1}(O^{w0}).
ClassFamily mc_dual_cell_by_operators(const FlagPtr& fv);
/// Descending localization recursion for the dual classes.
ClassFamily mc_dual_cell_by_localization(const FlagPtr& fv);
/// prod_{alpha>0}(1 + y e^{-alpha}) D(MC_y(Y(w)^o)) / lambda_y(T^*), with
/// the division done pointwise.
ClassFamily mc_dual_cell_by_duality(const FlagPtr& fv);

/// Closed-form diagonal values.
RationalFn mc_X_diagonal(const FlagPtr& fv, Elt w);
RationalFn mc_Y_diagonal(const FlagPtr& fv, Elt w);
RationalFn mc_dual_diagonal(const FlagPtr& fv, Elt w);

// --- cached, cross-checked families ----------------------------------------------

LocalizedClass mc_cell_X(const FlagPtr& fv, Elt w);
LocalizedClass mc_cell_Y(const FlagPtr& fv, Elt w);
/// MC(X(w)) = sum_{v<=w} MC(X(v)^o), MC(Y(w)) = sum_{v>=w} MC(Y(v)^o).
LocalizedClass mc_variety(const FlagPtr& fv, Side side, Elt w);
LocalizedClass mc_dual_cell(const FlagPtr& fv, Elt w);
/// sum_{u>=w} MC^vee(Y(u)^o).
LocalizedClass mc_dual_variety(const FlagPtr& fv, Elt w);
/// (-y)^{dim - l(w)} MC^vee(Y(w)^o).  Its opposite Schubert expansion is
/// checked to be polynomial in y.
LocalizedClass mc_dual_normalized(const FlagPtr& fv, Elt w);

/// Family names accepted by mc_family / the CLI.
const std::vector<std::string>& mc_family_names();
/// Family by name (MC_X_cell, MC_Y_cell, MC_X_variety, MC_Y_variety,
/// MC_dual_Y_cell, MC_dual_Y_variety, MC_dual_normalized).  UsageError for
/// unknown names.
const ClassFamily& mc_family(const FlagPtr& fv, const std::string& name);
/// The basis a family is naturally expanded in (O_w for X-side, O^w else).
Basis natural_basis(const std::string& family);

// --- checks and scans ------------------------------------------------------------

/// Hecke duality, operator actions on cells, supports, specializations and
/// the variety-level duality, over all pairs.
Report verify_motivic(const FlagPtr& fv);

/// Laurent polynomial rewritten in x_i = e^{-alpha_i}.
struct RootCoordinates {
  bool in_cone = true;
  std::vector<std::string> offending;  // monomials outside the cone
  // (y-degree, x exponents) -> coefficient
  std::map<std::pair<int, std::vector<int>>, Integer> table;
  bool nonnegative() const;
  nlohmann::ordered_json to_json() const;
};
RootCoordinates to_root_coordinates(const RootSystem& rs, const LaurentPoly& f);

enum class PositivityMode { Equivariant, NonEquivariant };
/// Scans the signed Schubert coefficients (-1)^{l(w)-l(u)} c(w;u) of
/// MC_y(X(w)^o).  Reports only; a failure is a finding about a conjecture.
Report positivity_scan(const FlagPtr& fv, PositivityMode mode);

/// For all w <= u: MC_y(Y(w)^o)|_u is divisible by
/// prod_{alpha>0, u alpha>0}(1 + y e^{u alpha}) prod_{alpha>0, w !<= u s_alpha < u}(1 - e^{u alpha}).
Report divisibility_check(const FlagPtr& fv);

}  // namespace kflag
