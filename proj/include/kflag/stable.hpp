#pragma once

// K-theoretic stable envelopes of T^*(G/B) at the fundamental slope, as
// restriction matrices, and their comparison with motivic Chern classes.
//
// z = q^{1/2} throughout.  stab_+ is stab_{+, T(G/B), L^-1} and stab_- is
// stab_{-, T^*(G/B), L} for the fundamental slope L.  Polarizations are not
// modelled: the diagonal formulas are taken as definitions.

#include <string>
#include <vector>

#include "kflag/kclass.hpp"
#include "kflag/report.hpp"

namespace kflag {

enum class Chamber { Plus, Minus };

struct StabMatrix {
  Chamber chamber = Chamber::Plus;
  std::vector<LocalizedClass> rows;  // rows[w]|_u = stab(w)|_u

  const RationalFn& entry(Elt w, Elt u) const { return rows[w].at(u); }
  /// Polarization and slope of the chamber, as text.
  std::string polarization() const { return chamber == Chamber::Plus ? "T(G/B)" : "T^*(G/B)"; }
  std::string slope() const { return chamber == Chamber::Plus ? "L^-1" : "L"; }
};

/// Closed-form diagonals.
///   stab_-(w)|_w = z^{l(w)} prod_{w alpha<0}(1 - e^{-w alpha}) prod_{w alpha>0}(1 - q e^{-w alpha})
///   stab_+(w)|_w = z^{l(w)} prod_{w alpha<0}(1 - q^-1 e^{w alpha}) prod_{w alpha>0}(1 - e^{w alpha})
RationalFn stab_minus_diagonal(const FlagPtr& fv, Elt w);
RationalFn stab_plus_diagonal(const FlagPtr& fv, Elt w);

// --- routes (uncached) -------------------------------------------------------------

/// Descending recursion from w0; checks support {u >= w} and the diagonal.
std::vector<LocalizedClass> stab_minus_by_recursion(const FlagPtr& fv);
/// Ascending recursion from id; checks support {u <= w} and the diagonal.
std::vector<LocalizedClass> stab_plus_by_recursion(const FlagPtr& fv);
/// stab_+(w0 u) = z^dim w0.(stab_-(u))^vee, from the given minus rows.
std::vector<LocalizedClass> stab_plus_from_minus(const FlagPtr& fv, const std::vector<LocalizedClass>& minus);
/// The same identity solved for stab_-(u), from the given plus rows.
std::vector<LocalizedClass> stab_minus_from_plus(const FlagPtr& fv, const std::vector<LocalizedClass>& plus);

// --- cached matrices ---------------------------------------------------------------

/// Built by recursion and cross-checked against the opposite chamber; a
/// mismatch throws InvariantViolation.
StabMatrix stab_minus_matrix(const FlagPtr& fv);
StabMatrix stab_plus_matrix(const FlagPtr& fv);

/// <F, G>_{T^*(G/B)} = sum_v F|_v G|_v / prod_{alpha>0}(1 - e^{v alpha})(1 - q e^{-v alpha}).
RationalFn cotangent_pairing(const LocalizedClass& F, const LocalizedClass& G);

/// stab'_+(w) = D(i^* stab_+(w)) and stab'_-(w) = q^{-dim} stab_-(w) (x) omega.
LocalizedClass stab_prime_plus(const FlagPtr& fv, Elt w);
LocalizedClass stab_prime_minus(const FlagPtr& fv, Elt w);

/// True iff every z exponent (numerator and denominator) is even.
bool even_in_z(const RationalFn& f);

/// <stab_+(w), stab_-(u)> = delta_{w,u} for all pairs, computed directly and
/// through the zero-section pairing with lambda_{-q}(T); also the
/// lambda_{-q}(T^*) lambda_{-q}(T) product identity.
Report stab_orthogonality(const FlagPtr& fv);
/// q^{-l(w)/2} stab'_+(w) = MC_{-q^-1}(X(w)^o) and
/// q^{l(w)/2} stab'_-(w) = MC_{-q^-1}(Y(w)^o), entrywise, plus the even-z
/// check on both sides.
Report compare_with_mc(const FlagPtr& fv);
/// Both chamber cross-checks, orthogonality and the MC comparison.
Report verify_stable(const FlagPtr& fv);

}  // namespace kflag
