#pragma once

// Demazure and Demazure-Lusztig operators acting on fixed-point
// localizations.  With alpha = alpha_i and F a class,
//
//   (d_i F)(u)   = (F(u) - e^{u alpha} F(u s_i)) / (1 - e^{u alpha})
//   T_i F        = (1 + y e^{alpha}) d_i F - F
//   T_i^vee F    = d_i((1 + y e^{alpha}) F) - F
//   T^{-1}       = -y^{-1} T - (1 + y) y^{-1}
//
// where e^{alpha} acts at u by multiplication with e^{u alpha}.

#include <vector>

#include "kflag/kclass.hpp"
#include "kflag/report.hpp"

namespace kflag {

enum class Gen { Demazure, T, TDual, TInverse, TDualInverse };
const char* gen_name(Gen g);

LocalizedClass demazure(int i, const LocalizedClass& F);
LocalizedClass op_T(int i, const LocalizedClass& F);
LocalizedClass op_T_dual(int i, const LocalizedClass& F);
LocalizedClass op_T_inverse(int i, const LocalizedClass& F);
LocalizedClass op_T_dual_inverse(int i, const LocalizedClass& F);
LocalizedClass apply_generator(Gen g, int i, const LocalizedClass& F);

/// G_{i_1} o ... o G_{i_k} applied to F (i_k acts first).  The word must be
/// reduced; UsageError otherwise.
LocalizedClass composite(const std::vector<int>& word, Gen g, const LocalizedClass& F);
/// Same along the canonical reduced word of w.
LocalizedClass composite(Elt w, Gen g, const LocalizedClass& F);

/// A formal linear combination of words in the generators.
struct OperatorExpr {
  struct Letter {
    Gen gen;
    int i;
  };
  struct Term {
    RationalFn scalar;
    std::vector<Letter> word;  // leftmost letter applied last; empty = identity
  };
  std::vector<Term> terms;

  static OperatorExpr identity();
  static OperatorExpr generator(Gen g, int i);
  /// Word in one kind of generator (not required to be reduced).
  static OperatorExpr word(Gen g, const std::vector<int>& letters);

  OperatorExpr operator+(const OperatorExpr& o) const;
  OperatorExpr operator-(const OperatorExpr& o) const;
  /// Composition: (A * B)(F) = A(B(F)).
  OperatorExpr operator*(const OperatorExpr& o) const;
  OperatorExpr scaled(const RationalFn& c) const;

  LocalizedClass apply(const LocalizedClass& F) const;
};

/// Exhaustive check of the Hecke relations on the fixed-point basis:
/// quadratic relations, braid relations, d_i^2 = d_i, adjointness of T_i and
/// T_i^vee, and the leading coefficient of T_u T_v^{-1}.  Throws
/// ResourceError above the verification cap.
inline constexpr int kDefaultVerificationCap = 3;
Report verify_relations(const FlagPtr& fv, int max_rank = kDefaultVerificationCap);

}  // namespace kflag
