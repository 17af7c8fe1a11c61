#pragma once

// Rational functions whose denominators are kept factored.
//
// Every denominator that shows up in localization formulas on G/B and
// T^*(G/B) is a product of binomials 1 - e^lambda, 1 + y e^lambda,
// 1 - q e^lambda (and, after numeric substitutions, integer constants and
// general binomials a + b*m).  Keeping the factors avoids multivariate gcds:
// cancellation is attempted factor by factor with exact division.
//
// Equality is decided by cross-multiplication over the least common multiple
// of the two factor multisets; the reduced form is only an optimization.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kflag/laurent_poly.hpp"

namespace kflag {

/// One denominator factor a + b*m in canonical form:
///   * b == 0: integer constant a >= 2 (m is the unit monomial);
///   * b != 0: a > 0, gcd(a, b) == 1, m != 1 and m is "positive" (its first
///     nonzero exponent in the order y, z, weight coordinates is > 0).
struct DenomFactor {
  enum class Kind { OneMinusE, OnePlusYE, OneMinusQE, Constant, General };

  Integer a = 1;
  Integer b = 0;
  Monomial m;

  Kind kind() const;
  LaurentPoly expand() const;
  std::string to_string() const;

  friend bool operator==(const DenomFactor& x, const DenomFactor& y) {
    return x.m == y.m && x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const DenomFactor& x, const DenomFactor& y);
};

const char* to_string(DenomFactor::Kind k);

/// Binomials tried when a general polynomial has to be moved into a
/// denominator (see RationalFn::divide).
using FactorHints = std::vector<DenomFactor>;

class RationalFn {
 public:
  using FactorList = std::vector<std::pair<DenomFactor, int>>;  // sorted, multiplicities > 0

  RationalFn() = default;
  RationalFn(LaurentPoly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  RationalFn(int c) : num_(c) {}                      // NOLINT(google-explicit-constructor)

  /// num / den where den is a monomial, a constant, or a binomial.
  static RationalFn fraction(LaurentPoly num, const LaurentPoly& den);
  /// num / (a + b*m), canonicalized.
  static RationalFn over_binomial(LaurentPoly num, const Integer& a, const Integer& b, const Monomial& m);
  /// Raw assembly from a numerator and factor list (factors need not be
  /// canonical); cancels what it can.
  static RationalFn assemble(LaurentPoly num, const std::vector<std::pair<DenomFactor, int>>& den);

  const LaurentPoly& num() const { return num_; }
  const FactorList& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  /// The numerator if the denominator has cancelled completely.
  std::optional<LaurentPoly> as_polynomial() const;
  /// Throws InvariantViolation carrying `what` and the residue otherwise.
  const LaurentPoly& polynomial_or_throw(const std::string& what) const;
  LaurentPoly den_expanded() const;
  /// True iff no denominator factor involves a weight e^lambda.
  bool e_denominator_free() const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  /// Division with no factorization hints: the divisor's numerator must be a
  /// monomial, a constant or a binomial.
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return divide(a, b, {}); }

  /// a / b.  b's numerator is split into the hinted binomials by trial
  /// division; whatever is left must be a unit, a constant, or a binomial.
  /// Throws ArithmeticError on division by zero or an unrepresentable divisor.
  static RationalFn divide(const RationalFn& a, const RationalFn& b, std::span<const DenomFactor> hints);

  /// Semantic equality (cross-multiplication).
  friend bool operator==(const RationalFn& a, const RationalFn& b);

  /// Applies a multiplicative exponent map (a group endomorphism of the
  /// monomial lattice) to numerator and every denominator factor.
  RationalFn map_exponents(const std::function<Monomial(const Monomial&)>& f) const;

  std::string to_string() const;

 private:
  LaurentPoly num_;
  FactorList den_;

  void add_factor(const DenomFactor& f, int mult);
  void reduce();
};

std::ostream& operator<<(std::ostream& os, const RationalFn& f);

/// e^lambda -> e^{-lambda}, y -> 1/y, z -> 1/z; an involution.
RationalFn dual_involution(const RationalFn& f);

/// Exact rational numbers used as substitution values.
using Rational = boost::multiprecision::cpp_rational;

/// Specialization of the variables.  y may go to r * z^k (r rational, k an
/// integer; k = 0 gives a numeric value), z to a rational number, and every
/// e^lambda to 1.  y is substituted before z.
struct Substitution {
  bool e_to_one = false;
  std::optional<std::pair<Rational, int>> y_to;
  std::optional<Rational> z_value;

  static Substitution non_equivariant() {
    Substitution s;
    s.e_to_one = true;
    return s;
  }
  static Substitution y_value(const Rational& r) {
    Substitution s;
    s.y_to = std::make_pair(r, 0);
    return s;
  }
  /// y -> -z^{-2}, i.e. y = -q^{-1}.
  static Substitution y_minus_q_inverse() {
    Substitution s;
    s.y_to = std::make_pair(Rational(-1), -2);
    return s;
  }
};

/// Applies the substitution; throws PoleError naming the denominator factor
/// that vanishes.  Numeric values produce integer constants in the
/// denominator.
RationalFn substitute(const RationalFn& f, const Substitution& s);
RationalFn substitute(const LaurentPoly& p, const Substitution& s);

}  // namespace kflag
