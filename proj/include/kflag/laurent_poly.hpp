#pragma once

// Sparse Laurent polynomials in Z[y^{+-1}, z^{+-1}][e^{+-lambda}].
//
// A monomial is e^lambda * y^a * z^b where lambda is an integer vector in the
// fundamental-weight basis (at most kMaxRank coordinates) and z stands for
// q^{1/2}.  Monomials are totally ordered lexicographically on
// (lambda, a, b); polynomials keep their terms sorted in decreasing order, so
// the leading term is always terms().front().

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kflag {

using Integer = boost::multiprecision::cpp_int;

inline constexpr int kMaxRank = 8;
inline constexpr int kYSlot = kMaxRank;
inline constexpr int kZSlot = kMaxRank + 1;
inline constexpr int kSlots = kMaxRank + 2;

struct Monomial {
  std::array<std::int32_t, kSlots> exp{};

  static Monomial one() { return {}; }
  static Monomial weight(std::span<const int> lambda);
  static Monomial y(int k = 1);
  static Monomial z(int k = 1);
  /// q = z^2.
  static Monomial q(int k = 1) { return z(2 * k); }

  int y_exp() const { return exp[kYSlot]; }
  int z_exp() const { return exp[kZSlot]; }
  int weight_coord(int i) const { return exp[i]; }
  bool has_weight() const;
  bool is_one() const { return *this == Monomial{}; }

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly() = default;
  LaurentPoly(int c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Integer& c);  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(const Monomial& m, Integer c = 1);
  /// Builds from arbitrary terms; sorts, merges duplicates, drops zeros.
  static LaurentPoly from_terms(std::vector<Term> terms);

  // Convenience constructors for the shapes that keep appearing.
  static LaurentPoly e(std::span<const int> lambda) { return monomial(Monomial::weight(lambda)); }
  static LaurentPoly y(int k = 1) { return monomial(Monomial::y(k)); }
  static LaurentPoly z(int k = 1) { return monomial(Monomial::z(k)); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }
  const Term& trailing() const { return terms_.back(); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Multiplies every exponent by the monomial m and coefficient by c.
  LaurentPoly scaled(const Monomial& m, const Integer& c = 1) const;
  LaurentPoly pow(unsigned k) const;

  /// Applies an exponent map monomial-by-monomial (must be injective on the
  /// support for the result to be meaningful; duplicates are merged anyway).
  LaurentPoly map_monomials(const std::function<Monomial(const Monomial&)>& f) const;

  /// Coefficient of a monomial (0 if absent).
  Integer coeff(const Monomial& m) const;

  /// Minimal / maximal exponent of slot k over the support. Undefined on zero.
  int min_exp(int slot) const;
  int max_exp(int slot) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coeffs
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Returns q with a = q * b, or nullopt when b does not divide a exactly in
/// Z[y^{+-1}, z^{+-1}][e^{+-lambda}].  b must be nonzero.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b);

/// Exponent negation: e^lambda -> e^{-lambda}, y -> 1/y, z -> 1/z.
LaurentPoly dual_involution(const LaurentPoly& p);

/// Renders a monomial such as "3*y^2*z*e^(1,-1)"; used by to_string and tests.
std::string monomial_to_string(const Monomial& m, int rank_hint = -1);

}  // namespace kflag

template <>
struct std::hash<kflag::Monomial> {
  std::size_t operator()(const kflag::Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m.exp) h = (h ^ static_cast<std::uint32_t>(v)) * 1099511628211ull;
    return h;
  }
};
