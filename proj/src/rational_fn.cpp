#include "kflag/rational_fn.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

// Orientation used to pick one of the two monomials of a binomial as "1".
bool positive(const Monomial& m) {
  if (m.y_exp() != 0) return m.y_exp() > 0;
  if (m.z_exp() != 0) return m.z_exp() > 0;
  for (int i = 0; i < kMaxRank; ++i)
    if (m.exp[i] != 0) return m.exp[i] > 0;
  return false;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// a + b*m = unit * factor, unit = sign * content * monomial.
struct Split {
  Integer unit_coeff;  // nonzero, may be negative
  Monomial unit_mono;
  std::optional<DenomFactor> factor;  // absent when a + b*m is a monomial
};

Split split_binomial(Integer a, Integer b, Monomial m) {
  if (m.is_one()) {
    a += b;
    b = 0;
  }
  if (a == 0 && b == 0) throw ArithmeticError("division by zero");
  if (b == 0) return {a, Monomial{}, std::nullopt};
  if (a == 0) return {b, m, std::nullopt};
  Monomial unit;
  if (!positive(m)) {
    unit = m;
    std::swap(a, b);
    m = m.inverse();
  }
  Integer g = boost::multiprecision::gcd(abs_int(a), abs_int(b));
  a /= g;
  b /= g;
  if (a < 0) {
    a = -a;
    b = -b;
    g = -g;
  }
  return {g, unit, DenomFactor{a, b, m}};
}

}  // namespace

DenomFactor::Kind DenomFactor::kind() const {
  if (b == 0) return Kind::Constant;
  if (a != 1) return Kind::General;
  if (b == -1 && m.y_exp() == 0 && m.z_exp() == 0) return Kind::OneMinusE;
  if (b == 1 && m.y_exp() == 1 && m.z_exp() == 0) return Kind::OnePlusYE;
  if (b == -1 && m.y_exp() == 0 && m.z_exp() == 2) return Kind::OneMinusQE;
  return Kind::General;
}

const char* to_string(DenomFactor::Kind k) {
  switch (k) {
    case DenomFactor::Kind::OneMinusE: return "one_minus_e";
    case DenomFactor::Kind::OnePlusYE: return "one_plus_ye";
    case DenomFactor::Kind::OneMinusQE: return "one_minus_qe";
    case DenomFactor::Kind::Constant: return "const";
    case DenomFactor::Kind::General: return "general";
  }
  return "general";
}

LaurentPoly DenomFactor::expand() const {
  if (b == 0) return LaurentPoly(a);
  return LaurentPoly(a) + LaurentPoly::monomial(m, b);
}

std::string DenomFactor::to_string() const { return expand().to_string(); }

bool operator<(const DenomFactor& x, const DenomFactor& y) {
  if (x.m != y.m) return x.m < y.m;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

// --- construction -----------------------------------------------------------

void RationalFn::add_factor(const DenomFactor& f, int mult) {
  if (mult == 0) return;
  auto it = std::lower_bound(den_.begin(), den_.end(), f,
                             [](const auto& e, const DenomFactor& key) { return e.first < key; });
  if (it != den_.end() && it->first == f) {
    it->second += mult;
    if (it->second == 0) den_.erase(it);
  } else {
    den_.insert(it, {f, mult});
  }
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, mult] : den_) {
    const LaurentPoly fe = f.expand();
    while (mult > 0) {
      auto q = exact_divide(num_, fe);
      if (!q) break;
      num_ = std::move(*q);
      --mult;
    }
  }
  std::erase_if(den_, [](const auto& e) { return e.second == 0; });
}

RationalFn RationalFn::over_binomial(LaurentPoly num, const Integer& a, const Integer& b, const Monomial& m) {
  return assemble(std::move(num), {{DenomFactor{a, b, m}, 1}});
}

RationalFn RationalFn::assemble(LaurentPoly num, const std::vector<std::pair<DenomFactor, int>>& den) {
  RationalFn r;
  r.num_ = std::move(num);
  Integer unit_coeff = 1;
  Monomial unit_mono;
  for (const auto& [f, mult] : den) {
    if (mult < 0) throw UsageError("negative denominator multiplicity");
    if (mult == 0) continue;
    Split s = split_binomial(f.a, f.b, f.m);
    for (int k = 0; k < mult; ++k) {
      unit_coeff *= s.unit_coeff;
      unit_mono = unit_mono * s.unit_mono;
    }
    if (s.factor) r.add_factor(*s.factor, mult);
  }
  // Fold the unit: its monomial and sign go to the numerator, its absolute
  // value stays as an integer factor.
  r.num_ = r.num_.scaled(unit_mono.inverse(), unit_coeff < 0 ? -1 : 1);
  Integer c = abs_int(unit_coeff);
  if (c > 1) r.add_factor(DenomFactor{c, 0, Monomial{}}, 1);
  r.reduce();
  return r;
}

RationalFn RationalFn::fraction(LaurentPoly num, const LaurentPoly& den) {
  if (den.is_zero()) throw ArithmeticError("division by the zero polynomial");
  if (den.is_monomial()) {
    const auto& t = den.leading();
    return assemble(std::move(num), {{DenomFactor{0, t.coeff, t.mono}, 1}});
  }
  if (den.size() == 2) {
    const auto& hi = den.terms()[0];
    const auto& lo = den.terms()[1];
    // hi.c*hi.m + lo.c*lo.m = lo.m * (lo.c + hi.c * hi.m/lo.m)
    RationalFn r = assemble(std::move(num), {{DenomFactor{lo.coeff, hi.coeff, hi.mono * lo.mono.inverse()}, 1}});
    r.num_ = r.num_.scaled(lo.mono.inverse());
    return r;
  }
  throw ArithmeticError("denominator is not a binomial: " + den.to_string());
}

std::optional<LaurentPoly> RationalFn::as_polynomial() const {
  if (den_.empty()) return num_;
  return std::nullopt;
}

const LaurentPoly& RationalFn::polynomial_or_throw(const std::string& what) const {
  if (!den_.empty()) throw InvariantViolation(what + ": not a Laurent polynomial: " + to_string());
  return num_;
}

LaurentPoly RationalFn::den_expanded() const {
  LaurentPoly d(1);
  for (const auto& [f, mult] : den_) d *= f.expand().pow(static_cast<unsigned>(mult));
  return d;
}

bool RationalFn::e_denominator_free() const {
  return std::none_of(den_.begin(), den_.end(), [](const auto& e) { return e.first.m.has_weight(); });
}

// --- arithmetic ---------------------------------------------------------------

namespace {

using FactorList = RationalFn::FactorList;

// Union with maximal multiplicities.
FactorList lcm_factors(const FactorList& a, const FactorList& b) {
  FactorList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, std::max(a[i].second, b[j].second)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Product of l / d for d a sub-multiset of l.
LaurentPoly cofactor(const FactorList& l, const FactorList& d) {
  LaurentPoly r(1);
  std::size_t j = 0;
  for (const auto& [f, mult] : l) {
    int have = 0;
    if (j < d.size() && d[j].first == f) have = d[j++].second;
    if (mult > have) r *= f.expand().pow(static_cast<unsigned>(mult - have));
  }
  return r;
}

}  // namespace

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    FactorList l = lcm_factors(den_, o.den_);
    num_ = num_ * cofactor(l, den_) + o.num_ * cofactor(l, o.den_);
    den_ = std::move(l);
  }
  reduce();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFn{};
  num_ *= o.num_;
  for (const auto& [f, mult] : o.den_) add_factor(f, mult);
  reduce();
  return *this;
}

RationalFn RationalFn::divide(const RationalFn& a, const RationalFn& b, std::span<const DenomFactor> hints) {
  if (b.is_zero()) throw ArithmeticError("division by zero");
  LaurentPoly p = b.num_;
  std::vector<std::pair<DenomFactor, int>> factors;
  if (p.size() > 2) {
    for (const auto& h : hints) {
      const LaurentPoly he = h.expand();
      int k = 0;
      while (p.size() > 1) {
        auto q = exact_divide(p, he);
        if (!q) break;
        p = std::move(*q);
        ++k;
      }
      if (k) factors.push_back({h, k});
      if (p.size() <= 2) break;
    }
  }
  if (p.size() > 2) throw ArithmeticError("cannot factor divisor into binomials: " + b.num_.to_string());
  RationalFn r = fraction(a.num_ * b.den_expanded(), p);
  RationalFn rest = assemble(LaurentPoly(1), factors);
  for (const auto& [f, mult] : a.den_) rest.add_factor(f, mult);
  r *= rest;
  return r;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  FactorList l = lcm_factors(a.den_, b.den_);
  return a.num_ * cofactor(l, a.den_) == b.num_ * cofactor(l, b.den_);
}

RationalFn RationalFn::map_exponents(const std::function<Monomial(const Monomial&)>& f) const {
  std::vector<std::pair<DenomFactor, int>> den;
  den.reserve(den_.size());
  for (const auto& [fac, mult] : den_) den.push_back({DenomFactor{fac.a, fac.b, f(fac.m)}, mult});
  return assemble(num_.map_monomials(f), den);
}

std::string RationalFn::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << '(' << num_.to_string() << ")/(";
  bool first = true;
  for (const auto& [f, mult] : den_) {
    if (!first) os << '*';
    first = false;
    os << '(' << f.to_string() << ')';
    if (mult != 1) os << '^' << mult;
  }
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RationalFn& f) { return os << f.to_string(); }

RationalFn dual_involution(const RationalFn& f) {
  return f.map_exponents([](const Monomial& m) { return m.inverse(); });
}

// --- substitution -------------------------------------------------------------

namespace {

Rational rational_pow(const Rational& r, int k, const char* what) {
  if (k < 0) {
    if (r == 0) throw PoleError(std::string("substitution makes ") + what + " vanish in a negative power");
    return rational_pow(1 / r, -k, what);
  }
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= r;
  return out;
}

}  // namespace

RationalFn substitute(const LaurentPoly& p, const Substitution& s) {
  struct Piece {
    Monomial m;
    Rational c;
  };
  std::vector<Piece> pieces;
  pieces.reserve(p.size());
  Integer common = 1;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    Rational c(t.coeff);
    if (s.y_to) {
      int a = m.exp[kYSlot];
      m.exp[kYSlot] = 0;
      c *= rational_pow(s.y_to->first, a, "y");
      m.exp[kZSlot] += s.y_to->second * a;
    }
    if (s.z_value) {
      c *= rational_pow(*s.z_value, m.exp[kZSlot], "z");
      m.exp[kZSlot] = 0;
    }
    if (s.e_to_one)
      for (int i = 0; i < kMaxRank; ++i) m.exp[i] = 0;
    common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(c));
    pieces.push_back({m, c});
  }
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(pieces.size());
  for (auto& [m, c] : pieces) {
    Rational scaled = c * Rational(common);
    terms.push_back({m, boost::multiprecision::numerator(scaled)});
  }
  LaurentPoly num = LaurentPoly::from_terms(std::move(terms));
  if (common == 1) return RationalFn(num);
  return RationalFn::fraction(std::move(num), LaurentPoly(common));
}

RationalFn substitute(const RationalFn& f, const Substitution& s) {
  RationalFn out = substitute(f.num(), s);
  for (const auto& [fac, mult] : f.den()) {
    RationalFn v = substitute(fac.expand(), s);
    if (v.is_zero()) throw PoleError("substitution makes the denominator factor " + fac.to_string() + " vanish");
    for (int k = 0; k < mult; ++k) out = out / v;
  }
  return out;
}

}  // namespace kflag
