#include "kflag/laurent_poly.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "kflag/errors.hpp"

namespace kflag {

Monomial Monomial::weight(std::span<const int> lambda) {
  if (lambda.size() > static_cast<std::size_t>(kMaxRank))
    throw UsageError("weight vector longer than the maximal supported rank");
  Monomial m;
  for (std::size_t i = 0; i < lambda.size(); ++i) m.exp[i] = lambda[i];
  return m;
}

Monomial Monomial::y(int k) {
  Monomial m;
  m.exp[kYSlot] = k;
  return m;
}

Monomial Monomial::z(int k) {
  Monomial m;
  m.exp[kZSlot] = k;
  return m;
}

bool Monomial::has_weight() const {
  for (int i = 0; i < kMaxRank; ++i)
    if (exp[i] != 0) return true;
  return false;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kSlots; ++i) r.exp[i] = exp[i] + o.exp[i];
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r;
  for (int i = 0; i < kSlots; ++i) r.exp[i] = -exp[i];
  return r;
}

namespace {

bool term_greater(const LaurentPoly::Term& a, const LaurentPoly::Term& b) { return a.mono > b.mono; }

}  // namespace

LaurentPoly::LaurentPoly(int c) : LaurentPoly(Integer(c)) {}

LaurentPoly::LaurentPoly(const Integer& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, Integer c) {
  LaurentPoly p;
  if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  LaurentPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool LaurentPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two sorted term lists with a sign on the second operand.
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b, bool negate_b) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j]);
      if (negate_b) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Integer c = negate_b ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial()) return b.scaled(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.is_monomial()) return a.scaled(b.terms_[0].mono, b.terms_[0].coeff);
  std::unordered_map<Monomial, Integer> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(), term_greater);
  LaurentPoly r;
  r.terms_ = std::move(terms);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::scaled(const Monomial& m, const Integer& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    if (c != 1) t.coeff *= c;
  }
  return r;  // multiplying by a monomial preserves the order
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r(1), base = *this;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

LaurentPoly LaurentPoly::map_monomials(const std::function<Monomial(const Monomial&)>& f) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({f(t.mono), t.coeff});
  return from_terms(std::move(terms));
}

Integer LaurentPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

int LaurentPoly::min_exp(int slot) const {
  int v = terms_.front().mono.exp[slot];
  for (const auto& t : terms_) v = std::min<int>(v, t.mono.exp[slot]);
  return v;
}

int LaurentPoly::max_exp(int slot) const {
  int v = terms_.front().mono.exp[slot];
  for (const auto& t : terms_) v = std::max<int>(v, t.mono.exp[slot]);
  return v;
}

std::string monomial_to_string(const Monomial& m, int rank_hint) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << '*';
    first = false;
  };
  if (m.y_exp() != 0) {
    sep();
    os << 'y';
    if (m.y_exp() != 1) os << '^' << m.y_exp();
  }
  if (m.z_exp() != 0) {
    sep();
    os << 'z';
    if (m.z_exp() != 1) os << '^' << m.z_exp();
  }
  if (m.has_weight()) {
    int r = rank_hint;
    if (r < 0) {
      r = 1;
      for (int i = 0; i < kMaxRank; ++i)
        if (m.exp[i] != 0) r = i + 1;
    }
    sep();
    os << "e^(";
    for (int i = 0; i < r; ++i) os << (i ? "," : "") << m.exp[i];
    os << ')';
  }
  if (first) os << '1';
  return os.str();
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer c = t.coeff;
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << monomial_to_string(t.mono);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

std::optional<LaurentPoly> exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw ArithmeticError("exact_divide: division by the zero polynomial");
  if (a.is_zero()) return LaurentPoly{};
  if (b.is_monomial()) {
    const auto& [bm, bc] = b.leading();
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(a.size());
    Monomial inv = bm.inverse();
    for (const auto& t : a.terms()) {
      Integer q, r;
      boost::multiprecision::divide_qr(t.coeff, bc, q, r);
      if (r != 0) return std::nullopt;
      terms.push_back({t.mono * inv, std::move(q)});
    }
    return LaurentPoly::from_terms(std::move(terms));
  }

  // Every quotient exponent lies in the box [min_a - min_b, max_a - max_b]
  // slot by slot (top and bottom degree parts multiply without cancellation
  // in an integral domain).  The remainder's leading monomial strictly
  // decreases, so the loop visits each box point at most once.
  std::array<int, kSlots> lo{}, hi{};
  for (int s = 0; s < kSlots; ++s) {
    lo[s] = a.min_exp(s) - b.min_exp(s);
    hi[s] = a.max_exp(s) - b.max_exp(s);
    if (lo[s] > hi[s]) return std::nullopt;
  }

  const auto& [lead_m, lead_c] = b.leading();
  const Monomial lead_inv = lead_m.inverse();
  std::map<Monomial, Integer, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);

  std::vector<LaurentPoly::Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    Monomial qm = top->first * lead_inv;
    for (int s = 0; s < kSlots; ++s)
      if (qm.exp[s] < lo[s] || qm.exp[s] > hi[s]) return std::nullopt;
    Integer qc, r;
    boost::multiprecision::divide_qr(top->second, lead_c, qc, r);
    if (r != 0) return std::nullopt;
    rem.erase(top);
    bool first = true;
    for (const auto& t : b.terms()) {
      if (first) {  // leading term cancels by construction
        first = false;
        continue;
      }
      Monomial m = t.mono * qm;
      auto [it, inserted] = rem.try_emplace(m, 0);
      it->second -= qc * t.coeff;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

LaurentPoly dual_involution(const LaurentPoly& p) {
  return p.map_monomials([](const Monomial& m) { return m.inverse(); });
}

}  // namespace kflag
