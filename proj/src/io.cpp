#include "kflag/io.hpp"

#include <algorithm>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

ojson integer_json(const Integer& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
    return c.convert_to<std::int64_t>();
  return c.str();
}

Integer integer_from(const ojson& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  throw UsageError("expected an integer, got " + j.dump());
}

ojson weight_json(const Monomial& m, int rank) {
  ojson a = ojson::array();
  for (int i = 0; i < rank; ++i) a.push_back(m.weight_coord(i));
  return a;
}

Monomial monomial_from(const ojson& lambda, int y, int z) {
  if (!lambda.is_array() || lambda.size() > static_cast<std::size_t>(kMaxRank))
    throw UsageError("bad weight vector " + lambda.dump());
  Monomial m;
  for (std::size_t i = 0; i < lambda.size(); ++i) m.exp[i] = lambda[i].get<int>();
  m.exp[kYSlot] = y;
  m.exp[kZSlot] = z;
  return m;
}

int rank_of(const FlagPtr& fv) { return fv->roots().rank(); }

Basis basis_from(const std::string& name) {
  for (Basis b : {Basis::Schubert, Basis::OppositeSchubert, Basis::FixedPoint, Basis::Casselman})
    if (name == basis_name(b)) return b;
  throw UsageError("unknown basis '" + name + "'");
}

std::string weight_text(const RootSystem& rs, const Monomial& m) {
  Weight w{};
  for (int i = 0; i < rs.rank(); ++i) w[i] = m.weight_coord(i);
  std::vector<int> coords;
  char sym = 'a';
  if (auto rc = rs.to_root_coordinates(w)) {
    coords = *rc;
  } else {
    coords.assign(w.begin(), w.begin() + rs.rank());
    sym = 'w';
  }
  std::string s;
  for (int i = 0; i < rs.rank(); ++i) {
    const int c = coords[i];
    if (c == 0) continue;
    if (c < 0) s += "-";
    else if (!s.empty()) s += "+";
    if (std::abs(c) != 1) s += std::to_string(std::abs(c));
    s += sym + std::to_string(i + 1);
  }
  return s;
}

std::string monomial_text(const RootSystem& rs, const Monomial& m) {
  std::vector<std::string> parts;
  auto var = [&](const char* v, int k) {
    if (k == 0) return;
    parts.push_back(k == 1 ? std::string(v) : std::string(v) + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k)));
  };
  var("y", m.y_exp());
  var("z", m.z_exp());
  if (m.has_weight()) parts.push_back("e^(" + weight_text(rs, m) + ")");
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
  return s;
}

}  // namespace

// --- JSON ---------------------------------------------------------------------------

ojson to_json(const LaurentPoly& p, int rank) {
  ojson a = ojson::array();
  for (const auto& t : p.terms())
    a.push_back(ojson::array({integer_json(t.coeff), weight_json(t.mono, rank), t.mono.y_exp(), t.mono.z_exp()}));
  return a;
}

LaurentPoly poly_from_json(const ojson& j) {
  if (!j.is_array()) throw UsageError("polynomial must be an array");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4) throw UsageError("bad monomial " + t.dump());
    terms.push_back({monomial_from(t[1], t[2].get<int>(), t[3].get<int>()), integer_from(t[0])});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

ojson to_json(const RationalFn& f, int rank) {
  ojson den = ojson::array();
  for (const auto& [d, mult] : f.den()) {
    ojson e;
    const auto kind = d.kind();
    e["kind"] = to_string(kind);
    if (kind == DenomFactor::Kind::Constant) {
      e["a"] = integer_json(d.a);
    } else {
      e["lambda"] = weight_json(d.m, rank);
      if (kind == DenomFactor::Kind::General) {
        e["a"] = integer_json(d.a);
        e["b"] = integer_json(d.b);
        e["y_exp"] = d.m.y_exp();
        e["z_exp"] = d.m.z_exp();
      }
    }
    e["mult"] = mult;
    den.push_back(std::move(e));
  }
  ojson r;
  r["num"] = to_json(f.num(), rank);
  r["den"] = std::move(den);
  return r;
}

RationalFn rational_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw UsageError("bad rational " + j.dump());
  std::vector<std::pair<DenomFactor, int>> den;
  for (const auto& e : j["den"]) {
    const std::string kind = e.at("kind").get<std::string>();
    DenomFactor d;
    if (kind == "one_minus_e") {
      d = {1, -1, monomial_from(e.at("lambda"), 0, 0)};
    } else if (kind == "one_plus_ye") {
      d = {1, 1, monomial_from(e.at("lambda"), 1, 0)};
    } else if (kind == "one_minus_qe") {
      d = {1, -1, monomial_from(e.at("lambda"), 0, 2)};
    } else if (kind == "const") {
      d = {integer_from(e.at("a")), 0, Monomial{}};
    } else if (kind == "general") {
      d = {integer_from(e.at("a")), integer_from(e.at("b")),
           monomial_from(e.at("lambda"), e.at("y_exp").get<int>(), e.at("z_exp").get<int>())};
    } else {
      throw UsageError("unknown denominator kind '" + kind + "'");
    }
    den.emplace_back(d, e.at("mult").get<int>());
  }
  return RationalFn::assemble(poly_from_json(j["num"]), den);
}

ojson root_system_json(const RootSystem& rs) {
  ojson j;
  j["type"] = std::string(1, rs.type());
  j["rank"] = rs.rank();
  return j;
}

void check_root_system(const FlagPtr& fv, const ojson& j) {
  if (j != root_system_json(fv->roots()))
    throw UsageError("root system " + j.dump() + " does not match " + root_system_json(fv->roots()).dump());
}

ojson to_json(const LocalizedClass& c) {
  const FlagPtr& fv = c.flag();
  ojson j;
  j["root_system"] = root_system_json(fv->roots());
  j["tag"] = c.tag();
  ojson values = ojson::object();
  for (Elt u = 0; u < fv->size(); ++u) values[fv->W().format(u)] = to_json(c.at(u), rank_of(fv));
  j["values"] = std::move(values);
  return j;
}

LocalizedClass class_from_json(const FlagPtr& fv, const ojson& j) {
  check_root_system(fv, j.at("root_system"));
  LocalizedClass c(fv, j.at("tag").get<std::string>());
  const auto& values = j.at("values");
  if (values.size() != static_cast<std::size_t>(fv->size()))
    throw UsageError("class '" + c.tag() + "' has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(fv->size()));
  for (const auto& [word, v] : values.items()) c.at(fv->W().parse(word)) = rational_from_json(v);
  return c;
}

ojson to_json(const FlagPtr& fv, const SchubertExpansion& e) {
  ojson j;
  j["root_system"] = root_system_json(fv->roots());
  j["basis"] = basis_name(e.basis);
  ojson coeff = ojson::object();
  for (Elt u = 0; u < fv->size(); ++u)
    if (!e.coeff[u].is_zero()) coeff[fv->W().format(u)] = to_json(e.coeff[u], rank_of(fv));
  j["coeff"] = std::move(coeff);
  return j;
}

SchubertExpansion expansion_from_json(const FlagPtr& fv, const ojson& j) {
  check_root_system(fv, j.at("root_system"));
  SchubertExpansion e;
  e.basis = basis_from(j.at("basis").get<std::string>());
  e.coeff.assign(fv->size(), RationalFn{});
  for (const auto& [word, v] : j.at("coeff").items()) e.coeff[fv->W().parse(word)] = rational_from_json(v);
  return e;
}

ojson to_json(const FlagPtr& fv, const StabMatrix& m) {
  ojson j;
  j["root_system"] = root_system_json(fv->roots());
  j["chamber"] = m.chamber == Chamber::Plus ? "plus" : "minus";
  j["polarization"] = m.polarization();
  j["slope"] = m.slope();
  ojson rows = ojson::array();
  for (const auto& r : m.rows) rows.push_back(to_json(r));
  j["rows"] = std::move(rows);
  return j;
}

StabMatrix stab_from_json(const FlagPtr& fv, const ojson& j) {
  check_root_system(fv, j.at("root_system"));
  StabMatrix m;
  const std::string c = j.at("chamber").get<std::string>();
  if (c != "plus" && c != "minus") throw UsageError("unknown chamber '" + c + "'");
  m.chamber = c == "plus" ? Chamber::Plus : Chamber::Minus;
  for (const auto& r : j.at("rows")) m.rows.push_back(class_from_json(fv, r));
  if (m.rows.size() != static_cast<std::size_t>(fv->size())) throw UsageError("stable matrix has the wrong number of rows");
  return m;
}

// --- rendering ----------------------------------------------------------------------

std::string pretty(const RootSystem& rs, const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<const LaurentPoly::Term*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  // low y and z degree first, constants before weights
  std::stable_sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
    if (a->mono.y_exp() != b->mono.y_exp()) return a->mono.y_exp() < b->mono.y_exp();
    if (a->mono.z_exp() != b->mono.z_exp()) return a->mono.z_exp() < b->mono.z_exp();
    return !a->mono.has_weight() && b->mono.has_weight();
  });
  std::string s;
  for (const auto* t : terms) {
    const std::string m = monomial_text(rs, t->mono);
    Integer c = t->coeff;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (c < 0) c = -c;
    if (m.empty()) s += c.str();
    else s += (c == 1 ? "" : c.str() + "*") + m;
  }
  return s;
}

std::string pretty(const RootSystem& rs, const RationalFn& f) {
  const std::string num = pretty(rs, f.num());
  if (f.is_polynomial()) return num;
  std::string den;
  for (const auto& [d, mult] : f.den()) {
    if (!den.empty()) den += "*";
    den += "(" + pretty(rs, d.expand()) + ")";
    if (mult > 1) den += "^" + std::to_string(mult);
  }
  return "(" + num + ")/" + (f.den().size() == 1 ? den : "(" + den + ")");
}

std::string pretty(const FlagPtr& fv, const SchubertExpansion& e) {
  const char* sym = e.basis == Basis::Schubert ? "O_" : e.basis == Basis::OppositeSchubert ? "O^" :
                    e.basis == Basis::FixedPoint ? "iota_" : "b_";
  std::string s;
  for (Elt u = fv->size() - 1; u >= 0; --u) {
    if (e.coeff[u].is_zero()) continue;
    const RationalFn& c = e.coeff[u];
    bool negative = c.is_polynomial() && std::all_of(c.num().terms().begin(), c.num().terms().end(),
                                                     [](const auto& t) { return t.coeff < 0; });
    const RationalFn shown = negative ? -c : c;
    std::string body = pretty(fv->roots(), shown);
    const bool unit = body == "1";
    if (shown.num().size() > 1 || !shown.is_polynomial()) body = "(" + body + ")";
    s += s.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    const std::string word = fv->W().format(u);
    s += (unit ? "" : body + "*") + sym + (fv->W().length(u) > 1 ? "{" + word + "}" : word);
  }
  return s.empty() ? "0" : s;
}

}  // namespace kflag
