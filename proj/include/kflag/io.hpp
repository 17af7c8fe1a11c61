#pragma once

// JSON encodings and human-readable rendering.
//
//   monomial     [coeff, [lambda_1..lambda_r], y_exp, z_exp]
//   polynomial   array of monomials in the global (decreasing) order
//   rational     {"num": polynomial, "den": [{"kind", "lambda", "mult", ...}]}
//   class        {"root_system": {"type", "rank"}, "tag", "values": {word: rational}}
//
// Coefficients that do not fit in 64 bits are written as decimal strings.
// Weyl elements are canonical words, the identity is "e".

#include <string>

#include <json.hpp>

#include "kflag/kclass.hpp"
#include "kflag/stable.hpp"

namespace kflag {

using ojson = nlohmann::ordered_json;

ojson to_json(const LaurentPoly& p, int rank);
LaurentPoly poly_from_json(const ojson& j);
ojson to_json(const RationalFn& f, int rank);
RationalFn rational_from_json(const ojson& j);

ojson root_system_json(const RootSystem& rs);
/// Throws UsageError unless j names fv's root system.
void check_root_system(const FlagPtr& fv, const ojson& j);

ojson to_json(const LocalizedClass& c);
LocalizedClass class_from_json(const FlagPtr& fv, const ojson& j);
/// Nonzero coefficients only, in element order.
ojson to_json(const FlagPtr& fv, const SchubertExpansion& e);
SchubertExpansion expansion_from_json(const FlagPtr& fv, const ojson& j);
ojson to_json(const FlagPtr& fv, const StabMatrix& m);
StabMatrix stab_from_json(const FlagPtr& fv, const ojson& j);

/// e^lambda as "e^(a1-2a2)" when lambda is in the root lattice, otherwise
/// "e^(w1+w2)" in fundamental weights.
std::string pretty(const RootSystem& rs, const LaurentPoly& p);
std::string pretty(const RootSystem& rs, const RationalFn& f);
/// "c_1 O_w1 + c_2 O_w2 ..." (zero coefficients skipped).
std::string pretty(const FlagPtr& fv, const SchubertExpansion& e);

}  // namespace kflag
