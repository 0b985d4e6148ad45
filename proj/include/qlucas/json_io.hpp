#pragma once

#include <json.hpp>

#include "qlucas/congruence.hpp"
#include "qlucas/intpoly.hpp"
#include "qlucas/landau.hpp"
#include "qlucas/qcombinatorics.hpp"
#include "qlucas/relations.hpp"
#include "qlucas/series.hpp"

namespace qlucas {

using Json = nlohmann::ordered_json;

/// Decimal-string coefficient array, ascending degree.
Json to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const Json& j);

/// {"dim": d, "e": [[...]], "f": [[...]]}
Json to_json(const RatioSpec& spec);
RatioSpec spec_from_json(const Json& j);

/// Exact rationals as "p/q" strings.
Json to_json(const RationalPoint& x);
Json to_json(const CellSignature& cell, const RatioSpec& spec);
Json to_json(const LandauReport& report, const RatioSpec& spec);

Json to_json(const CongruenceReport& report);

/// [{"exponents": [...], "coeff": ["..."]}, ...]
Json to_json(const TruncatedSeries& s);

Json to_json(const LucasVerdict& verdict);

/// Terms as [[exponent-vector], "coefficient"] pairs.
Json to_json(const RelationCandidate& cand);
Json to_json(const RelationSearch& search);

}  // namespace qlucas
