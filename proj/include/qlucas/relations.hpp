#pragma once

#include <cstdint>
#include <vector>

#include "qlucas/intpoly.hpp"
#include "qlucas/qcombinatorics.hpp"
#include "qlucas/series.hpp"

namespace qlucas {

/// Dense one-variable series with rational coefficients, index = exponent.
using RationalSeries = std::vector<Rational>;

RationalSeries to_rational_series(const std::vector<Integer>& coeffs);
/// Substitutes a fixed rational q into every coefficient of a one-variable series.
RationalSeries evaluate_series_at(const TruncatedSeries& s, const Rational& q);

struct RelationTerm {
  /// (x exponent, y_1 exponent, ..., y_n exponent)
  IntVector exponents;
  Integer coeff;

  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/**
 * A nonzero P(x, y_1..y_n) with integer coefficients, primitive, with the
 * leading term (graded lex, x < y_1 < ... < y_n) positive. Terms are stored
 * in decreasing monomial order.
 */
struct RelationCandidate {
  std::vector<RelationTerm> terms;
  std::int64_t verified_order = 0;
  /// Set when the relation no longer holds at twice the search order.
  bool truncation_artifact = false;
  bool stability_checked = false;

  std::string to_string() const;
};

struct RelationSearch {
  std::vector<RelationCandidate> candidates;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  /// Pivot count of the elimination; unknowns - rank = number of candidates.
  std::size_t rank = 0;
  std::int64_t dx = 0;
  std::int64_t dy = 0;
  std::int64_t order = 0;
};

/// Extra equations demanded beyond the number of unknowns.
inline constexpr std::int64_t kRelationSafetyMargin = 8;

/// Smallest order find_relations() accepts for these bounds.
std::int64_t minimum_relation_order(std::size_t num_series, std::int64_t dx, std::int64_t dy);

/// Graded-lex comparison of (x, y_1, ..., y_n) exponent vectors with x < y_1 < ... < y_n.
bool monomial_less(const IntVector& a, const IntVector& b);

/**
 * Exact nullspace of "coefficient of x^j in P(x, f_1..f_n) = 0, j <= order"
 * over deg_x P <= dx and total y-degree <= dy, by fraction-free elimination.
 * An empty result means no such relation vanishes to this order. Each
 * candidate is re-checked at 2*order when the series are long enough.
 * Throws OrderTooSmall.
 */
RelationSearch find_relations(const std::vector<RationalSeries>& series, std::int64_t dx, std::int64_t dy,
                              std::int64_t order);

/// True iff the candidate annihilates the series through x^order. Throws InsufficientTruncation.
bool verify_relation(const RelationCandidate& candidate, const std::vector<RationalSeries>& series,
                     std::int64_t order);

}  // namespace qlucas
