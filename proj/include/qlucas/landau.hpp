#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qlucas/intpoly.hpp"
#include "qlucas/qcombinatorics.hpp"

namespace qlucas {

using RationalVector = std::vector<Rational>;

/// A point of [0,1)^d with exact rational coordinates.
struct RationalPoint {
  RationalVector coords;

  /// Throws std::invalid_argument if a coordinate leaves [0,1).
  void validate_unit_cube() const;
};

Rational dot(const IntVector& t, const RationalVector& x);
std::int64_t floor_to_int(const Rational& x);

/// One inequality sum_i coef_i x_i <= rhs, or < rhs when strict.
struct LinearConstraint {
  RationalVector coef;
  Rational rhs;
  bool strict = false;
};

/**
 * Exact feasibility of a conjunction of strict and non-strict linear
 * inequalities over Q, by Fourier-Motzkin elimination. On success a point
 * satisfying every constraint is reconstructed by back-substitution.
 */
class FourierMotzkin {
 public:
  explicit FourierMotzkin(std::size_t num_vars) : num_vars_(num_vars) {}

  void add(LinearConstraint c) { constraints_.push_back(std::move(c)); }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  /// std::nullopt when infeasible.
  std::optional<RationalVector> solve() const;

 private:
  std::size_t num_vars_;
  std::vector<LinearConstraint> constraints_;
};

/**
 * A cell of the arrangement {t . x = m} inside [0,1)^d: one floor value per
 * distinct nonzero vector of e and f, constant on the cell.
 */
struct CellSignature {
  std::map<IntVector, std::int64_t> floors;
  bool feasible = false;
  std::optional<RationalPoint> witness;
  std::int64_t delta = 0;
  /// Some floor is >= 1, i.e. the whole cell lies in D_{e,f}.
  bool in_domain_D = false;
};

struct EnumerationOptions {
  std::uint64_t max_signatures = 1'000'000;
};

struct LandauReport {
  bool integrality = false;
  bool criterion_D = false;
  std::int64_t min_value_overall = 0;
  /// std::nullopt when no cell meets D_{e,f}.
  std::optional<std::int64_t> min_value_on_D;
  std::vector<CellSignature> violating_cells;
  std::vector<CellSignature> cells;
  bool balanced = false;
};

/// Delta_{e,f}(x) with exact floors; any rational vector is accepted.
std::int64_t delta_at(const RatioSpec& spec, const RationalVector& x);

/// True iff some t in e or f has t . x >= 1. Requires x in [0,1)^d.
bool in_domain_D(const RatioSpec& spec, const RationalPoint& x);

/// Floor signature of x; the key set matches enumerate_cells().
std::map<IntVector, std::int64_t> floor_signature(const RatioSpec& spec, const RationalVector& x);

/// Every nonempty cell of [0,1)^d with a witness. Throws DimensionTooLarge.
std::vector<CellSignature> enumerate_cells(const RatioSpec& spec, const EnumerationOptions& options = {});

LandauReport check_landau(const RatioSpec& spec, const EnumerationOptions& options = {});

std::string to_string(const Rational& r);

}  // namespace qlucas
