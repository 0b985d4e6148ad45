#include "qlucas/landau.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qlucas {

void RationalPoint::validate_unit_cube() const {
  for (const auto& c : coords) {
    if (c < 0 || c >= 1) throw std::invalid_argument("point coordinate " + to_string(c) + " is outside [0,1)");
  }
}

Rational dot(const IntVector& t, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < t.size() && i < x.size(); ++i) {
    if (t[i] != 0) s += Rational(static_cast<long>(t[i])) * x[i];
  }
  return s;
}

std::int64_t floor_to_int(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("floor does not fit in 64 bits");
  return q.get_si();
}

std::string to_string(const Rational& raw) {
  Rational r = raw;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

using System = std::vector<LinearConstraint>;

// Scales by a positive factor so the last nonzero coefficient is +-1, merging
// constraints with identical left-hand sides into the tightest one.
System normalize(System sys, bool& infeasible) {
  std::map<RationalVector, std::pair<Rational, bool>> tightest;
  for (auto& c : sys) {
    std::size_t last = c.coef.size();
    for (std::size_t i = c.coef.size(); i-- > 0;) {
      if (c.coef[i] != 0) {
        last = i;
        break;
      }
    }
    if (last == c.coef.size()) {
      // 0 <= rhs or 0 < rhs
      if (c.rhs < 0 || (c.strict && c.rhs == 0)) infeasible = true;
      continue;
    }
    Rational scale = abs(c.coef[last]);
    for (auto& a : c.coef) a /= scale;
    c.rhs /= scale;
    auto [it, inserted] = tightest.try_emplace(c.coef, c.rhs, c.strict);
    if (!inserted) {
      auto& [rhs, strict] = it->second;
      if (c.rhs < rhs || (c.rhs == rhs && c.strict)) {
        rhs = c.rhs;
        strict = c.strict;
      }
    }
  }
  System out;
  out.reserve(tightest.size());
  for (auto& [coef, bound] : tightest) out.push_back({coef, bound.first, bound.second});
  return out;
}

System eliminate(const System& sys, std::size_t var) {
  System upper, lower, out;
  for (const auto& c : sys) {
    const int s = sgn(c.coef[var]);
    if (s > 0) {
      upper.push_back(c);
    } else if (s < 0) {
      lower.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  for (const auto& u : upper) {
    for (const auto& l : lower) {
      // u/cu + l/|cl| cancels the variable.
      const Rational cu = u.coef[var];
      const Rational cl = -l.coef[var];
      LinearConstraint c;
      c.coef.resize(u.coef.size());
      for (std::size_t i = 0; i < c.coef.size(); ++i) c.coef[i] = u.coef[i] / cu + l.coef[i] / cl;
      c.coef[var] = 0;
      c.rhs = u.rhs / cu + l.rhs / cl;
      c.strict = u.strict || l.strict;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

std::optional<RationalVector> FourierMotzkin::solve() const {
  bool infeasible = false;
  std::vector<System> stages;
  stages.push_back(normalize(constraints_, infeasible));
  if (infeasible) return std::nullopt;
  // stages[k] has variables 0 .. num_vars_-1-k still free.
  for (std::size_t k = 0; k < num_vars_; ++k) {
    stages.push_back(normalize(eliminate(stages.back(), num_vars_ - 1 - k), infeasible));
    if (infeasible) return std::nullopt;
  }

  RationalVector x(num_vars_, 0);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    const System& sys = stages[num_vars_ - 1 - v];
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& c : sys) {
      if (c.coef[v] == 0) continue;
      Rational rest = c.rhs;
      for (std::size_t i = 0; i < v; ++i) rest -= c.coef[i] * x[i];
      Rational bound = rest / c.coef[v];
      if (c.coef[v] > 0) {
        if (!hi || bound < *hi || (bound == *hi && c.strict)) {
          hi_strict = (hi && bound == *hi) ? (hi_strict || c.strict) : c.strict;
          hi = bound;
        }
      } else {
        if (!lo || bound > *lo || (bound == *lo && c.strict)) {
          lo_strict = (lo && bound == *lo) ? (lo_strict || c.strict) : c.strict;
          lo = bound;
        }
      }
    }
    if (lo && hi) {
      if (*lo < *hi) {
        x[v] = (*lo + *hi) / 2;
      } else if (*lo == *hi && !lo_strict && !hi_strict) {
        x[v] = *lo;
      } else {
        throw std::logic_error("Fourier-Motzkin back-substitution found an empty interval");
      }
    } else if (lo) {
      x[v] = *lo + 1;
    } else if (hi) {
      x[v] = *hi - 1;
    }
  }

  for (const auto& c : constraints_) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < num_vars_; ++i) lhs += c.coef[i] * x[i];
    if (c.strict ? !(lhs < c.rhs) : !(lhs <= c.rhs)) {
      throw std::logic_error("Fourier-Motzkin witness violates an input constraint");
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Landau step function

std::int64_t delta_at(const RatioSpec& spec, const RationalVector& x) {
  std::int64_t d = 0;
  for (const auto& t : spec.e) d += floor_to_int(dot(t, x));
  for (const auto& t : spec.f) d -= floor_to_int(dot(t, x));
  return d;
}

bool in_domain_D(const RatioSpec& spec, const RationalPoint& x) {
  x.validate_unit_cube();
  for (const auto* tuple : {&spec.e, &spec.f}) {
    for (const auto& t : *tuple) {
      if (dot(t, x.coords) >= 1) return true;
    }
  }
  return false;
}

namespace {

bool is_zero_vector(const IntVector& t) {
  return std::all_of(t.begin(), t.end(), [](auto c) { return c == 0; });
}

std::int64_t component_sum(const IntVector& t) { return std::accumulate(t.begin(), t.end(), std::int64_t{0}); }

struct Arrangement {
  std::vector<IntVector> vectors;  // distinct nonzero, largest component sum first
  std::vector<IntVector> zeros;
};

Arrangement arrangement_of(const RatioSpec& spec) {
  std::set<IntVector> distinct;
  Arrangement a;
  for (const auto* tuple : {&spec.e, &spec.f}) {
    for (const auto& t : *tuple) {
      if (!distinct.insert(t).second) continue;
      if (is_zero_vector(t)) {
        a.zeros.push_back(t);
      } else {
        a.vectors.push_back(t);
      }
    }
  }
  std::stable_sort(a.vectors.begin(), a.vectors.end(), [](const IntVector& x, const IntVector& y) {
    const auto sx = component_sum(x), sy = component_sum(y);
    return sx != sy ? sx > sy : x < y;
  });
  return a;
}

LinearConstraint make_constraint(const IntVector& t, std::int64_t sign, std::int64_t rhs, bool strict) {
  LinearConstraint c;
  c.coef.reserve(t.size());
  for (auto v : t) c.coef.emplace_back(static_cast<long>(sign * v));
  c.rhs = Rational(static_cast<long>(rhs));
  c.strict = strict;
  return c;
}

FourierMotzkin unit_cube(std::size_t dim) {
  FourierMotzkin fm(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    IntVector axis(dim, 0);
    axis[j] = 1;
    fm.add(make_constraint(axis, -1, 0, false));  // -x_j <= 0
    fm.add(make_constraint(axis, 1, 1, true));    // x_j < 1
  }
  return fm;
}

std::int64_t cell_delta(const RatioSpec& spec, const std::map<IntVector, std::int64_t>& floors) {
  std::int64_t d = 0;
  for (const auto& t : spec.e) d += floors.at(t);
  for (const auto& t : spec.f) d -= floors.at(t);
  return d;
}

class CellSearch {
 public:
  CellSearch(const RatioSpec& spec, const EnumerationOptions& options)
      : spec_(spec), options_(options), arrangement_(arrangement_of(spec)) {}

  std::vector<CellSignature> run() {
    std::vector<std::int64_t> floors;
    recurse(unit_cube(spec_.dim), floors);
    return std::move(cells_);
  }

 private:
  void recurse(const FourierMotzkin& system, std::vector<std::int64_t>& floors) {
    if (++visited_ > options_.max_signatures) throw DimensionTooLarge(options_.max_signatures);
    auto point = system.solve();
    if (!point) return;
    const std::size_t depth = floors.size();
    if (depth == arrangement_.vectors.size()) {
      record(floors, std::move(*point));
      return;
    }
    const IntVector& t = arrangement_.vectors[depth];
    // 0 <= t.x < sum(t) on the unit cube.
    for (std::int64_t m = 0; m < component_sum(t); ++m) {
      FourierMotzkin next = system;
      next.add(make_constraint(t, -1, -m, false));   // t.x >= m
      next.add(make_constraint(t, 1, m + 1, true));  // t.x < m + 1
      floors.push_back(m);
      recurse(next, floors);
      floors.pop_back();
    }
  }

  void record(const std::vector<std::int64_t>& floors, RationalVector point) {
    CellSignature cell;
    for (std::size_t i = 0; i < floors.size(); ++i) {
      cell.floors[arrangement_.vectors[i]] = floors[i];
      if (floors[i] >= 1) cell.in_domain_D = true;
    }
    for (const auto& z : arrangement_.zeros) cell.floors[z] = 0;
    cell.feasible = true;
    cell.witness = RationalPoint{std::move(point)};
    cell.delta = cell_delta(spec_, cell.floors);
    cells_.push_back(std::move(cell));
  }

  const RatioSpec& spec_;
  const EnumerationOptions& options_;
  Arrangement arrangement_;
  std::uint64_t visited_ = 0;
  std::vector<CellSignature> cells_;
};

}  // namespace

std::map<IntVector, std::int64_t> floor_signature(const RatioSpec& spec, const RationalVector& x) {
  std::map<IntVector, std::int64_t> floors;
  for (const auto* tuple : {&spec.e, &spec.f}) {
    for (const auto& t : *tuple) floors[t] = floor_to_int(dot(t, x));
  }
  return floors;
}

std::vector<CellSignature> enumerate_cells(const RatioSpec& spec, const EnumerationOptions& options) {
  spec.validate();
  return CellSearch(spec, options).run();
}

LandauReport check_landau(const RatioSpec& spec, const EnumerationOptions& options) {
  LandauReport report;
  report.cells = enumerate_cells(spec, options);
  report.balanced = spec.balanced();

  bool first = true;
  for (const auto& cell : report.cells) {
    if (first || cell.delta < report.min_value_overall) report.min_value_overall = cell.delta;
    first = false;
    if (cell.in_domain_D && (!report.min_value_on_D || cell.delta < *report.min_value_on_D)) {
      report.min_value_on_D = cell.delta;
    }
    if (cell.delta < 0 || (cell.in_domain_D && cell.delta < 1)) report.violating_cells.push_back(cell);
  }

  // Delta(x + unit_j) = Delta(x) + (|e| - |f|)_j, so outside the unit cube the
  // minimum can only drop when some component of |e| - |f| is negative.
  const IntVector se = spec.sum_e(), sf = spec.sum_f();
  bool grows = true;
  for (std::size_t j = 0; j < spec.dim; ++j) grows = grows && se[j] >= sf[j];
  report.integrality = grows && report.min_value_overall >= 0;
  report.criterion_D = !report.min_value_on_D || *report.min_value_on_D >= 1;
  return report;
}

}  // namespace qlucas
