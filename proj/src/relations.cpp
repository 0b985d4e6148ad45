#include "qlucas/relations.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qlucas {

RationalSeries to_rational_series(const std::vector<Integer>& coeffs) {
  RationalSeries out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.emplace_back(c);
  return out;
}

RationalSeries evaluate_series_at(const TruncatedSeries& s, const Rational& q) {
  if (s.num_vars() != 1) throw std::invalid_argument("evaluate_series_at needs a one-variable series");
  RationalSeries out(static_cast<std::size_t>(s.order()) + 1, Rational(0));
  for (const auto& [n, c] : s.coeffs()) {
    if (n[0] <= s.order()) out[static_cast<std::size_t>(n[0])] = eval_at(c, q);
  }
  return out;
}

bool monomial_less(const IntVector& a, const IntVector& b) {
  std::int64_t da = 0, db = 0;
  for (auto v : a) da += v;
  for (auto v : b) db += v;
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::string RelationCandidate::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms) {
    const Integer mag = abs(term.coeff);
    if (first) {
      if (term.coeff < 0) os << "-";
    } else {
      os << (term.coeff < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t v = 0; v < term.exponents.size(); ++v) {
      if (term.exponents[v] == 0) continue;
      std::string name = v == 0 ? "x" : "y" + std::to_string(v);
      if (term.exponents[v] > 1) name += "^" + std::to_string(term.exponents[v]);
      factors.push_back(name);
    }
    if (factors.empty() || mag != 1) {
      os << mag.get_str();
      if (!factors.empty()) os << "*";
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return first ? "0" : os.str();
}

std::int64_t minimum_relation_order(std::size_t num_series, std::int64_t dx, std::int64_t dy) {
  // Number of y-monomials of total degree <= dy in n variables is C(n + dy, n).
  const Integer monos = binomial(num_series + static_cast<std::uint64_t>(dy), num_series);
  return (dx + 1) * monos.get_si() + kRelationSafetyMargin;
}

namespace {

RationalSeries truncated_product(const RationalSeries& a, const RationalSeries& b, std::size_t len) {
  RationalSeries r(len, Rational(0));
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) {
      if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

void y_monomials(std::size_t n, std::int64_t budget, IntVector& current, std::vector<IntVector>& out) {
  if (current.size() == n) {
    out.push_back(current);
    return;
  }
  for (std::int64_t k = 0; k <= budget; ++k) {
    current.push_back(k);
    y_monomials(n, budget - k, current, out);
    current.pop_back();
  }
}

// Y^alpha for every requested alpha, truncated to len coefficients.
std::map<IntVector, RationalSeries> monomial_series(const std::vector<RationalSeries>& series,
                                                    const std::vector<IntVector>& alphas, std::size_t len) {
  std::map<IntVector, RationalSeries> out;
  RationalSeries one(len, Rational(0));
  one[0] = 1;
  std::map<std::pair<std::size_t, std::int64_t>, RationalSeries> powers;
  auto power = [&](std::size_t i, std::int64_t k) -> const RationalSeries& {
    auto key = std::make_pair(i, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    RationalSeries p = one;
    for (std::int64_t e = 0; e < k; ++e) p = truncated_product(p, series[i], len);
    return powers.emplace(key, std::move(p)).first->second;
  };
  for (const auto& alpha : alphas) {
    RationalSeries s = one;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] > 0) s = truncated_product(s, power(i, alpha[i]), len);
    }
    out.emplace(alpha, std::move(s));
  }
  return out;
}

Integer lcm_of_denominators(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

struct Echelon {
  std::vector<std::vector<Integer>> rows;
  std::vector<std::size_t> pivot_cols;
};

// Fraction-free (Bareiss) row echelon form. Among the candidate pivots of a
// column the one with the fewest bits is used.
Echelon bareiss(std::vector<std::vector<Integer>> m, std::size_t cols) {
  Echelon ech;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t best = m.size();
    std::size_t best_bits = 0;
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const std::size_t bits = mpz_sizeinbase(m[i][c].get_mpz_t(), 2);
      if (best == m.size() || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    const Integer& piv = m[r][c];
    Integer tmp;
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Integer factor = m[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // m[i][j] = (piv * m[i][j] - factor * m[r][j]) / prev, exact.
        mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), m[i][j].get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), m[r][j].get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = piv;
    ech.pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  ech.rows = std::move(m);
  return ech;
}

RationalSeries evaluate_relation(const RelationCandidate& cand, const std::vector<RationalSeries>& series,
                                 std::size_t len) {
  std::vector<IntVector> alphas;
  for (const auto& t : cand.terms) alphas.emplace_back(t.exponents.begin() + 1, t.exponents.end());
  auto ys = monomial_series(series, alphas, len);
  RationalSeries total(len, Rational(0));
  for (const auto& t : cand.terms) {
    const auto& y = ys.at(IntVector(t.exponents.begin() + 1, t.exponents.end()));
    const auto shift = static_cast<std::size_t>(t.exponents[0]);
    for (std::size_t j = shift; j < len; ++j) total[j] += Rational(t.coeff) * y[j - shift];
  }
  return total;
}

}  // namespace

bool verify_relation(const RelationCandidate& candidate, const std::vector<RationalSeries>& series,
                     std::int64_t order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  const auto len = static_cast<std::size_t>(order) + 1;
  for (const auto& s : series) {
    if (s.size() < len) throw InsufficientTruncation("series are shorter than order " + std::to_string(order));
  }
  for (const auto& t : candidate.terms) {
    if (t.exponents.size() != series.size() + 1) throw std::invalid_argument("candidate arity does not match");
  }
  const auto values = evaluate_relation(candidate, series, len);
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 0; });
}

RelationSearch find_relations(const std::vector<RationalSeries>& series, std::int64_t dx, std::int64_t dy,
                              std::int64_t order) {
  if (series.empty()) throw std::invalid_argument("need at least one series");
  if (dx < 0 || dy < 0) throw std::invalid_argument("degree bounds must be nonnegative");
  const std::int64_t required = minimum_relation_order(series.size(), dx, dy);
  if (order < required) throw OrderTooSmall(order, required);
  const auto len = static_cast<std::size_t>(order) + 1;
  for (const auto& s : series) {
    if (s.size() < len) throw InsufficientTruncation("series are shorter than order " + std::to_string(order));
  }

  std::vector<IntVector> alphas;
  IntVector scratch;
  y_monomials(series.size(), dy, scratch, alphas);
  std::vector<IntVector> columns;
  for (std::int64_t i = 0; i <= dx; ++i) {
    for (const auto& a : alphas) {
      IntVector mono{i};
      mono.insert(mono.end(), a.begin(), a.end());
      columns.push_back(std::move(mono));
    }
  }
  std::sort(columns.begin(), columns.end(), monomial_less);
  const auto ys = monomial_series(series, alphas, len);

  // Row j: coefficient of x^j in x^i Y^alpha, cleared to integers row by row.
  std::vector<std::vector<Integer>> matrix;
  matrix.reserve(len);
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<Rational> row(columns.size(), Rational(0));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto i = static_cast<std::size_t>(columns[c][0]);
      if (j < i) continue;
      row[c] = ys.at(IntVector(columns[c].begin() + 1, columns[c].end()))[j - i];
    }
    const Integer scale = lcm_of_denominators(row);
    std::vector<Integer> irow(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Rational v = row[c] * scale;
      irow[c] = v.get_num();
    }
    matrix.push_back(std::move(irow));
  }

  const Echelon ech = bareiss(std::move(matrix), columns.size());

  RelationSearch result;
  result.unknowns = columns.size();
  result.equations = len;
  result.rank = ech.pivot_cols.size();
  result.dx = dx;
  result.dy = dy;
  result.order = order;

  std::vector<bool> is_pivot(columns.size(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < columns.size(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(columns.size(), Rational(0));
    x[free] = 1;
    for (std::size_t r = ech.pivot_cols.size(); r-- > 0;) {
      const std::size_t pc = ech.pivot_cols[r];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < columns.size(); ++j) {
        if (x[j] != 0 && ech.rows[r][j] != 0) acc += Rational(ech.rows[r][j]) * x[j];
      }
      x[pc] = -acc / Rational(ech.rows[r][pc]);
    }
    Integer den = 1;
    for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> ints(columns.size());
    Integer content = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Rational v = x[c] * den;
      ints[c] = v.get_num();
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[c].get_mpz_t());
    }
    RelationCandidate cand;
    cand.verified_order = order;
    // Columns are sorted ascending, so the last nonzero one leads.
    int sign = 1;
    for (std::size_t c = columns.size(); c-- > 0;) {
      if (ints[c] != 0) {
        sign = ints[c] < 0 ? -1 : 1;
        break;
      }
    }
    for (std::size_t c = columns.size(); c-- > 0;) {
      if (ints[c] == 0) continue;
      Integer v;
      mpz_divexact(v.get_mpz_t(), ints[c].get_mpz_t(), content.get_mpz_t());
      if (sign < 0) v = -v;
      cand.terms.push_back({columns[c], v});
    }
    result.candidates.push_back(std::move(cand));
  }

  const std::int64_t doubled = 2 * order;
  const bool long_enough = std::all_of(series.begin(), series.end(), [&](const RationalSeries& s) {
    return static_cast<std::int64_t>(s.size()) > doubled;
  });
  if (long_enough) {
    for (auto& cand : result.candidates) {
      cand.stability_checked = true;
      cand.truncation_artifact = !verify_relation(cand, series, doubled);
    }
  }
  return result;
}

}  // namespace qlucas
