#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qlucas/congruence.hpp"
#include "qlucas/intpoly.hpp"
#include "qlucas/qcombinatorics.hpp"

namespace qlucas {

/// Which exponent vectors a truncated series knows: n <= cap componentwise,
/// and sum(n) <= total when a total bound is set.
struct Truncation {
  IntVector cap;
  std::optional<std::int64_t> total;

  bool contains(const IntVector& n) const;
};

/**
 * Multivariate power series over Z[q], known exactly on a truncation region.
 * Sparse: absent exponents inside the region are zero.
 */
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(std::size_t num_vars, Truncation truncation);

  static TruncatedSeries univariate(std::int64_t order);
  /// Integer coefficients c[0..] as constant polynomials in one variable.
  static TruncatedSeries from_integers(const std::vector<Integer>& coeffs);

  std::size_t num_vars() const { return num_vars_; }
  const Truncation& truncation() const { return truncation_; }
  const std::map<IntVector, IntPolynomial>& coeffs() const { return coeffs_; }

  /// Zero outside the stored support; throws InsufficientTruncation outside the region.
  IntPolynomial coefficient(const IntVector& n) const;
  IntPolynomial coefficient(std::int64_t n) const { return coefficient(IntVector{n}); }
  void set(const IntVector& n, IntPolynomial value);

  /// Univariate order: the largest certified exponent.
  std::int64_t order() const;

  /// Every coefficient evaluated at q = 1.
  std::vector<Integer> integers_at_one() const;

 private:
  std::size_t num_vars_ = 1;
  Truncation truncation_;
  std::map<IntVector, IntPolynomial> coeffs_;
};

/// F_{e,f}(q; x) on the given truncation. Throws HypothesisViolated without integrality.
TruncatedSeries build_F(const RatioSpec& spec, const Truncation& truncation);

/**
 * x_j <- q^(t_j) x^(m_j). Coefficient N of the result is
 * sum over m.n = N of q^(t.n) coeff(n). Every n with m.n <= order must lie in
 * the source truncation, else InsufficientTruncation.
 */
TruncatedSeries specialize(const TruncatedSeries& s, const IntVector& t, const IntVector& m, std::int64_t order);

struct CofactorResult {
  /// B_m(q) for m = 0 .. b-1, each reduced modulo phi_b.
  std::vector<IntPolynomial> cofactor;
  CongruenceReport report;
};

/**
 * Reads B_m = f_m mod phi_b for m < b from the one-variable series f and
 * checks f_{m+nb} == B_m g_n mod phi_b for every m + n b <= order.
 */
CofactorResult extract_cofactor(const TruncatedSeries& f, const std::vector<Integer>& g, std::uint64_t b,
                                std::int64_t order);

struct LucasVerdict {
  bool holds = false;
  std::uint64_t p = 0;
  std::uint64_t k = 1;
  /// A modulo p, coefficients in [0, p), exponents a with 0 <= a_i < p^k.
  std::map<IntVector, Integer> cofactor;
  /// First exponent (in enumeration order) where g_{a + p^k n} != A_a g_n mod p.
  std::optional<IntVector> witness;
  std::uint64_t checked = 0;
};

/**
 * Finite check of g(x) == A(x) g(x^(p^k)) mod p with deg_{x_i} A <= p^k - 1
 * over the truncation region of g. Throws NotPrime; g must have integer
 * (constant) coefficients and constant term 1.
 */
LucasVerdict verify_definition_Ld(const TruncatedSeries& g, std::uint64_t p, std::uint64_t k);

/// sum binom(2n, n)^r x^n, n <= order.
std::vector<Integer> central_binomial_powers(unsigned r, std::int64_t order);
/// sum [2n, n]_q^r x^n, n <= order.
TruncatedSeries central_q_binomial_series(unsigned r, std::int64_t order);

}  // namespace qlucas
