#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlucas/intpoly.hpp"

namespace qlucas {

using IntVector = std::vector<std::int64_t>;

std::int64_t dot(const IntVector& a, const IntVector& b);

/**
 * The pair of vector tuples (e, f) defining the q-factorial ratio
 *
 *   Q(q; n) = prod_i [e_i . n]_q! / prod_j [f_j . n]_q!
 *
 * All vectors have `dim` nonnegative components. A power r of a ratio is
 * expressed by repeating vectors.
 */
struct RatioSpec {
  std::size_t dim = 1;
  std::vector<IntVector> e;
  std::vector<IntVector> f;

  /// Throws InvalidSpec when the shape or sign invariants do not hold.
  void validate() const;

  IntVector sum_e() const;  // |e|
  IntVector sum_f() const;  // |f|
  bool balanced() const { return sum_e() == sum_f(); }

  /// Largest t . n over t in e and f.
  std::int64_t max_dot(const IntVector& n) const;

  std::string to_string() const;

  friend bool operator==(const RatioSpec&, const RatioSpec&) = default;

  static RatioSpec central_binomial(unsigned r = 1);
  static RatioSpec apery_a();
  static RatioSpec apery_b();
};

IntPolynomial q_integer(std::uint64_t n);
IntPolynomial q_factorial(std::uint64_t n);
/// Gaussian binomial; 0 when k > n.
IntPolynomial q_binomial(std::uint64_t n, std::uint64_t k);

/// Ordinary binomial and factorial ratio at q = 1, pure integer arithmetic.
Integer binomial(std::uint64_t n, std::uint64_t k);

/**
 * Q_{e,f}(q; n) by direct division: the numerator q-factorials are multiplied
 * first, then each denominator q-factorial is divided out, largest first.
 * Throws NotDivisible when the ratio is not in Z[q].
 */
IntPolynomial q_ratio(const RatioSpec& spec, const IntVector& n);

/// Cyclotomic exponents Delta(n / b) for b = 2 .. max_dot(n); index 0 is b = 2.
std::vector<std::int64_t> cyclotomic_exponents(const RatioSpec& spec, const IntVector& n);

/**
 * Q_{e,f}(q; n) as prod_{b>=2} phi_b(q)^Delta(n/b). The product is truncated at
 * B = max_t t.n since every floor vanishes beyond it. Throws NegativeExponent
 * with the smallest offending b.
 */
IntPolynomial q_ratio_cyclotomic(const RatioSpec& spec, const IntVector& n);

/// Q_{e,f}(1; n) with big-integer factorials. Throws NotDivisible (constant remainder).
Integer ratio_at_one(const RatioSpec& spec, const IntVector& n);

/**
 * Visits Q(q; n) for every n in the box 0 <= n <= box (componentwise), in
 * lexicographic order, updating the previous value by multiplying and
 * dividing the few q-integers that change between neighbours. An optional
 * total-degree bound skips n with sum(n) > total_bound.
 */
void for_each_ratio(const RatioSpec& spec, const IntVector& box,
                    const std::function<void(const IntVector&, const IntPolynomial&)>& visit,
                    std::int64_t total_bound = -1);

/// The part of for_each_ratio() with n[0] == first, seeded by a direct q_ratio().
void for_each_ratio_slice(const RatioSpec& spec, const IntVector& box, std::int64_t first,
                          const std::function<void(const IntVector&, const IntPolynomial&)>& visit);

}  // namespace qlucas
