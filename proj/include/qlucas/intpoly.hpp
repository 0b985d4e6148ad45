#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlucas/errors.hpp"

namespace qlucas {

using Integer = mpz_class;
using Rational = mpq_class;

/**
 * Univariate polynomial in q with arbitrary-precision integer coefficients.
 *
 * Coefficients are stored densely in ascending degree and the representation
 * is canonical: the last stored coefficient is nonzero, and the zero
 * polynomial is the empty sequence. The degree of zero is reported as
 * std::nullopt (minus infinity), never as -1.
 */
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial constant(const Integer& c);
  /// c * q^degree
  static IntPolynomial monomial(const Integer& c, std::size_t degree);
  static IntPolynomial one() { return constant(1); }

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const;
  /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  /// Coefficient of q^i; zero past the end.
  Integer coefficient(std::size_t i) const;
  const Integer& leading() const;
  bool is_monic() const;
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Multiplication by q^k.
  IntPolynomial shifted(std::size_t k) const;

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator-=(const IntPolynomial& rhs);
  IntPolynomial& operator*=(const IntPolynomial& rhs);
  IntPolynomial& operator*=(const Integer& rhs);

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form in descending degree, e.g. "q^4 - q^2 + 1".
  std::string to_string(std::string_view var = "q") const;

  /// Coefficients as decimal strings, ascending degree.
  std::vector<std::string> to_decimal_strings() const;
  static IntPolynomial from_decimal_strings(const std::vector<std::string>& coeffs);

 private:
  friend class PolyBuilder;
  void normalize();
  std::vector<Integer> coeffs_;
};

IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b);
IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(IntPolynomial a, const Integer& c);
std::ostream& operator<<(std::ostream& os, const IntPolynomial& p);

/// Raised when an exact division in Z[q] has a nonzero remainder.
class NotDivisible : public Error {
 public:
  explicit NotDivisible(IntPolynomial remainder)
      : Error("polynomial division is not exact"), remainder_(std::move(remainder)) {}
  const IntPolynomial& remainder() const { return remainder_; }

 private:
  IntPolynomial remainder_;
};

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b);

/// Quadratic convolution. Reference for the fast path in mul().
IntPolynomial mul_schoolbook(const IntPolynomial& a, const IntPolynomial& b);
/// Kronecker substitution through a single GMP integer product. Bit-exact.
IntPolynomial mul_kronecker(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial pow(const IntPolynomial& base, std::uint64_t exponent);

/**
 * Exact division in Z[q]. Throws NotDivisible when b does not divide a; the
 * carried remainder is the nonzero residue left by long division (when the
 * leading coefficient of b is not a unit, long division stops at the first
 * coefficient it cannot divide and carries the partial remainder).
 */
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);

struct DivRem {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// a = quotient * m + remainder with deg remainder < deg m. Throws NotMonic.
DivRem divrem_monic(const IntPolynomial& a, const IntPolynomial& m);
IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& m);

Integer eval_at_one(const IntPolynomial& a);
Integer eval_at(const IntPolynomial& a, const Integer& x);
Rational eval_at(const IntPolynomial& a, const Rational& x);

/// Reduction modulo q^period - 1: coefficient i lands on i mod period.
IntPolynomial fold_mod_power_minus_one(const IntPolynomial& a, std::uint64_t period);

/// The b-th cyclotomic polynomial. Memoized; safe to call concurrently.
const IntPolynomial& cyclotomic(std::uint64_t b);

/// Residue of a modulo the b-th cyclotomic polynomial.
IntPolynomial reduce_mod_cyclotomic(const IntPolynomial& a, std::uint64_t b);

/// Multiplication by [n]_q = 1 + q + ... + q^(n-1), linear time.
IntPolynomial mul_q_integer(const IntPolynomial& a, std::uint64_t n);
/// Exact division by [n]_q (n >= 1), linear time. Throws NotDivisible.
IntPolynomial div_q_integer(const IntPolynomial& a, std::uint64_t n);

}  // namespace qlucas
