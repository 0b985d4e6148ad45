#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlucas {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMonic : public Error {
 public:
  NotMonic() : Error("modulus is not monic") {}
};

class NegativeExponent : public Error {
 public:
  explicit NegativeExponent(std::uint64_t b)
      : Error("cyclotomic exponent is negative at b = " + std::to_string(b)), b_(b) {}
  std::uint64_t b() const { return b_; }

 private:
  std::uint64_t b_;
};

class DimensionTooLarge : public Error {
 public:
  explicit DimensionTooLarge(std::uint64_t budget)
      : Error("cell enumeration exceeded its budget of " + std::to_string(budget) + " signatures"),
        budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class InsufficientTruncation : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  explicit NotPrime(std::uint64_t p) : Error(std::to_string(p) + " is not prime") {}
};

class OrderTooSmall : public Error {
 public:
  OrderTooSmall(std::int64_t order, std::int64_t required)
      : Error("truncation order " + std::to_string(order) + " is below the required " +
              std::to_string(required)),
        required_(required) {}
  std::int64_t required() const { return required_; }

 private:
  std::int64_t required_;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace qlucas
