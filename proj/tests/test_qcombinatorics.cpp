#include <doctest.h>

#include <random>

#include "qlucas/landau.hpp"
#include "qlucas/qcombinatorics.hpp"
#include "support/oracles.hpp"

using namespace qlucas;

TEST_CASE("q-integers and q-factorials") {
  CHECK(q_integer(0).is_zero());
  CHECK(q_integer(1) == IntPolynomial::one());
  CHECK(q_integer(4) == IntPolynomial{1, 1, 1, 1});
  CHECK(q_factorial(0) == IntPolynomial::one());
  CHECK(q_factorial(3) == IntPolynomial{1, 2, 2, 1});
  CHECK(eval_at_one(q_factorial(5)) == 120);
}

TEST_CASE("q-binomials") {
  for (std::uint64_t n = 0; n < 6; ++n) CHECK(q_binomial(n, 0) == IntPolynomial::one());
  CHECK(q_binomial(2, 1) == IntPolynomial{1, 1});
  CHECK(q_binomial(4, 2) == IntPolynomial{1, 1, 2, 1, 1});
  CHECK(q_binomial(3, 5).is_zero());
}

TEST_CASE("q-binomials are palindromic, positive and collapse to binomials") {
  for (std::uint64_t n = 0; n <= 60; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      const auto p = q_binomial(n, k);
      const auto& c = p.coeffs();
      REQUIRE(c.size() == k * (n - k) + 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c[i] > 0);
        CHECK(c[i] == c[c.size() - 1 - i]);
      }
      CHECK(eval_at_one(p) == binomial(n, k));
      CHECK(binomial(n, k) == oracle::binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k)));
    }
  }
}

TEST_CASE("q-binomials agree with the Pascal recurrence") {
  for (std::uint64_t n = 0; n <= 30; ++n)
    for (std::uint64_t k = 0; k <= n; ++k) CHECK(q_binomial(n, k).coeffs() == oracle::q_binomial(n, k));
}

TEST_CASE("ratio validation") {
  RatioSpec s;
  s.dim = 2;
  s.e = {{1, 1}};
  s.f = {{1}};
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  s.f = {{-1, 0}};
  CHECK_THROWS_AS(s.validate(), InvalidSpec);
  CHECK_THROWS_AS(q_ratio(RatioSpec::central_binomial(), {1, 2}), InvalidSpec);
  CHECK_THROWS_AS(q_ratio(RatioSpec::central_binomial(), {-1}), InvalidSpec);
}

TEST_CASE("q-factorial ratios") {
  const auto central = RatioSpec::central_binomial();
  CHECK(q_ratio(central, {3}) == q_binomial(6, 3));
  CHECK(q_ratio(central, {0}) == IntPolynomial::one());
  CHECK(q_ratio(RatioSpec::apery_a(), {0, 0}) == IntPolynomial::one());
  CHECK(q_ratio(RatioSpec::apery_a(), {1, 1}) == IntPolynomial{1, 2, 2, 1} * IntPolynomial{1, 1});
  CHECK(q_ratio(central, {5}) == q_ratio_cyclotomic(central, {5}));
}

TEST_CASE("cyclotomic route") {
  const auto central = RatioSpec::central_binomial();
  // Delta(1) = 0, Delta(2/3) = Delta(1/2) = 1: [4, 2]_q = phi_3 phi_4.
  CHECK(cyclotomic_exponents(central, {2}) == std::vector<std::int64_t>{0, 1, 1});
  CHECK(q_binomial(4, 2) == cyclotomic(3) * cyclotomic(4));
  CHECK(q_ratio_cyclotomic(central, {2}) == q_binomial(4, 2));
  CHECK(q_ratio_cyclotomic(central, {0}) == IntPolynomial::one());
  CHECK(q_ratio_cyclotomic(RatioSpec::apery_a(), {1, 1}) == q_ratio(RatioSpec::apery_a(), {1, 1}));
}

TEST_CASE("dual path on random integral ratios") {
  std::mt19937_64 rng(101);
  int tested = 0;
  while (tested < 15) {
    const auto spec = oracle::random_balanced_spec(rng, 1 + rng() % 2);
    if (!check_landau(spec).integrality) continue;
    ++tested;
    const IntVector box(spec.dim, 6);
    for_each_ratio(spec, box, [&](const IntVector& n, const IntPolynomial& walked) {
      const auto direct = q_ratio(spec, n);
      CHECK(direct == walked);
      CHECK(direct == q_ratio_cyclotomic(spec, n));
      CHECK(eval_at_one(direct) == ratio_at_one(spec, n));
    });
  }
}

TEST_CASE("failure modes agree") {
  RatioSpec inverse;
  inverse.e = {{1}, {1}};
  inverse.f = {{2}};
  CHECK(q_ratio(inverse, {0}) == IntPolynomial::one());
  for (std::int64_t n = 1; n <= 6; ++n) {
    CHECK_THROWS_AS(q_ratio(inverse, {n}), NotDivisible);
    CHECK_THROWS_AS(q_ratio_cyclotomic(inverse, {n}), NegativeExponent);
  }

  std::mt19937_64 rng(202);
  for (int i = 0; i < 40; ++i) {
    auto spec = oracle::random_balanced_spec(rng, 1 + rng() % 2);
    std::swap(spec.e, spec.f);
    IntVector n(spec.dim);
    for (auto& c : n) c = static_cast<std::int64_t>(rng() % 5);
    bool direct_failed = false, cyclo_failed = false;
    try {
      q_ratio(spec, n);
    } catch (const NotDivisible&) {
      direct_failed = true;
    }
    try {
      q_ratio_cyclotomic(spec, n);
    } catch (const NegativeExponent&) {
      cyclo_failed = true;
    }
    CHECK(direct_failed == cyclo_failed);
  }
}

TEST_CASE("walk over a box") {
  const auto spec = RatioSpec::apery_b();
  std::size_t visited = 0;
  for_each_ratio(spec, {3, 4}, [&](const IntVector& n, const IntPolynomial& p) {
    ++visited;
    CHECK(p == q_ratio(spec, n));
  });
  CHECK(visited == 20);
  visited = 0;
  for_each_ratio(spec, {5, 5}, [&](const IntVector& n, const IntPolynomial&) {
    CHECK(n[0] + n[1] <= 4);
    ++visited;
  }, 4);
  CHECK(visited == 15);
  visited = 0;
  for_each_ratio_slice(spec, {4, 2}, 2, [&](const IntVector& n, const IntPolynomial& p) {
    CHECK(n[0] == 2);
    CHECK(p == q_ratio(spec, n));
    ++visited;
  });
  CHECK(visited == 3);
}
