#include <doctest.h>

#include "qlucas/series.hpp"
#include "support/oracles.hpp"

using namespace qlucas;

namespace {

Truncation box(IntVector cap, std::optional<std::int64_t> total = {}) { return Truncation{std::move(cap), total}; }

}  // namespace

TEST_CASE("truncated series bookkeeping") {
  TruncatedSeries s(2, box({3, 2}, 4));
  CHECK(s.order() == 2);
  s.set({1, 1}, IntPolynomial{1, 1});
  CHECK(s.coefficient({1, 1}) == IntPolynomial{1, 1});
  CHECK(s.coefficient({0, 0}).is_zero());
  CHECK_THROWS_AS(s.coefficient({3, 2}), InsufficientTruncation);
  CHECK_THROWS_AS(s.set({4, 0}, IntPolynomial::one()), InsufficientTruncation);
  CHECK_THROWS(TruncatedSeries(2, box({1})));
}

TEST_CASE("generating series of a ratio") {
  const auto central = build_F(RatioSpec::central_binomial(), box({6}));
  CHECK(central.coefficient(2) == q_binomial(4, 2));
  CHECK(central.coefficient(0) == IntPolynomial::one());
  const auto apery = build_F(RatioSpec::apery_a(), box({3, 3}));
  CHECK(apery.coefficient({0, 0}) == IntPolynomial::one());
  CHECK(apery.coefficient({1, 1}) == q_ratio(RatioSpec::apery_a(), {1, 1}));
  RatioSpec inverse;
  inverse.e = {{1}, {1}};
  inverse.f = {{2}};
  CHECK_THROWS_AS(build_F(inverse, box({3})), HypothesisViolated);
}

TEST_CASE("truncation monotonicity") {
  const auto spec = RatioSpec::apery_b();
  const auto small = build_F(spec, box({3, 2}));
  const auto large = build_F(spec, box({6, 6}, 9));
  for (const auto& [n, c] : small.coeffs()) CHECK(large.coefficient(n) == c);
}

TEST_CASE("specialization gives the Apery q-sequences") {
  const auto spec = RatioSpec::apery_a();
  const auto f = build_F(spec, box({30, 30}, 30));
  for (std::int64_t t = 0; t <= 2; ++t) {
    const auto s = specialize(f, {t, 0}, {1, 1}, 30);
    for (std::int64_t n = 0; n <= 30; ++n) {
      CHECK(s.coefficient(n) == apery_q(AperyFamily::A, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(n)));
    }
  }
  const auto at_one = specialize(f, {0, 0}, {1, 1}, 12).integers_at_one();
  for (std::int64_t n = 0; n <= 12; ++n) CHECK(at_one[static_cast<std::size_t>(n)] == oracle::apery(n, 1));
}

TEST_CASE("specialization of a binomial power sum") {
  // e = r copies of (1,1), f = r copies each of (1,0) and (0,1): coefficient of x^n is sum_k [n,k]^r.
  for (unsigned r = 1; r <= 3; ++r) {
    RatioSpec spec;
    spec.dim = 2;
    for (unsigned i = 0; i < r; ++i) {
      spec.e.push_back({1, 1});
      spec.f.push_back({1, 0});
      spec.f.push_back({0, 1});
    }
    const auto s = specialize(build_F(spec, box({8, 8})), {0, 0}, {1, 1}, 8);
    for (std::uint64_t n = 0; n <= 8; ++n) {
      IntPolynomial sum;
      for (std::uint64_t k = 0; k <= n; ++k) sum += pow(q_binomial(n, k), r);
      CHECK(s.coefficient(static_cast<std::int64_t>(n)) == sum);
    }
  }
}

TEST_CASE("specialization edge cases") {
  TruncatedSeries one(2, box({4, 4}));
  one.set({0, 0}, IntPolynomial::one());
  const auto s = specialize(one, {3, 1}, {2, 1}, 4);
  CHECK(s.coefficient(0) == IntPolynomial::one());
  for (std::int64_t n = 1; n <= 4; ++n) CHECK(s.coefficient(n).is_zero());
  CHECK_THROWS_AS(specialize(one, {0, 0}, {1, 1}, 5), InsufficientTruncation);
  CHECK_THROWS_AS(specialize(one, {0, 0}, {0, 1}, 2), InsufficientTruncation);
  // Weighted exponents: x_1 -> q x^2.
  const auto central = build_F(RatioSpec::central_binomial(), box({5}));
  const auto w = specialize(central, {1}, {2}, 10);
  CHECK(w.coefficient(4) == q_binomial(4, 2).shifted(2));
  CHECK(w.coefficient(5).is_zero());
}

TEST_CASE("cofactor extraction") {
  for (unsigned r = 1; r <= 2; ++r) {
    const auto f = central_q_binomial_series(r, 20);
    const auto res = extract_cofactor(f, central_binomial_powers(r, 10), 2, 20);
    CHECK(res.report.passed());
    CHECK(res.cofactor.size() == 2);
  }
  const auto f = central_q_binomial_series(1, 10);
  const auto b1 = extract_cofactor(f, central_binomial_powers(1, 10), 1, 10);
  CHECK(b1.report.passed());
  REQUIRE(b1.cofactor.size() == 1);
  CHECK(b1.cofactor[0] == IntPolynomial::one());

  const auto apery = specialize(build_F(RatioSpec::apery_a(), box({30, 30}, 30)), {1, 0}, {1, 1}, 30);
  std::vector<Integer> g;
  for (std::int64_t n = 0; n <= 10; ++n) g.push_back(oracle::apery(n, 1));
  const auto res = extract_cofactor(apery, g, 3, 30);
  CHECK(res.report.passed());
  CHECK(res.report.checked == 31);

  // A wrong g is reported, not thrown.
  std::vector<Integer> wrong = g;
  wrong[2] += 1;
  CHECK_FALSE(extract_cofactor(apery, wrong, 3, 30).report.passed());
  CHECK_THROWS_AS(extract_cofactor(apery, g, 2, 30), InsufficientTruncation);
}

TEST_CASE("central q-binomial series") {
  const auto s = central_q_binomial_series(2, 6);
  for (std::uint64_t n = 0; n <= 6; ++n) CHECK(s.coefficient(static_cast<std::int64_t>(n)) == pow(q_binomial(2 * n, n), 2));
  CHECK(central_binomial_powers(1, 4) == std::vector<Integer>{1, 2, 6, 20, 70});
}

TEST_CASE("finite p-Lucas property") {
  const auto g1 = TruncatedSeries::from_integers(central_binomial_powers(1, 30));
  const auto v = verify_definition_Ld(g1, 3, 1);
  CHECK(v.holds);
  CHECK_FALSE(v.witness);
  CHECK(v.cofactor.at({0}) == 1);
  CHECK(v.cofactor.at({1}) == 2);

  const auto one = TruncatedSeries::from_integers({Integer(1)});
  const auto trivial = verify_definition_Ld(one, 5, 1);
  CHECK(trivial.holds);
  CHECK(trivial.cofactor.size() == 1);
  CHECK(trivial.cofactor.at({0}) == 1);

  std::vector<Integer> fact{1};
  for (int n = 1; n <= 16; ++n) fact.push_back(fact.back() * n);
  const auto bad = verify_definition_Ld(TruncatedSeries::from_integers(fact), 2, 1);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  // 1 * 1! = 1 but 2! = 2 == 0 mod 2.
  CHECK(*bad.witness == IntVector{2});

  CHECK_THROWS_AS(verify_definition_Ld(g1, 4, 1), NotPrime);
  CHECK(verify_definition_Ld(g1, 2, 2).holds);
}

TEST_CASE("p-Lucas for a multivariate series") {
  Truncation tr = box({12, 12});
  const auto f = build_F(RatioSpec::apery_b(), tr);
  TruncatedSeries g(2, tr);
  for (const auto& [n, c] : f.coeffs()) g.set(n, IntPolynomial::constant(eval_at_one(c)));
  for (std::uint64_t p : {2, 3, 5}) CHECK(verify_definition_Ld(g, p, 1).holds);
}
