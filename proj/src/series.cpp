#include "qlucas/series.hpp"

#include <algorithm>
#include <limits>

#include "qlucas/landau.hpp"

namespace qlucas {

bool Truncation::contains(const IntVector& n) const {
  if (n.size() != cap.size()) return false;
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] < 0 || n[j] > cap[j]) return false;
    sum += n[j];
  }
  return !total || sum <= *total;
}

TruncatedSeries::TruncatedSeries(std::size_t num_vars, Truncation truncation)
    : num_vars_(num_vars), truncation_(std::move(truncation)) {
  if (truncation_.cap.size() != num_vars_) throw std::invalid_argument("truncation cap has the wrong dimension");
}

TruncatedSeries TruncatedSeries::univariate(std::int64_t order) { return TruncatedSeries(1, Truncation{{order}, {}}); }

TruncatedSeries TruncatedSeries::from_integers(const std::vector<Integer>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("a series needs at least one coefficient");
  TruncatedSeries s = univariate(static_cast<std::int64_t>(coeffs.size()) - 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    s.set({static_cast<std::int64_t>(i)}, IntPolynomial::constant(coeffs[i]));
  }
  return s;
}

IntPolynomial TruncatedSeries::coefficient(const IntVector& n) const {
  if (!truncation_.contains(n)) throw InsufficientTruncation("exponent lies outside the truncation region");
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? IntPolynomial() : it->second;
}

void TruncatedSeries::set(const IntVector& n, IntPolynomial value) {
  if (!truncation_.contains(n)) throw InsufficientTruncation("exponent lies outside the truncation region");
  if (value.is_zero()) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = std::move(value);
  }
}

std::int64_t TruncatedSeries::order() const {
  std::int64_t o = truncation_.cap.empty() ? 0 : truncation_.cap[0];
  for (auto c : truncation_.cap) o = std::min(o, c);
  if (truncation_.total) o = std::min(o, *truncation_.total);
  return o;
}

std::vector<Integer> TruncatedSeries::integers_at_one() const {
  if (num_vars_ != 1) throw std::invalid_argument("integers_at_one needs a one-variable series");
  std::vector<Integer> out(static_cast<std::size_t>(order()) + 1);
  for (const auto& [n, c] : coeffs_) {
    if (n[0] <= order()) out[static_cast<std::size_t>(n[0])] = eval_at_one(c);
  }
  return out;
}

TruncatedSeries build_F(const RatioSpec& spec, const Truncation& truncation) {
  spec.validate();
  if (!check_landau(spec).integrality) {
    throw HypothesisViolated("Q_{e,f} is not a polynomial for every n: " + spec.to_string());
  }
  TruncatedSeries s(spec.dim, truncation);
  for_each_ratio(
      spec, truncation.cap, [&](const IntVector& n, const IntPolynomial& q) { s.set(n, q); },
      truncation.total.value_or(-1));
  return s;
}

TruncatedSeries specialize(const TruncatedSeries& s, const IntVector& t, const IntVector& m, std::int64_t order) {
  const std::size_t d = s.num_vars();
  if (t.size() != d || m.size() != d) throw std::invalid_argument("t and m must have one entry per variable");
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  std::int64_t min_weight = std::numeric_limits<std::int64_t>::max();
  for (std::size_t j = 0; j < d; ++j) {
    if (m[j] < 0 || t[j] < 0) throw std::invalid_argument("t and m must be nonnegative");
    if (m[j] == 0) {
      throw InsufficientTruncation("variable " + std::to_string(j) +
                                   " has weight 0: infinitely many exponents feed each target coefficient");
    }
    min_weight = std::min(min_weight, m[j]);
    if (s.truncation().cap[j] < order / m[j]) {
      throw InsufficientTruncation("source cap " + std::to_string(s.truncation().cap[j]) + " on variable " +
                                   std::to_string(j) + " cannot certify order " + std::to_string(order));
    }
  }
  if (s.truncation().total && *s.truncation().total < order / min_weight) {
    throw InsufficientTruncation("source total-degree bound cannot certify order " + std::to_string(order));
  }

  TruncatedSeries out = TruncatedSeries::univariate(order);
  std::map<std::int64_t, IntPolynomial> acc;
  for (const auto& [n, c] : s.coeffs()) {
    const std::int64_t target = dot(m, n);
    if (target > order) continue;
    acc[target] += c.shifted(static_cast<std::size_t>(dot(t, n)));
  }
  for (auto& [target, c] : acc) out.set({target}, std::move(c));
  return out;
}

CofactorResult extract_cofactor(const TruncatedSeries& f, const std::vector<Integer>& g, std::uint64_t b,
                                std::int64_t order) {
  if (f.num_vars() != 1) throw std::invalid_argument("extract_cofactor needs a one-variable series");
  if (b == 0) throw std::invalid_argument("b must be positive");
  if (g.empty() || g[0] != 1) throw std::invalid_argument("g must have constant term 1");
  const auto bi = static_cast<std::int64_t>(b);
  if (static_cast<std::int64_t>(g.size()) <= order / bi) {
    throw InsufficientTruncation("g has too few coefficients for order " + std::to_string(order));
  }

  CofactorResult result;
  auto& report = result.report;
  report.kind = "cofactor";
  report.subject = "b = " + std::to_string(b);
  report.ranges["b"] = {bi, bi};
  report.ranges["order"] = {order};

  for (std::int64_t m = 0; m < bi; ++m) {
    result.cofactor.push_back(m <= order ? reduce_mod_cyclotomic(f.coefficient(m), b) : IntPolynomial());
  }
  for (std::int64_t m = 0; m < bi && m <= order; ++m) {
    for (std::int64_t n = 0; m + n * bi <= order; ++n) {
      const IntPolynomial lhs = reduce_mod_cyclotomic(f.coefficient(m + n * bi), b);
      const IntPolynomial rhs = reduce_mod_cyclotomic(result.cofactor[m] * g[n], b);
      ++report.checked;
      if (!(lhs == rhs)) report.failures.push_back({b, {m}, {n}, lhs, rhs});
    }
  }
  return result;
}

namespace {

template <typename Fn>
void for_each_in(const Truncation& region, Fn&& fn) {
  IntVector v(region.cap.size(), 0);
  while (true) {
    if (region.contains(v)) fn(static_cast<const IntVector&>(v));
    std::size_t j = v.size();
    while (j > 0 && v[j - 1] == region.cap[j - 1]) v[--j] = 0;
    if (j == 0) return;
    ++v[j - 1];
  }
}

}  // namespace

LucasVerdict verify_definition_Ld(const TruncatedSeries& g, std::uint64_t p, std::uint64_t k) {
  if (!is_prime(p)) throw NotPrime(p);
  if (k == 0) throw std::invalid_argument("k must be positive");
  const std::size_t d = g.num_vars();
  for (const auto& [n, c] : g.coeffs()) {
    if (!c.is_constant()) throw std::invalid_argument("verify_definition_Ld needs integer coefficients");
  }
  if (g.coefficient(IntVector(d, 0)) != IntPolynomial::one()) {
    throw std::invalid_argument("g must have constant term 1");
  }

  Integer power_big;
  mpz_ui_pow_ui(power_big.get_mpz_t(), p, k);
  if (!power_big.fits_slong_p()) throw std::overflow_error("p^k does not fit in 64 bits");
  const std::int64_t period = power_big.get_si();
  const Integer modulus(static_cast<unsigned long>(p));
  auto residue = [&](const IntVector& n) {
    Integer r;
    const Integer c = eval_at_one(g.coefficient(n));
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return r;
  };

  LucasVerdict verdict;
  verdict.p = p;
  verdict.k = k;
  // With deg_{x_i} A < p^k, only the constant term of g(x^(p^k)) reaches an
  // exponent a < p^k, so A_a = g_a mod p is forced.
  for_each_in(g.truncation(), [&](const IntVector& a) {
    if (std::all_of(a.begin(), a.end(), [&](auto c) { return c < period; })) {
      Integer r = residue(a);
      if (r != 0) verdict.cofactor[a] = r;
    }
  });

  for_each_in(g.truncation(), [&](const IntVector& target) {
    IntVector a(d), n(d);
    for (std::size_t j = 0; j < d; ++j) {
      a[j] = target[j] % period;
      n[j] = target[j] / period;
    }
    auto it = verdict.cofactor.find(a);
    const Integer coeff = it == verdict.cofactor.end() ? Integer(0) : it->second;
    Integer rhs;
    const Integer prod = coeff * residue(n);
    mpz_fdiv_r(rhs.get_mpz_t(), prod.get_mpz_t(), modulus.get_mpz_t());
    ++verdict.checked;
    if (residue(target) != rhs && !verdict.witness) verdict.witness = target;
  });
  verdict.holds = !verdict.witness;
  return verdict;
}

std::vector<Integer> central_binomial_powers(unsigned r, std::int64_t order) {
  std::vector<Integer> out;
  for (std::int64_t n = 0; n <= order; ++n) {
    Integer c = binomial(2 * static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n));
    Integer v;
    mpz_pow_ui(v.get_mpz_t(), c.get_mpz_t(), r);
    out.push_back(v);
  }
  return out;
}

TruncatedSeries central_q_binomial_series(unsigned r, std::int64_t order) {
  TruncatedSeries s = TruncatedSeries::univariate(order);
  IntPolynomial c = IntPolynomial::one();
  for (std::int64_t n = 0; n <= order; ++n) {
    if (n > 0) {
      // [2n, n] = [2n-2, n-1] [2n-1][2n] / [n]^2, each step an exact Gaussian binomial.
      const auto un = static_cast<std::uint64_t>(n);
      c = div_q_integer(mul_q_integer(c, 2 * un - 1), un);
      c = div_q_integer(mul_q_integer(c, 2 * un), un);
    }
    s.set({n}, pow(c, r));
  }
  return s;
}

}  // namespace qlucas
