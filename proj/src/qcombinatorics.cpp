#include "qlucas/qcombinatorics.hpp"

#include <algorithm>
#include <sstream>

namespace qlucas {

std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

void RatioSpec::validate() const {
  if (dim == 0) throw InvalidSpec("dimension must be positive");
  if (e.empty() || f.empty()) throw InvalidSpec("e and f must each contain at least one vector");
  auto check = [this](const std::vector<IntVector>& vs, const char* name) {
    for (const auto& v : vs) {
      if (v.size() != dim) {
        throw InvalidSpec(std::string("vector in ") + name + " has " + std::to_string(v.size()) +
                          " components, expected " + std::to_string(dim));
      }
      for (auto c : v) {
        if (c < 0) throw InvalidSpec(std::string("negative component in ") + name);
      }
    }
  };
  check(e, "e");
  check(f, "f");
}

namespace {

IntVector vector_sum(const std::vector<IntVector>& vs, std::size_t dim) {
  IntVector s(dim, 0);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < dim && i < v.size(); ++i) s[i] += v[i];
  return s;
}

std::string format_tuple(const std::vector<IntVector>& vs) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ",";
    os << "(";
    for (std::size_t j = 0; j < vs[i].size(); ++j) os << (j ? "," : "") << vs[i][j];
    os << ")";
  }
  os << ")";
  return os.str();
}

}  // namespace

IntVector RatioSpec::sum_e() const { return vector_sum(e, dim); }
IntVector RatioSpec::sum_f() const { return vector_sum(f, dim); }

std::int64_t RatioSpec::max_dot(const IntVector& n) const {
  std::int64_t m = 0;
  for (const auto& t : e) m = std::max(m, dot(t, n));
  for (const auto& t : f) m = std::max(m, dot(t, n));
  return m;
}

std::string RatioSpec::to_string() const { return "e=" + format_tuple(e) + " f=" + format_tuple(f); }

RatioSpec RatioSpec::central_binomial(unsigned r) {
  RatioSpec s;
  s.dim = 1;
  s.e.assign(r, IntVector{2});
  s.f.assign(2 * static_cast<std::size_t>(r), IntVector{1});
  return s;
}

RatioSpec RatioSpec::apery_a() {
  return RatioSpec{2, {{2, 1}, {1, 1}}, {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}};
}

RatioSpec RatioSpec::apery_b() {
  return RatioSpec{2, {{2, 1}, {2, 1}}, {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}};
}

IntPolynomial q_integer(std::uint64_t n) {
  if (n == 0) return {};
  return IntPolynomial(std::vector<Integer>(n, Integer(1)));
}

IntPolynomial q_factorial(std::uint64_t n) {
  IntPolynomial p = IntPolynomial::one();
  for (std::uint64_t i = 2; i <= n; ++i) p = mul_q_integer(p, i);
  return p;
}

IntPolynomial q_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return {};
  k = std::min(k, n - k);
  // Each partial product is itself the Gaussian binomial [n-k+i choose i]_q,
  // so every division below is exact.
  IntPolynomial p = IntPolynomial::one();
  for (std::uint64_t i = 1; i <= k; ++i) p = div_q_integer(mul_q_integer(p, n - k + i), i);
  return p;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

std::vector<std::int64_t> dots(const std::vector<IntVector>& vs, const IntVector& n) {
  for (auto c : n) {
    if (c < 0) throw InvalidSpec("n must be nonnegative");
  }
  std::vector<std::int64_t> out;
  out.reserve(vs.size());
  for (const auto& t : vs) {
    if (t.size() != n.size()) throw InvalidSpec("n has the wrong dimension");
    std::int64_t d = dot(t, n);
    if (d < 0) throw InvalidSpec("negative dot product; n must be nonnegative");
    out.push_back(d);
  }
  return out;
}

IntPolynomial product_tree(std::vector<IntPolynomial> factors) {
  if (factors.empty()) return IntPolynomial::one();
  while (factors.size() > 1) {
    std::vector<IntPolynomial> next;
    next.reserve((factors.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(mul(factors[i], factors[i + 1]));
    if (factors.size() % 2) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

}  // namespace

IntPolynomial q_ratio(const RatioSpec& spec, const IntVector& n) {
  auto num = dots(spec.e, n);
  auto den = dots(spec.f, n);
  IntPolynomial p = IntPolynomial::one();
  for (auto m : num)
    for (std::int64_t i = 2; i <= m; ++i) p = mul_q_integer(p, static_cast<std::uint64_t>(i));
  std::sort(den.begin(), den.end(), std::greater<>());
  for (auto m : den)
    for (std::int64_t i = m; i >= 2; --i) p = div_q_integer(p, static_cast<std::uint64_t>(i));
  return p;
}

std::vector<std::int64_t> cyclotomic_exponents(const RatioSpec& spec, const IntVector& n) {
  auto num = dots(spec.e, n);
  auto den = dots(spec.f, n);
  const std::int64_t bound = spec.max_dot(n);
  std::vector<std::int64_t> exps;
  for (std::int64_t b = 2; b <= bound; ++b) {
    // Delta(n/b) = sum floor(e.n / b) - sum floor(f.n / b) for nonnegative dots.
    std::int64_t delta = 0;
    for (auto m : num) delta += m / b;
    for (auto m : den) delta -= m / b;
    exps.push_back(delta);
  }
  return exps;
}

IntPolynomial q_ratio_cyclotomic(const RatioSpec& spec, const IntVector& n) {
  const auto exps = cyclotomic_exponents(spec, n);
  std::vector<IntPolynomial> factors;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const auto b = static_cast<std::uint64_t>(i + 2);
    if (exps[i] < 0) throw NegativeExponent(b);
    if (exps[i] > 0) factors.push_back(pow(cyclotomic(b), static_cast<std::uint64_t>(exps[i])));
  }
  return product_tree(std::move(factors));
}

Integer ratio_at_one(const RatioSpec& spec, const IntVector& n) {
  Integer num = 1;
  Integer den = 1;
  Integer fac;
  for (auto m : dots(spec.e, n)) {
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(m));
    num *= fac;
  }
  for (auto m : dots(spec.f, n)) {
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(m));
    den *= fac;
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    throw NotDivisible(IntPolynomial::constant(r));
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

namespace {

// Q(n + unit_j) from Q(n): each t contributes the q-integers
// [t.n + 1] .. [t.n + t_j]; numerator ones first, then the divisions.
IntPolynomial step_up(const RatioSpec& spec, const IntVector& n, std::size_t j, IntPolynomial p) {
  for (const auto& t : spec.e) {
    const std::int64_t base = dot(t, n);
    for (std::int64_t k = 1; k <= t[j]; ++k) p = mul_q_integer(p, static_cast<std::uint64_t>(base + k));
  }
  for (const auto& t : spec.f) {
    const std::int64_t base = dot(t, n);
    for (std::int64_t k = t[j]; k >= 1; --k) p = div_q_integer(p, static_cast<std::uint64_t>(base + k));
  }
  return p;
}

void walk(const RatioSpec& spec, const IntVector& box, std::size_t axis, IntVector& n, std::int64_t used,
          IntPolynomial current, std::int64_t total_bound,
          const std::function<void(const IntVector&, const IntPolynomial&)>& visit) {
  if (axis == spec.dim) {
    visit(n, current);
    return;
  }
  for (std::int64_t k = 0; k <= box[axis]; ++k) {
    if (total_bound >= 0 && used + k > total_bound) break;
    if (k > 0) {
      n[axis] = k - 1;
      current = step_up(spec, n, axis, std::move(current));
    }
    n[axis] = k;
    walk(spec, box, axis + 1, n, used + k, current, total_bound, visit);
  }
  n[axis] = 0;
}

}  // namespace

void for_each_ratio(const RatioSpec& spec, const IntVector& box,
                    const std::function<void(const IntVector&, const IntPolynomial&)>& visit,
                    std::int64_t total_bound) {
  spec.validate();
  if (box.size() != spec.dim) throw InvalidSpec("box dimension does not match the spec");
  IntVector n(spec.dim, 0);
  walk(spec, box, 0, n, 0, IntPolynomial::one(), total_bound, visit);
}

void for_each_ratio_slice(const RatioSpec& spec, const IntVector& box, std::int64_t first,
                          const std::function<void(const IntVector&, const IntPolynomial&)>& visit) {
  spec.validate();
  if (box.size() != spec.dim) throw InvalidSpec("box dimension does not match the spec");
  IntVector n(spec.dim, 0);
  n[0] = first;
  walk(spec, box, 1, n, first, q_ratio(spec, n), -1, visit);
}

}  // namespace qlucas
