#pragma once

// Reference implementations used only by tests. They avoid the library's
// fast paths: plain convolution, Pascal recurrences, Moebius products and
// exhaustive grid scans.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "qlucas/intpoly.hpp"
#include "qlucas/qcombinatorics.hpp"

namespace oracle {

using qlucas::Integer;
using qlucas::IntVector;
using Coeffs = std::vector<Integer>;

inline Coeffs trim(Coeffs c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline Coeffs of(const qlucas::IntPolynomial& p) { return p.coeffs(); }

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

/// Long division by a divisor with leading coefficient +-1; returns quotient, asserts zero remainder.
inline Coeffs div(Coeffs a, const Coeffs& b, bool* exact = nullptr) {
  a = trim(a);
  if (a.size() < b.size()) {
    if (exact) *exact = a.empty();
    return {};
  }
  Coeffs q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + b.size() - 1] / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  if (exact) *exact = trim(a).empty();
  return trim(q);
}

/// q^n - 1.
inline Coeffs power_minus_one(std::uint64_t n) {
  Coeffs c(n + 1);
  c[0] = -1;
  c[n] = 1;
  return c;
}

inline int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// phi_b = prod_{d | b} (q^d - 1)^mu(b/d).
inline Coeffs cyclotomic(std::uint64_t b) {
  Coeffs num{1}, den{1};
  for (std::uint64_t d = 1; d <= b; ++d) {
    if (b % d) continue;
    const int mu = moebius(b / d);
    if (mu == 1) num = mul(num, power_minus_one(d));
    if (mu == -1) den = mul(den, power_minus_one(d));
  }
  return div(num, den);
}

inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

/// Gaussian binomial via [n,k] = [n-1,k-1] + q^k [n-1,k].
inline Coeffs q_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return {};
  std::vector<Coeffs> row{{1}};
  for (std::uint64_t m = 1; m <= n; ++m) {
    std::vector<Coeffs> next(m + 1);
    for (std::uint64_t j = 0; j <= m; ++j) {
      Coeffs c;
      if (j >= 1) c = row[j - 1];
      if (j < m) {
        const Coeffs& r = row[j];
        if (c.size() < r.size() + j) c.resize(r.size() + j);
        for (std::size_t i = 0; i < r.size(); ++i) c[i + j] += r[i];
      }
      next[j] = trim(c);
    }
    row = std::move(next);
  }
  return row[k];
}

inline Integer factorial(std::int64_t n) {
  Integer f = 1;
  for (std::int64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// sum_k C(n,k)^2 C(n+k,k)^power.
inline Integer apery(std::int64_t n, int power) {
  Integer s = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    Integer term = binomial(n, k) * binomial(n, k);
    for (int i = 0; i < power; ++i) term *= binomial(n + k, k);
    s += term;
  }
  return s;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Distinct floor signatures (t.x for every vector t of e and f) over the grid
/// x = k/den in [0,1)^d, with the value of Delta on each.
inline std::map<std::vector<std::int64_t>, std::int64_t> grid_cells(const qlucas::RatioSpec& spec,
                                                                    std::int64_t den) {
  std::map<std::vector<std::int64_t>, std::int64_t> out;
  IntVector k(spec.dim, 0);
  while (true) {
    std::vector<std::int64_t> sig;
    std::int64_t delta = 0;
    for (const auto& t : spec.e) {
      const auto v = floor_div(qlucas::dot(t, k), den);
      sig.push_back(v);
      delta += v;
    }
    for (const auto& t : spec.f) {
      const auto v = floor_div(qlucas::dot(t, k), den);
      sig.push_back(v);
      delta -= v;
    }
    out[sig] = delta;
    std::size_t j = 0;
    while (j < spec.dim && k[j] == den - 1) k[j++] = 0;
    if (j == spec.dim) break;
    ++k[j];
  }
  return out;
}

/// Random balanced spec with small nonnegative vectors in dimension d.
inline qlucas::RatioSpec random_balanced_spec(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> count(1, 3), comp(0, 2), coin(0, 1);
  qlucas::RatioSpec s;
  s.dim = d;
  const int ne = count(rng);
  IntVector total(d, 0);
  for (int i = 0; i < ne; ++i) {
    IntVector v(d, 0);
    while (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; })) {
      for (auto& c : v) c = comp(rng);
    }
    for (std::size_t j = 0; j < d; ++j) total[j] += v[j];
    s.e.push_back(v);
  }
  // Split |e| into unit vectors, then greedily merge some of them.
  std::vector<IntVector> units;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::int64_t c = 0; c < total[j]; ++c) {
      IntVector u(d, 0);
      u[j] = 1;
      units.push_back(u);
    }
  }
  std::shuffle(units.begin(), units.end(), rng);
  for (const auto& u : units) {
    if (!s.f.empty() && coin(rng) && coin(rng)) {
      for (std::size_t j = 0; j < d; ++j) s.f.back()[j] += u[j];
    } else {
      s.f.push_back(u);
    }
  }
  return s;
}

}  // namespace oracle
