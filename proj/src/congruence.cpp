#include "qlucas/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qlucas/landau.hpp"
#include "qlucas/parallel.hpp"

namespace qlucas {

bool congruent_mod_cyclotomic(const IntPolynomial& a, const IntPolynomial& b, std::uint64_t m) {
  return reduce_mod_cyclotomic(a - b, m).is_zero();
}

std::int64_t ratio_degree(const RatioSpec& spec, const IntVector& n) {
  // deg [m]_q! = m(m-1)/2
  std::int64_t d = 0;
  for (const auto& t : spec.e) {
    const auto m = dot(t, n);
    d += m * (m - 1) / 2;
  }
  for (const auto& t : spec.f) {
    const auto m = dot(t, n);
    d -= m * (m - 1) / 2;
  }
  return d;
}

Integer ratio_value_at_one(const RatioSpec& spec, const IntVector& n, std::uint64_t degree_threshold) {
  if (ratio_degree(spec, n) <= static_cast<std::int64_t>(degree_threshold)) return eval_at_one(q_ratio(spec, n));
  return ratio_at_one(spec, n);
}

void require_congruence_hypotheses(const RatioSpec& spec) {
  spec.validate();
  if (!spec.balanced()) throw HypothesisViolated("|e| != |f| for " + spec.to_string());
  const auto report = check_landau(spec);
  if (!report.integrality) throw HypothesisViolated("Delta_{e,f} takes negative values for " + spec.to_string());
  if (!report.criterion_D) throw HypothesisViolated("Delta_{e,f} < 1 somewhere on D_{e,f} for " + spec.to_string());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

namespace {

// Row-major index of n inside the box [0, extent_j).
class BoxIndex {
 public:
  explicit BoxIndex(IntVector upper) : upper_(std::move(upper)) {
    stride_.assign(upper_.size(), 1);
    for (std::size_t j = upper_.size(); j-- > 1;) stride_[j - 1] = stride_[j] * (upper_[j] + 1);
    size_ = upper_.empty() ? 1 : static_cast<std::size_t>(stride_[0] * (upper_[0] + 1));
  }
  std::size_t size() const { return size_; }
  std::size_t operator()(const IntVector& n) const {
    std::int64_t i = 0;
    for (std::size_t j = 0; j < n.size(); ++j) i += n[j] * stride_[j];
    return static_cast<std::size_t>(i);
  }
  const IntVector& upper() const { return upper_; }

 private:
  IntVector upper_;
  IntVector stride_;
  std::size_t size_ = 1;
};

// Calls fn(v) for every v with 0 <= v <= upper, lexicographically.
template <typename Fn>
void for_each_point(const IntVector& upper, Fn&& fn) {
  IntVector v(upper.size(), 0);
  while (true) {
    fn(static_cast<const IntVector&>(v));
    std::size_t j = v.size();
    while (j > 0 && v[j - 1] == upper[j - 1]) v[--j] = 0;
    if (j == 0) return;
    ++v[j - 1];
  }
}

std::string join(const IntVector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

CongruenceReport verify_ratio_congruence(const RatioSpec& spec, std::uint64_t b_max, const IntVector& n_box,
                                         const SweepOptions& options) {
  require_congruence_hypotheses(spec);
  if (n_box.size() != spec.dim) throw InvalidSpec("n box dimension does not match the spec");
  if (b_max == 0) throw std::invalid_argument("b_max must be positive");

  CongruenceReport report;
  report.kind = "ratio-congruence";
  report.subject = spec.to_string();
  report.ranges["b"] = {1, static_cast<std::int64_t>(b_max)};
  report.ranges["n_box"] = n_box;

  const auto bm = static_cast<std::int64_t>(b_max);
  IntVector upper(spec.dim);
  for (std::size_t j = 0; j < spec.dim; ++j) upper[j] = (bm - 1) + n_box[j] * bm;
  const BoxIndex index(upper);
  report.notes["walk_box"] = join(upper);

  // residues[b-1][index(N)]: Q(q; N) mod phi_b, for the N that the sweep at b reads.
  std::vector<std::vector<IntPolynomial>> residues(b_max, std::vector<IntPolynomial>(index.size()));
  auto needed = [&](std::int64_t b, const IntVector& n) {
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (n[j] > (b - 1) + n_box[j] * b) return false;
    }
    return true;
  };
  auto absorb = [&](const IntVector& n, const IntPolynomial& value) {
    for (std::int64_t b = 1; b <= bm; ++b) {
      if (needed(b, n)) residues[b - 1][index(n)] = reduce_mod_cyclotomic(value, static_cast<std::uint64_t>(b));
    }
  };
  if (options.jobs > 1 && spec.dim > 1) {
    parallel_for(static_cast<std::size_t>(upper[0] + 1), options.jobs, [&](std::size_t k) {
      for_each_ratio_slice(spec, upper, static_cast<std::int64_t>(k), absorb);
    });
  } else {
    for_each_ratio(spec, upper, absorb);
  }

  std::vector<Integer> at_one(BoxIndex(n_box).size());
  const BoxIndex n_index(n_box);
  for_each_point(n_box, [&](const IntVector& n) {
    at_one[n_index(n)] = ratio_value_at_one(spec, n, options.eval_degree_threshold);
  });

  for (std::int64_t b = 1; b <= bm; ++b) {
    const auto& res = residues[b - 1];
    const IntVector a_upper(spec.dim, b - 1);
    for_each_point(a_upper, [&](const IntVector& a) {
      const IntPolynomial& base = res[index(a)];
      for_each_point(n_box, [&](const IntVector& n) {
        IntVector target(spec.dim);
        for (std::size_t j = 0; j < spec.dim; ++j) target[j] = a[j] + n[j] * b;
        const IntPolynomial& lhs = res[index(target)];
        IntPolynomial rhs = base * at_one[n_index(n)];
        rhs = reduce_mod_cyclotomic(rhs, static_cast<std::uint64_t>(b));
        ++report.checked;
        if (!(lhs == rhs)) report.failures.push_back({static_cast<std::uint64_t>(b), a, n, lhs, rhs});
      });
    });
  }
  return report;
}

CongruenceReport verify_plucas_at_one(const RatioSpec& spec, std::uint64_t p_max, const IntVector& n_box) {
  require_congruence_hypotheses(spec);
  if (n_box.size() != spec.dim) throw InvalidSpec("n box dimension does not match the spec");

  CongruenceReport report;
  report.kind = "plucas-at-one";
  report.subject = spec.to_string();
  report.ranges["p"] = {2, static_cast<std::int64_t>(p_max)};
  report.ranges["n_box"] = n_box;

  for (auto p : primes_up_to(p_max)) {
    const Integer modulus(static_cast<unsigned long>(p));
    auto mod = [&](const Integer& x) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
      return r;
    };
    const auto pi = static_cast<std::int64_t>(p);
    for_each_point(IntVector(spec.dim, pi - 1), [&](const IntVector& a) {
      const Integer qa = ratio_at_one(spec, a);
      for_each_point(n_box, [&](const IntVector& n) {
        IntVector target(spec.dim);
        for (std::size_t j = 0; j < spec.dim; ++j) target[j] = a[j] + n[j] * pi;
        const Integer lhs = mod(ratio_at_one(spec, target));
        const Integer rhs = mod(qa * ratio_at_one(spec, n));
        ++report.checked;
        if (lhs != rhs) {
          report.failures.push_back({p, a, n, IntPolynomial::constant(lhs), IntPolynomial::constant(rhs)});
        }
      });
    });
  }
  return report;
}

CongruenceReport verify_inter2_identity(const RatioSpec& spec, std::uint64_t b, const IntVector& n_box) {
  spec.validate();
  if (!spec.balanced()) throw HypothesisViolated("|e| != |f| for " + spec.to_string());
  if (!check_landau(spec).integrality) {
    throw HypothesisViolated("Delta_{e,f} takes negative values for " + spec.to_string());
  }
  if (b == 0) throw std::invalid_argument("b must be positive");
  if (n_box.size() != spec.dim) throw InvalidSpec("n box dimension does not match the spec");

  CongruenceReport report;
  report.kind = "inter2-identity";
  report.subject = spec.to_string();
  report.ranges["b"] = {static_cast<std::int64_t>(b), static_cast<std::int64_t>(b)};
  report.ranges["n_box"] = n_box;

  const auto bi = static_cast<std::int64_t>(b);
  for_each_point(n_box, [&](const IntVector& n) {
    IntVector scaled(n);
    for (auto& c : scaled) c *= bi;
    const IntPolynomial lhs = reduce_mod_cyclotomic(q_ratio(spec, scaled), b);
    const IntPolynomial rhs = reduce_mod_cyclotomic(IntPolynomial::constant(ratio_at_one(spec, n)), b);
    ++report.checked;
    if (!(lhs == rhs)) report.failures.push_back({b, IntVector(spec.dim, 0), n, lhs, rhs});
  });
  return report;
}

AperyFamily parse_apery_family(const std::string& s) {
  if (s == "a" || s == "A") return AperyFamily::A;
  if (s == "b" || s == "B") return AperyFamily::B;
  throw std::invalid_argument("unknown Apery family '" + s + "' (expected a or b)");
}

std::string to_string(AperyFamily family) { return family == AperyFamily::A ? "a" : "b"; }

IntPolynomial apery_q(AperyFamily family, std::uint64_t t, std::uint64_t n) {
  // Row [n,k] and diagonal [n+k,k] are advanced together; each update is the
  // exact quotient of consecutive Gaussian binomials.
  IntPolynomial row = IntPolynomial::one();
  IntPolynomial diag = IntPolynomial::one();
  IntPolynomial sum;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (k > 0) {
      row = div_q_integer(mul_q_integer(row, n - k + 1), k);
      diag = div_q_integer(mul_q_integer(diag, n + k), k);
    }
    IntPolynomial term = mul(row, row);
    term = mul(term, diag);
    if (family == AperyFamily::B) term = mul(term, diag);
    sum += term.shifted(t * k);
  }
  return sum;
}

std::vector<IntPolynomial> apery_q_sequence(AperyFamily family, std::uint64_t t, std::uint64_t n_max, unsigned jobs) {
  std::vector<IntPolynomial> seq(n_max + 1);
  // Largest n first so the expensive terms start early.
  parallel_for(seq.size(), jobs, [&](std::size_t i) {
    const std::uint64_t n = n_max - i;
    seq[n] = apery_q(family, t, n);
  });
  return seq;
}

Integer apery_at_one(AperyFamily family, std::uint64_t n) {
  Integer sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const Integer c = binomial(n, k);
    const Integer d = binomial(n + k, k);
    Integer term = c * c * d;
    if (family == AperyFamily::B) term *= d;
    sum += term;
  }
  return sum;
}

CongruenceReport verify_apery(AperyFamily family, std::uint64_t t, std::uint64_t b_max, std::uint64_t n_max,
                              const SweepOptions& options) {
  if (b_max == 0) throw std::invalid_argument("b_max must be positive");
  CongruenceReport report;
  report.kind = "apery";
  report.subject = "family " + to_string(family) + ", t = " + std::to_string(t);
  report.ranges["b"] = {1, static_cast<std::int64_t>(b_max)};
  report.ranges["n"] = {0, static_cast<std::int64_t>(n_max)};
  report.ranges["t"] = {static_cast<std::int64_t>(t)};

  const auto seq = apery_q_sequence(family, t, n_max, options.jobs);
  std::vector<Integer> at_one(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    at_one[n] = eval_at_one(seq[n]);
    if (at_one[n] != apery_at_one(family, n)) {
      throw std::logic_error("q-Apery polynomial disagrees with the integer sum at q = 1, n = " + std::to_string(n));
    }
  }

  for (std::uint64_t b = 1; b <= b_max; ++b) {
    std::vector<IntPolynomial> res(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) res[n] = reduce_mod_cyclotomic(seq[n], b);
    for (std::uint64_t m = 0; m < b && m <= n_max; ++m) {
      for (std::uint64_t n = 0; m + n * b <= n_max; ++n) {
        const IntPolynomial& lhs = res[m + n * b];
        const IntPolynomial rhs = reduce_mod_cyclotomic(res[m] * at_one[n], b);
        ++report.checked;
        if (!(lhs == rhs)) {
          report.failures.push_back(
              {b, {static_cast<std::int64_t>(m)}, {static_cast<std::int64_t>(n)}, lhs, rhs});
        }
      }
    }
  }
  return report;
}

}  // namespace qlucas
