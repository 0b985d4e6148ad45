#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlucas/intpoly.hpp"
#include "qlucas/qcombinatorics.hpp"

namespace qlucas {

struct CongruenceFailure {
  std::uint64_t b = 0;
  IntVector a;  // residue index m (a one-component vector for sequences)
  IntVector n;
  IntPolynomial lhs_residue;
  IntPolynomial rhs_residue;
};

/// Verdict of a congruence sweep. Failures are recorded in enumeration order.
struct CongruenceReport {
  std::string kind;
  std::string subject;
  std::map<std::string, IntVector> ranges;
  std::map<std::string, std::string> notes;
  std::uint64_t checked = 0;
  std::vector<CongruenceFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct SweepOptions {
  unsigned jobs = 1;
  /// Q(1; n) is read off the polynomial below this degree, else from integer factorials.
  std::uint64_t eval_degree_threshold = 50'000;
};

/// a == b mod phi_m(q) in Z[q].
bool congruent_mod_cyclotomic(const IntPolynomial& a, const IntPolynomial& b, std::uint64_t m);

/// Degree of Q(q; n) computed from the dot products alone.
std::int64_t ratio_degree(const RatioSpec& spec, const IntVector& n);

/// Q(1; n), through eval_at_one below the threshold and integer factorials above it.
Integer ratio_value_at_one(const RatioSpec& spec, const IntVector& n, std::uint64_t degree_threshold);

/**
 * For b = 1..b_max, a in {0..b-1}^d and 0 <= n <= n_box checks
 *
 *   Q(q; a + n b) == Q(q; a) Q(1; n)   mod phi_b(q).
 *
 * Requires |e| = |f|, integrality and Delta >= 1 on D_{e,f}; throws
 * HypothesisViolated otherwise.
 */
CongruenceReport verify_ratio_congruence(const RatioSpec& spec, std::uint64_t b_max, const IntVector& n_box,
                                         const SweepOptions& options = {});

/// Integer form at q = 1: Q(1; a + n p) == Q(1; a) Q(1; n) mod p for primes p <= p_max.
CongruenceReport verify_plucas_at_one(const RatioSpec& spec, std::uint64_t p_max, const IntVector& n_box);

/// Q(q; n b) == Q(1; n) mod phi_b(q) for all 0 <= n <= n_box.
CongruenceReport verify_inter2_identity(const RatioSpec& spec, std::uint64_t b, const IntVector& n_box);

enum class AperyFamily { A, B };

AperyFamily parse_apery_family(const std::string& s);
std::string to_string(AperyFamily family);

/// sum_k q^(t k) [n,k]^2 [n+k,k]   (family A), or with [n+k,k]^2 (family B).
IntPolynomial apery_q(AperyFamily family, std::uint64_t t, std::uint64_t n);
std::vector<IntPolynomial> apery_q_sequence(AperyFamily family, std::uint64_t t, std::uint64_t n_max,
                                            unsigned jobs = 1);
/// The classical value at q = 1 by integer summation.
Integer apery_at_one(AperyFamily family, std::uint64_t n);

/// a_{m+nb}(q) == a_m(q) a_n(1) mod phi_b(q) for b <= b_max, 0 <= m < b, m + n b <= n_max.
CongruenceReport verify_apery(AperyFamily family, std::uint64_t t, std::uint64_t b_max, std::uint64_t n_max,
                              const SweepOptions& options = {});

/// Throws HypothesisViolated unless the spec meets every requirement of the ratio congruence.
void require_congruence_hypotheses(const RatioSpec& spec);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
bool is_prime(std::uint64_t n);

}  // namespace qlucas
