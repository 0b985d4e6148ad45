#include "qlucas/intpoly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace qlucas {

namespace {

// Below this length on the shorter side, schoolbook wins over packing.
constexpr std::size_t kKroneckerThreshold = 24;

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t degree) {
  if (c == 0) return {};
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> IntPolynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Integer IntPolynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

const Integer& IntPolynomial::leading() const {
  static const Integer zero(0);
  return coeffs_.empty() ? zero : coeffs_.back();
}

bool IntPolynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

IntPolynomial IntPolynomial::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  IntPolynomial r;
  r.coeffs_.resize(coeffs_.size() + k);
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& rhs) {
  *this = mul(*this, rhs);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& rhs) {
  if (rhs == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

std::string IntPolynomial::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::vector<std::string> IntPolynomial::to_decimal_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_str());
  return out;
}

IntPolynomial IntPolynomial::from_decimal_strings(const std::vector<std::string>& coeffs) {
  std::vector<Integer> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) {
    Integer c;
    if (c.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: '" + s + "'");
    v.push_back(std::move(c));
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) { return mul(a, b); }
IntPolynomial operator*(IntPolynomial a, const Integer& c) { return a *= c; }

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b) { return a + b; }
IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b) { return a - b; }

IntPolynomial mul_schoolbook(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Integer> r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(r));
}

namespace {

using Limb = std::uint64_t;

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t bits = 0;
  for (const auto& c : v) {
    if (c != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  return bits;
}

// Adds the magnitude of every coefficient with the selected sign into
// non-overlapping slot_bits-wide slots of a little-endian limb buffer.
Integer pack(const std::vector<Integer>& v, std::size_t slot_bits, int sign) {
  const std::size_t total_bits = slot_bits * v.size() + 64;
  std::vector<Limb> words(total_bits / 64 + 1, 0);
  std::vector<Limb> scratch;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != sign) continue;
    std::size_t count = (mpz_sizeinbase(v[i].get_mpz_t(), 2) + 63) / 64;
    scratch.assign(count + 1, 0);
    mpz_export(scratch.data(), &count, -1, sizeof(Limb), 0, 0, v[i].get_mpz_t());
    const std::size_t bit = slot_bits * i;
    const std::size_t word = bit / 64;
    const unsigned shift = bit % 64;
    for (std::size_t k = 0; k < count; ++k) {
      words[word + k] |= scratch[k] << shift;
      if (shift != 0) words[word + k + 1] |= scratch[k] >> (64 - shift);
    }
  }
  Integer out;
  mpz_import(out.get_mpz_t(), words.size(), -1, sizeof(Limb), 0, 0, words.data());
  return out;
}

Integer extract_bits(const std::vector<Limb>& words, std::size_t offset, std::size_t len) {
  const std::size_t first = offset / 64;
  if (first >= words.size()) return 0;
  const std::size_t last = std::min(words.size(), (offset + len) / 64 + 1);
  Integer r;
  mpz_import(r.get_mpz_t(), last - first, -1, sizeof(Limb), 0, 0, words.data() + first);
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), offset % 64);
  mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), len);
  return r;
}

}  // namespace

IntPolynomial mul_kronecker(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  const std::size_t shorter = std::min(x.size(), y.size());
  // |c_k| <= shorter * max|x| * max|y| < 2^(bx + by + log2(shorter)); one more
  // bit keeps balanced digits strictly inside half a slot.
  const std::size_t slot = max_bits(x) + max_bits(y) + std::bit_width(shorter) + 2;

  Integer px = pack(x, slot, 1) - pack(x, slot, -1);
  Integer py = (&a == &b) ? px : pack(y, slot, 1) - pack(y, slot, -1);
  Integer prod = px * py;
  const int prod_sign = sgn(prod);
  prod = abs(prod);

  std::size_t nwords = (mpz_sizeinbase(prod.get_mpz_t(), 2) + 63) / 64 + 1;
  std::vector<Limb> words(nwords, 0);
  mpz_export(words.data(), &nwords, -1, sizeof(Limb), 0, 0, prod.get_mpz_t());
  words.resize(std::max<std::size_t>(nwords, 1));

  const std::size_t len = x.size() + y.size() - 1;
  std::vector<Integer> out(len);
  Integer half;
  mpz_setbit(half.get_mpz_t(), slot - 1);
  Integer full = half * 2;
  int carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    Integer digit = extract_bits(words, slot * i, slot) + carry;
    if (digit >= half) {
      digit -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = prod_sign < 0 ? Integer(-digit) : digit;
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) return mul_schoolbook(a, b);
  return mul_kronecker(a, b);
}

IntPolynomial pow(const IntPolynomial& base, std::uint64_t exponent) {
  IntPolynomial result = IntPolynomial::one();
  IntPolynomial square = base;
  while (exponent > 0) {
    if (exponent & 1U) result = mul(result, square);
    exponent >>= 1U;
    if (exponent > 0) square = mul(square, square);
  }
  return result;
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.size() < b.size()) throw NotDivisible(a);

  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < db; ++j) {
    if (d[j] != 0) support.push_back(j);
  }
  const Integer& lead = d.back();
  const bool unit = (lead == 1 || lead == -1);

  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quot(rem.size() - db);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Integer& top = rem[k + db];
    if (top == 0) continue;
    if (unit) {
      quot[k] = lead == 1 ? top : Integer(-top);
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) throw NotDivisible(IntPolynomial(std::move(rem)));
      mpz_divexact(quot[k].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    }
    for (std::size_t j : support) mpz_submul(rem[k + j].get_mpz_t(), quot[k].get_mpz_t(), d[j].get_mpz_t());
    top = 0;
  }
  IntPolynomial r(std::move(rem));
  if (!r.is_zero()) throw NotDivisible(std::move(r));
  return IntPolynomial(std::move(quot));
}

DivRem divrem_monic(const IntPolynomial& a, const IntPolynomial& m) {
  if (!m.is_monic()) throw NotMonic();
  if (m.size() == 1) return {a, IntPolynomial()};
  const auto& d = m.coeffs();
  const std::size_t dm = d.size() - 1;
  if (a.size() <= dm) return {IntPolynomial(), a};

  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < dm; ++j) {
    if (d[j] != 0) support.push_back(j);
  }
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quot(rem.size() - dm);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Integer& top = rem[k + dm];
    if (top == 0) continue;
    quot[k] = top;
    for (std::size_t j : support) mpz_submul(rem[k + j].get_mpz_t(), quot[k].get_mpz_t(), d[j].get_mpz_t());
    top = 0;
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& m) { return divrem_monic(a, m).remainder; }

Integer eval_at_one(const IntPolynomial& a) {
  Integer s = 0;
  for (const auto& c : a.coeffs()) s += c;
  return s;
}

Integer eval_at(const IntPolynomial& a, const Integer& x) {
  Integer acc = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Rational eval_at(const IntPolynomial& a, const Rational& x) {
  // Horner on numerator/denominator separately keeps everything integral.
  const auto& c = a.coeffs();
  if (c.empty()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = 0;
  Integer den_pow = 1;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * num + c[i] * den_pow;
    den_pow *= den;
  }
  // acc = sum c_i num^i den^(n-1-i), so divide by den^(n-1).
  Integer scale = 1;
  mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), c.size() - 1);
  Rational r(acc, scale);
  r.canonicalize();
  return r;
}

IntPolynomial fold_mod_power_minus_one(const IntPolynomial& a, std::uint64_t period) {
  if (period == 0) throw std::invalid_argument("fold period must be positive");
  if (a.size() <= period) return a;
  std::vector<Integer> out(period);
  const auto& c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) out[i % period] += c[i];
  return IntPolynomial(std::move(out));
}

namespace {

class CyclotomicTable {
 public:
  const IntPolynomial& get(std::uint64_t b) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(b);
      if (it != table_.end()) return *it->second;
    }
    // Computed outside the lock; divisors recurse through get().
    auto value = std::make_unique<IntPolynomial>(compute(b));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.try_emplace(b, std::move(value));
    return *it->second;
  }

 private:
  IntPolynomial compute(std::uint64_t b) {
    IntPolynomial p = IntPolynomial::monomial(1, b) - IntPolynomial::one();
    for (std::uint64_t d = 1; d < b; ++d) {
      if (b % d == 0) p = divide_exact(p, get(d));
    }
    return p;
  }

  std::shared_mutex mutex_;
  std::map<std::uint64_t, std::unique_ptr<IntPolynomial>> table_;
};

CyclotomicTable& cyclotomic_table() {
  static CyclotomicTable table;
  return table;
}

}  // namespace

const IntPolynomial& cyclotomic(std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("cyclotomic index must be positive");
  return cyclotomic_table().get(b);
}

IntPolynomial reduce_mod_cyclotomic(const IntPolynomial& a, std::uint64_t b) {
  // phi_b divides q^b - 1, so folding first is exact and shrinks the input.
  return rem_monic(fold_mod_power_minus_one(a, b), cyclotomic(b));
}

IntPolynomial mul_q_integer(const IntPolynomial& a, std::uint64_t n) {
  if (n == 0 || a.is_zero()) return {};
  if (n == 1) return a;
  // Sliding window sum: r_k = a_k + a_(k-1) + ... + a_(k-n+1).
  const auto& c = a.coeffs();
  std::vector<Integer> r(c.size() + n - 1);
  Integer window = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k < c.size()) window += c[k];
    if (k >= n && k - n < c.size()) window -= c[k - n];
    r[k] = window;
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial div_q_integer(const IntPolynomial& a, std::uint64_t n) {
  if (n == 0) throw std::domain_error("division by [0]_q = 0");
  if (n == 1 || a.is_zero()) return a;
  const auto& c = a.coeffs();
  if (c.size() < n) throw NotDivisible(a);
  // a = s * (1 + ... + q^(n-1))  <=>  a_k = s_k + ... + s_(k-n+1), so
  // s_k = a_k - a_(k-1) + s_(k-n).
  const std::size_t len = c.size() - (n - 1);
  std::vector<Integer> s(len);
  for (std::size_t k = 0; k < len; ++k) {
    s[k] = c[k];
    if (k >= 1) s[k] -= c[k - 1];
    if (k >= n) s[k] += s[k - n];
  }
  // The top n-1 columns carry no fresh quotient coefficient and must vanish;
  // the last column is implied since both sides sum to zero.
  for (std::size_t k = len; k < c.size(); ++k) {
    Integer column = c[k] - c[k - 1];
    if (k >= n) column += s[k - n];
    if (column != 0) {
      IntPolynomial q(std::move(s));
      throw NotDivisible(a - mul_q_integer(q, n));
    }
  }
  return IntPolynomial(std::move(s));
}

}  // namespace qlucas
