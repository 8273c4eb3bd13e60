#include "arbor/arith/fppoly.hpp"

#include <algorithm>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

using modular::add_mod;
using modular::inv_mod;
using modular::mul_mod;
using modular::neg_mod;
using modular::sub_mod;

FpPoly::FpPoly(std::uint64_t p) : p_(p) {
  if (p < 2) throw InvalidArgument("prime field modulus must be >= 2");
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw InvalidArgument("prime field modulus must be >= 2");
  for (auto& c : c_) c %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::monomial(std::uint64_t p, std::uint64_t c, std::size_t degree) {
  std::vector<std::uint64_t> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FpPoly::check_same_field(const FpPoly& other) const {
  if (p_ != other.p_) {
    throw DomainError("polynomials over F_" + std::to_string(p_) + " and F_" + std::to_string(other.p_));
  }
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading(), p_));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_);
  std::vector<std::uint64_t> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mul_mod(c_[i], i % p_, p_);
  return FpPoly(p_, std::move(d));
}

std::uint64_t FpPoly::operator()(std::uint64_t point) const {
  std::uint64_t acc = 0;
  point %= p_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add_mod(mul_mod(acc, point, p_), *it, p_);
  return acc;
}

FpPoly FpPoly::compose(const FpPoly& inner) const {
  check_same_field(inner);
  FpPoly acc(p_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += FpPoly::constant(p_, *it);
  }
  return acc;
}

FpPoly& FpPoly::operator+=(const FpPoly& other) {
  check_same_field(other);
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size(), 0);
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] = add_mod(c_[i], other.c_[i], p_);
  trim();
  return *this;
}

FpPoly& FpPoly::operator-=(const FpPoly& other) {
  check_same_field(other);
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size(), 0);
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] = sub_mod(c_[i], other.c_[i], p_);
  trim();
  return *this;
}

FpPoly& FpPoly::operator*=(const FpPoly& other) {
  check_same_field(other);
  if (is_zero() || other.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<std::uint64_t> out(c_.size() + other.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < other.c_.size(); ++j) {
      out[i + j] = add_mod(out[i + j], mul_mod(c_[i], other.c_[j], p_), p_);
    }
  }
  c_ = std::move(out);
  trim();
  return *this;
}

FpPoly FpPoly::scaled(std::uint64_t factor) const {
  factor %= p_;
  std::vector<std::uint64_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = mul_mod(c_[i], factor, p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator-() const {
  std::vector<std::uint64_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = neg_mod(c_[i], p_);
  return FpPoly(p_, std::move(v));
}

std::strong_ordering operator<=>(const FpPoly& a, const FpPoly& b) {
  if (auto cmp = a.p_ <=> b.p_; cmp != 0) return cmp;
  if (auto cmp = a.c_.size() <=> b.c_.size(); cmp != 0) return cmp;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (auto cmp = a.c_[i] <=> b.c_[i]; cmp != 0) return cmp;
  }
  return std::strong_ordering::equal;
}

std::string FpPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c_[i] != 1) {
      out += std::to_string(c_[i]);
      if (i > 0) out += '*';
    }
    if (i >= 1) out += var;
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

FpDivMod divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.modulus() != b.modulus()) throw DomainError("divmod across different prime fields");
  const std::uint64_t p = a.modulus();
  if (a.degree() < b.degree()) return {FpPoly(p), a};
  std::vector<std::uint64_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::uint64_t inv_lead = inv_mod(b.leading(), p);
  std::vector<std::uint64_t> q(r.size() - db, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const std::uint64_t coef = mul_mod(r[k], inv_lead, p);
    q[k - db] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k - db + j] = sub_mod(r[k - db + j], mul_mod(coef, bc[j], p), p);
    }
  }
  r.resize(db);
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).remainder; }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpExtendedGcd extended_gcd(const FpPoly& a, const FpPoly& b) {
  const std::uint64_t p = a.modulus();
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = FpPoly::constant(p, 1), s1(p);
  FpPoly t0(p), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    FpPoly s2 = s0 - q * s1;
    FpPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const std::uint64_t inv = inv_mod(r0.leading(), p);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

FpPoly powmod(const FpPoly& base, const Integer& exponent, const FpPoly& modulus) {
  if (exponent < 0) throw InvalidArgument("negative exponent in powmod");
  FpPoly result = FpPoly::constant(base.modulus(), 1) % modulus;
  FpPoly b = base % modulus;
  const std::size_t bits = bit_length(exponent);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = (result * b) % modulus;
  }
  return result;
}

std::uint64_t resultant(const FpPoly& a, const FpPoly& b) {
  if (a.modulus() != b.modulus()) throw DomainError("resultant across different prime fields");
  const std::uint64_t p = a.modulus();
  if (a.is_zero() || b.is_zero()) return 0;
  FpPoly x = a, y = b;
  std::uint64_t acc = 1;
  // Res(x, y) = (-1)^(mn) lc(y)^(m - deg r) Res(y, r) with r = x mod y, m = deg x, n = deg y.
  while (true) {
    const int m = x.degree();
    const int n = y.degree();
    if (n == 0) {
      acc = mul_mod(acc, modular::pow_mod(y.leading(), static_cast<std::uint64_t>(m), p), p);
      return acc;
    }
    FpPoly r = x % y;
    if (r.is_zero()) return 0;
    if ((static_cast<long>(m) * n) % 2 == 1) acc = neg_mod(acc, p);
    acc = mul_mod(acc, modular::pow_mod(y.leading(), static_cast<std::uint64_t>(m - r.degree()), p), p);
    x = std::move(y);
    y = std::move(r);
  }
}

bool is_squarefree(const FpPoly& a) {
  if (a.degree() <= 0) return true;
  const FpPoly d = a.derivative();
  if (d.is_zero()) return false;
  return gcd(a, d).degree() == 0;
}

}  // namespace arbor
