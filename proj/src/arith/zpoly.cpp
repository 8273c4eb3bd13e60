#include "arbor/arith/zpoly.hpp"

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

namespace {
const Integer kZero = 0;
}

ZPoly::ZPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& ZPoly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

Integer ZPoly::content() const {
  Integer g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly ZPoly::primitive_part() const {
  if (is_zero()) return *this;
  Integer g = content();
  if (leading() < 0) g = -g;
  if (g == 1) return *this;
  std::vector<Integer> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return ZPoly(std::move(v));
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Integer> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(d));
}

Integer ZPoly::operator()(const Integer& point) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= point;
    acc += *it;
  }
  return acc;
}

ZPoly& ZPoly::operator+=(const ZPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] -= other.c_[i];
  trim();
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(out));
}

ZPoly ZPoly::scaled(const Integer& factor) const {
  std::vector<Integer> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * factor;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-() const {
  std::vector<Integer> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return ZPoly(std::move(v));
}

std::optional<ZPoly> ZPoly::exact_quotient(const ZPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return ZPoly{};
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<Integer> r = c_;
  const std::size_t db = divisor.c_.size() - 1;
  const Integer& lead = divisor.leading();
  std::vector<Integer> q(r.size() - db);
  Integer coef;
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    mpz_divexact(coef.get_mpz_t(), r[k].get_mpz_t(), lead.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(r[k - db + j].get_mpz_t(), coef.get_mpz_t(), divisor.c_[j].get_mpz_t());
    }
    q[k - db] = coef;
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (r[i] != 0) return std::nullopt;
  }
  return ZPoly(std::move(q));
}

FpPoly ZPoly::reduce(std::uint64_t p) const {
  std::vector<std::uint64_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = modular::reduce(c_[i], p);
  return FpPoly(p, std::move(v));
}

Integer ZPoly::max_norm() const {
  Integer m = 0;
  for (const auto& c : c_) {
    if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) mpz_abs(m.get_mpz_t(), c.get_mpz_t());
  }
  return m;
}

Integer ZPoly::norm2_squared() const {
  Integer s = 0;
  for (const auto& c : c_) mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
  return s;
}

ZPoly lift_symmetric(const FpPoly& a) {
  const std::uint64_t p = a.modulus();
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::uint64_t c = a.coeffs()[i];
    v[i] = c > p / 2 ? Integer(-static_cast<long>(p - c)) : Integer(static_cast<unsigned long>(c));
  }
  return ZPoly(std::move(v));
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  const ZPoly A = a.primitive_part();
  const ZPoly B = b.primitive_part();
  if (A.degree() == 0 || B.degree() == 0) return ZPoly({Integer(1)});
  Integer lead_gcd;
  mpz_gcd(lead_gcd.get_mpz_t(), A.leading().get_mpz_t(), B.leading().get_mpz_t());

  int current_degree = -1;
  std::optional<modular::CrtAccumulator> crt;
  ZPoly previous;
  for (std::size_t index = 0;; ++index) {
    const std::uint64_t p = modular::large_prime(index);
    if (modular::reduce(A.leading(), p) == 0 || modular::reduce(B.leading(), p) == 0) continue;
    FpPoly g = gcd(A.reduce(p), B.reduce(p));
    if (g.degree() == 0) return ZPoly({Integer(1)});
    g = g.scaled(modular::reduce(lead_gcd, p));
    if (!crt || g.degree() < current_degree) {
      current_degree = g.degree();
      crt.emplace(static_cast<std::size_t>(current_degree + 1));
      std::vector<std::uint64_t> residues(g.coeffs().begin(), g.coeffs().end());
      residues.resize(static_cast<std::size_t>(current_degree + 1), 0);
      crt->add(p, residues);
      previous = ZPoly{};
      continue;
    }
    if (g.degree() > current_degree) continue;  // unlucky prime
    std::vector<std::uint64_t> residues(g.coeffs().begin(), g.coeffs().end());
    crt->add(p, residues);
    ZPoly candidate = ZPoly(crt->symmetric()).primitive_part();
    if (candidate == previous) {
      if (A.exact_quotient(candidate) && B.exact_quotient(candidate)) return candidate;
    }
    previous = std::move(candidate);
  }
}

Integer resultant(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("resultant of a zero polynomial");
  const unsigned long m = static_cast<unsigned long>(a.degree());
  const unsigned long n = static_cast<unsigned long>(b.degree());
  if (m == 0) return pow(a[0], n);
  if (n == 0) return pow(b[0], m);
  // Hadamard: |Res| <= |a|_2^n |b|_2^m
  const std::size_t bound_bits = (n * (bit_length(a.norm2_squared()) + 1)) / 2 +
                                 (m * (bit_length(b.norm2_squared()) + 1)) / 2 + 2;
  modular::CrtAccumulator crt(1);
  for (std::size_t index = 0; bit_length(crt.modulus()) <= bound_bits + 1; ++index) {
    const std::uint64_t p = modular::large_prime(index);
    if (modular::reduce(a.leading(), p) == 0 || modular::reduce(b.leading(), p) == 0) continue;
    const std::uint64_t r = resultant(a.reduce(p), b.reduce(p));
    crt.add(p, std::span<const std::uint64_t>(&r, 1));
  }
  return crt.symmetric().front();
}

bool is_squarefree(const ZPoly& a) {
  if (a.degree() <= 0) return true;
  for (std::size_t index = 0; index < 3; ++index) {
    const std::uint64_t p = modular::large_prime(index);
    if (modular::reduce(a.leading(), p) == 0) continue;
    if (is_squarefree(a.reduce(p))) return true;
  }
  return gcd(a, a.derivative()).degree() == 0;
}

}  // namespace arbor
