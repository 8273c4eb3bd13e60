#include "arbor/arith/modular.hpp"

#include <mutex>

#include "arbor/error.hpp"

namespace arbor::modular {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exponent >>= 1U;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit to avoid overflow
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a % p;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    const __int128 tmp_t = t - q * new_t;
    t = new_t;
    new_t = tmp_t;
    const __int128 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw DomainError("element is not invertible modulo " + std::to_string(p));
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1U) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t large_prime(std::size_t index) {
  static std::mutex mutex;
  static std::vector<std::uint64_t> table;
  std::lock_guard<std::mutex> lock(mutex);
  while (table.size() <= index) {
    std::uint64_t candidate = table.empty() ? (std::uint64_t{1} << 62) - 1 : table.back() - 2;
    while (!is_prime(candidate)) candidate -= 2;
    table.push_back(candidate);
  }
  return table[index];
}

std::uint64_t reduce(const Integer& a, std::uint64_t p) {
  return mpz_fdiv_ui(a.get_mpz_t(), p);
}

std::optional<std::uint64_t> reduce(const Rational& a, std::uint64_t p) {
  const std::uint64_t den = mpz_fdiv_ui(a.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  return mul_mod(mpz_fdiv_ui(a.get_num_mpz_t(), p), inv_mod(den, p), p);
}

Integer symmetric_residue(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  Integer twice = 2 * r;
  if (twice > m) r -= m;
  return r;
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1;
  mpz_fdiv_r(r1.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || mpz_cmpabs(t1.get_mpz_t(), bound.get_mpz_t()) > 0) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rational(r1, t1);
}

void CrtAccumulator::add(std::uint64_t prime, std::span<const std::uint64_t> residues) {
  if (residues.size() != residues_.size()) throw InvalidArgument("CRT residue vector length mismatch");
  if (count_ == 0) {
    for (std::size_t i = 0; i < residues.size(); ++i) residues_[i] = Integer(static_cast<unsigned long>(residues[i]));
    modulus_ = Integer(static_cast<unsigned long>(prime));
    count_ = 1;
    return;
  }
  const std::uint64_t m_mod_p = reduce(modulus_, prime);
  const std::uint64_t inv = inv_mod(m_mod_p, prime);
  Integer step;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::uint64_t current = reduce(residues_[i], prime);
    const std::uint64_t delta = mul_mod(sub_mod(residues[i], current, prime), inv, prime);
    if (delta != 0) {
      mpz_mul_ui(step.get_mpz_t(), modulus_.get_mpz_t(), delta);
      residues_[i] += step;
    }
  }
  mpz_mul_ui(modulus_.get_mpz_t(), modulus_.get_mpz_t(), prime);
  ++count_;
}

std::vector<Integer> CrtAccumulator::symmetric() const {
  std::vector<Integer> out;
  out.reserve(residues_.size());
  for (const auto& r : residues_) out.push_back(symmetric_residue(r, modulus_));
  return out;
}

}  // namespace arbor::modular
