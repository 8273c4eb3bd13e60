#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arbor/arith/number.hpp"

namespace arbor::modular {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t p);

/// Inverse of a modulo p. Throws DomainError when a is not invertible.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// All primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Fixed descending sequence of primes just below 2^62 used by multi-modular
/// algorithms. Entry i is the same in every run.
std::uint64_t large_prime(std::size_t index);

/// Nonnegative residue of a modulo p.
std::uint64_t reduce(const Integer& a, std::uint64_t p);

/// Residue of a rational; nullopt when p divides the denominator.
std::optional<std::uint64_t> reduce(const Rational& a, std::uint64_t p);

/// Representative of a mod m in (-m/2, m/2].
Integer symmetric_residue(const Integer& a, const Integer& m);

/// Rational number n/d with |n|, d <= sqrt(m/2) and n/d = a mod m, if any.
std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m);

/// Incremental Chinese remaindering of a fixed-length vector of residues.
class CrtAccumulator {
 public:
  explicit CrtAccumulator(std::size_t length) : residues_(length, 0), modulus_(1) {}

  void add(std::uint64_t prime, std::span<const std::uint64_t> residues);

  const Integer& modulus() const { return modulus_; }
  const std::vector<Integer>& residues() const { return residues_; }
  std::size_t prime_count() const { return count_; }

  /// Residues mapped into (-M/2, M/2].
  std::vector<Integer> symmetric() const;

 private:
  std::vector<Integer> residues_;
  Integer modulus_;
  std::size_t count_ = 0;
};

}  // namespace arbor::modular
