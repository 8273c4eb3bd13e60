#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arbor/arith/qpoly.hpp"

namespace arbor {

/// f(x) = x^d + c with d = p^n.
struct UnicriticalMap {
  std::uint64_t p = 2;
  unsigned n = 1;
  Rational c;

  UnicriticalMap() = default;
  UnicriticalMap(std::uint64_t p, unsigned n, Rational c);

  std::uint64_t degree() const;
  Rational operator()(const Rational& z) const;
  QPoly polynomial() const;
  /// f^k as a polynomial, f^0 = x.
  QPoly iterate(unsigned k) const;
  std::string to_string() const;

  friend bool operator==(const UnicriticalMap&, const UnicriticalMap&) = default;
};

/// Accepts "p=2,n=1,c=-1" or a polynomial such as "x^2-1" or "x^4+1/3".
UnicriticalMap parse_map(std::string_view text);

struct CriticalOrbit {
  std::vector<Rational> points;  // f^i(0) for i < N
  std::size_t tail_length = 0;
  std::size_t cycle_length = 1;
  std::size_t N = 1;
};

struct NotPCF {
  enum class Reason { Escape, Denominator };
  Reason reason = Reason::Escape;
  std::size_t index = 0;  // the iterate carrying the certificate
  Rational value;         // f^index(0)
  Rational bound;         // escape bound max(2, |c|+1)
};

using OrbitResult = std::variant<CriticalOrbit, NotPCF>;

/// Runs the critical orbit until it repeats or leaves the escape disc. When c is not an integer
/// the denominators of f^i(0) grow strictly, so iterate 2 certifies NotPCF even if the orbit
/// stays bounded.
OrbitResult critical_orbit(const UnicriticalMap& f);

bool is_pcf(const UnicriticalMap& f);

/// Throws InvalidArgument when f is not PCF.
const CriticalOrbit& require_pcf(const OrbitResult& r);

/// α ∈ {f^i(0) : i ≥ 1}. Requires f PCF.
bool strictly_post_critical(const UnicriticalMap& f, const Rational& alpha);

/// α ∈ {f^i(0) : 1 ≤ i ≤ depth}; needs no PCF hypothesis.
bool post_critical_within(const UnicriticalMap& f, const Rational& alpha, unsigned depth);

enum class CriticalPoint { Zero, Infinity };

struct CollisionWitness {
  CriticalPoint a = CriticalPoint::Zero;
  CriticalPoint b = CriticalPoint::Zero;
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const CollisionWitness&, const CollisionWitness&) = default;
};

/// For a = 0, b in {0, ∞} and 0 ≤ i, j ≤ N, requires f^i(a) ≠ f^j(b) unless a = b = 0, i = j.
/// Returns the first violation in lexicographic order, nullopt when the condition holds.
std::optional<CollisionWitness> collision_condition(const UnicriticalMap& f);

std::string to_string(const CollisionWitness& w);

/// Primes q ≤ bound dividing den(c) or equal to p.
std::vector<std::uint64_t> good_reduction_primes(const UnicriticalMap& f, std::uint64_t bound);

}  // namespace arbor
