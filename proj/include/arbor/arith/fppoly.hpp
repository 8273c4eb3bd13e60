#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arbor/arith/number.hpp"

namespace arbor {

/// Dense univariate polynomial over the prime field F_p, constant term first.
/// Coefficients are canonical residues in [0, p). Mixing moduli throws DomainError.
class FpPoly {
 public:
  explicit FpPoly(std::uint64_t p);
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static FpPoly constant(std::uint64_t p, std::uint64_t c);
  static FpPoly x(std::uint64_t p);
  static FpPoly monomial(std::uint64_t p, std::uint64_t c, std::size_t degree);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t operator()(std::uint64_t point) const;
  FpPoly compose(const FpPoly& inner) const;

  FpPoly& operator+=(const FpPoly& other);
  FpPoly& operator-=(const FpPoly& other);
  FpPoly& operator*=(const FpPoly& other);
  FpPoly scaled(std::uint64_t factor) const;

  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
  friend FpPoly operator*(FpPoly a, const FpPoly& b) { return a *= b; }
  FpPoly operator-() const;

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  /// Orders by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const FpPoly& a, const FpPoly& b);

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  void check_same_field(const FpPoly& other) const;

  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

struct FpDivMod {
  FpPoly quotient;
  FpPoly remainder;
};

FpDivMod divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);

/// Monic gcd (zero only when both inputs are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);

struct FpExtendedGcd {
  FpPoly gcd;  // monic
  FpPoly s;    // s*a + t*b = gcd
  FpPoly t;
};
FpExtendedGcd extended_gcd(const FpPoly& a, const FpPoly& b);

/// base^exponent mod modulus.
FpPoly powmod(const FpPoly& base, const Integer& exponent, const FpPoly& modulus);

/// Resultant over F_p with the actual degrees of a and b.
std::uint64_t resultant(const FpPoly& a, const FpPoly& b);

bool is_squarefree(const FpPoly& a);

}  // namespace arbor
