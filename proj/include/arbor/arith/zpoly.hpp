#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbor/arith/fppoly.hpp"
#include "arbor/arith/number.hpp"

namespace arbor {

/// Dense polynomial with integer coefficients, constant term first. Used as the
/// working representation behind rational factorization, gcd and resultants.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<Integer> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Integer>& coeffs() const { return c_; }
  const Integer& operator[](std::size_t i) const;
  const Integer& leading() const { return c_.back(); }

  /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;
  /// Divided by its content, with positive leading coefficient.
  ZPoly primitive_part() const;

  ZPoly derivative() const;
  Integer operator()(const Integer& point) const;

  ZPoly& operator+=(const ZPoly& other);
  ZPoly& operator-=(const ZPoly& other);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly scaled(const Integer& factor) const;
  ZPoly operator-() const;
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

  /// a / b when b divides a exactly over Z.
  std::optional<ZPoly> exact_quotient(const ZPoly& divisor) const;

  FpPoly reduce(std::uint64_t p) const;

  Integer max_norm() const;
  Integer norm2_squared() const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Lifts residues in [0, p) to symmetric representatives.
ZPoly lift_symmetric(const FpPoly& a);

/// gcd over Z by modular reconstruction; primitive with positive leading coefficient.
/// gcd(0, 0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

/// Resultant over Z by multi-modular reconstruction under the Hadamard bound.
Integer resultant(const ZPoly& a, const ZPoly& b);

/// True when a is squarefree over Q. Cheap modular witness first, exact gcd otherwise.
bool is_squarefree(const ZPoly& a);

}  // namespace arbor
