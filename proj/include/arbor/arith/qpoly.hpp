#pragma once

#include <compare>
#include <string>
#include <vector>

#include "arbor/arith/number.hpp"
#include "arbor/arith/zpoly.hpp"

namespace arbor {

/// Dense univariate polynomial over Q, constant term first.
/// Invariant: the leading coefficient is nonzero unless the polynomial is zero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  explicit QPoly(const ZPoly& integral);

  static QPoly constant(const Rational& c);
  static QPoly x();
  static QPoly monomial(const Rational& c, std::size_t degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const;
  const Rational& leading() const { return c_.back(); }

  QPoly monic() const;
  QPoly derivative() const;
  Rational operator()(const Rational& point) const;
  /// this(inner(x)).
  QPoly compose(const QPoly& inner) const;

  QPoly& operator+=(const QPoly& other);
  QPoly& operator-=(const QPoly& other);
  QPoly& operator*=(const QPoly& other);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  QPoly scaled(const Rational& factor) const;
  QPoly operator-() const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  /// Orders by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const QPoly& a, const QPoly& b);

  /// Splits this = content * primitive with primitive integral, positive leading coefficient.
  /// The zero polynomial gives content 0.
  Rational content() const;
  ZPoly primitive_integral() const;

  /// Reduction modulo p; nullopt if p divides a denominator.
  std::optional<FpPoly> reduce(std::uint64_t p) const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct QDivMod {
  QPoly quotient;
  QPoly remainder;
};

QDivMod divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Resultant; throws InvalidArgument on a zero input.
Rational resultant(const QPoly& a, const QPoly& b);

/// (-1)^(d(d-1)/2) Res(a, a') / lc(a). Throws InvalidArgument for zero or constant input.
Rational discriminant(const QPoly& a);

/// Product of the distinct monic irreducible factors of a.
QPoly squarefree_part(const QPoly& a);

/// Parses infix text such as "x^4-2*x^2-1", "3/2x - 1", "-x^3 + 1/3".
/// Accepts '^' powers with '*' optional. Throws InvalidArgument on malformed input.
QPoly parse_polynomial(std::string_view text, char var = 'x');

}  // namespace arbor
