#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/arith/factor.hpp"
#include "arbor/arith/qpoly.hpp"

namespace arbor {

struct TowerData;
class FieldElement;
class TowerPoly;

inline constexpr std::size_t kDefaultDegreeCap = 256;

struct TowerOptions {
  std::size_t degree_cap = kDefaultDegreeCap;
  FactorOptions factor{};
};

/// One adjunction step: the polynomial whose root was adjoined and the image of
/// that root, both written in the current primitive element.
struct AdjunctionRecord {
  std::vector<QPoly> source;  // coefficients, constant term first
  QPoly root;
};

/// Absolute simple extension Q(θ) with θ an algebraic integer. Immutable; copies share data.
/// Towers produced by adjunction remember their parent and the image of the parent's
/// primitive element, so elements of any ancestor can be embedded.
class NumberTower {
 public:
  /// The rationals (minimal polynomial x, θ = 0). Always the same instance.
  static NumberTower rationals();
  /// Builds a tower from a monic irreducible integral minimal polynomial. Irreducibility is
  /// checked; a non-monic or non-integral polynomial throws InvalidArgument.
  static NumberTower from_minimal_poly(const QPoly& minimal_poly, std::vector<AdjunctionRecord> history = {});

  const QPoly& minimal_poly() const;
  int degree() const;
  const std::vector<AdjunctionRecord>& history() const;

  FieldElement theta() const;
  FieldElement element(const QPoly& rep) const;
  FieldElement element(const Rational& value) const;
  FieldElement zero() const;
  FieldElement one() const;

  /// Root recorded by adjunction i, and the polynomial it satisfies.
  FieldElement root(std::size_t i) const;
  TowerPoly source(std::size_t i) const;

  std::optional<NumberTower> parent() const;
  /// True when `other` is this tower or one of its ancestors.
  bool extends(const NumberTower& other) const;
  /// Image of an element of an ancestor tower. Throws DomainError otherwise.
  FieldElement embed(const FieldElement& x) const;
  TowerPoly embed(const TowerPoly& a) const;

  /// Exact check that every history root satisfies its source polynomial.
  bool verify_history() const;

  /// One-line JSON record: minimal polynomial and history. Parent links are not kept.
  std::string serialize() const;
  static NumberTower deserialize(std::string_view text);

  friend bool operator==(const NumberTower& a, const NumberTower& b) { return a.d_ == b.d_; }

  const std::shared_ptr<const TowerData>& data() const { return d_; }
  explicit NumberTower(std::shared_ptr<const TowerData> data) : d_(std::move(data)) {}

 private:
  std::shared_ptr<const TowerData> d_;
};

/// Element of a NumberTower, stored as a polynomial in θ reduced modulo the minimal polynomial.
class FieldElement {
 public:
  FieldElement(NumberTower tower, const QPoly& rep);

  const NumberTower& tower() const { return tower_; }
  const QPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.degree() == 0 && rep_[0] == 1; }
  std::optional<Rational> as_rational() const;

  FieldElement& operator+=(const FieldElement& b);
  FieldElement& operator-=(const FieldElement& b);
  FieldElement& operator*=(const FieldElement& b);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
  FieldElement operator-() const;
  FieldElement scaled(const Rational& r) const;
  FieldElement pow(unsigned long e) const;
  /// Throws DomainError for zero.
  FieldElement inverse() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string(char var = 't') const { return rep_.to_string(var); }

 private:
  NumberTower tower_;
  QPoly rep_;
};

/// Polynomial with coefficients in a NumberTower.
class TowerPoly {
 public:
  explicit TowerPoly(NumberTower tower) : tower_(std::move(tower)) {}
  TowerPoly(NumberTower tower, std::vector<FieldElement> coeffs);
  static TowerPoly from_rational(const NumberTower& tower, const QPoly& a);
  /// x - r
  static TowerPoly linear(const FieldElement& r);

  const NumberTower& tower() const { return tower_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement operator[](std::size_t i) const;
  const FieldElement& leading() const { return c_.back(); }
  /// Coefficients all rational.
  std::optional<QPoly> as_rational() const;

  TowerPoly monic() const;
  TowerPoly derivative() const;
  FieldElement operator()(const FieldElement& x) const;
  /// this(x + shift)
  TowerPoly shifted(const FieldElement& shift) const;

  TowerPoly& operator+=(const TowerPoly& b);
  TowerPoly& operator-=(const TowerPoly& b);
  friend TowerPoly operator+(TowerPoly a, const TowerPoly& b) { return a += b; }
  friend TowerPoly operator-(TowerPoly a, const TowerPoly& b) { return a -= b; }
  friend TowerPoly operator*(const TowerPoly& a, const TowerPoly& b);
  TowerPoly scaled(const FieldElement& k) const;
  friend bool operator==(const TowerPoly& a, const TowerPoly& b);

  std::string to_string() const;

 private:
  void trim();
  NumberTower tower_;
  std::vector<FieldElement> c_;
};

struct TowerDivMod {
  TowerPoly quotient;
  TowerPoly remainder;
};
TowerDivMod divmod(const TowerPoly& a, const TowerPoly& b);
TowerPoly operator%(const TowerPoly& a, const TowerPoly& b);
TowerPoly operator/(const TowerPoly& a, const TowerPoly& b);
/// Monic gcd over the tower.
TowerPoly gcd(const TowerPoly& a, const TowerPoly& b);

/// Norm to Q of a polynomial over the tower: the product of its conjugates.
QPoly norm(const TowerPoly& a);
Rational norm(const FieldElement& x);

}  // namespace arbor
