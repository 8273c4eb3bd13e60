#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "arbor/arith/zpoly.hpp"
#include "arbor/tower/tower.hpp"

namespace arbor {

// Set when the last adjunction had degree 2: θ' = θ + λ r̂ with r̂^2 + ghat1 r̂ + ghat0 = 0
// over the parent. The coordinate table is built on first use.
struct QuadraticStep {
  QPoly ghat0, ghat1;  // in the parent's θ
  QPoly rhat;          // image of r̂ in this tower
  unsigned long lambda = 1;
  std::once_flag once;
  // coords[b][k]: coordinate b = i + D j (basis θ^i r̂^j) of θ'^k
  std::vector<std::vector<Rational>> coords;
};

// images[i] = num[i] / den[i]
struct IntegralImages {
  std::vector<std::vector<Integer>> num;
  std::vector<Integer> den;
};

IntegralImages integral_images(const std::vector<QPoly>& images);

struct TowerData {
  QPoly minpoly;
  ZPoly minpoly_z;
  int degree = 1;
  std::vector<AdjunctionRecord> history;
  std::shared_ptr<const TowerData> parent;
  // images of the parent's θ^i, i < parent degree
  std::vector<QPoly> embedding;
  IntegralImages embedding_z;
  // every conjugate of θ has absolute value at most this
  Integer root_bound;
  // the last adjunction added nothing; embedding is the identity
  bool same_as_parent = false;
  std::shared_ptr<QuadraticStep> quadratic;
};

std::shared_ptr<TowerData> make_tower_data(const QPoly& minpoly);

// a mod the minimal polynomial
QPoly reduce_rep(const QPoly& a, const TowerData& d);

// Σ a_i images[i]
QPoly transport(const QPoly& a, const std::vector<QPoly>& images);
QPoly transport(const QPoly& a, const IntegralImages& images);

// Least common multiple of all coefficient denominators.
Integer common_denominator(const QPoly& a);

// Scales by an integer to an integral polynomial.
ZPoly to_integral(const QPoly& a, const Integer& scale);

// Values at 0, 1, ..., n-1 mod p to coefficients.
std::vector<std::uint64_t> interpolate_consecutive(const std::vector<std::uint64_t>& values, std::uint64_t p);

// Fujiwara bound on the absolute values of the roots of a monic rational polynomial.
Integer root_bound(const QPoly& monic);

// Norm when the caller knows its coefficients fit in result_bits bits.
QPoly norm(const TowerPoly& a, std::optional<std::size_t> result_bits);
/// Multimodular norm that stops once two rational reconstructions agree.
QPoly norm_stable(const TowerPoly& a);

// Square root through the chain of quadratic steps. Outer nullopt when this tower has no
// usable relative structure.
std::optional<std::optional<FieldElement>> relative_sqrt(const FieldElement& x, const TowerOptions& options);

}  // namespace arbor
