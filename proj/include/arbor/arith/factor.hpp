#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "arbor/arith/fppoly.hpp"
#include "arbor/arith/qpoly.hpp"
#include "arbor/arith/zpoly.hpp"

namespace arbor {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Complete factorization: input = unit * prod(factor^multiplicity), factors monic,
/// irreducible, pairwise distinct and sorted by (degree, coefficients).
template <class Poly, class Unit>
struct FactorList {
  struct Entry {
    Poly factor;
    unsigned multiplicity;
  };
  Unit unit;
  std::vector<Entry> factors;

  /// Degree of each irreducible factor, repeated by multiplicity, ascending.
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& e : factors) out.insert(out.end(), e.multiplicity, e.factor.degree());
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t total_degree() const {
    std::size_t n = 0;
    for (const auto& e : factors) n += static_cast<std::size_t>(e.factor.degree()) * e.multiplicity;
    return n;
  }
};

using FpFactorList = FactorList<FpPoly, std::uint64_t>;
using QFactorList = FactorList<QPoly, Rational>;

/// Square-free decomposition of a monic polynomial over F_p (handles p-th powers).
std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& a);

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (product of all irreducible factors of degree d, d).
std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly& a);

/// Cantor-Zassenhaus: square-free, distinct-degree and then equal-degree splitting.
/// Equal-degree splitting draws random polynomials from a generator seeded with `seed`.
FpFactorList factor_mod_p(const FpPoly& a, std::uint64_t seed = kDefaultSeed);

struct FactorOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Zassenhaus recombination gives up after testing this many subsets.
  std::size_t subset_cap = std::size_t{1} << 20;
  /// Number of good small primes examined when choosing the lifting prime.
  std::size_t candidate_primes = 8;
};

/// Yun's square-free decomposition of a nonzero polynomial over Q. Parts are monic.
std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& a);

/// Factors a primitive square-free integer polynomial of positive degree into
/// primitive irreducible factors (positive leading coefficients), by Hensel lifting
/// and subset recombination. Throws CapExceeded past the subset cap.
std::vector<ZPoly> factor_squarefree_integral(const ZPoly& a, const FactorOptions& options = {});

/// Complete factorization over Q into monic irreducibles times a rational unit.
QFactorList factor_over_rationals(const QPoly& a, const FactorOptions& options = {});

bool is_irreducible(const QPoly& a, const FactorOptions& options = {});

/// Product unit * prod(factor^multiplicity).
FpPoly expand(const FpFactorList& list, std::uint64_t p);
QPoly expand(const QFactorList& list);

}  // namespace arbor
