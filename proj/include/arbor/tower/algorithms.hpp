#pragma once

#include <optional>
#include <vector>

#include "arbor/tower/tower.hpp"

namespace arbor {

using TowerFactorList = FactorList<TowerPoly, FieldElement>;

/// Complete factorization over the tower (Trager). Requires degree(tower) * deg(a) within
/// the degree cap, otherwise CapExceeded.
TowerFactorList factor_over_tower(const TowerPoly& a, const TowerOptions& options = {});

/// Adjoins a root of an irreducible factor of a of maximal degree. The new root is the last
/// history record of the result. When that factor is linear the field is unchanged.
NumberTower adjoin_root(const TowerPoly& a, const TowerOptions& options = {});
NumberTower adjoin_root(const NumberTower& tower, const QPoly& a, const TowerOptions& options = {});

/// Same as adjoin_root with g already known to be monic and irreducible over its tower.
NumberTower adjoin_irreducible(const TowerPoly& g, const TowerOptions& options = {});

bool is_square(const FieldElement& x, const TowerOptions& options = {});
std::optional<FieldElement> square_root(const FieldElement& x, const TowerOptions& options = {});

struct SplittingField {
  NumberTower tower;
  std::vector<FieldElement> roots;  // distinct roots of the input in `tower`
  int degree() const { return tower.degree(); }
};

/// Splitting field of the squarefree part of a over `base`. With an order seed the next
/// factor to adjoin is drawn at random instead of taking the first one.
SplittingField splitting_tower(const TowerPoly& a, const TowerOptions& options = {},
                               std::optional<std::uint64_t> order_seed = std::nullopt);
SplittingField splitting_tower(const QPoly& a, const TowerOptions& options = {},
                               std::optional<std::uint64_t> order_seed = std::nullopt);

}  // namespace arbor
