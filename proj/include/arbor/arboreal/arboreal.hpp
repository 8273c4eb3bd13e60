#pragma once

#include <functional>
#include <vector>

#include "arbor/dynamics/dynamics.hpp"
#include "arbor/error.hpp"
#include "arbor/tower/algorithms.hpp"

namespace arbor {

/// α lies in the strict forward orbit of 0, so f^n(x) - α is inseparable at some level.
class PostCriticalBasepoint : public InvalidArgument {
 public:
  explicit PostCriticalBasepoint(const Rational& alpha)
      : InvalidArgument("basepoint " + to_string(alpha) +
                        " is strictly post-critical; its preimage tree is degenerate"),
        alpha_(alpha) {}
  const Rational& alpha() const { return alpha_; }

 private:
  Rational alpha_;
};

struct LevelData {
  unsigned level = 0;
  int degree = 1;  // [K_{α,level} : Q]
  NumberTower tower;
  // d = 2 only: the radicands s - c whose square roots were new at this level
  std::vector<FieldElement> new_square_classes;
};

struct GaloisProfile {
  UnicriticalMap map;
  Rational alpha;
  std::vector<LevelData> levels;     // levels 1..depth
  std::vector<FieldElement> roots;   // f^-depth(α) in the last tower

  unsigned depth() const { return static_cast<unsigned>(levels.size()); }
  std::vector<int> degrees() const;
  /// Level 0 is the rationals.
  NumberTower tower(unsigned level) const;
};

/// K_{α,1} ⊆ ... ⊆ K_{α,depth}. Throws PostCriticalBasepoint or CapExceeded.
GaloisProfile specialization_profile(const UnicriticalMap& f, const Rational& alpha, unsigned depth,
                                     const TowerOptions& options = {});

/// Adds levels until the profile reaches depth.
void extend_profile(GaloisProfile& profile, unsigned depth, const TowerOptions& options = {});

struct FrobeniusSample {
  std::uint64_t q = 0;
  std::vector<int> degrees;  // ascending
  std::uint64_t lcm() const;
};

inline constexpr std::uint64_t kSieveBound = std::uint64_t{1} << 20;

/// Factor degrees of f^n(x) - α mod the first prime_budget admissible primes, skipping
/// q | 2 p den(c) den(α) and q | disc(f^n(x) - α).
std::vector<FrobeniusSample> frobenius_samples(const UnicriticalMap& f, const Rational& alpha, unsigned n,
                                               std::size_t prime_budget);

/// [Q(ζ_{p^n}) : Q]
Integer cyclotomic_degree(std::uint64_t p, unsigned n);

struct GNBracket {
  unsigned N = 0;
  Integer lower;
  Integer upper;
  bool certified = false;
  std::vector<std::pair<Rational, int>> samples;  // (α, [K_{α,N} : Q])
};

GNBracket gn_bracket(const UnicriticalMap& f, const std::vector<Rational>& samples, unsigned N,
                     const TowerOptions& options = {});

/// Same bracket from already known sample degrees.
GNBracket bracket_from_degrees(const UnicriticalMap& f, unsigned N, std::vector<std::pair<Rational, int>> samples);

enum class CandidateStatus { Supported, Excluded, Untested };

struct CandidateRecord {
  long d = 0;
  CandidateStatus status = CandidateStatus::Untested;
  unsigned depth = 0;               // supporting depth, or the depth of the failed test
  std::optional<Rational> witness;  // α with √d ∉ K_{α,depth}
};

using ConstantCandidates = std::vector<CandidateRecord>;

/// {-1, 2, -2}
const std::vector<long>& candidate_universe();

/// Whether √d ∈ K_{α,level}.
using SqrtOracle = std::function<bool(const Rational& alpha, unsigned level, long d)>;

ConstantCandidates constant_candidates(const UnicriticalMap& f, unsigned depth, const std::vector<Rational>& samples,
                                       const TowerOptions& options = {});
ConstantCandidates constant_candidates(const UnicriticalMap& f, unsigned depth, const std::vector<Rational>& samples,
                                       const SqrtOracle& contains_sqrt);

std::string to_string(CandidateStatus s);

}  // namespace arbor
