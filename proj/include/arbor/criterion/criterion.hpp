#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbor/arboreal/arboreal.hpp"

namespace arbor {

class FactCache;

/// A subgroup of <-1, 2> in Q*/Q*^2, given by a basis. k' is the field cut out by it.
struct KPrimeHypothesis {
  std::vector<long> basis;

  unsigned rank() const;
  /// [k' : Q] = 2^rank
  Integer degree() const;
  /// d lies in the subgroup generated by the basis.
  bool contains(long d) const;
  std::string to_string() const;

  friend bool operator==(const KPrimeHypothesis&, const KPrimeHypothesis&) = default;
};

/// Dimension over F_2 of the span of the classes of the given nonzero integers.
unsigned square_class_rank(const std::vector<long>& ds);

/// The five subgroups: {}, {-1}, {2}, {-2}, {-1, 2}.
const std::vector<KPrimeHypothesis>& hypothesis_lattice();

enum class Verdict { Equal, Unequal, Interval };

struct CriterionEvaluation {
  Integer lhs;        // [k' K_{α,N} : Q]
  Integer rhs_lower;  // bracket.lower * 2^rank
  Integer rhs_upper;  // bracket.upper * 2^rank
  Verdict verdict = Verdict::Interval;
  // only for Interval: the verdict against each endpoint
  std::optional<std::pair<Verdict, Verdict>> endpoint_verdicts;
};

/// Degree of k' K_{α,N} given the tower of K_{α,N}.
Integer compositum_degree(const NumberTower& K, const KPrimeHypothesis& hyp, const TowerOptions& options = {});

CriterionEvaluation compare_with_bracket(const Integer& lhs, const KPrimeHypothesis& hyp, const GNBracket& bracket);

/// LHS from a fresh depth-N profile, RHS from the bracket.
CriterionEvaluation evaluate_criterion(const UnicriticalMap& f, const Rational& alpha, const KPrimeHypothesis& hyp,
                                       const GNBracket& bracket, const TowerOptions& options = {});

enum class HypothesisStatus {
  Consistent,
  Pruned,                // a basis class has a certified exclusion
  EvidenceInconsistent,  // the subgroup contains an excluded class, or misses a supported one
};

struct HypothesisResult {
  KPrimeHypothesis hypothesis;
  HypothesisStatus status = HypothesisStatus::Consistent;
  CriterionEvaluation evaluation;
};

enum class Overall { CertifiedEqual, CertifiedNotEqual, Conditional };

struct CriterionReport {
  UnicriticalMap map;
  Rational alpha;
  unsigned N = 0;
  GNBracket bracket;
  unsigned constants_depth = 0;
  ConstantCandidates constants;
  std::vector<HypothesisResult> hypotheses;
  KPrimeHypothesis evidence_hypothesis;  // span of the supported classes
  Overall overall = Overall::Conditional;
};

struct RunConfig {
  std::optional<unsigned> constants_depth;  // default max(N, 3)
  std::optional<std::vector<Rational>> samples;
  std::size_t prime_budget = 25;
  std::uint64_t seed = 42;
  TowerOptions tower;
  FactCache* cache = nullptr;
};

/// {1, 2, 3, 5, 7} without strictly post-critical points.
std::vector<Rational> default_samples(const UnicriticalMap& f);

CriterionReport criterion_report(const UnicriticalMap& f, const Rational& alpha, const RunConfig& config = {});

/// Depth at which the criterion must be checked. For x^(p^n) + c this is N.
struct FrattiniDepth {
  std::optional<unsigned> m;  // empty: exists, unspecified
  std::string note;
};

FrattiniDepth frattini_depth(const UnicriticalMap& f);
/// Any polynomial; outside the PCF family x^(p^n) + c only existence is known.
FrattiniDepth frattini_depth(const QPoly& f);

std::string to_string(Verdict v);
std::string to_string(HypothesisStatus s);
std::string to_string(Overall o);

}  // namespace arbor
