#include "arbor/arboreal/arboreal.hpp"

#include <algorithm>
#include <numeric>

#include "arbor/arith/factor.hpp"
#include "arbor/arith/modular.hpp"
#include "arbor/tree/tree.hpp"

namespace arbor {

std::vector<int> GaloisProfile::degrees() const {
  std::vector<int> out;
  for (const auto& l : levels) out.push_back(l.degree);
  return out;
}

NumberTower GaloisProfile::tower(unsigned level) const {
  if (level == 0) return NumberTower::rationals();
  if (level > levels.size()) throw InvalidArgument("profile level beyond its depth");
  return levels[level - 1].tower;
}

namespace {

void quadratic_level(GaloisProfile& P, const TowerOptions& options) {
  NumberTower K = P.tower(P.depth());
  const Rational& c = P.map.c;
  std::vector<FieldElement> pending = P.roots, next, classes;
  auto lift_all = [&](const NumberTower& L) {
    for (auto* v : {&pending, &next, &classes})
      for (auto& x : *v) x = L.embed(x);
  };
  for (std::size_t k = 0; k < pending.size(); ++k) {
    const FieldElement delta = pending[k] - K.element(c);
    if (auto r = square_root(delta, options)) {
      next.push_back(*r);
      next.push_back(-*r);
      continue;
    }
    const TowerPoly g(K, {-delta, K.zero(), K.one()});
    NumberTower L = adjoin_irreducible(g, options);
    lift_all(L);
    K = std::move(L);
    const FieldElement r = K.root(K.history().size() - 1);
    next.push_back(r);
    next.push_back(-r);
    classes.push_back(K.embed(delta));
  }
  P.levels.push_back(LevelData{P.depth() + 1, K.degree(), K, std::move(classes)});
  P.roots = std::move(next);
}

void generic_level(GaloisProfile& P, const TowerOptions& options) {
  const unsigned i = P.depth() + 1;
  const NumberTower K = P.tower(P.depth());
  const QPoly target = P.map.iterate(i) - QPoly::constant(P.alpha);
  SplittingField s = splitting_tower(TowerPoly::from_rational(K, target), options);
  P.levels.push_back(LevelData{i, s.tower.degree(), s.tower, {}});
  P.roots = std::move(s.roots);
}

}  // namespace

void extend_profile(GaloisProfile& profile, unsigned depth, const TowerOptions& options) {
  if (post_critical_within(profile.map, profile.alpha, depth)) throw PostCriticalBasepoint(profile.alpha);
  while (profile.depth() < depth) {
    if (profile.map.degree() == 2) {
      quadratic_level(profile, options);
    } else {
      generic_level(profile, options);
    }
  }
}

GaloisProfile specialization_profile(const UnicriticalMap& f, const Rational& alpha, unsigned depth,
                                     const TowerOptions& options) {
  if (is_pcf(f) && strictly_post_critical(f, alpha)) throw PostCriticalBasepoint(alpha);
  GaloisProfile P;
  P.map = f;
  P.alpha = alpha;
  P.roots = {NumberTower::rationals().element(alpha)};
  extend_profile(P, depth, options);
  return P;
}

std::uint64_t FrobeniusSample::lcm() const {
  std::uint64_t l = 1;
  for (int d : degrees) l = std::lcm(l, static_cast<std::uint64_t>(d));
  return l;
}

std::vector<FrobeniusSample> frobenius_samples(const UnicriticalMap& f, const Rational& alpha, unsigned n,
                                               std::size_t prime_budget) {
  if (n == 0) throw InvalidArgument("Frobenius sampling needs n >= 1");
  const QPoly target = f.iterate(n) - QPoly::constant(alpha);
  const Rational disc = discriminant(target);
  Integer bad = 2 * Integer(static_cast<unsigned long>(f.p)) * f.c.get_den() * alpha.get_den();
  std::vector<FrobeniusSample> out;
  for (std::uint64_t q = 3; out.size() < prime_budget && q < kSieveBound; q = modular::next_prime(q + 1)) {
    if (mpz_divisible_ui_p(bad.get_mpz_t(), q)) continue;
    if (disc == 0 || mpz_divisible_ui_p(disc.get_num_mpz_t(), q)) continue;
    const auto reduced = target.reduce(q);
    if (!reduced) continue;
    FrobeniusSample s{q, factor_mod_p(*reduced).degrees()};
    out.push_back(std::move(s));
  }
  if (out.empty()) throw Error("no admissible primes below " + std::to_string(kSieveBound));
  return out;
}

Integer cyclotomic_degree(std::uint64_t p, unsigned n) {
  const Integer P(static_cast<unsigned long>(p));
  return pow(P, n - 1) * (P - 1);
}

GNBracket bracket_from_degrees(const UnicriticalMap& f, unsigned N, std::vector<std::pair<Rational, int>> samples) {
  GNBracket b;
  b.N = N;
  b.upper = group_order(WreathDescriptor(f.p, f.n, N)) * cyclotomic_degree(f.p, f.n);
  b.lower = 0;
  for (const auto& [alpha, deg] : samples) b.lower = std::max(b.lower, Integer(deg));
  b.certified = b.lower == b.upper;
  b.samples = std::move(samples);
  return b;
}

GNBracket gn_bracket(const UnicriticalMap& f, const std::vector<Rational>& samples, unsigned N,
                     const TowerOptions& options) {
  require_pcf(critical_orbit(f));
  std::vector<std::pair<Rational, int>> degs;
  for (const auto& alpha : samples) {
    const GaloisProfile P = specialization_profile(f, alpha, N, options);
    degs.emplace_back(alpha, P.tower(N).degree());
  }
  return bracket_from_degrees(f, N, std::move(degs));
}

const std::vector<long>& candidate_universe() {
  static const std::vector<long> u{-1, 2, -2};
  return u;
}

ConstantCandidates constant_candidates(const UnicriticalMap& f, unsigned depth, const std::vector<Rational>& samples,
                                       const SqrtOracle& contains_sqrt) {
  if (f.degree() != 2) throw Unsupported("constant-field candidates are only implemented for quadratic maps");
  if (depth == 0) throw InvalidArgument("constant candidates need depth >= 1");
  ConstantCandidates out;
  for (long d : candidate_universe()) {
    CandidateRecord rec;
    rec.d = d;
    if (samples.empty()) {
      out.push_back(rec);
      continue;
    }
    for (const auto& alpha : samples) {
      if (!contains_sqrt(alpha, depth, d)) {
        rec.status = CandidateStatus::Excluded;
        rec.depth = depth;
        rec.witness = alpha;
        break;
      }
    }
    if (rec.status != CandidateStatus::Excluded) {
      rec.status = CandidateStatus::Supported;
      rec.depth = depth;
      for (unsigned m = 1; m < depth; ++m) {
        if (std::all_of(samples.begin(), samples.end(), [&](const Rational& a) { return contains_sqrt(a, m, d); })) {
          rec.depth = m;
          break;
        }
      }
    }
    out.push_back(rec);
  }
  return out;
}

ConstantCandidates constant_candidates(const UnicriticalMap& f, unsigned depth, const std::vector<Rational>& samples,
                                       const TowerOptions& options) {
  if (f.degree() != 2) throw Unsupported("constant-field candidates are only implemented for quadratic maps");
  require_pcf(critical_orbit(f));
  std::vector<GaloisProfile> profiles;
  for (const auto& alpha : samples) profiles.push_back(specialization_profile(f, alpha, depth, options));
  auto oracle = [&](const Rational& alpha, unsigned level, long d) {
    for (const auto& P : profiles)
      if (P.alpha == alpha) return is_square(P.tower(level).element(Rational(d)), options);
    throw InvalidArgument("no profile for basepoint " + to_string(alpha));
  };
  return constant_candidates(f, depth, samples, oracle);
}

std::string to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Supported:
      return "supported";
    case CandidateStatus::Excluded:
      return "excluded";
    case CandidateStatus::Untested:
      break;
  }
  return "untested";
}

}  // namespace arbor
