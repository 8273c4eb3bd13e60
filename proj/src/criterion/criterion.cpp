#include "arbor/criterion/criterion.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arbor/criterion/cache.hpp"
#include "arbor/error.hpp"

namespace arbor {

namespace {

// odd-exponent primes of |d|, with -1 for the sign
std::set<long> square_class(long d) {
  if (d == 0) throw InvalidArgument("0 has no square class");
  std::set<long> s;
  if (d < 0) s.insert(-1);
  unsigned long m = d < 0 ? 0UL - static_cast<unsigned long>(d) : static_cast<unsigned long>(d);
  for (unsigned long q = 2; q * q <= m; ++q) {
    bool odd = false;
    while (m % q == 0) {
      m /= q;
      odd = !odd;
    }
    if (odd) s.insert(static_cast<long>(q));
  }
  if (m > 1) s.insert(static_cast<long>(m));
  return s;
}

std::set<long> sym_diff(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// row-reduced basis, keyed by pivot (largest element)
using Echelon = std::map<long, std::set<long>>;

std::set<long> reduce(std::set<long> v, const Echelon& e) {
  while (!v.empty()) {
    auto it = e.find(*v.rbegin());
    if (it == e.end()) break;
    v = sym_diff(v, it->second);
  }
  return v;
}

Echelon echelon(const std::vector<long>& ds) {
  Echelon e;
  for (long d : ds) {
    std::set<long> v = reduce(square_class(d), e);
    if (!v.empty()) e.emplace(*v.rbegin(), std::move(v));
  }
  return e;
}

std::string map_key(const UnicriticalMap& f) {
  return "p=" + std::to_string(f.p) + ",n=" + std::to_string(f.n) + ",c=" + to_string(f.c);
}

Integer two_pow(unsigned r) {
  Integer x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, r);
  return x;
}

Verdict compare(const Integer& lhs, const Integer& rhs) { return lhs == rhs ? Verdict::Equal : Verdict::Unequal; }

// Profiles per basepoint, grown on demand, with facts mirrored in the cache.
class ProfileStore {
 public:
  ProfileStore(const UnicriticalMap& f, const TowerOptions& options, FactCache* cache)
      : f_(f), options_(options), cache_(cache) {}

  const GaloisProfile& profile(const Rational& alpha, unsigned depth) {
    auto it = profiles_.find(alpha);
    if (it == profiles_.end()) {
      it = profiles_.emplace(alpha, specialization_profile(f_, alpha, depth, options_)).first;
    } else if (it->second.depth() < depth) {
      extend_profile(it->second, depth, options_);
    }
    return it->second;
  }

  int degree(const Rational& alpha, unsigned level) {
    const std::string key = "degree|" + map_key(f_) + "|" + to_string(alpha) + "|" + std::to_string(level);
    if (cache_)
      if (auto v = cache_->get(key)) return v->at("degree").get<int>();
    const NumberTower K = profile(alpha, level).tower(level);
    if (cache_) cache_->put(key, {{"degree", K.degree()}, {"tower", K.serialize()}});
    return K.degree();
  }

  bool contains_sqrt(const Rational& alpha, unsigned level, long d) {
    const std::string key = "sqrt|" + map_key(f_) + "|" + to_string(alpha) + "|" + std::to_string(level) + "|" +
                            std::to_string(d);
    if (cache_)
      if (auto v = cache_->get(key)) return v->get<bool>();
    const bool r = is_square(profile(alpha, level).tower(level).element(Rational(d)), options_);
    if (cache_) cache_->put(key, r);
    return r;
  }

  Integer lhs(const Rational& alpha, unsigned N, const KPrimeHypothesis& hyp) {
    const std::string key = "lhs|" + map_key(f_) + "|" + to_string(alpha) + "|" + std::to_string(N) + "|" +
                            hyp.to_string();
    if (cache_)
      if (auto v = cache_->get(key)) return Integer(v->get<std::string>());
    const Integer r = compositum_degree(profile(alpha, N).tower(N), hyp, options_);
    if (cache_) cache_->put(key, to_string(r));
    return r;
  }

 private:
  UnicriticalMap f_;
  TowerOptions options_;
  FactCache* cache_;
  std::map<Rational, GaloisProfile> profiles_;
};

}  // namespace

unsigned square_class_rank(const std::vector<long>& ds) { return static_cast<unsigned>(echelon(ds).size()); }

unsigned KPrimeHypothesis::rank() const { return square_class_rank(basis); }

Integer KPrimeHypothesis::degree() const { return two_pow(rank()); }

bool KPrimeHypothesis::contains(long d) const { return reduce(square_class(d), echelon(basis)).empty(); }

std::string KPrimeHypothesis::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? ", " : "") + std::to_string(basis[i]);
  return s + "}";
}

const std::vector<KPrimeHypothesis>& hypothesis_lattice() {
  static const std::vector<KPrimeHypothesis> l{{{}}, {{-1}}, {{2}}, {{-2}}, {{-1, 2}}};
  return l;
}

Integer compositum_degree(const NumberTower& K, const KPrimeHypothesis& hyp, const TowerOptions& options) {
  NumberTower L = K;
  for (long d : hyp.basis) {
    const FieldElement x = L.element(Rational(d));
    if (is_square(x, options)) continue;
    L = adjoin_irreducible(TowerPoly(L, {-x, L.zero(), L.one()}), options);
  }
  return L.degree();
}

CriterionEvaluation compare_with_bracket(const Integer& lhs, const KPrimeHypothesis& hyp, const GNBracket& bracket) {
  CriterionEvaluation e;
  e.lhs = lhs;
  e.rhs_lower = bracket.lower * hyp.degree();
  e.rhs_upper = bracket.upper * hyp.degree();
  if (bracket.certified) {
    e.verdict = compare(lhs, e.rhs_upper);
  } else {
    e.verdict = Verdict::Interval;
    e.endpoint_verdicts = std::make_pair(compare(lhs, e.rhs_lower), compare(lhs, e.rhs_upper));
  }
  return e;
}

namespace {

void require_criterion_scope(const UnicriticalMap& f, const Rational& alpha) {
  if (f.degree() != 2) {
    throw Unsupported("the criterion needs k_1 = Q, which fails for degree " + std::to_string(f.degree()) +
                      " (k_1 = Q(zeta_" + std::to_string(f.degree()) + "))");
  }
  require_pcf(critical_orbit(f));
  if (strictly_post_critical(f, alpha)) throw PostCriticalBasepoint(alpha);
}

}  // namespace

CriterionEvaluation evaluate_criterion(const UnicriticalMap& f, const Rational& alpha, const KPrimeHypothesis& hyp,
                                       const GNBracket& bracket, const TowerOptions& options) {
  require_criterion_scope(f, alpha);
  const GaloisProfile P = specialization_profile(f, alpha, bracket.N, options);
  return compare_with_bracket(compositum_degree(P.tower(bracket.N), hyp, options), hyp, bracket);
}

std::vector<Rational> default_samples(const UnicriticalMap& f) {
  std::vector<Rational> out;
  for (long a : {1L, 2L, 3L, 5L, 7L})
    if (!strictly_post_critical(f, Rational(a))) out.emplace_back(a);
  return out;
}

CriterionReport criterion_report(const UnicriticalMap& f, const Rational& alpha, const RunConfig& config) {
  require_criterion_scope(f, alpha);
  CriterionReport R;
  R.map = f;
  R.alpha = alpha;
  R.N = static_cast<unsigned>(require_pcf(critical_orbit(f)).N);
  R.constants_depth = config.constants_depth.value_or(std::max(R.N, 3u));

  std::vector<Rational> samples = config.samples.value_or(default_samples(f));
  for (const auto& a : samples)
    if (strictly_post_critical(f, a)) throw PostCriticalBasepoint(a);
  if (std::find(samples.begin(), samples.end(), alpha) == samples.end()) samples.push_back(alpha);
  std::sort(samples.begin(), samples.end());

  ProfileStore store(f, config.tower, config.cache);
  std::vector<std::pair<Rational, int>> degs;
  for (const auto& a : samples) degs.emplace_back(a, store.degree(a, R.N));
  R.bracket = bracket_from_degrees(f, R.N, std::move(degs));

  R.constants = constant_candidates(f, R.constants_depth, samples, [&](const Rational& a, unsigned level, long d) {
    return store.contains_sqrt(a, level, d);
  });
  std::vector<long> supported, excluded;
  for (const auto& c : R.constants) {
    if (c.status == CandidateStatus::Supported) supported.push_back(c.d);
    if (c.status == CandidateStatus::Excluded) excluded.push_back(c.d);
  }
  for (const auto& h : hypothesis_lattice()) {
    if (square_class_rank(h.basis) == square_class_rank(supported) &&
        std::all_of(supported.begin(), supported.end(), [&](long d) { return h.contains(d); })) {
      R.evidence_hypothesis = h;
      break;
    }
  }

  std::optional<Verdict> common;
  bool agree = true, any = false;
  for (const auto& h : hypothesis_lattice()) {
    HypothesisResult res;
    res.hypothesis = h;
    res.evaluation = compare_with_bracket(store.lhs(alpha, R.N, h), h, R.bracket);
    const auto in_basis = [&](long d) { return std::find(h.basis.begin(), h.basis.end(), d) != h.basis.end(); };
    if (std::any_of(excluded.begin(), excluded.end(), in_basis)) {
      res.status = HypothesisStatus::Pruned;
    } else if (std::any_of(excluded.begin(), excluded.end(), [&](long d) { return h.contains(d); }) ||
               !std::all_of(supported.begin(), supported.end(), [&](long d) { return h.contains(d); })) {
      res.status = HypothesisStatus::EvidenceInconsistent;
    } else {
      any = true;
      if (common && *common != res.evaluation.verdict) agree = false;
      common = res.evaluation.verdict;
    }
    R.hypotheses.push_back(std::move(res));
  }
  if (R.bracket.certified && any && agree) {
    R.overall = *common == Verdict::Equal ? Overall::CertifiedEqual : Overall::CertifiedNotEqual;
  } else {
    R.overall = Overall::Conditional;
  }
  return R;
}

FrattiniDepth frattini_depth(const UnicriticalMap& f) {
  const CriticalOrbit& o = require_pcf(critical_orbit(f));
  return {static_cast<unsigned>(o.N), "N, the size of the critical orbit"};
}

FrattiniDepth frattini_depth(const QPoly& f) {
  std::optional<UnicriticalMap> u;
  try {
    u = parse_map(f.to_string('x'));
  } catch (const InvalidArgument&) {
  }
  if (u && is_pcf(*u)) return frattini_depth(*u);
  return {std::nullopt, "some m >= 1 exists, depending on f and the base field; not computed"};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "equal";
    case Verdict::Unequal:
      return "unequal";
    case Verdict::Interval:
      break;
  }
  return "interval";
}

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::Consistent:
      return "consistent";
    case HypothesisStatus::Pruned:
      return "pruned";
    case HypothesisStatus::EvidenceInconsistent:
      break;
  }
  return "evidence-inconsistent";
}

std::string to_string(Overall o) {
  switch (o) {
    case Overall::CertifiedEqual:
      return "CertifiedEqual";
    case Overall::CertifiedNotEqual:
      return "CertifiedNotEqual";
    case Overall::Conditional:
      break;
  }
  return "Conditional";
}

}  // namespace arbor
