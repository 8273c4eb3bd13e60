#include <doctest.h>

#include <algorithm>

#include "arbor/arboreal/arboreal.hpp"
#include "arbor/tree/tree.hpp"

using namespace arbor;

namespace {

UnicriticalMap quad(long c) { return UnicriticalMap(2, 1, Rational(c)); }

// [Q(α^(1/2^i), ζ_(2^i)) : Q] for α = 3, 5: Kummer degree 2^i times φ(2^i), since no
// quadratic subfield of a 2-power cyclotomic field is Q(√3) or Q(√5)
int x2_closed_form(unsigned i) { return i == 0 ? 1 : (1 << i) * (1 << (i - 1)); }

void check_profile_invariants(const GaloisProfile& P) {
  int prev = 1;
  for (const auto& l : P.levels) {
    CHECK(l.degree >= prev);
    CHECK(l.degree % prev == 0);
    const int ratio = l.degree / prev;
    if (P.map.p == 2) CHECK((ratio & (ratio - 1)) == 0);
    const Integer bound = group_order(WreathDescriptor(P.map.p, P.map.n, l.level)) * cyclotomic_degree(P.map.p, P.map.n);
    CHECK(bound % l.degree == 0);
    prev = l.degree;
  }
}

}  // namespace

TEST_CASE("specialization profile examples") {
  const GaloisProfile a = specialization_profile(quad(-1), Rational(1), 2);
  CHECK(a.degrees() == std::vector<int>{2, 8});
  check_profile_invariants(a);
  CHECK(specialization_profile(quad(-1), Rational(3), 1).degrees() == std::vector<int>{1});
  const GaloisProfile b = specialization_profile(quad(0), Rational(3), 2);
  CHECK(b.degrees() == std::vector<int>{2, 8});
  check_profile_invariants(b);
}

TEST_CASE("profile roots are the full preimage set") {
  const UnicriticalMap f = quad(-1);
  const GaloisProfile P = specialization_profile(f, Rational(2), 2);
  REQUIRE(P.roots.size() == 4);
  const NumberTower K = P.tower(2);
  for (const auto& r : P.roots) {
    const FieldElement y = r * r - K.one();
    CHECK(y * y - K.one() == K.element(Rational(2)));
  }
  for (std::size_t i = 0; i < P.roots.size(); ++i)
    for (std::size_t j = i + 1; j < P.roots.size(); ++j) CHECK_FALSE(P.roots[i] == P.roots[j]);
  CHECK(K.verify_history());
}

TEST_CASE("x^2 profiles match the cyclotomic-Kummer closed form") {
  for (long alpha : {3L, 5L}) {
    const GaloisProfile P = specialization_profile(quad(0), Rational(alpha), 3);
    check_profile_invariants(P);
    for (unsigned i = 1; i <= 3; ++i) CHECK(P.levels[i - 1].degree == x2_closed_form(i));
  }
}

TEST_CASE("new square classes at each quadratic level") {
  const GaloisProfile P = specialization_profile(quad(-1), Rational(1), 2);
  // level 1 adjoins √2; level 2 needs √(1+√2), and then √(1-√2) = i/√(1+√2) only after i
  CHECK(P.levels[0].new_square_classes.size() == 1);
  std::size_t total = 0;
  for (const auto& l : P.levels) total += l.new_square_classes.size();
  int degree = 1;
  for (std::size_t k = 0; k < total; ++k) degree *= 2;
  CHECK(degree == P.levels.back().degree);
}

TEST_CASE("generic path for degree 4 and 3") {
  const GaloisProfile a = specialization_profile(UnicriticalMap(2, 2, Rational(-1)), Rational(2), 1);
  // x^4 - 3: Q(3^(1/4), i)
  CHECK(a.degrees() == std::vector<int>{8});
  check_profile_invariants(a);
  const GaloisProfile b = specialization_profile(UnicriticalMap(3, 1, Rational(0)), Rational(2), 1);
  CHECK(b.degrees() == std::vector<int>{6});
  check_profile_invariants(b);
  CHECK(b.roots.size() == 3);
}

TEST_CASE("strictly post-critical basepoints are refused") {
  CHECK_THROWS_AS(specialization_profile(quad(-1), Rational(-1), 2), PostCriticalBasepoint);
  CHECK_THROWS_AS(specialization_profile(quad(-2), Rational(2), 1), PostCriticalBasepoint);
  CHECK_THROWS_AS(specialization_profile(quad(1), Rational(2), 2), PostCriticalBasepoint);
  CHECK_NOTHROW(specialization_profile(quad(1), Rational(2), 1));
}

TEST_CASE("profile degree cap") {
  TowerOptions small;
  small.degree_cap = 4;
  CHECK_THROWS_AS(specialization_profile(quad(-1), Rational(1), 2, small), CapExceeded);
}

TEST_CASE("Frobenius samples") {
  const auto s = frobenius_samples(quad(-1), Rational(1), 1, 10);
  REQUIRE(s.size() == 10);
  for (const auto& x : s) {
    if (x.q == 7) CHECK(x.degrees == std::vector<int>{1, 1});
    if (x.q == 5) CHECK(x.degrees == std::vector<int>{2});
  }
  const auto t = frobenius_samples(quad(-1), Rational(1), 2, 25);
  CHECK(t.size() == 25);
  const int exact = specialization_profile(quad(-1), Rational(1), 2).tower(2).degree();
  for (const auto& x : t) {
    CHECK(exact % static_cast<int>(x.lcm()) == 0);
    int sum = 0;
    for (int d : x.degrees) sum += d;
    CHECK(sum == 4);
    CHECK(x.q != 2);
  }
}

TEST_CASE("Frobenius degrees agree with a root count oracle") {
  // number of linear factors = number of roots of x^4 - 2x^2 - 1 mod q, by brute force
  for (const auto& x : frobenius_samples(quad(-1), Rational(1), 2, 15)) {
    std::uint64_t roots = 0;
    for (std::uint64_t t = 0; t < x.q; ++t) {
      const std::uint64_t t2 = t * t % x.q;
      if ((t2 * t2 + 2 * (x.q - t2) + x.q - 1) % x.q == 0) ++roots;
    }
    CHECK(static_cast<std::uint64_t>(std::count(x.degrees.begin(), x.degrees.end(), 1)) == roots);
  }
}

TEST_CASE("bad primes are skipped") {
  const auto s = frobenius_samples(UnicriticalMap(2, 1, Rational(1, 3)), Rational(1, 5), 1, 5);
  for (const auto& x : s) {
    CHECK(x.q != 3);
    CHECK(x.q != 5);
  }
}

TEST_CASE("bracket examples") {
  const GNBracket a = gn_bracket(quad(-1), {Rational(1), Rational(2)}, 2);
  CHECK(a.lower == 8);
  CHECK(a.upper == 8);
  CHECK(a.certified);
  const GNBracket b = gn_bracket(quad(0), {Rational(3)}, 1);
  CHECK(b.lower == 2);
  CHECK(b.upper == 2);
  CHECK(b.certified);
  const GNBracket c = gn_bracket(quad(-2), {Rational(1), Rational(3), Rational(5)}, 3);
  CHECK(c.upper == 128);
  CHECK_FALSE(c.certified);
  int top = 0;
  for (const auto& [alpha, deg] : c.samples) {
    CHECK(c.upper % deg == 0);
    top = std::max(top, deg);
  }
  CHECK(c.lower == top);
  CHECK_THROWS_AS(gn_bracket(quad(1), {Rational(3)}, 1), InvalidArgument);
}

TEST_CASE("splitting degree agrees with the density of totally split primes") {
  // about 1/[K:Q] of the primes split completely
  const UnicriticalMap f = quad(-2);
  for (long a : {1L, 3L, 5L}) {
    const int deg = specialization_profile(f, Rational(a), 3).tower(3).degree();
    const auto s = frobenius_samples(f, Rational(a), 3, 4000);
    const auto split = std::count_if(s.begin(), s.end(), [](const FrobeniusSample& x) { return x.lcm() == 1; });
    const double ratio = static_cast<double>(s.size()) / static_cast<double>(split);
    CAPTURE(a);
    CHECK(ratio > 0.75 * deg);
    CHECK(ratio < 1.25 * deg);
  }
}

TEST_CASE("constant candidates for x^2") {
  const auto a = constant_candidates(quad(0), 2, {Rational(3), Rational(5)});
  REQUIRE(a.size() == 3);
  CHECK(a[0].d == -1);
  CHECK(a[0].status == CandidateStatus::Supported);
  CHECK(a[0].depth == 2);
  const auto b = constant_candidates(quad(0), 3, {Rational(3), Rational(5)});
  for (const auto& r : b) CHECK(r.status == CandidateStatus::Supported);
  CHECK(b[1].depth == 3);
  CHECK(b[2].depth == 3);
  CHECK(constant_candidates(quad(0), 3, {})[0].status == CandidateStatus::Untested);
  CHECK_THROWS_AS(constant_candidates(UnicriticalMap(3, 1, Rational(0)), 2, {Rational(2)}), Unsupported);
}

TEST_CASE("constant candidates for x^2-1 at depth 2") {
  const auto r = constant_candidates(quad(-1), 2, {Rational(1), Rational(2)});
  REQUIRE(r.size() == 3);
  CHECK(r[0].status == CandidateStatus::Excluded);
  CHECK(r[0].witness == Rational(2));
  CHECK(r[1].status == CandidateStatus::Excluded);
  CHECK(r[1].witness == Rational(2));
  // (1+√3)(1-√3) = -2, so √-2 lies in K_{2,2}; it is also in K_{1,2} = Q(√(1+√2), i)
  CHECK(r[2].status == CandidateStatus::Supported);
  CHECK(r[2].depth == 2);

  const GaloisProfile P = specialization_profile(quad(-1), Rational(2), 2);
  const NumberTower K = P.tower(2);
  std::vector<FieldElement> plus, minus;
  FieldElement s3 = K.zero();
  for (const auto& x : P.roots) {
    const FieldElement y = x * x - K.one();  // ±√3
    if (s3.is_zero()) s3 = y;
    (y == s3 ? plus : minus).push_back(x);
  }
  REQUIRE(!plus.empty());
  REQUIRE(!minus.empty());
  const FieldElement w = plus[0] * minus[0];
  CHECK(w * w == K.element(Rational(-2)));
}

TEST_CASE("supported constants are present at the supporting depth") {
  const std::vector<Rational> samples{Rational(3), Rational(5)};
  const auto cands = constant_candidates(quad(0), 3, samples);
  for (const auto& alpha : samples) {
    const GaloisProfile P = specialization_profile(quad(0), alpha, 3);
    for (const auto& r : cands)
      if (r.status == CandidateStatus::Supported) CHECK(is_square(P.tower(r.depth).element(Rational(r.d))));
  }
}
