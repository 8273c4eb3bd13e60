#include <doctest.h>

#include "arbor/dynamics/dynamics.hpp"
#include "arbor/error.hpp"

using namespace arbor;

namespace {

UnicriticalMap quad(long c) { return UnicriticalMap(2, 1, Rational(c)); }

const CriticalOrbit& orbit_of(const OrbitResult& r) { return std::get<CriticalOrbit>(r); }

}  // namespace

TEST_CASE("critical orbit examples") {
  const OrbitResult a = critical_orbit(quad(-1));
  REQUIRE(std::holds_alternative<CriticalOrbit>(a));
  CHECK(orbit_of(a).points == std::vector<Rational>{0, -1});
  CHECK(orbit_of(a).tail_length == 0);
  CHECK(orbit_of(a).cycle_length == 2);
  CHECK(orbit_of(a).N == 2);

  const OrbitResult b = critical_orbit(quad(-2));
  CHECK(orbit_of(b).points == std::vector<Rational>{0, -2, 2});
  CHECK(orbit_of(b).tail_length == 2);
  CHECK(orbit_of(b).cycle_length == 1);
  CHECK(orbit_of(b).N == 3);

  const OrbitResult e = critical_orbit(quad(1));
  REQUIRE(std::holds_alternative<NotPCF>(e));
  CHECK(std::get<NotPCF>(e).index == 3);
  CHECK(std::get<NotPCF>(e).value == 5);
  CHECK(std::get<NotPCF>(e).reason == NotPCF::Reason::Escape);

  CHECK(orbit_of(critical_orbit(quad(0))).N == 1);
}

TEST_CASE("bounded orbit with a non-integral parameter") {
  // 0 -> -3/4 -> -3/16 -> ... converges to -1/2 without repeating
  const OrbitResult r = critical_orbit(UnicriticalMap(2, 1, Rational(-3, 4)));
  REQUIRE(std::holds_alternative<NotPCF>(r));
  const NotPCF& cert = std::get<NotPCF>(r);
  CHECK(cert.reason == NotPCF::Reason::Denominator);
  CHECK(cert.value.get_den() > Rational(-3, 4).get_den());
}

TEST_CASE("PCF classification over integer parameters") {
  // x^d + c with integral c is PCF exactly for c = 0, and c = -1 when d is even, and c = -2 when d = 2
  for (unsigned d : {2u, 3u, 4u, 5u}) {
    const std::uint64_t p = d == 4 ? 2 : d;
    const unsigned n = d == 4 ? 2 : 1;
    for (long c = -10; c <= 10; ++c) {
      const bool expected = c == 0 || (c == -1 && d % 2 == 0) || (c == -2 && d == 2);
      const OrbitResult r = critical_orbit(UnicriticalMap(p, n, Rational(c)));
      CHECK_MESSAGE(std::holds_alternative<CriticalOrbit>(r) == expected, "d=" << d << " c=" << c);
    }
  }
}

TEST_CASE("orbit invariants") {
  for (long c = -6; c <= 6; ++c) {
    const UnicriticalMap f = quad(c);
    const OrbitResult r = critical_orbit(f);
    const Rational bound = std::max(Rational(2), Rational(abs(Rational(c)) + 1));
    if (const auto* o = std::get_if<CriticalOrbit>(&r)) {
      CHECK(o->N == o->tail_length + o->cycle_length);
      CHECK(o->points.size() == o->N);
      for (std::size_t i = 0; i + 1 < o->N; ++i) CHECK(f(o->points[i]) == o->points[i + 1]);
      CHECK(f(o->points.back()) == o->points[o->tail_length]);
      for (std::size_t i = 0; i < o->N; ++i)
        for (std::size_t j = i + 1; j < o->N; ++j) CHECK(o->points[i] != o->points[j]);
    } else {
      const NotPCF& cert = std::get<NotPCF>(r);
      Rational z = 0;
      for (std::size_t i = 0; i < cert.index; ++i) {
        CHECK(abs(z) <= bound);
        z = f(z);
      }
      CHECK(z == cert.value);
      CHECK(abs(z) > bound);
    }
  }
}

TEST_CASE("strictly post-critical") {
  CHECK(strictly_post_critical(quad(-1), Rational(-1)));
  CHECK(strictly_post_critical(quad(-1), Rational(0)));
  CHECK_FALSE(strictly_post_critical(quad(-1), Rational(1)));
  CHECK(strictly_post_critical(quad(-2), Rational(2)));
  CHECK(strictly_post_critical(quad(-2), Rational(-2)));
  CHECK_FALSE(strictly_post_critical(quad(-2), Rational(0)));
  CHECK_FALSE(strictly_post_critical(quad(0), Rational(1)));
  CHECK(strictly_post_critical(quad(0), Rational(0)));
  CHECK_THROWS_AS(strictly_post_critical(quad(1), Rational(1)), InvalidArgument);
  CHECK(post_critical_within(quad(1), Rational(5), 3));
  CHECK_FALSE(post_critical_within(quad(1), Rational(5), 2));
}

TEST_CASE("collision condition") {
  CHECK(collision_condition(quad(-1)) == CollisionWitness{CriticalPoint::Zero, CriticalPoint::Zero, 0, 2});
  CHECK(collision_condition(quad(-2)) == CollisionWitness{CriticalPoint::Zero, CriticalPoint::Zero, 2, 3});
  CHECK(collision_condition(quad(0)) == CollisionWitness{CriticalPoint::Zero, CriticalPoint::Zero, 0, 1});
  CHECK(to_string(*collision_condition(quad(-1))) == "(0, 0, 0, 2)");
}

TEST_CASE("collision witness is the first pair in lexicographic order") {
  for (long c : {0L, -1L, -2L}) {
    const UnicriticalMap f = quad(c);
    const std::size_t N = orbit_of(critical_orbit(f)).N;
    auto iter = [&](std::size_t k) {
      Rational z = 0;
      for (std::size_t t = 0; t < k; ++t) z = f(z);
      return z;
    };
    std::optional<CollisionWitness> first;
    for (std::size_t i = 0; i <= N && !first; ++i)
      for (std::size_t j = 0; j <= N && !first; ++j)
        if (i != j && iter(i) == iter(j)) first = CollisionWitness{CriticalPoint::Zero, CriticalPoint::Zero, i, j};
    CHECK(collision_condition(f) == first);
  }
}

TEST_CASE("good reduction primes") {
  CHECK(good_reduction_primes(quad(-1), 20) == std::vector<std::uint64_t>{2});
  CHECK(good_reduction_primes(UnicriticalMap(2, 1, Rational(1, 3)), 20) == std::vector<std::uint64_t>{2, 3});
  CHECK(good_reduction_primes(UnicriticalMap(2, 2, Rational(-1)), 20) == std::vector<std::uint64_t>{2});
  CHECK(good_reduction_primes(UnicriticalMap(3, 1, Rational(5, 14)), 20) == std::vector<std::uint64_t>{2, 3, 7});
}

TEST_CASE("map parsing") {
  CHECK(parse_map("p=2,n=1,c=-1") == quad(-1));
  CHECK(parse_map("x^2-1") == quad(-1));
  CHECK(parse_map("x^2") == quad(0));
  CHECK(parse_map(" p = 3 , c = 1/2 ") == UnicriticalMap(3, 1, Rational(1, 2)));
  const UnicriticalMap f = parse_map("x^4-1");
  CHECK(f.p == 2);
  CHECK(f.n == 2);
  CHECK(f.degree() == 4);
  CHECK(f.to_string() == "x^4-1");
  CHECK_THROWS_AS(parse_map("x^6+1"), InvalidArgument);
  CHECK_THROWS_AS(parse_map("x^2+x"), InvalidArgument);
  CHECK_THROWS_AS(parse_map("p=4,c=1"), InvalidArgument);
  CHECK_THROWS_AS(parse_map("p=2,q=1,c=1"), InvalidArgument);
  CHECK(quad(-1).iterate(2) == parse_polynomial("x^4-2x^2"));
  CHECK(quad(-1).iterate(0) == QPoly::x());
}
