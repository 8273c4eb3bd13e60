#include <doctest.h>

#include <random>

#include "arbor/error.hpp"
#include "arbor/tower/algorithms.hpp"

using namespace arbor;

namespace {

QPoly P(const char* s) { return parse_polynomial(s); }

NumberTower sqrt2() { return adjoin_root(NumberTower::rationals(), P("x^2-2")); }

FieldElement last_root(const NumberTower& K) { return K.root(K.history().size() - 1); }

FieldElement random_element(const NumberTower& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5), d(1, 3);
  std::vector<Rational> v(static_cast<std::size_t>(K.degree()));
  for (auto& x : v) x = make_rational(Integer(c(rng)), Integer(d(rng)));
  return K.element(QPoly(v));
}

bool has_linear_factor(const TowerPoly& f) {
  for (const auto& e : factor_over_tower(f).factors)
    if (e.factor.degree() == 1) return true;
  return false;
}

}  // namespace

TEST_CASE("adjoin_root examples") {
  const NumberTower Q = NumberTower::rationals();
  const NumberTower K = sqrt2();
  CHECK(K.degree() == 2);
  const FieldElement s = last_root(K);
  CHECK(s * s == K.element(Rational(2)));

  const TowerPoly f(K, {-(K.one() + s), K.zero(), K.one()});
  const NumberTower K4 = adjoin_root(f);
  CHECK(K4.degree() == 4);
  CHECK(K4.verify_history());
  CHECK(has_linear_factor(TowerPoly::from_rational(K4, P("x^4-2x^2-1"))));
  CHECK(K4.extends(K));
  CHECK(K4.extends(Q));

  CHECK(adjoin_root(Q, P("x^2-4")).degree() == 1);
  const NumberTower K1 = adjoin_root(Q, P("x^2-4"));
  CHECK(K1.root(0).as_rational().has_value());
}

TEST_CASE("embedding transports elements") {
  const NumberTower K = sqrt2();
  const FieldElement s = last_root(K);
  const NumberTower L = adjoin_root(K, P("x^2+1"));
  CHECK(L.degree() == 4);
  const FieldElement s_up = L.embed(s);
  CHECK(s_up * s_up == L.element(Rational(2)));
  const FieldElement i = last_root(L);
  CHECK(i * i == L.element(Rational(-1)));
  CHECK(L.root(0) == s_up);
  CHECK_THROWS_AS(K.embed(i), DomainError);
  CHECK_THROWS_AS((void)(s + i), DomainError);
}

TEST_CASE("field arithmetic") {
  std::mt19937_64 rng(5);
  const NumberTower K = adjoin_root(sqrt2(), P("x^2-3"));
  for (int t = 0; t < 20; ++t) {
    const FieldElement a = random_element(K, rng);
    if (a.is_zero()) continue;
    CHECK((a * a.inverse()).is_one());
    const FieldElement b = random_element(K, rng);
    CHECK((a * b) / a == b);
  }
  CHECK_THROWS_AS(K.zero().inverse(), DomainError);
}

TEST_CASE("norm of an element") {
  const NumberTower K = sqrt2();
  const FieldElement s = last_root(K);
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const FieldElement x = K.element(Rational(a)) + s.scaled(Rational(b));
      CHECK(norm(x) == Rational(a * a - 2 * b * b));
    }
}

TEST_CASE("factor_over_tower examples") {
  const NumberTower K = sqrt2();
  const auto f = factor_over_tower(TowerPoly::from_rational(K, P("x^2-2")));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].factor.degree() == 1);
  CHECK(f.factors[1].factor.degree() == 1);
  CHECK(factor_over_tower(TowerPoly::from_rational(K, P("x^2+1"))).factors.size() == 1);

  // Q(r, i) with r a root of x^4-2x^2-1
  const NumberTower K4 = adjoin_root(NumberTower::rationals(), P("x^4-2x^2-1"));
  const NumberTower K8 = adjoin_root(K4, P("x^2+1"));
  CHECK(K8.degree() == 8);
  const FieldElement i = last_root(K8);
  CHECK(i * i == K8.element(Rational(-1)));
  const auto g = factor_over_tower(TowerPoly::from_rational(K8, P("x^2+1")));
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].factor.degree() == 1);
}

TEST_CASE("factorization round trip over a tower") {
  const NumberTower K = sqrt2();
  const FieldElement s = last_root(K);
  const TowerPoly a = TowerPoly::linear(s) * TowerPoly::linear(s) * TowerPoly::from_rational(K, P("x^2-3")) *
                      TowerPoly::from_rational(K, P("x^3-2"));
  const auto f = factor_over_tower(a.scaled(K.element(Rational(5))));
  TowerPoly prod(K, {f.unit});
  for (const auto& e : f.factors)
    for (unsigned m = 0; m < e.multiplicity; ++m) prod = prod * e.factor;
  CHECK(prod == a.scaled(K.element(Rational(5))));
  CHECK(f.degrees() == std::vector<int>{1, 1, 2, 3});
}

TEST_CASE("is_square examples") {
  const NumberTower Q = NumberTower::rationals();
  CHECK(is_square(sqrt2().element(Rational(2))));
  CHECK_FALSE(is_square(Q.element(Rational(-1))));
  CHECK(is_square(Q.element(Rational(9, 4))));
  const NumberTower K4 = adjoin_root(Q, P("x^4-2x^2-1"));
  CHECK_FALSE(is_square(K4.element(Rational(-1))));
  const NumberTower K8 = adjoin_root(K4, P("x^2+1"));
  CHECK(is_square(K8.element(Rational(-1))));
  auto r = square_root(K8.element(Rational(-1)));
  REQUIRE(r);
  CHECK(*r * *r == K8.element(Rational(-1)));
}

TEST_CASE("(1+sqrt2)(1-sqrt2) = -1 puts i in the splitting field") {
  const NumberTower K4 = adjoin_root(NumberTower::rationals(), P("x^4-2x^2-1"));
  const FieldElement r = last_root(K4);
  const FieldElement r2 = r * r;  // 1 + sqrt2
  CHECK((r2 - K4.one()) * (r2 - K4.one()) == K4.element(Rational(2)));
  const NumberTower K8 = adjoin_root(K4, P("x^2+1"));
  const FieldElement R = K8.embed(r), i = last_root(K8);
  const FieldElement other = i / R;  // squares to 1 - sqrt2
  const FieldElement f_other = other.pow(4) - other.pow(2).scaled(Rational(2)) - K8.one();
  CHECK(f_other.is_zero());
  CHECK_FALSE(other == R);
  CHECK_FALSE(other == -R);
}

TEST_CASE("splitting_tower examples") {
  CHECK(splitting_tower(P("x^2-4")).degree() == 1);
  CHECK(splitting_tower(P("x^2-2")).degree() == 2);
  const SplittingField s = splitting_tower(P("x^4-2x^2-1"));
  CHECK(s.degree() == 8);
  CHECK(s.roots.size() == 4);
  for (const auto& r : s.roots) CHECK(TowerPoly::from_rational(s.tower, P("x^4-2x^2-1"))(r).is_zero());
  CHECK(s.tower.verify_history());
  CHECK(splitting_tower(P("x^3-2")).degree() == 6);
  CHECK(splitting_tower(P("x^2-2") * P("x^2-2")).degree() == 2);
}

TEST_CASE("splitting degree is independent of adjunction order") {
  const std::vector<std::pair<QPoly, int>> cases = {
      {P("x^4-2x^2-1"), 8}, {P("x^3-2"), 6}, {P("x^2-2") * P("x^2-3") * P("x^2-5"), 8}, {P("x^4-2"), 8},
      {P("x^3-3x-1") * P("x^2+3"), 6}, {P("x^4+1"), 4}};
  for (const auto& [a, expected] : cases) {
    const std::string text = a.to_string();
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const SplittingField s = splitting_tower(a, {}, seed);
      CHECK_MESSAGE(s.degree() == expected, text);
      for (const auto& e : factor_over_rationals(a).factors) CHECK(s.degree() % e.factor.degree() == 0);
    }
  }
}

TEST_CASE("squares are recognized") {
  std::mt19937_64 rng(17);
  const NumberTower K = adjoin_root(sqrt2(), P("x^2+1"));
  for (int t = 0; t < 100; ++t) {
    const FieldElement g = random_element(K, rng);
    CHECK(is_square(g * g));
  }
  CHECK_FALSE(is_square(K.element(Rational(3))));
}

TEST_CASE("serialization round trip") {
  const NumberTower K = adjoin_root(sqrt2(), P("x^2+1"));
  const std::string text = K.serialize();
  CHECK(text.find('\n') == std::string::npos);
  const NumberTower back = NumberTower::deserialize(text);
  CHECK(back.minimal_poly() == K.minimal_poly());
  CHECK(back.history().size() == 2);
  CHECK(back.verify_history());
  CHECK(back.serialize() == text);
  CHECK_THROWS_AS(NumberTower::deserialize("{\"minimal_poly\":\"x^2-4\",\"history\":[]}"), InvalidArgument);
  CHECK_THROWS_AS(NumberTower::deserialize("not json"), InvalidArgument);
}

TEST_CASE("degree cap") {
  TowerOptions small;
  small.degree_cap = 4;
  const NumberTower K4 = adjoin_root(NumberTower::rationals(), P("x^4-2x^2-1"), small);
  CHECK_THROWS_AS(adjoin_root(K4, P("x^2+1"), small), CapExceeded);
  CHECK_THROWS_AS(factor_over_tower(TowerPoly::from_rational(K4, P("x^2+1")), small), CapExceeded);
  CHECK_THROWS_AS(splitting_tower(P("x^4-2x^2-1"), small), CapExceeded);
}

TEST_CASE("relative square roots agree with the generic path") {
  const NumberTower K1 = sqrt2();
  const FieldElement s = last_root(K1);
  const NumberTower K2 = adjoin_root(TowerPoly(K1, {-(K1.one() + s), K1.zero(), K1.one()}));
  const NumberTower K3 = adjoin_root(K2, P("x^2+1"));
  const NumberTower flat = NumberTower::deserialize(K3.serialize());
  REQUIRE_FALSE(flat.parent().has_value());
  std::mt19937_64 rng(5);
  std::vector<FieldElement> xs;
  for (long d : {-1L, 2L, -2L, 3L, 6L}) xs.push_back(K3.element(Rational(d)));
  xs.push_back(K3.embed(K1.one() + s));
  xs.push_back(K3.embed(K1.one() - s));
  for (int t = 0; t < 6; ++t) {
    const FieldElement g = random_element(K3, rng);
    xs.push_back(g * g);
    xs.push_back(g * g * K3.element(Rational(3)));
    xs.push_back(g);
  }
  for (const auto& x : xs) {
    const auto a = square_root(x);
    const auto b = square_root(flat.element(x.rep()));
    CAPTURE(x.to_string());
    CHECK(a.has_value() == b.has_value());
    if (a) CHECK(*a * *a == x);
    if (b) CHECK(b->rep() * b->rep() % flat.minimal_poly() == x.rep());
  }
}
