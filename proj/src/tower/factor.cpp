#include <algorithm>

#include "arbor/error.hpp"
#include "arbor/tower/algorithms.hpp"
#include "data.hpp"

namespace arbor {

namespace {

std::vector<std::pair<TowerPoly, unsigned>> squarefree_decomposition(const TowerPoly& f) {
  std::vector<std::pair<TowerPoly, unsigned>> out;
  const TowerPoly df = f.derivative();
  const TowerPoly c = gcd(f, df);
  if (c.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  TowerPoly w = f / c;
  TowerPoly y = df / c;
  TowerPoly z = y - w.derivative();
  for (unsigned i = 1; w.degree() > 0; ++i) {
    const TowerPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
  }
  return out;
}

// N(x) mod S for rational N, by Horner in K[x]/S
TowerPoly reduce_rational(const QPoly& N, const TowerPoly& S) {
  const NumberTower& K = S.tower();
  TowerPoly acc(K);
  const TowerPoly x(K, {K.zero(), K.one()});
  for (auto it = N.coeffs().rbegin(); it != N.coeffs().rend(); ++it) {
    acc = acc * x;
    acc += TowerPoly(K, {K.element(*it)});
    acc = acc % S;
  }
  return acc;
}

long shift_value(std::size_t k) {
  // 0, 1, -1, 2, -2, ...
  const long h = static_cast<long>((k + 1) / 2);
  return k % 2 == 1 ? h : -h;
}

std::vector<TowerPoly> factor_squarefree(const TowerPoly& S, const TowerOptions& options) {
  if (S.degree() <= 1) return {S};
  const NumberTower& K = S.tower();
  if (S.degree() == 2) {
    const FieldElement b = S.coeffs()[1], c = S.coeffs()[0];
    const FieldElement disc = b * b - c.scaled(Rational(4));
    if (auto known = relative_sqrt(disc, options)) {
      if (!*known) return {S};
      const FieldElement r1 = (-b + **known).scaled(Rational(1, 2));
      const FieldElement r2 = (-b - **known).scaled(Rational(1, 2));
      std::vector<TowerPoly> out{TowerPoly::linear(r1), TowerPoly::linear(r2)};
      return out;
    }
  }
  const FieldElement theta = K.theta();
  for (std::size_t k = 0;; ++k) {
    const long s = shift_value(k);
    const FieldElement shift = theta.scaled(Rational(s));
    const TowerPoly Ss = s == 0 ? S : S.shifted(-shift);
    const QPoly N = norm(Ss);
    if (!is_squarefree(N.primitive_integral())) continue;
    const QFactorList fl = factor_over_rationals(N, options.factor);
    if (fl.factors.size() == 1) return {S};
    std::vector<TowerPoly> out;
    TowerPoly rest = Ss;
    for (std::size_t i = 0; i + 1 < fl.factors.size() && rest.degree() > 0; ++i) {
      const TowerPoly h = gcd(rest, reduce_rational(fl.factors[i].factor, rest));
      if (h.degree() <= 0) continue;
      out.push_back(h);
      rest = rest / h;
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
    if (s != 0) {
      for (auto& h : out) h = h.shifted(shift);
    }
    return out;
  }
}

bool rep_less(const TowerPoly& a, const TowerPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto c = a.coeffs()[i].rep() <=> b.coeffs()[i].rep();
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

TowerFactorList factor_over_tower(const TowerPoly& a, const TowerOptions& options) {
  if (a.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  const NumberTower& K = a.tower();
  TowerFactorList result{a.leading(), {}};
  if (a.degree() < 1) return result;
  const std::size_t D = static_cast<std::size_t>(K.degree());
  if (D * static_cast<std::size_t>(a.degree()) > options.degree_cap) {
    throw CapExceeded("factoring over a tower of degree " + std::to_string(D) + " a polynomial of degree " +
                          std::to_string(a.degree()),
                      options.degree_cap);
  }
  if (D == 1) {
    const QFactorList fl = factor_over_rationals(*a.as_rational(), options.factor);
    for (const auto& e : fl.factors) result.factors.push_back({TowerPoly::from_rational(K, e.factor), e.multiplicity});
    return result;
  }
  for (const auto& [part, mult] : squarefree_decomposition(a.monic())) {
    for (auto& g : factor_squarefree(part, options)) result.factors.push_back({std::move(g), mult});
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& l, const auto& r) { return rep_less(l.factor, r.factor); });
  return result;
}

std::optional<FieldElement> square_root(const FieldElement& x, const TowerOptions& options) {
  const NumberTower& K = x.tower();
  if (x.is_zero()) return x;
  if (auto r = x.as_rational(); r && *r > 0 && mpz_perfect_square_p(r->get_num_mpz_t()) &&
                                mpz_perfect_square_p(r->get_den_mpz_t())) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r->get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r->get_den_mpz_t());
    return K.element(make_rational(n, d));
  }
  if (K.degree() == 1) return std::nullopt;
  if (auto known = relative_sqrt(x, options)) return *known;
  const Rational n = norm(x);
  if (n < 0 || !mpz_perfect_square_p(n.get_num_mpz_t()) || !mpz_perfect_square_p(n.get_den_mpz_t())) {
    return std::nullopt;
  }
  const TowerPoly f(K, {-x, K.zero(), K.one()});
  const TowerFactorList fl = factor_over_tower(f, options);
  for (const auto& e : fl.factors) {
    if (e.factor.degree() == 1) return -e.factor.coeffs()[0];
  }
  return std::nullopt;
}

bool is_square(const FieldElement& x, const TowerOptions& options) { return square_root(x, options).has_value(); }

}  // namespace arbor
