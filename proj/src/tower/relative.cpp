#include "arbor/tower/algorithms.hpp"
#include "data.hpp"

namespace arbor {

namespace {

void build_coords(QuadraticStep& step, const TowerData& parent) {
  const std::size_t D = static_cast<std::size_t>(parent.degree);
  const std::size_t N = 2 * D;
  const QPoly& m = parent.minpoly;
  const QPoly& g0 = step.ghat0;
  const QPoly& g1 = step.ghat1;
  const QPoly x = QPoly::x();
  const Rational lam(step.lambda);
  step.coords.assign(N, std::vector<Rational>(N));
  QPoly v0 = QPoly::constant(1), v1;
  auto at = [](const QPoly& a, std::size_t i) { return i < a.coeffs().size() ? a[i] : Rational(0); };
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t i = 0; i < D; ++i) {
      step.coords[i][k] = at(v0, i);
      step.coords[i + D][k] = at(v1, i);
    }
    const QPoly overflow = v1.scaled(lam);
    QPoly w0 = (v0 * x - overflow * g0) % m;
    QPoly w1 = (v1 * x + v0.scaled(lam) - overflow * g1) % m;
    v0 = std::move(w0);
    v1 = std::move(w1);
  }
}

std::optional<FieldElement> sqrt_any(const FieldElement& x, const TowerOptions& options) {
  if (auto r = relative_sqrt(x, options)) return *r;
  return square_root(x, options);
}

}  // namespace

std::optional<std::optional<FieldElement>> relative_sqrt(const FieldElement& x, const TowerOptions& options) {
  const NumberTower& K = x.tower();
  const TowerData& d = *K.data();
  if (x.is_zero()) return std::optional<FieldElement>(x);
  if (d.degree == 1) return square_root(x, options);
  if (!d.parent) return std::nullopt;
  const NumberTower F(d.parent);
  if (d.same_as_parent) {
    auto r = sqrt_any(F.element(x.rep()), options);
    if (!r) return std::optional<FieldElement>();
    return std::optional<FieldElement>(K.element(r->rep()));
  }
  if (!d.quadratic) return std::nullopt;
  QuadraticStep& step = *d.quadratic;
  const std::size_t D = static_cast<std::size_t>(F.degree());
  const std::size_t N = 2 * D;
  const QPoly& X = x.rep();
  std::vector<Rational> u(D), v(D);
  if (X.degree() == 0) {
    u[0] = X[0];
  } else {
    std::call_once(step.once, [&] { build_coords(step, *d.parent); });
  }
  for (std::size_t i = 0; i < D && X.degree() > 0; ++i) {
    for (std::size_t k = 0; k < N && k < X.coeffs().size(); ++k) {
      if (X[k] == 0) continue;
      u[i] += X[k] * step.coords[i][k];
      v[i] += X[k] * step.coords[i + D][k];
    }
  }
  // x = u + v r̂ = u' + v' w with w = 2 r̂ + ghat1, w^2 = delta
  const FieldElement g0 = F.element(step.ghat0), g1 = F.element(step.ghat1);
  const FieldElement vv = F.element(QPoly(v));
  const FieldElement u1 = F.element(QPoly(u)) - (vv * g1).scaled(Rational(1, 2));
  const FieldElement v1 = vv.scaled(Rational(1, 2));
  const FieldElement delta = g1 * g1 - g0.scaled(Rational(4));

  auto up = [&](const FieldElement& y) { return K.element(transport(y.rep(), d.embedding_z)); };
  const FieldElement w = K.element(step.rhat.scaled(Rational(2))) + up(g1);

  if (v1.is_zero()) {
    if (auto s = sqrt_any(u1, options)) return std::optional<FieldElement>(up(*s));
    if (auto s = sqrt_any(u1 / delta, options)) return std::optional<FieldElement>(up(*s) * w);
    return std::optional<FieldElement>();
  }
  const auto n = sqrt_any(u1 * u1 - delta * v1 * v1, options);
  if (!n) return std::optional<FieldElement>();
  for (int sign : {1, -1}) {
    const FieldElement x2 = (u1 + n->scaled(Rational(sign))).scaled(Rational(1, 2));
    if (x2.is_zero()) continue;
    if (auto a = sqrt_any(x2, options)) {
      const FieldElement b = v1 / a->scaled(Rational(2));
      return std::optional<FieldElement>(up(*a) + up(b) * w);
    }
  }
  return std::optional<FieldElement>();
}

}  // namespace arbor
