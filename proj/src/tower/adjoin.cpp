#include <random>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"
#include "arbor/tower/algorithms.hpp"
#include "data.hpp"

namespace arbor {

namespace {

constexpr std::size_t kCheckPrimeOffset = 4096;

using Matrix = std::vector<std::vector<std::uint64_t>>;

// Solves A X = B in place mod p (A square). Returns false when A is singular.
bool solve_mod(Matrix& A, Matrix& B, std::uint64_t p) {
  using namespace modular;
  const std::size_t n = A.size();
  const std::size_t m = B.empty() ? 0 : B[0].size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[piv], A[col]);
    std::swap(B[piv], B[col]);
    const std::uint64_t inv = inv_mod(A[col][col], p);
    for (std::size_t k = col; k < n; ++k) A[col][k] = mul_mod(A[col][k], inv, p);
    for (std::size_t k = 0; k < m; ++k) B[col][k] = mul_mod(B[col][k], inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const std::uint64_t f = A[r][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] = sub_mod(A[r][k], mul_mod(f, A[col][k], p), p);
      for (std::size_t k = 0; k < m; ++k) B[r][k] = sub_mod(B[r][k], mul_mod(f, B[col][k], p), p);
    }
  }
  return true;
}

struct PrimitiveData {
  const TowerData* base;
  std::vector<QPoly> ghat;  // monic in r̂ with algebraic integer roots, coefficients in θ; size e+1
  unsigned long lambda;
  QPoly minpoly;
};

// Coordinates of θ'^k (k < N) in the basis θ^i r̂^j, as the columns of the returned matrix.
// Solves for the images of θ^i (i < D) and r̂ in powers of θ'. Row-major result:
// sol[b][t] is coefficient b of target t.
std::optional<Matrix> solve_images(const PrimitiveData& pd, std::uint64_t p) {
  using namespace modular;
  const std::size_t D = static_cast<std::size_t>(pd.base->degree);
  const std::size_t e = pd.ghat.size() - 1;
  const std::size_t N = D * e;
  const FpPoly m = pd.base->minpoly_z.reduce(p);
  std::vector<FpPoly> g;
  for (std::size_t j = 0; j < e; ++j) {
    auto r = pd.ghat[j].reduce(p);
    if (!r) return std::nullopt;
    g.push_back(std::move(*r));
  }
  const std::uint64_t lam = pd.lambda % p;
  const FpPoly x = FpPoly::x(p);

  Matrix A(N, std::vector<std::uint64_t>(N, 0));
  std::vector<FpPoly> V(e, FpPoly(p));
  V[0] = FpPoly::constant(p, 1);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t j = 0; j < e; ++j) {
      for (std::size_t i = 0; i < D; ++i) A[i + D * j][k] = V[j][i];
    }
    std::vector<FpPoly> W(e, FpPoly(p));
    const FpPoly overflow = V[e - 1].scaled(lam);
    for (std::size_t j = 0; j < e; ++j) {
      W[j] = V[j] * x;
      if (j > 0) W[j] += V[j - 1].scaled(lam);
      W[j] -= overflow * g[j];
      W[j] = W[j] % m;
    }
    V = std::move(W);
  }
  Matrix B(N, std::vector<std::uint64_t>(D + 1, 0));
  for (std::size_t i = 0; i < D; ++i) B[i][i] = 1;
  B[D][D] = 1;  // r̂ = θ^0 r̂^1 sits at index D
  if (!solve_mod(A, B, p)) return std::nullopt;
  return B;
}

bool check_images(const PrimitiveData& pd, const std::vector<QPoly>& T, const QPoly& Q, std::uint64_t q) {
  const std::size_t D = T.size();
  const auto Mq = pd.minpoly.reduce(q);
  if (!Mq) return false;
  std::vector<FpPoly> Tq;
  for (const auto& t : T) {
    auto r = t.reduce(q);
    if (!r) return false;
    Tq.push_back(*r);
  }
  auto Qq = Q.reduce(q);
  if (!Qq) return false;
  if (!Tq[0].is_one()) return false;
  const FpPoly T1 = D > 1 ? Tq[1] : FpPoly(q);
  for (std::size_t i = 2; i < D; ++i) {
    if (!((Tq[i - 1] * T1) % *Mq == Tq[i])) return false;
  }
  // m(T1) = 0
  FpPoly mT = (Tq[D - 1] * T1) % *Mq;
  const ZPoly& m = pd.base->minpoly_z;
  for (std::size_t i = 0; i < D; ++i) mT += Tq[i].scaled(modular::reduce(m[i], q));
  if (!mT.is_zero()) return false;
  // ĝ(T, Q) = 0 by Horner in Q
  FpPoly acc(q);
  for (std::size_t j = pd.ghat.size(); j-- > 0;) {
    const auto gj = pd.ghat[j].reduce(q);
    if (!gj) return false;
    FpPoly coef(q);
    for (std::size_t i = 0; i < gj->coeffs().size(); ++i) coef += Tq[i].scaled((*gj)[i]);
    acc = (acc * *Qq) % *Mq + coef;
  }
  return acc.is_zero();
}

}  // namespace

NumberTower adjoin_irreducible(const TowerPoly& g_in, const TowerOptions& options) {
  const NumberTower& K = g_in.tower();
  const TowerData& base = *K.data();
  const TowerPoly g = g_in.monic();
  const int e = g.degree();
  if (e < 1) throw InvalidArgument("adjoin_root needs a nonconstant polynomial");
  const std::size_t D = static_cast<std::size_t>(base.degree);
  const std::size_t N = D * static_cast<std::size_t>(e);

  auto next = std::make_shared<TowerData>();
  std::vector<QPoly> T;
  QPoly root_rep;
  if (e == 1) {
    *next = *make_tower_data(base.minpoly);
    next->same_as_parent = true;
    for (std::size_t i = 0; i < D; ++i) T.push_back(QPoly::monomial(1, i));
    root_rep = (-g.coeffs()[0]).rep();
  } else {
    if (N > options.degree_cap) {
      throw CapExceeded("adjunction would reach degree " + std::to_string(N), options.degree_cap);
    }
    // L r is an algebraic integer once L clears the denominators of the absolute norm of g;
    // power-basis denominators would overshoot by the index of Z[θ]
    Integer L = 1;
    const QPoly ng = norm_stable(g);
    for (const auto& c : ng.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
    const Integer root_r = root_bound(ng);
    PrimitiveData pd{&base, {}, 0, {}};
    for (int j = 0; j <= e; ++j) {
      Integer scale;
      mpz_pow_ui(scale.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(e - j));
      pd.ghat.push_back(g.coeffs()[static_cast<std::size_t>(j)].rep().scaled(Rational(scale)));
    }
    // θ' = θ + λ r̂ with r̂ = L r integral; its characteristic polynomial is N_K(G(x - θ)),
    // G(y) = λ^e ĝ(y / λ)
    for (unsigned long lambda = 1;; ++lambda) {
      std::vector<FieldElement> G;
      Integer lp = 1;
      for (int j = e; j >= 0; --j) {
        G.push_back(K.element(pd.ghat[static_cast<std::size_t>(j)].scaled(Rational(lp))));
        lp *= lambda;
      }
      std::reverse(G.begin(), G.end());
      const TowerPoly shifted = TowerPoly(K, std::move(G)).shifted(-K.theta());
      // roots θ_σ + λ r̂_σ are bounded by R + λ L |r|, coefficients by (1 + that)^N
      Integer R = base.root_bound + lambda * L * root_r;
      R += 1;
      QPoly M = norm(shifted, static_cast<std::size_t>(N) * bit_length(R) + 1);
      if (is_squarefree(M.primitive_integral())) {
        pd.lambda = lambda;
        pd.minpoly = std::move(M);
        break;
      }
    }

    modular::CrtAccumulator crt(N * (D + 1));
    std::size_t next_check = 2;
    bool done = false;
    for (std::size_t idx = 0; !done; ++idx) {
      if (idx >= kCheckPrimeOffset) throw Error("primitive element images did not reconstruct");
      const std::uint64_t p = modular::large_prime(idx);
      auto sol = solve_images(pd, p);
      if (!sol) continue;
      std::vector<std::uint64_t> flat;
      flat.reserve(N * (D + 1));
      for (std::size_t t = 0; t <= D; ++t)
        for (std::size_t b = 0; b < N; ++b) flat.push_back((*sol)[b][t]);
      crt.add(p, flat);
      if (crt.prime_count() < next_check) continue;
      next_check *= 2;
      auto rebuild = [&](std::size_t t) -> std::optional<QPoly> {
        std::vector<Rational> c(N);
        for (std::size_t b = 0; b < N; ++b) {
          auto r = modular::rational_reconstruct(crt.residues()[t * N + b], crt.modulus());
          if (!r) return std::nullopt;
          c[b] = *r;
        }
        return QPoly(std::move(c));
      };
      auto Q = rebuild(D);
      if (!Q) continue;
      std::vector<QPoly> images;
      for (std::size_t t = 0; t < D; ++t) {
        auto img = rebuild(t);
        if (!img) break;
        images.push_back(std::move(*img));
      }
      if (images.size() != D) continue;
      // P + λ Q must be θ' exactly
      const QPoly theta_img = D > 1 ? images[1] : QPoly{};
      if (theta_img + Q->scaled(Rational(static_cast<unsigned long>(pd.lambda))) != QPoly::x()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < 2 && ok; ++k) ok = check_images(pd, images, *Q, modular::large_prime(kCheckPrimeOffset + k));
      if (!ok) continue;
      T = std::move(images);
      root_rep = Q->scaled(Rational(1) / Rational(L));
      done = true;
      if (e == 2) {
        auto step = std::make_shared<QuadraticStep>();
        step->ghat0 = pd.ghat[0];
        step->ghat1 = pd.ghat[1];
        step->rhat = *Q;
        step->lambda = pd.lambda;
        next->quadratic = std::move(step);
      }
    }
    {
      auto quadratic = next->quadratic;
      *next = *make_tower_data(pd.minpoly);
      next->quadratic = std::move(quadratic);
    }
  }

  next->parent = K.data();
  const IntegralImages Tz = integral_images(T);
  for (const auto& rec : base.history) {
    AdjunctionRecord r;
    for (const auto& c : rec.source) r.source.push_back(transport(c, Tz));
    r.root = transport(rec.root, Tz);
    next->history.push_back(std::move(r));
  }
  AdjunctionRecord added;
  for (const auto& c : g_in.coeffs()) added.source.push_back(transport(c.rep(), Tz));
  added.root = root_rep;
  next->history.push_back(std::move(added));
  next->embedding = std::move(T);
  next->embedding_z = Tz;
  return NumberTower(std::move(next));
}

NumberTower adjoin_root(const TowerPoly& a, const TowerOptions& options) {
  if (a.degree() < 1) throw InvalidArgument("adjoin_root needs a nonconstant polynomial");
  const TowerFactorList fl = factor_over_tower(a, options);
  const TowerPoly* best = nullptr;
  for (const auto& e : fl.factors) {
    if (!best || e.factor.degree() > best->degree()) best = &e.factor;
  }
  const NumberTower K = adjoin_irreducible(*best, options);
  auto data = std::make_shared<TowerData>(*K.data());
  std::vector<QPoly> src;
  for (const auto& c : a.coeffs()) src.push_back(transport(c.rep(), data->embedding_z));
  data->history.back().source = std::move(src);
  return NumberTower(std::move(data));
}

NumberTower adjoin_root(const NumberTower& tower, const QPoly& a, const TowerOptions& options) {
  return adjoin_root(TowerPoly::from_rational(tower, a), options);
}

SplittingField splitting_tower(const TowerPoly& a, const TowerOptions& options, std::optional<std::uint64_t> order_seed) {
  if (a.degree() < 1) return {a.tower(), {}};
  NumberTower K = a.tower();
  const TowerPoly S = a / gcd(a, a.derivative());
  std::vector<TowerPoly> pending{S.monic()};
  std::vector<FieldElement> roots;
  std::optional<std::mt19937_64> rng;
  if (order_seed) rng.emplace(*order_seed);
  for (;;) {
    std::vector<TowerPoly> open;
    for (const auto& P : pending) {
      for (const auto& e : factor_over_tower(P, options).factors) {
        if (e.factor.degree() == 1) roots.push_back(-e.factor.coeffs()[0]);
        else open.push_back(e.factor);
      }
    }
    if (open.empty()) return {K, roots};
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(*rng);
    const NumberTower next = adjoin_irreducible(open[pick], options);
    const FieldElement r = next.root(next.history().size() - 1);
    for (auto& x : roots) x = next.embed(x);
    roots.push_back(r);
    pending.clear();
    for (std::size_t i = 0; i < open.size(); ++i) {
      TowerPoly f = next.embed(open[i]);
      if (i == pick) f = f / TowerPoly::linear(r);
      if (f.degree() >= 1) pending.push_back(std::move(f));
    }
    K = next;
  }
}

SplittingField splitting_tower(const QPoly& a, const TowerOptions& options, std::optional<std::uint64_t> order_seed) {
  return splitting_tower(TowerPoly::from_rational(NumberTower::rationals(), a), options, order_seed);
}

}  // namespace arbor
