#include "arbor/arith/factor.hpp"

#include <random>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

namespace {

FpPoly exact_div(const FpPoly& a, const FpPoly& b) { return divmod(a, b).quotient; }

// c(x) = d(x^p) over F_p -> d
FpPoly pth_root(const FpPoly& c) {
  const std::uint64_t p = c.modulus();
  std::vector<std::uint64_t> v;
  for (std::size_t i = 0; i < c.coeffs().size(); i += p) v.push_back(c.coeffs()[i]);
  return FpPoly(p, std::move(v));
}

void equal_degree_split(const FpPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f);
    return;
  }
  const std::uint64_t p = f.modulus();
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  Integer half_power = 0;
  if (p != 2) {
    mpz_ui_pow_ui(half_power.get_mpz_t(), p, d);
    half_power = (half_power - 1) / 2;
  }
  const std::size_t n = static_cast<std::size_t>(f.degree());
  for (;;) {
    std::vector<std::uint64_t> r(n);
    for (auto& c : r) c = coef(rng);
    FpPoly a(p, std::move(r));
    if (a.degree() < 1) continue;
    FpPoly probe(p);
    if (p == 2) {
      FpPoly term = a % f;
      probe = term;
      for (unsigned i = 1; i < d; ++i) {
        term = (term * term) % f;
        probe += term;
      }
    } else {
      probe = powmod(a, half_power, f) - FpPoly::constant(p, 1);
    }
    const FpPoly g = gcd(probe, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(exact_div(f, g).monic(), d, rng, out);
      return;
    }
  }
}

// Integer polynomial arithmetic modulo m, coefficients kept in [0, m).
ZPoly reduce_mod(const ZPoly& a, const Integer& m) {
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_fdiv_r(v[i].get_mpz_t(), a.coeffs()[i].get_mpz_t(), m.get_mpz_t());
  return ZPoly(std::move(v));
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return reduce_mod(a * b, m); }

ZPoly to_z(const FpPoly& a) {
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<unsigned long>(a.coeffs()[i]);
  return ZPoly(std::move(v));
}

struct ZDivMod {
  ZPoly q, r;
};

// h monic modulo m.
ZDivMod divmod_monic(const ZPoly& a, const ZPoly& h, const Integer& m) {
  std::vector<Integer> r = reduce_mod(a, m).coeffs();
  if (r.size() < h.coeffs().size()) return {ZPoly{}, ZPoly(std::move(r))};
  const std::size_t dh = h.coeffs().size() - 1;
  std::vector<Integer> q(r.size() - dh);
  for (std::size_t k = r.size(); k-- > dh;) {
    mpz_fdiv_r(r[k].get_mpz_t(), r[k].get_mpz_t(), m.get_mpz_t());
    if (r[k] == 0) continue;
    const Integer coef = r[k];
    q[k - dh] = coef;
    for (std::size_t j = 0; j <= dh; ++j) mpz_submul(r[k - dh + j].get_mpz_t(), coef.get_mpz_t(), h.coeffs()[j].get_mpz_t());
  }
  r.resize(dh);
  return {reduce_mod(ZPoly(std::move(q)), m), reduce_mod(ZPoly(std::move(r)), m)};
}

Integer ipow(std::uint64_t p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

// f = g0 * h0 mod p with h0 monic and s0*g0 + t0*h0 = 1. Lifts g, h to modulus p^target.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const FpPoly& g0, const FpPoly& h0, std::uint64_t p, unsigned target) {
  const FpExtendedGcd eg = extended_gcd(g0, h0);
  if (!eg.gcd.is_one()) throw DomainError("Hensel lifting needs coprime factors");
  ZPoly g = to_z(g0), h = to_z(h0), s = to_z(eg.s), t = to_z(eg.t);
  const ZPoly one({Integer(1)});
  for (unsigned e = 1; e < target;) {
    e = std::min(2 * e, target);
    const Integer m = ipow(p, e);
    const ZPoly err = reduce_mod(f - g * h, m);
    const ZDivMod qr = divmod_monic(mul_mod(s, err, m), h, m);
    const ZPoly g_new = reduce_mod(g + t * err + qr.q * g, m);
    const ZPoly h_new = reduce_mod(h + qr.r, m);
    const ZPoly b = reduce_mod(s * g_new + t * h_new - one, m);
    const ZDivMod cd = divmod_monic(mul_mod(s, b, m), h_new, m);
    s = reduce_mod(s - cd.r, m);
    t = reduce_mod(t - t * b - cd.q * g_new, m);
    g = g_new;
    h = h_new;
  }
  return {g, h};
}

// f = lc(f) * prod(factors) mod p, factors monic. Appends monic lifts modulo p^target.
void hensel_tree(const ZPoly& f, std::span<const FpPoly> factors, std::uint64_t p, unsigned target, std::vector<ZPoly>& out) {
  const Integer m = ipow(p, target);
  if (factors.size() == 1) {
    Integer inv;
    const Integer lead = f.leading();
    mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), m.get_mpz_t());
    out.push_back(reduce_mod(f.scaled(inv), m));
    return;
  }
  const std::size_t half = factors.size() / 2;
  FpPoly h0 = FpPoly::constant(p, 1);
  for (std::size_t i = 0; i < half; ++i) h0 *= factors[i];
  FpPoly g0 = FpPoly::constant(p, modular::reduce(f.leading(), p));
  for (std::size_t i = half; i < factors.size(); ++i) g0 *= factors[i];
  auto [g, h] = hensel_pair(f, g0, h0, p, target);
  hensel_tree(h, factors.first(half), p, target, out);
  hensel_tree(g, factors.subspan(half), p, target, out);
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

ZPoly symmetric(const ZPoly& a, const Integer& m) {
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = modular::symmetric_residue(a.coeffs()[i], m);
  return ZPoly(std::move(v));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<ZPoly> zassenhaus(ZPoly F, const FactorOptions& options) {
  const int n = F.degree();
  if (n <= 1) return {F};

  struct Candidate {
    std::uint64_t p;
    std::size_t count;
  };
  std::vector<bool> allowed(static_cast<std::size_t>(n) + 1, true);
  std::optional<Candidate> best;
  std::size_t examined = 0;
  for (std::uint64_t p = 3; examined < options.candidate_primes; p = modular::next_prime(p + 1)) {
    if (modular::reduce(F.leading(), p) == 0) continue;
    const FpPoly fp = F.reduce(p).monic();
    if (!is_squarefree(fp)) continue;
    ++examined;
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    std::size_t count = 0;
    for (const auto& [part, d] : distinct_degree_factorization(fp)) {
      const std::size_t k = static_cast<std::size_t>(part.degree()) / d;
      count += k;
      for (std::size_t rep = 0; rep < k; ++rep) {
        for (std::size_t s = sums.size(); s-- > d;) {
          if (sums[s - d]) sums[s] = true;
        }
      }
    }
    for (std::size_t s = 0; s < sums.size(); ++s) allowed[s] = allowed[s] && sums[s];
    if (!best || count < best->count) best = Candidate{p, count};
    bool proper = false;
    for (int s = 1; s < n; ++s) proper = proper || allowed[static_cast<std::size_t>(s)];
    if (!proper) return {F};
  }

  const std::uint64_t p = best->p;
  const FpFactorList modp = factor_mod_p(F.reduce(p), options.seed);
  std::vector<FpPoly> local;
  for (const auto& e : modp.factors) local.push_back(e.factor);
  if (local.size() == 1) return {F};

  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), F.norm2_squared().get_mpz_t());
  norm += 1;
  const Integer bound = 2 * F.leading() * binomial(static_cast<unsigned>(n), static_cast<unsigned>(n / 2)) * norm;
  unsigned target = 1;
  Integer M = p;
  while (M <= bound) {
    M *= static_cast<unsigned long>(p);
    ++target;
  }

  std::vector<ZPoly> lifted;
  hensel_tree(F, local, p, target, lifted);

  std::vector<ZPoly> found;
  std::size_t tested = 0;
  for (std::size_t s = 1; 2 * s <= lifted.size(); ++s) {
    std::vector<std::size_t> idx(s);
    bool restart = true;
    while (restart) {
      restart = false;
      if (2 * s > lifted.size()) break;
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      do {
        if (++tested > options.subset_cap) {
          throw CapExceeded("Zassenhaus recombination exceeded the subset cap", options.subset_cap);
        }
        std::size_t deg = 0;
        for (auto i : idx) deg += static_cast<std::size_t>(lifted[i].degree());
        if (!allowed[deg]) continue;
        const Integer lead = F.leading();
        Integer c0 = lead;
        for (auto i : idx) c0 = (c0 * lifted[i][0]) % M;
        c0 = modular::symmetric_residue(c0, M);
        const Integer target_c0 = lead * F[0];
        if (c0 == 0 || !mpz_divisible_p(target_c0.get_mpz_t(), c0.get_mpz_t())) continue;
        ZPoly prod({lead});
        for (auto i : idx) prod = mul_mod(prod, lifted[i], M);
        const ZPoly candidate = symmetric(prod, M).primitive_part();
        auto quotient = F.exact_quotient(candidate);
        if (!quotient) continue;
        found.push_back(candidate);
        F = *quotient;
        std::vector<ZPoly> rest;
        for (std::size_t i = 0, k = 0; i < lifted.size(); ++i) {
          if (k < s && idx[k] == i) {
            ++k;
            continue;
          }
          rest.push_back(lifted[i]);
        }
        lifted = std::move(rest);
        restart = true;
        break;
      } while (next_combination(idx, lifted.size()));
    }
  }
  if (F.degree() > 0) found.push_back(F);
  return found;
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& a) {
  if (a.is_zero()) throw InvalidArgument("square-free decomposition of zero");
  const std::uint64_t p = a.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  const FpPoly f = a.monic();
  if (f.degree() <= 0) return out;
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = exact_div(f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    const FpPoly y = gcd(w, c);
    const FpPoly z = exact_div(w, y);
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(pth_root(c))) out.emplace_back(g, m * static_cast<unsigned>(p));
  }
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly& a) {
  const std::uint64_t p = a.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  FpPoly f = a.monic();
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % f;
  const Integer pz = static_cast<unsigned long>(p);
  for (unsigned d = 1; f.degree() >= 2 * static_cast<int>(d); ++d) {
    h = powmod(h, pz, f);
    const FpPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

FpFactorList factor_mod_p(const FpPoly& a, std::uint64_t seed) {
  if (a.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  FpFactorList result{a.leading(), {}};
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : squarefree_decomposition(a)) {
    for (const auto& [block, d] : distinct_degree_factorization(part)) {
      std::vector<FpPoly> pieces;
      equal_degree_split(block, d, rng, pieces);
      for (auto& f : pieces) result.factors.push_back({std::move(f), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& l, const auto& r) { return l.factor < r.factor; });
  return result;
}

std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& a) {
  if (a.is_zero()) throw InvalidArgument("square-free decomposition of zero");
  std::vector<std::pair<QPoly, unsigned>> out;
  if (a.degree() <= 0) return out;
  const QPoly f = a.monic();
  const QPoly df = f.derivative();
  const QPoly c = gcd(f, df);
  QPoly w = f / c;
  QPoly y = df / c;
  QPoly z = y - w.derivative();
  for (unsigned i = 1; w.degree() > 0; ++i) {
    const QPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
  }
  return out;
}

std::vector<ZPoly> factor_squarefree_integral(const ZPoly& a, const FactorOptions& options) {
  if (a.degree() < 1) throw InvalidArgument("factor_squarefree_integral needs positive degree");
  ZPoly F = a.primitive_part();
  std::vector<ZPoly> out;
  if (F[0] == 0) {
    out.push_back(ZPoly({Integer(0), Integer(1)}));
    std::vector<Integer> shifted(F.coeffs().begin() + 1, F.coeffs().end());
    F = ZPoly(std::move(shifted));
    if (F.degree() == 0) return out;
  }
  for (auto& g : zassenhaus(std::move(F), options)) out.push_back(std::move(g));
  return out;
}

QFactorList factor_over_rationals(const QPoly& a, const FactorOptions& options) {
  if (a.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  QFactorList result{a.leading(), {}};
  for (const auto& [part, mult] : squarefree_decomposition(a)) {
    for (const auto& g : factor_squarefree_integral(part.primitive_integral(), options)) {
      result.factors.push_back({QPoly(g).monic(), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& l, const auto& r) { return l.factor < r.factor; });
  return result;
}

bool is_irreducible(const QPoly& a, const FactorOptions& options) {
  if (a.degree() < 1) return false;
  const QFactorList f = factor_over_rationals(a, options);
  return f.factors.size() == 1 && f.factors.front().multiplicity == 1;
}

FpPoly expand(const FpFactorList& list, std::uint64_t p) {
  FpPoly r = FpPoly::constant(p, list.unit);
  for (const auto& e : list.factors) {
    for (unsigned i = 0; i < e.multiplicity; ++i) r *= e.factor;
  }
  return r;
}

QPoly expand(const QFactorList& list) {
  QPoly r = QPoly::constant(list.unit);
  for (const auto& e : list.factors) {
    for (unsigned i = 0; i < e.multiplicity; ++i) r *= e.factor;
  }
  return r;
}

}  // namespace arbor
