#include <algorithm>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"
#include "data.hpp"

namespace arbor {

namespace {

Integer root_bound_of(const ZPoly& m) {
  // Fujiwara: 2 max |m_{D-k}|^(1/k)
  const int D = m.degree();
  Integer best = 1;
  for (int k = 1; k <= D; ++k) {
    Integer a = abs(Rational(m[static_cast<std::size_t>(D - k)])).get_num();
    if (a == 0) continue;
    Integer r;
    const int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(k));
    if (!exact) r += 1;
    if (r > best) best = r;
  }
  return 2 * best;
}

}  // namespace

Integer root_bound(const QPoly& monic) {
  const int D = monic.degree();
  Integer best = 1;
  for (int k = 1; k <= D; ++k) {
    const Rational a = abs(monic[static_cast<std::size_t>(D - k)]);
    if (a == 0) continue;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    Integer r;
    if (!mpz_root(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k))) r += 1;
    if (r > best) best = r;
  }
  return 2 * best;
}

namespace {

void check_same(const NumberTower& a, const NumberTower& b) {
  if (!(a == b)) throw DomainError("elements of different towers");
}

}  // namespace

std::shared_ptr<TowerData> make_tower_data(const QPoly& minpoly) {
  auto d = std::make_shared<TowerData>();
  d->minpoly = minpoly;
  std::vector<Integer> z;
  for (const auto& c : minpoly.coeffs()) z.push_back(c.get_num());
  d->minpoly_z = ZPoly(std::move(z));
  d->degree = minpoly.degree();
  d->root_bound = root_bound_of(d->minpoly_z);
  return d;
}

QPoly reduce_rep(const QPoly& a, const TowerData& d) {
  if (a.degree() < d.degree) return a;
  std::vector<Rational> r = a.coeffs();
  const auto& m = d.minpoly.coeffs();
  const std::size_t D = static_cast<std::size_t>(d.degree);
  Rational t;
  for (std::size_t k = r.size(); k-- > D;) {
    if (r[k] == 0) continue;
    const Rational coef = r[k];
    for (std::size_t j = 0; j < D; ++j) {
      if (m[j] == 0) continue;
      t = coef * m[j];
      r[k - D + j] -= t;
    }
    r[k] = 0;
  }
  r.resize(D);
  return QPoly(std::move(r));
}

QPoly transport(const QPoly& a, const std::vector<QPoly>& images) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Rational& c = a.coeffs()[i];
    if (c == 0) continue;
    const auto& img = images.at(i).coeffs();
    if (out.size() < img.size()) out.resize(img.size());
    for (std::size_t j = 0; j < img.size(); ++j) out[j] += c * img[j];
  }
  return QPoly(std::move(out));
}

IntegralImages integral_images(const std::vector<QPoly>& images) {
  IntegralImages out;
  for (const auto& img : images) {
    const Integer den = common_denominator(img);
    std::vector<Integer> num;
    for (const auto& c : img.coeffs()) num.push_back(c.get_num() * (den / c.get_den()));
    out.num.push_back(std::move(num));
    out.den.push_back(den);
  }
  return out;
}

QPoly transport(const QPoly& a, const IntegralImages& images) {
  Integer W = 1;
  std::size_t width = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Rational& c = a.coeffs()[i];
    if (c == 0) continue;
    const Integer den = c.get_den() * images.den.at(i);
    mpz_lcm(W.get_mpz_t(), W.get_mpz_t(), den.get_mpz_t());
    width = std::max(width, images.num[i].size());
  }
  std::vector<Integer> acc(width, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Rational& c = a.coeffs()[i];
    if (c == 0) continue;
    const Integer scale = c.get_num() * (W / (c.get_den() * images.den[i]));
    const auto& num = images.num[i];
    for (std::size_t j = 0; j < num.size(); ++j) mpz_addmul(acc[j].get_mpz_t(), scale.get_mpz_t(), num[j].get_mpz_t());
  }
  std::vector<Rational> out(width);
  for (std::size_t j = 0; j < width; ++j) out[j] = make_rational(acc[j], W);
  return QPoly(std::move(out));
}

Integer common_denominator(const QPoly& a) {
  Integer l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

ZPoly to_integral(const QPoly& a, const Integer& scale) {
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational q = a.coeffs()[i] * scale;
    if (q.get_den() != 1) throw DomainError("to_integral: scale does not clear denominators");
    v[i] = q.get_num();
  }
  return ZPoly(std::move(v));
}

std::vector<std::uint64_t> interpolate_consecutive(const std::vector<std::uint64_t>& values, std::uint64_t p) {
  using namespace modular;
  const std::size_t n = values.size();
  std::vector<std::uint64_t> c = values;
  for (std::size_t j = 1; j < n; ++j) {
    const std::uint64_t inv = inv_mod(j % p, p);
    for (std::size_t i = n - 1; i >= j; --i) c[i] = mul_mod(sub_mod(c[i], c[i - 1], p), inv, p);
  }
  std::vector<std::uint64_t> poly{c[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // poly = poly * (x - k) + c[k]
    std::vector<std::uint64_t> next(poly.size() + 1, 0);
    const std::uint64_t shift = neg_mod(k % p, p);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add_mod(next[i + 1], poly[i], p);
      next[i] = add_mod(next[i], mul_mod(poly[i], shift, p), p);
    }
    next[0] = add_mod(next[0], c[k], p);
    poly = std::move(next);
  }
  return poly;
}

// NumberTower

NumberTower NumberTower::rationals() {
  static const NumberTower q(make_tower_data(QPoly::x()));
  return q;
}

NumberTower NumberTower::from_minimal_poly(const QPoly& minimal_poly, std::vector<AdjunctionRecord> history) {
  if (minimal_poly.degree() < 1 || minimal_poly.leading() != 1) throw InvalidArgument("minimal polynomial must be monic");
  for (const auto& c : minimal_poly.coeffs()) {
    if (c.get_den() != 1) throw InvalidArgument("minimal polynomial must have integer coefficients");
  }
  if (minimal_poly.degree() == 1) {
    if (minimal_poly != QPoly::x()) throw InvalidArgument("degree-one towers use the minimal polynomial x");
    if (history.empty()) return rationals();
  } else if (!is_irreducible(minimal_poly)) {
    throw InvalidArgument("minimal polynomial " + minimal_poly.to_string() + " is reducible");
  }
  auto d = make_tower_data(minimal_poly);
  d->history = std::move(history);
  NumberTower t(std::move(d));
  if (!t.verify_history()) throw InvalidArgument("history roots do not satisfy their polynomials");
  return t;
}

const QPoly& NumberTower::minimal_poly() const { return d_->minpoly; }
int NumberTower::degree() const { return d_->degree; }
const std::vector<AdjunctionRecord>& NumberTower::history() const { return d_->history; }

FieldElement NumberTower::theta() const { return element(QPoly::x()); }
FieldElement NumberTower::element(const QPoly& rep) const { return FieldElement(*this, rep); }
FieldElement NumberTower::element(const Rational& value) const { return FieldElement(*this, QPoly::constant(value)); }
FieldElement NumberTower::zero() const { return element(QPoly{}); }
FieldElement NumberTower::one() const { return element(Rational(1)); }

FieldElement NumberTower::root(std::size_t i) const { return element(d_->history.at(i).root); }

TowerPoly NumberTower::source(std::size_t i) const {
  std::vector<FieldElement> c;
  for (const auto& rep : d_->history.at(i).source) c.push_back(element(rep));
  return TowerPoly(*this, std::move(c));
}

std::optional<NumberTower> NumberTower::parent() const {
  if (!d_->parent) return std::nullopt;
  return NumberTower(d_->parent);
}

bool NumberTower::extends(const NumberTower& other) const {
  for (const TowerData* p = d_.get(); p; p = p->parent.get()) {
    if (p == other.d_.get()) return true;
  }
  // every tower contains Q
  return other.d_->degree == 1 && other.d_->history.empty();
}

FieldElement NumberTower::embed(const FieldElement& x) const {
  if (x.tower() == *this) return x;
  if (auto r = x.as_rational(); r && x.tower().degree() == 1) return element(*r);
  std::vector<const TowerData*> chain;
  const TowerData* p = d_.get();
  while (p && p != x.tower().data().get()) {
    chain.push_back(p);
    p = p->parent.get();
  }
  if (!p) throw DomainError("element does not belong to a subfield of this tower");
  QPoly rep = x.rep();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) rep = transport(rep, (*it)->embedding_z);
  return element(rep);
}

TowerPoly NumberTower::embed(const TowerPoly& a) const {
  std::vector<FieldElement> c;
  for (const auto& x : a.coeffs()) c.push_back(embed(x));
  return TowerPoly(*this, std::move(c));
}

bool NumberTower::verify_history() const {
  for (std::size_t i = 0; i < d_->history.size(); ++i) {
    if (!source(i)(root(i)).is_zero()) return false;
  }
  return true;
}

// FieldElement

FieldElement::FieldElement(NumberTower tower, const QPoly& rep)
    : tower_(std::move(tower)), rep_(reduce_rep(rep, *tower_.data())) {}

std::optional<Rational> FieldElement::as_rational() const {
  if (rep_.degree() > 0) return std::nullopt;
  return rep_.is_zero() ? Rational(0) : rep_[0];
}

FieldElement& FieldElement::operator+=(const FieldElement& b) {
  check_same(tower_, b.tower_);
  rep_ += b.rep_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) {
  check_same(tower_, b.tower_);
  rep_ -= b.rep_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& b) {
  check_same(tower_, b.tower_);
  rep_ = reduce_rep(rep_ * b.rep_, *tower_.data());
  return *this;
}

FieldElement FieldElement::operator-() const { return FieldElement(tower_, -rep_); }

FieldElement FieldElement::scaled(const Rational& r) const { return FieldElement(tower_, rep_.scaled(r)); }

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement result = tower_.one(), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same(a.tower_, b.tower_);
  return a.rep_ == b.rep_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (rep_.degree() == 0) return tower_.element(Rational(1) / rep_[0]);
  const TowerData& d = *tower_.data();
  const std::size_t D = static_cast<std::size_t>(d.degree);
  const Integer L = common_denominator(rep_);
  const ZPoly A = to_integral(rep_, L);
  modular::CrtAccumulator crt(D);
  std::size_t next_check = 1;
  for (std::size_t idx = 0;; ++idx) {
    const std::uint64_t p = modular::large_prime(idx);
    const FpExtendedGcd eg = extended_gcd(A.reduce(p), d.minpoly_z.reduce(p));
    if (!eg.gcd.is_one()) continue;
    std::vector<std::uint64_t> res(eg.s.coeffs().begin(), eg.s.coeffs().end());
    res.resize(D, 0);
    crt.add(p, res);
    if (crt.prime_count() < next_check) continue;
    next_check *= 2;
    std::vector<Rational> c(D);
    bool ok = true;
    for (std::size_t i = 0; i < D && ok; ++i) {
      auto r = modular::rational_reconstruct(crt.residues()[i], crt.modulus());
      if (!r) ok = false;
      else c[i] = *r;
    }
    if (!ok) continue;
    const QPoly cand(std::move(c));
    QPoly check = reduce_rep(QPoly(A) * cand, d);
    if (check == QPoly::constant(1)) return FieldElement(tower_, cand.scaled(Rational(L)));
  }
}

// TowerPoly

TowerPoly::TowerPoly(NumberTower tower, std::vector<FieldElement> coeffs) : tower_(std::move(tower)), c_(std::move(coeffs)) {
  for (const auto& c : c_) check_same(tower_, c.tower());
  trim();
}

TowerPoly TowerPoly::from_rational(const NumberTower& tower, const QPoly& a) {
  std::vector<FieldElement> c;
  for (const auto& x : a.coeffs()) c.push_back(tower.element(x));
  return TowerPoly(tower, std::move(c));
}

TowerPoly TowerPoly::linear(const FieldElement& r) {
  return TowerPoly(r.tower(), {-r, r.tower().one()});
}

void TowerPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement TowerPoly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : tower_.zero(); }

std::optional<QPoly> TowerPoly::as_rational() const {
  std::vector<Rational> v;
  for (const auto& c : c_) {
    auto r = c.as_rational();
    if (!r) return std::nullopt;
    v.push_back(*r);
  }
  return QPoly(std::move(v));
}

TowerPoly TowerPoly::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  return scaled(leading().inverse());
}

TowerPoly TowerPoly::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i].scaled(Rational(static_cast<unsigned long>(i))));
  return TowerPoly(tower_, std::move(d));
}

FieldElement TowerPoly::operator()(const FieldElement& x) const {
  FieldElement acc = tower_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

TowerPoly TowerPoly::shifted(const FieldElement& shift) const {
  // Horner in K[x]: acc = acc * (x + shift) + c_i
  TowerPoly acc(tower_);
  const TowerPoly lin(tower_, {shift, tower_.one()});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * lin;
    acc += TowerPoly(tower_, {*it});
  }
  return acc;
}

TowerPoly& TowerPoly::operator+=(const TowerPoly& b) {
  check_same(tower_, b.tower_);
  if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), tower_.zero());
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
  trim();
  return *this;
}

TowerPoly& TowerPoly::operator-=(const TowerPoly& b) {
  check_same(tower_, b.tower_);
  if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), tower_.zero());
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
  trim();
  return *this;
}

TowerPoly operator*(const TowerPoly& a, const TowerPoly& b) {
  check_same(a.tower_, b.tower_);
  if (a.is_zero() || b.is_zero()) return TowerPoly(a.tower_);
  // accumulate unreduced products, reduce once per coefficient
  std::vector<QPoly> acc(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].rep() * b.c_[j].rep();
  }
  std::vector<FieldElement> c;
  c.reserve(acc.size());
  for (auto& q : acc) c.emplace_back(a.tower_, q);
  return TowerPoly(a.tower_, std::move(c));
}

TowerPoly TowerPoly::scaled(const FieldElement& k) const {
  std::vector<FieldElement> c;
  for (const auto& x : c_) c.push_back(x * k);
  return TowerPoly(tower_, std::move(c));
}

bool operator==(const TowerPoly& a, const TowerPoly& b) {
  check_same(a.tower_, b.tower_);
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (!(a.c_[i] == b.c_[i])) return false;
  }
  return true;
}

std::string TowerPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[i].to_string() + ")";
    if (i >= 1) out += "*x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

TowerDivMod divmod(const TowerPoly& a, const TowerPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  check_same(a.tower(), b.tower());
  const NumberTower& K = a.tower();
  if (a.degree() < b.degree()) return {TowerPoly(K), a};
  std::vector<FieldElement> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const FieldElement inv = b.leading().inverse();
  std::vector<FieldElement> q(r.size() - db, K.zero());
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    const FieldElement coef = r[k] * inv;
    q[k - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= coef * b.coeffs()[j];
  }
  r.resize(db, K.zero());
  return {TowerPoly(K, std::move(q)), TowerPoly(K, std::move(r))};
}

TowerPoly operator%(const TowerPoly& a, const TowerPoly& b) { return divmod(a, b).remainder; }
TowerPoly operator/(const TowerPoly& a, const TowerPoly& b) { return divmod(a, b).quotient; }

TowerPoly gcd(const TowerPoly& a, const TowerPoly& b) {
  TowerPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    TowerPoly r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// Norms

QPoly norm(const TowerPoly& a) { return norm(a, std::nullopt); }

QPoly norm(const TowerPoly& a, std::optional<std::size_t> result_bits) {
  if (a.is_zero()) return {};
  const TowerData& d = *a.tower().data();
  const std::size_t D = static_cast<std::size_t>(d.degree);
  if (D == 1) return *a.as_rational();
  Integer L = 1;
  for (const auto& c : a.coeffs()) {
    const Integer l = common_denominator(c.rep());
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), l.get_mpz_t());
  }
  const std::size_t points = D * static_cast<std::size_t>(a.degree()) + 1;
  modular::CrtAccumulator crt(points);
  auto run = [&](std::size_t bits, auto&& reduce_coeffs) {
    for (std::size_t idx = 0; bit_length(crt.modulus()) <= bits; ++idx) {
      const std::uint64_t p = modular::large_prime(idx);
      std::vector<FpPoly> Bp;
      if (!reduce_coeffs(p, Bp)) continue;
      const FpPoly mp = d.minpoly_z.reduce(p);
      std::vector<std::uint64_t> values(points);
      for (std::size_t x0 = 0; x0 < points; ++x0) {
        // Σ_j B_j(y) x0^j by Horner
        FpPoly g(p);
        for (std::size_t j = Bp.size(); j-- > 0;) {
          g = g.scaled(x0 % p);
          g += Bp[j];
        }
        values[x0] = resultant(mp, g);
      }
      crt.add(p, interpolate_consecutive(values, p));
    }
  };

  if (result_bits) {
    // caller promises an integral norm, so the rational reps reduce directly
    run(*result_bits + 2, [&](std::uint64_t p, std::vector<FpPoly>& Bp) {
      for (const auto& c : a.coeffs()) {
        auto r = c.rep().reduce(p);
        if (!r) return false;
        Bp.push_back(std::move(*r));
      }
      return true;
    });
    std::vector<Rational> out;
    for (const auto& c : crt.symmetric()) out.emplace_back(c);
    return QPoly(std::move(out));
  }

  std::vector<ZPoly> B;
  for (const auto& c : a.coeffs()) B.push_back(to_integral(c.rep(), L));
  // coefficients of Res_y(m, B) are bounded by (Σ_j Σ_k |B_jk| R^k)^D
  Integer C = 0;
  for (const auto& b : B) {
    Integer rk = 1;
    for (const auto& coef : b.coeffs()) {
      Integer t = coef * rk;
      mpz_abs(t.get_mpz_t(), t.get_mpz_t());
      C += t;
      rk *= d.root_bound;
    }
  }
  Integer bound;
  mpz_pow_ui(bound.get_mpz_t(), C.get_mpz_t(), D);
  run(bit_length(bound) + 2, [&](std::uint64_t p, std::vector<FpPoly>& Bp) {
    for (const auto& b : B) Bp.push_back(b.reduce(p));
    return true;
  });
  const std::vector<Integer> coeffs = crt.symmetric();
  Integer LD;
  mpz_pow_ui(LD.get_mpz_t(), L.get_mpz_t(), D);
  std::vector<Rational> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = make_rational(coeffs[i], LD);
  return QPoly(std::move(out));
}

QPoly norm_stable(const TowerPoly& a) {
  if (a.is_zero()) return {};
  const TowerData& d = *a.tower().data();
  const std::size_t D = static_cast<std::size_t>(d.degree);
  if (D == 1) return *a.as_rational();
  const std::size_t points = D * static_cast<std::size_t>(a.degree()) + 1;
  modular::CrtAccumulator crt(points);
  std::optional<QPoly> last;
  std::size_t next_check = 1;
  for (std::size_t idx = 0;; ++idx) {
    const std::uint64_t p = modular::large_prime(idx);
    std::vector<FpPoly> Bp;
    bool ok = true;
    for (const auto& c : a.coeffs()) {
      auto r = c.rep().reduce(p);
      if (!r) {
        ok = false;
        break;
      }
      Bp.push_back(std::move(*r));
    }
    if (!ok) continue;
    const FpPoly mp = d.minpoly_z.reduce(p);
    std::vector<std::uint64_t> values(points);
    for (std::size_t x0 = 0; x0 < points; ++x0) {
      FpPoly g(p);
      for (std::size_t j = Bp.size(); j-- > 0;) {
        g = g.scaled(x0 % p);
        g += Bp[j];
      }
      values[x0] = resultant(mp, g);
    }
    crt.add(p, interpolate_consecutive(values, p));
    if (crt.prime_count() < next_check) continue;
    next_check *= 2;
    std::vector<Rational> c(points);
    bool rebuilt = true;
    for (std::size_t i = 0; i < points && rebuilt; ++i) {
      auto r = modular::rational_reconstruct(crt.residues()[i], crt.modulus());
      if (r) c[i] = *r;
      rebuilt = r.has_value();
    }
    if (!rebuilt) {
      last.reset();
      continue;
    }
    QPoly candidate(std::move(c));
    if (last && *last == candidate) return candidate;
    last = std::move(candidate);
  }
}

Rational norm(const FieldElement& x) {
  if (x.is_zero()) return 0;
  const QPoly n = norm(TowerPoly(x.tower(), {x}));
  return n[0];
}

}  // namespace arbor
