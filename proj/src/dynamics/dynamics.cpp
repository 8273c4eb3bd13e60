#include "arbor/dynamics/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

UnicriticalMap::UnicriticalMap(std::uint64_t p_, unsigned n_, Rational c_) : p(p_), n(n_), c(std::move(c_)) {
  if (!modular::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidArgument("n must be positive");
  std::uint64_t d = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (d > (std::uint64_t{1} << 32) / p) throw InvalidArgument("degree p^n too large");
    d *= p;
  }
}

std::uint64_t UnicriticalMap::degree() const {
  std::uint64_t d = 1;
  for (unsigned i = 0; i < n; ++i) d *= p;
  return d;
}

Rational UnicriticalMap::operator()(const Rational& z) const { return pow(z, degree()) + c; }

QPoly UnicriticalMap::polynomial() const {
  return QPoly::monomial(Rational(1), degree()) + QPoly::constant(c);
}

QPoly UnicriticalMap::iterate(unsigned k) const {
  QPoly acc = QPoly::x();
  const QPoly f = polynomial();
  for (unsigned i = 0; i < k; ++i) acc = f.compose(acc);
  return acc;
}

std::string UnicriticalMap::to_string() const { return polynomial().to_string('x'); }

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::uint64_t parse_unsigned(const std::string& s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
      s.size() > 18) {
    throw InvalidArgument(std::string("bad ") + what + ": '" + s + "'");
  }
  return std::stoull(s);
}

}  // namespace

UnicriticalMap parse_map(std::string_view text) {
  const std::string t = trim(text);
  if (t.find('=') != std::string::npos) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos <= t.size()) {
      const std::size_t comma = std::min(t.find(',', pos), t.size());
      const std::string item = t.substr(pos, comma - pos);
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw InvalidArgument("expected key=value in map: '" + item + "'");
      kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
      pos = comma + 1;
    }
    for (const auto& [k, v] : kv)
      if (k != "p" && k != "n" && k != "c") throw InvalidArgument("unknown map key '" + k + "'");
    if (!kv.count("p") || !kv.count("c")) throw InvalidArgument("map needs p and c");
    const std::uint64_t p = parse_unsigned(kv["p"], "p");
    const unsigned n = kv.count("n") ? static_cast<unsigned>(parse_unsigned(kv["n"], "n")) : 1;
    return UnicriticalMap(p, n, parse_rational(kv["c"]));
  }
  const QPoly f = parse_polynomial(t, 'x');
  if (f.degree() < 2 || f.leading() != 1) throw InvalidArgument("map must be monic x^d + c with d >= 2");
  for (int i = 1; i < f.degree(); ++i)
    if (f[static_cast<std::size_t>(i)] != 0) throw InvalidArgument("map must have the shape x^d + c");
  std::uint64_t d = static_cast<std::uint64_t>(f.degree()), p = 0;
  for (std::uint64_t q = 2; q <= d; ++q)
    if (d % q == 0) {
      p = q;
      break;
    }
  unsigned n = 0;
  while (d % p == 0) {
    d /= p;
    ++n;
  }
  if (d != 1) throw InvalidArgument("degree " + std::to_string(f.degree()) + " is not a prime power");
  return UnicriticalMap(p, n, f[0]);
}

OrbitResult critical_orbit(const UnicriticalMap& f) {
  const Rational bound = std::max(Rational(2), Rational(abs(f.c) + 1));
  const bool integral = is_integer(f.c);
  CriticalOrbit orbit;
  std::map<Rational, std::size_t> seen;
  Rational z = 0;
  for (std::size_t i = 0;; ++i) {
    if (auto it = seen.find(z); it != seen.end()) {
      orbit.tail_length = it->second;
      orbit.cycle_length = i - it->second;
      orbit.N = i;
      return orbit;
    }
    if (abs(z) > bound) return NotPCF{NotPCF::Reason::Escape, i, z, bound};
    if (!integral && i >= 2) return NotPCF{NotPCF::Reason::Denominator, i, z, bound};
    seen.emplace(z, i);
    orbit.points.push_back(z);
    z = f(z);
  }
}

bool is_pcf(const UnicriticalMap& f) { return std::holds_alternative<CriticalOrbit>(critical_orbit(f)); }

const CriticalOrbit& require_pcf(const OrbitResult& r) {
  if (const auto* o = std::get_if<CriticalOrbit>(&r)) return *o;
  const auto& cert = std::get<NotPCF>(r);
  throw InvalidArgument("map is not post-critically finite (certificate at iterate " + std::to_string(cert.index) +
                        ")");
}

bool strictly_post_critical(const UnicriticalMap& f, const Rational& alpha) {
  const OrbitResult r = critical_orbit(f);
  const CriticalOrbit& o = require_pcf(r);
  // every f^i(0), i >= 1, is some listed point of index >= 1 or the cycle entry
  for (std::size_t i = 1; i < o.points.size(); ++i)
    if (o.points[i] == alpha) return true;
  return o.points[o.tail_length] == alpha;
}

bool post_critical_within(const UnicriticalMap& f, const Rational& alpha, unsigned depth) {
  Rational z = 0;
  for (unsigned i = 1; i <= depth; ++i) {
    z = f(z);
    if (z == alpha) return true;
  }
  return false;
}

std::optional<CollisionWitness> collision_condition(const UnicriticalMap& f) {
  const OrbitResult r = critical_orbit(f);
  const CriticalOrbit& o = require_pcf(r);
  auto value = [&](std::size_t i) {
    return i < o.N ? o.points[i] : o.points[o.tail_length + (i - o.tail_length) % o.cycle_length];
  };
  // f^j(∞) = ∞ never meets the finite orbit of 0, so only b = 0 can fail
  for (std::size_t i = 0; i <= o.N; ++i)
    for (std::size_t j = 0; j <= o.N; ++j) {
      if (i == j) continue;
      if (value(i) == value(j)) return CollisionWitness{CriticalPoint::Zero, CriticalPoint::Zero, i, j};
    }
  return std::nullopt;
}

std::string to_string(const CollisionWitness& w) {
  auto name = [](CriticalPoint c) { return c == CriticalPoint::Zero ? std::string("0") : std::string("inf"); };
  return "(" + name(w.a) + ", " + name(w.b) + ", " + std::to_string(w.i) + ", " + std::to_string(w.j) + ")";
}

std::vector<std::uint64_t> good_reduction_primes(const UnicriticalMap& f, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  const Integer den = f.c.get_den();
  for (std::uint64_t q : modular::primes_up_to(bound)) {
    if (q == f.p || mpz_divisible_ui_p(den.get_mpz_t(), q)) out.push_back(q);
  }
  return out;
}

}  // namespace arbor
