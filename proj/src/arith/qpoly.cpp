#include "arbor/arith/qpoly.hpp"

#include <cctype>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

namespace {
const Rational kZero = 0;
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const ZPoly& integral) {
  c_.reserve(integral.coeffs().size());
  for (const auto& c : integral.coeffs()) c_.emplace_back(c);
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::x() { return QPoly(std::vector<Rational>{0, 1}); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& QPoly::operator[](std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return QPoly(std::move(d));
}

Rational QPoly::operator()(const Rational& point) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * point + *it;
  return acc;
}

QPoly QPoly::compose(const QPoly& inner) const {
  QPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += QPoly::constant(*it);
  }
  return acc;
}

QPoly& QPoly::operator+=(const QPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& other) {
  if (c_.size() < other.c_.size()) c_.resize(other.c_.size());
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] -= other.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& other) {
  if (is_zero() || other.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + other.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < other.c_.size(); ++j) out[i + j] += c_[i] * other.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

QPoly QPoly::scaled(const Rational& factor) const {
  std::vector<Rational> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * factor;
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const { return scaled(Rational(-1)); }

std::strong_ordering operator<=>(const QPoly& a, const QPoly& b) {
  if (auto cmp = a.c_.size() <=> b.c_.size(); cmp != 0) return cmp;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    const int c = cmp(a.c_[i], b.c_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Rational QPoly::content() const {
  if (is_zero()) return 0;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& c : c_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r = make_rational(num_gcd, den_lcm);
  return leading() < 0 ? Rational(-r) : r;
}

ZPoly QPoly::primitive_integral() const {
  if (is_zero()) return {};
  const Rational cont = content();
  std::vector<Integer> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational q = c_[i] / cont;
    v[i] = q.get_num();
  }
  return ZPoly(std::move(v));
}

std::optional<FpPoly> QPoly::reduce(std::uint64_t p) const {
  std::vector<std::uint64_t> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    auto r = modular::reduce(c_[i], p);
    if (!r) return std::nullopt;
    v[i] = *r;
  }
  return FpPoly(p, std::move(v));
}

std::string QPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (!out.empty()) out += negative ? '-' : '+';
    else if (negative) out += '-';
    const Rational mag = negative ? Rational(-c) : c;
    if (i == 0 || mag != 1) {
      out += arbor::to_string(mag);
      if (i > 0) out += '*';
    }
    if (i >= 1) out += var;
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

QDivMod divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Rational inv_lead = Rational(1) / b.leading();
  std::vector<Rational> q(r.size() - db);
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const Rational coef = r[k] * inv_lead;
    q[k - db] = coef;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= coef * bc[j];
  }
  r.resize(db);
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).remainder; }

QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).quotient; }

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  return QPoly(gcd(a.primitive_integral(), b.primitive_integral())).monic();
}

Rational resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("resultant of a zero polynomial");
  const Rational ca = a.content();
  const Rational cb = b.content();
  const Integer r = resultant(a.primitive_integral(), b.primitive_integral());
  return pow(ca, static_cast<unsigned long>(b.degree())) * pow(cb, static_cast<unsigned long>(a.degree())) *
         Rational(r);
}

Rational discriminant(const QPoly& a) {
  if (a.degree() < 1) throw InvalidArgument("discriminant needs a nonconstant polynomial");
  const unsigned long d = static_cast<unsigned long>(a.degree());
  Rational r = resultant(a, a.derivative()) / a.leading();
  if ((d * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

QPoly squarefree_part(const QPoly& a) {
  if (a.degree() <= 0) return a.is_zero() ? a : QPoly::constant(1);
  const QPoly g = gcd(a, a.derivative());
  return (a / g).monic();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, char var) : var_(var) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    }
  }

  QPoly parse() {
    if (s_.empty()) fail("empty polynomial");
    QPoly result;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += term().scaled(Rational(sign));
      first = false;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("cannot parse polynomial '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  QPoly term() {
    Rational coef = 1;
    bool have_coef = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string literal = digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const std::string den = digits();
        if (den.empty()) fail("missing denominator");
        literal += "/" + den;
      }
      coef = parse_rational(literal);
      have_coef = true;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        if (pos_ >= s_.size() || s_[pos_] != var_) fail("expected variable after '*'");
      }
    }
    if (pos_ < s_.size() && s_[pos_] == var_) {
      ++pos_;
      std::size_t power = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        const std::string exp = digits();
        if (exp.empty()) fail("missing exponent");
        power = std::stoul(exp);
      }
      return QPoly::monomial(coef, power);
    }
    if (!have_coef) fail("expected a coefficient or variable");
    return QPoly::constant(coef);
  }

  std::string s_;
  std::size_t pos_ = 0;
  char var_;
};

}  // namespace

QPoly parse_polynomial(std::string_view text, char var) { return PolyParser(text, var).parse(); }

}  // namespace arbor
