#include "arbor/tree/tree.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "arbor/arith/modular.hpp"
#include "arbor/error.hpp"

namespace arbor {

namespace {

struct LabelHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using LabelSet = std::unordered_set<std::vector<std::uint32_t>, LabelHash>;

void same_descriptor(const Portrait& a, const Portrait& b) {
  if (!(a.descriptor() == b.descriptor())) throw DomainError("portraits over different wreath descriptors");
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

}  // namespace

WreathDescriptor::WreathDescriptor(std::uint64_t p_, unsigned n_, unsigned depth_) : p(p_), n(n_), depth(depth_) {
  if (!modular::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidArgument("n must be positive");
  if (checked_pow(p, n, 1u << 16) > (1u << 16)) throw InvalidArgument("p^n too large for portraits");
  if (checked_pow(d(), depth, std::uint64_t{1} << 32) > (std::uint64_t{1} << 32)) {
    throw InvalidArgument("tree too deep for portraits");
  }
}

std::uint32_t WreathDescriptor::d() const { return static_cast<std::uint32_t>(checked_pow(p, n, 1u << 16)); }

std::size_t WreathDescriptor::level_offset(unsigned level) const {
  std::size_t off = 0, width = 1;
  for (unsigned l = 0; l < level; ++l) {
    off += width;
    width *= d();
  }
  return off;
}

std::size_t WreathDescriptor::node_count() const { return level_offset(depth); }

Portrait::Portrait(const WreathDescriptor& w) : w_(w), labels_(w.node_count(), 0) {}

Portrait::Portrait(const WreathDescriptor& w, std::vector<std::uint32_t> labels) : w_(w), labels_(std::move(labels)) {
  if (labels_.size() != w.node_count()) {
    throw InvalidArgument("portrait needs " + std::to_string(w.node_count()) + " labels, got " +
                          std::to_string(labels_.size()));
  }
  for (auto x : labels_)
    if (x >= w.d()) throw InvalidArgument("portrait label " + std::to_string(x) + " out of range");
}

Portrait Portrait::random(const WreathDescriptor& w, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, w.d() - 1);
  std::vector<std::uint32_t> labels(w.node_count());
  for (auto& x : labels) x = dist(rng);
  return Portrait(w, std::move(labels));
}

Portrait Portrait::level_generator(const WreathDescriptor& w, unsigned level) {
  if (level >= w.depth) throw InvalidArgument("level beyond the portrait depth");
  Portrait g(w);
  g.labels_[w.level_offset(level)] = 1 % w.d();
  return g;
}

bool Portrait::is_identity() const {
  return std::all_of(labels_.begin(), labels_.end(), [](std::uint32_t x) { return x == 0; });
}

std::vector<std::uint32_t> Portrait::act_on_leaf(const std::vector<std::uint32_t>& path) const {
  if (path.size() != w_.depth) throw InvalidArgument("leaf path length differs from the depth");
  const std::uint32_t d = w_.d();
  std::vector<std::uint32_t> out(path.size());
  std::size_t local = 0;
  for (unsigned l = 0; l < w_.depth; ++l) {
    if (path[l] >= d) throw InvalidArgument("leaf path entry out of range");
    const std::uint32_t r = labels_[w_.level_offset(l) + local];
    out[l] = (path[l] + r) % d;
    local = local * d + path[l];
  }
  return out;
}

std::vector<std::size_t> Portrait::node_images() const {
  const std::uint32_t d = w_.d();
  std::vector<std::size_t> img(labels_.size());
  if (img.empty()) return img;
  img[0] = 0;
  std::size_t width = 1;
  for (unsigned l = 0; l + 1 < w_.depth; ++l) {
    const std::size_t off = w_.level_offset(l), next = off + width;
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t ix = img[off + x] - off;
      const std::uint32_t r = labels_[off + x];
      for (std::uint32_t c = 0; c < d; ++c) img[next + x * d + c] = next + ix * d + (c + r) % d;
    }
    width *= d;
  }
  return img;
}

std::string Portrait::serialize() const {
  std::string s;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(labels_[i]);
  }
  return s;
}

Portrait Portrait::parse(const WreathDescriptor& w, std::string_view text) {
  std::vector<std::uint32_t> labels;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item(text.substr(pos, comma - pos));
    if (item.empty() || item.size() > 9 || !std::all_of(item.begin(), item.end(), ::isdigit)) {
      throw InvalidArgument("bad portrait label '" + item + "'");
    }
    labels.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    pos = comma + 1;
  }
  return Portrait(w, std::move(labels));
}

Portrait compose(const Portrait& a, const Portrait& b) {
  same_descriptor(a, b);
  const std::uint32_t d = a.descriptor().d();
  const auto img = b.node_images();
  std::vector<std::uint32_t> labels(img.size());
  for (std::size_t u = 0; u < img.size(); ++u) labels[u] = (b.labels()[u] + a.labels()[img[u]]) % d;
  return Portrait(a.descriptor(), std::move(labels));
}

Portrait inverse(const Portrait& a) {
  const std::uint32_t d = a.descriptor().d();
  const auto img = a.node_images();
  std::vector<std::uint32_t> labels(img.size());
  for (std::size_t u = 0; u < img.size(); ++u) labels[img[u]] = (d - a.labels()[u]) % d;
  return Portrait(a.descriptor(), std::move(labels));
}

Portrait power(const Portrait& a, std::uint64_t k) {
  Portrait result(a.descriptor()), base = a;
  for (; k; k >>= 1) {
    if (k & 1) result = compose(result, base);
    base = compose(base, base);
  }
  return result;
}

Portrait commutator(const Portrait& a, const Portrait& b) {
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

Integer group_order(const WreathDescriptor& w) {
  Integer nodes = 0, width = 1;
  for (unsigned l = 0; l < w.depth; ++l) {
    nodes += width;
    width *= w.d();
  }
  return pow(Integer(static_cast<unsigned long>(w.p)), w.n * nodes.get_ui());
}

std::vector<std::uint32_t> abelianize(const Portrait& a) {
  const WreathDescriptor& w = a.descriptor();
  std::vector<std::uint32_t> v(w.depth, 0);
  for (unsigned l = 0; l < w.depth; ++l) {
    std::uint64_t s = 0;
    for (std::size_t u = w.level_offset(l); u < w.level_offset(l + 1); ++u) s += a.labels()[u];
    v[l] = static_cast<std::uint32_t>(s % w.d());
  }
  return v;
}

Integer maximal_subgroup_count(std::uint64_t p, unsigned n, unsigned N) {
  if (!modular::is_prime(p) || n == 0) throw InvalidArgument("need a prime p and n >= 1");
  if (N == 0) throw InvalidArgument("N must be positive");
  const Integer P(static_cast<unsigned long>(p));
  return (pow(P, N) - 1) / (P - 1);
}

std::vector<Portrait> standard_generators(const WreathDescriptor& w) {
  std::vector<Portrait> gens;
  for (unsigned l = 0; l < w.depth; ++l) gens.push_back(Portrait::level_generator(w, l));
  return gens;
}

std::vector<Portrait> enumerate(const WreathDescriptor& w, std::size_t cap) {
  if (group_order(w) > cap) throw CapExceeded("enumerating a wreath group of order " + to_string(group_order(w)), cap);
  const std::uint32_t d = w.d();
  const std::size_t m = w.node_count();
  std::vector<Portrait> out;
  std::vector<std::uint32_t> labels(m, 0);
  // odometer with the last label fastest gives lexicographic order
  while (true) {
    out.emplace_back(w, labels);
    std::size_t k = m;
    while (k > 0 && ++labels[k - 1] == d) labels[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<Portrait> subgroup_closure(const WreathDescriptor& w, const std::vector<Portrait>& generators,
                                       std::size_t cap) {
  for (const auto& g : generators)
    if (!(g.descriptor() == w)) throw DomainError("generator over a different wreath descriptor");
  LabelSet seen;
  std::vector<Portrait> elements{Portrait::identity(w)};
  seen.insert(elements[0].labels());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Portrait y = compose(elements[i], g);
      if (seen.insert(y.labels()).second) {
        if (elements.size() >= cap) throw CapExceeded("subgroup closure", cap);
        elements.push_back(std::move(y));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

FrattiniData brute_force_frattini(const WreathDescriptor& w, std::size_t cap) {
  const std::vector<Portrait> G = enumerate(w, cap);
  const std::vector<Portrait> gens = standard_generators(w);

  std::vector<Portrait> basis;
  LabelSet H{Portrait::identity(w).labels()};
  auto rebuild = [&] {
    H.clear();
    for (const auto& h : subgroup_closure(w, basis, cap)) H.insert(h.labels());
  };
  auto offer = [&](Portrait x) {
    if (H.count(x.labels())) return false;
    basis.push_back(std::move(x));
    rebuild();
    return true;
  };
  for (const auto& g : G) offer(power(g, w.p));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) offer(commutator(gens[i], gens[j]));
  // normal closure: conjugating the basis by the generators must stay inside
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (const auto& g : gens) grew |= offer(compose(compose(g, basis[k]), inverse(g)));
  }

  FrattiniData out;
  out.frattini_order = H.size();
  std::size_t index = G.size() / H.size();
  while (index > 1) {
    index /= w.p;
    ++out.rank;
  }
  const Integer P(static_cast<unsigned long>(w.p));
  out.maximal_subgroups = (pow(P, out.rank) - 1) / (P - 1);
  return out;
}

Integer free_group_index_p_normal_count(unsigned s, std::uint64_t p) {
  if (!modular::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  const Integer P(static_cast<unsigned long>(p));
  return (pow(P, s) - 1) / (P - 1);
}

Integer enumerate_index_p_normal_subgroups(unsigned s, std::uint64_t p, std::size_t cap) {
  if (!modular::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  const std::uint64_t total = checked_pow(p, s, cap);
  if (total > cap) throw CapExceeded("enumerating homomorphisms to Z/" + std::to_string(p), cap);
  // a homomorphism is its vector of generator images; kernels agree iff vectors are proportional
  std::set<std::vector<std::uint64_t>> kernels;
  std::vector<std::uint64_t> v(s, 0);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < s; ++i) {
      v[i] = c % p;
      c /= p;
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    const std::uint64_t inv = modular::pow_mod(*lead, p - 2, p);
    std::vector<std::uint64_t> normal(s);
    for (unsigned i = 0; i < s; ++i) normal[i] = v[i] * inv % p;
    kernels.insert(std::move(normal));
  }
  return Integer(static_cast<unsigned long>(kernels.size()));
}

}  // namespace arbor
