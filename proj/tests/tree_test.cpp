#include <doctest.h>

#include <set>

#include "arbor/error.hpp"
#include "arbor/tree/tree.hpp"

using namespace arbor;

namespace {

const WreathDescriptor W212(2, 1, 2), W213(2, 1, 3);

std::vector<std::vector<std::uint32_t>> all_leaves(const WreathDescriptor& w) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (unsigned l = 0; l < w.depth; ++l) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& p : out)
      for (std::uint32_t c = 0; c < w.d(); ++c) {
        next.push_back(p);
        next.back().push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

// The portrait as a permutation of leaves, computed only through act_on_leaf.
std::vector<std::vector<std::uint32_t>> leaf_permutation(const Portrait& g) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& leaf : all_leaves(g.descriptor())) out.push_back(g.act_on_leaf(leaf));
  return out;
}

}  // namespace

TEST_CASE("composition laws") {
  std::mt19937_64 rng(42);
  for (const WreathDescriptor& w : {W213, WreathDescriptor(3, 1, 3), WreathDescriptor(2, 2, 2)}) {
    const Portrait e = Portrait::identity(w);
    for (int t = 0; t < 100; ++t) {
      const Portrait a = Portrait::random(w, rng), b = Portrait::random(w, rng), c = Portrait::random(w, rng);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(e, a) == a);
      CHECK(compose(a, e) == a);
      CHECK(compose(a, inverse(a)).is_identity());
      CHECK(compose(inverse(a), a).is_identity());
    }
  }
  const Portrait swap = Portrait::level_generator(W212, 0);
  CHECK(compose(swap, swap).is_identity());
  CHECK_THROWS_AS(compose(swap, Portrait::identity(W213)), DomainError);
}

TEST_CASE("composition agrees with the leaf action, right factor first") {
  std::mt19937_64 rng(7);
  for (const WreathDescriptor& w : {W213, WreathDescriptor(3, 1, 2)}) {
    for (int t = 0; t < 30; ++t) {
      const Portrait a = Portrait::random(w, rng), b = Portrait::random(w, rng);
      const Portrait ab = compose(a, b);
      for (const auto& leaf : all_leaves(w)) CHECK(ab.act_on_leaf(leaf) == a.act_on_leaf(b.act_on_leaf(leaf)));
    }
  }
}

TEST_CASE("leaf action is a bijection and the full group is transitive") {
  for (const WreathDescriptor& w : {WreathDescriptor(2, 1, 1), W212, W213, WreathDescriptor(3, 1, 2)}) {
    const auto G = enumerate(w);
    for (const auto& g : G) {
      const auto perm = leaf_permutation(g);
      CHECK(std::set<std::vector<std::uint32_t>>(perm.begin(), perm.end()).size() == perm.size());
    }
    std::set<std::vector<std::uint32_t>> orbit;
    const std::vector<std::uint32_t> start(w.depth, 0);
    for (const auto& g : G) orbit.insert(g.act_on_leaf(start));
    CHECK(orbit.size() == all_leaves(w).size());
  }
}

TEST_CASE("distinct portraits act differently on leaves") {
  const auto G = enumerate(W213);
  std::set<std::vector<std::vector<std::uint32_t>>> perms;
  for (const auto& g : G) perms.insert(leaf_permutation(g));
  CHECK(perms.size() == G.size());
}

TEST_CASE("group order") {
  CHECK(group_order(W212) == 8);
  CHECK(group_order(W213) == 128);
  CHECK(group_order(WreathDescriptor(2, 2, 2)) == 1024);
  CHECK(group_order(WreathDescriptor(2, 1, 0)) == 1);
  for (const WreathDescriptor& w : {WreathDescriptor(2, 1, 1), W212, W213, WreathDescriptor(2, 1, 4),
                                    WreathDescriptor(3, 1, 2), WreathDescriptor(2, 2, 2)}) {
    CHECK(Integer(static_cast<unsigned long>(enumerate(w).size())) == group_order(w));
  }
  CHECK_THROWS_AS(enumerate(WreathDescriptor(2, 1, 5)), CapExceeded);
}

TEST_CASE("enumeration is sorted") {
  const auto G = enumerate(W213);
  CHECK(std::is_sorted(G.begin(), G.end()));
  CHECK(G.front().is_identity());
}

TEST_CASE("abelianization") {
  CHECK(abelianize(Portrait::identity(W212)) == std::vector<std::uint32_t>{0, 0});
  CHECK(abelianize(Portrait::level_generator(W212, 0)) == std::vector<std::uint32_t>{1, 0});
  std::mt19937_64 rng(3);
  const WreathDescriptor w(2, 2, 3);
  for (int t = 0; t < 100; ++t) {
    const Portrait a = Portrait::random(w, rng), b = Portrait::random(w, rng);
    auto sa = abelianize(a), sb = abelianize(b), sab = abelianize(compose(a, b));
    for (unsigned l = 0; l < w.depth; ++l) CHECK(sab[l] == (sa[l] + sb[l]) % w.d());
  }
  for (const WreathDescriptor& v : {W212, W213, WreathDescriptor(3, 1, 2), WreathDescriptor(2, 2, 2)}) {
    std::set<std::vector<std::uint32_t>> image;
    for (const auto& g : enumerate(v)) image.insert(abelianize(g));
    std::size_t expected = 1;
    for (unsigned l = 0; l < v.depth; ++l) expected *= v.d();
    CHECK(image.size() == expected);
  }
}

TEST_CASE("maximal subgroup counts") {
  CHECK(maximal_subgroup_count(2, 1, 3) == 7);
  CHECK(maximal_subgroup_count(3, 1, 2) == 4);
  CHECK(maximal_subgroup_count(2, 1, 1) == 1);
}

TEST_CASE("brute-force Frattini quotient") {
  const FrattiniData a = brute_force_frattini(WreathDescriptor(2, 1, 1));
  CHECK(a.rank == 1);
  CHECK(a.maximal_subgroups == 1);
  const FrattiniData b = brute_force_frattini(W212);
  CHECK(b.rank == 2);
  CHECK(b.maximal_subgroups == 3);
  const FrattiniData c = brute_force_frattini(W213);
  CHECK(c.rank == 3);
  CHECK(c.maximal_subgroups == 7);
  CHECK(c.frattini_order == 16);
  for (const WreathDescriptor& w : {WreathDescriptor(2, 1, 4), WreathDescriptor(3, 1, 2), WreathDescriptor(2, 2, 2)}) {
    const FrattiniData f = brute_force_frattini(w);
    CHECK(f.rank == w.depth);
    CHECK(f.maximal_subgroups == maximal_subgroup_count(w.p, w.n, w.depth));
  }
}

TEST_CASE("Frattini subgroup against all pairwise commutators") {
  // independent route at order 128: close all p-th powers and all commutators of all pairs
  const auto G = enumerate(W213);
  std::set<std::vector<std::uint32_t>> gens;
  for (const auto& a : G) {
    gens.insert(compose(a, a).labels());
    for (const auto& b : G) gens.insert(commutator(a, b).labels());
  }
  std::vector<Portrait> g;
  for (const auto& l : gens) g.emplace_back(W213, l);
  CHECK(subgroup_closure(W213, g).size() == brute_force_frattini(W213).frattini_order);
}

TEST_CASE("subgroup closure") {
  CHECK(subgroup_closure(W212, {Portrait::identity(W212)}).size() == 1);
  const WreathDescriptor w1(2, 1, 1);
  CHECK(subgroup_closure(w1, {Portrait::level_generator(w1, 0)}).size() == 2);
  CHECK(subgroup_closure(W212, standard_generators(W212)).size() == 8);
  CHECK(subgroup_closure(W212, standard_generators(W212)) == enumerate(W212));
  CHECK_THROWS_AS(subgroup_closure(W213, standard_generators(W213), 100), CapExceeded);
}

TEST_CASE("index-p normal subgroups of free groups") {
  CHECK(free_group_index_p_normal_count(2, 2) == 3);
  CHECK(free_group_index_p_normal_count(1, 5) == 1);
  CHECK(free_group_index_p_normal_count(3, 2) == 7);
  for (unsigned s = 0; s <= 4; ++s)
    for (std::uint64_t p : {2, 3, 5, 7})
      CHECK(enumerate_index_p_normal_subgroups(s, p) == free_group_index_p_normal_count(s, p));
  CHECK_THROWS_AS(enumerate_index_p_normal_subgroups(21, 2), CapExceeded);
}

TEST_CASE("portrait serialization") {
  const Portrait g(W212, {1, 0, 1});
  CHECK(g.serialize() == "1,0,1");
  CHECK(Portrait::parse(W212, "1,0,1") == g);
  CHECK_THROWS_AS(Portrait::parse(W212, "1,0"), InvalidArgument);
  CHECK_THROWS_AS(Portrait::parse(W212, "1,2,0"), InvalidArgument);
  CHECK_THROWS_AS(Portrait::parse(W212, "1,,0"), InvalidArgument);
}
