#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/arith/number.hpp"

namespace arbor {

inline constexpr std::size_t kElementCap = std::size_t{1} << 16;
inline constexpr std::size_t kHomomorphismCap = std::size_t{1} << 20;

/// The depth-fold iterated wreath product of C_d, d = p^n, acting on the d-ary tree.
struct WreathDescriptor {
  std::uint64_t p = 2;
  unsigned n = 1;
  unsigned depth = 1;

  WreathDescriptor() = default;
  WreathDescriptor(std::uint64_t p, unsigned n, unsigned depth);

  std::uint32_t d() const;
  /// 1 + d + ... + d^(depth-1)
  std::size_t node_count() const;
  /// Index of the first node of a level in breadth-first order.
  std::size_t level_offset(unsigned level) const;

  friend bool operator==(const WreathDescriptor&, const WreathDescriptor&) = default;
};

/// One label in Z/d per internal node, breadth-first. A label r at a node sends its
/// child i to child i + r mod d.
class Portrait {
 public:
  explicit Portrait(const WreathDescriptor& w);
  Portrait(const WreathDescriptor& w, std::vector<std::uint32_t> labels);

  static Portrait identity(const WreathDescriptor& w) { return Portrait(w); }
  static Portrait random(const WreathDescriptor& w, std::mt19937_64& rng);
  /// Label 1 at the first node of the given level, 0 elsewhere.
  static Portrait level_generator(const WreathDescriptor& w, unsigned level);

  const WreathDescriptor& descriptor() const { return w_; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  bool is_identity() const;

  /// Leaves are paths of child indices, length depth.
  std::vector<std::uint32_t> act_on_leaf(const std::vector<std::uint32_t>& path) const;
  /// Where each node goes, breadth-first indices.
  std::vector<std::size_t> node_images() const;

  std::string serialize() const;
  static Portrait parse(const WreathDescriptor& w, std::string_view text);

  friend bool operator==(const Portrait& a, const Portrait& b) { return a.w_ == b.w_ && a.labels_ == b.labels_; }
  friend bool operator<(const Portrait& a, const Portrait& b) { return a.labels_ < b.labels_; }

 private:
  WreathDescriptor w_;
  std::vector<std::uint32_t> labels_;
};

/// a∘b, b acts first. Throws DomainError on mismatched descriptors.
Portrait compose(const Portrait& a, const Portrait& b);
Portrait inverse(const Portrait& a);
Portrait power(const Portrait& a, std::uint64_t k);
Portrait commutator(const Portrait& a, const Portrait& b);

/// p^(n (d^depth - 1)/(d - 1))
Integer group_order(const WreathDescriptor& w);

/// Level sums mod d.
std::vector<std::uint32_t> abelianize(const Portrait& a);

/// (p^N - 1)/(p - 1)
Integer maximal_subgroup_count(std::uint64_t p, unsigned n, unsigned N);

/// One generator per level; together they generate the full group.
std::vector<Portrait> standard_generators(const WreathDescriptor& w);

/// Every portrait, sorted. Throws CapExceeded above the cap.
std::vector<Portrait> enumerate(const WreathDescriptor& w, std::size_t cap = kElementCap);

/// Subgroup generated by the given elements, sorted. The generators must share a descriptor.
std::vector<Portrait> subgroup_closure(const WreathDescriptor& w, const std::vector<Portrait>& generators,
                                       std::size_t cap = kElementCap);

struct FrattiniData {
  unsigned rank = 0;
  Integer maximal_subgroups;
  std::size_t frattini_order = 0;
};

/// Frattini subgroup of the full group as the closure of p-th powers and commutators.
FrattiniData brute_force_frattini(const WreathDescriptor& w, std::size_t cap = kElementCap);

/// (p^s - 1)/(p - 1)
Integer free_group_index_p_normal_count(unsigned s, std::uint64_t p);

/// Counts kernels of nontrivial homomorphisms F_s -> Z/p by enumeration.
Integer enumerate_index_p_normal_subgroups(unsigned s, std::uint64_t p, std::size_t cap = kHomomorphismCap);

}  // namespace arbor
