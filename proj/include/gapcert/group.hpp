#pragma once

// Finite-group arithmetic on dense multiplication tables.
//
// Elements are indices 0..order-1. Every table is validated when a group is
// built, so downstream code can index without further checks.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapcert {

/// A permutation of 0..n-1 stored in one-line notation: p[x] is the image of x.
using Permutation = std::vector<int>;

/// Sorted list of element indices.
using ElementSet = std::vector<int>;

inline constexpr int kMaxGroupOrder = 5000;
inline constexpr int kAssociativityCheckMaxOrder = 512;
inline constexpr int kSimplicityCheckMaxOrder = 200;

bool is_permutation(std::span<const int> p, int n);
Permutation identity_permutation(int n);
/// (p ∘ q)(x) = p(q(x)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// Disjoint-cycle rendering such as "(0 1 2)(3 4)"; the identity is "()".
std::string cycle_notation(const Permutation& p);

class FiniteGroup {
 public:
  /// `mul` is row-major: mul[g * order + h] = g·h. Throws kUnsupportedParameter
  /// on any violated group axiom or when order exceeds kMaxGroupOrder.
  FiniteGroup(int order, std::vector<int> mul, int identity,
              std::vector<std::string> labels = {});

  int order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  int mul(int g, int h) const { return mul_[static_cast<std::size_t>(g) * order_ + h]; }
  int inv(int g) const { return inv_[g]; }
  int commutator(int g, int h) const { return mul(mul(inv(g), inv(h)), mul(g, h)); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int g) const { return labels_[g]; }

  bool is_abelian() const;
  bool is_element(int g) const noexcept { return g >= 0 && g < order_; }

 private:
  int order_;
  int identity_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A left action of a finite group on 0..n-1, one permutation per element.
class GroupAction {
 public:
  /// Verifies identity, bijectivity and the homomorphism law
  /// perm[g·h] = perm[g] ∘ perm[h] exhaustively. Transitivity is not required.
  GroupAction(GroupPtr group, int n, std::vector<Permutation> perms);

  /// For actions that hold by construction (left translation, permutation
  /// closure); skips the O(order² · n) homomorphism scan.
  static GroupAction trusted(GroupPtr group, int n, std::vector<Permutation> perms);

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  int degree() const noexcept { return n_; }
  const Permutation& perm(int g) const { return perms_[g]; }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }
  /// perm(g)^{-1}, which equals perm(g^{-1}).
  const Permutation& inverse_perm(int g) const { return perms_[group_->inv(g)]; }

  bool is_transitive() const;
  /// Size of the stabilizer of vertex 0.
  int stabilizer_size() const;
  /// Throws kNotTransitive when the action has more than one orbit.
  void require_transitive() const;

 private:
  GroupAction() = default;

  GroupPtr group_;
  int n_ = 0;
  std::vector<Permutation> perms_;
};

struct PermutationGroup {
  GroupPtr group;
  GroupAction action;
};

/// Closure of `gens` under composition, with the natural action on 0..m-1.
/// Element 0 is the identity; the remaining elements appear in breadth-first
/// order of words in the generators.
PermutationGroup group_from_permutation_generators(const std::vector<Permutation>& gens, int m,
                                                   int max_order = kMaxGroupOrder);

enum class GroupFamily { kCyclic, kDihedral, kSymmetric, kQuaternion8, kDirectProduct };

std::optional<GroupFamily> parse_group_family(std::string_view name);
std::string_view group_family_name(GroupFamily family);

GroupPtr cyclic_group(int n);
/// Order 2n; element k is r^k and element n+k is r^k s.
GroupPtr dihedral_group(int n);
/// Elements in lexicographic order of their one-line notation.
GroupPtr symmetric_group(int n);
/// Elements 1, -1, i, -i, j, -j, k, -k.
GroupPtr quaternion8_group();
/// Element (g, h) has index g * |H| + h.
GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h);

bool is_subgroup(const FiniteGroup& group, const ElementSet& subset);
ElementSet subgroup_generated(const FiniteGroup& group, std::span<const int> generators);

/// All subgroups of index two, each sorted; the list is ordered
/// lexicographically. Computed through the elementary abelian quotient by the
/// subgroup generated by squares and commutators.
std::vector<ElementSet> index_two_subgroups(const FiniteGroup& group);

/// Orbit partition of 0..n-1 under {perm(h) : h in subgroup}. Each orbit is
/// sorted and orbits are ordered by their smallest vertex.
std::vector<std::vector<int>> subgroup_orbits(const ElementSet& subgroup, const GroupAction& action);

bool verify_automorphism(const FiniteGroup& group, const Permutation& sigma);

/// Brute-force normal-closure scan; nullopt above `max_order`.
std::optional<bool> is_simple(const FiniteGroup& group, int max_order = kSimplicityCheckMaxOrder);

}  // namespace gapcert
