#pragma once

// Regular multigraphs written as sums of permutation operators,
// T = P_rho_1 + ... + P_rho_d, together with the group action they carry.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapcert/group.hpp"

namespace gapcert {

enum class GraphKind { kCayley, kCayleySum, kTwistedCayley, kTwistedCayleySum, kVertexTransitive };

std::string_view graph_kind_name(GraphKind kind);
std::optional<GraphKind> parse_graph_kind(std::string_view name);
bool is_twisted(GraphKind kind);

struct ValidationRecord {
  bool enough_vertices = false;  // n >= 2
  bool positive_degree = false;  // d > 0
  bool regular = false;          // every row and column of a sums to d
  bool undirected = false;
  bool connected = false;
  bool nonbipartite = false;

  bool valid() const {
    return enough_vertices && positive_degree && regular && undirected && connected && nonbipartite;
  }
  /// Short reason for the first failed flag ("bipartite", "disconnected", ...);
  /// empty when valid.
  std::string rejection_reason() const;
};

class SpectralInstance {
 public:
  /// Computes a_uv = |{i : rho_i(v) = u}| and the validation flags. Throws
  /// kInvalidPermutation if some rho_i is not a bijection of 0..n-1.
  SpectralInstance(GraphKind kind, int n, std::vector<Permutation> rho,
                   std::optional<GroupAction> action = std::nullopt);

  GraphKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int d() const noexcept { return static_cast<int>(rho_.size()); }
  const std::vector<Permutation>& rho() const noexcept { return rho_; }
  int a(int u, int v) const { return adjacency_[static_cast<std::size_t>(u) * n_ + v]; }
  /// Row-major n×n adjacency counts.
  std::span<const int> adjacency() const noexcept { return adjacency_; }

  bool has_action() const noexcept { return action_.has_value(); }
  /// Throws kPreconditionViolated when no action is attached.
  const GroupAction& action() const;

  const ValidationRecord& flags() const noexcept { return flags_; }

  const std::optional<std::vector<int>>& connection_set() const noexcept { return connection_set_; }
  const std::optional<Permutation>& automorphism() const noexcept { return automorphism_; }
  const std::string& name() const noexcept { return name_; }

  void set_name(std::string name) { name_ = std::move(name); }
  void set_connection_data(std::vector<int> s, std::optional<Permutation> sigma) {
    connection_set_ = std::move(s);
    automorphism_ = std::move(sigma);
  }

 private:
  GraphKind kind_;
  int n_;
  std::vector<Permutation> rho_;
  std::vector<int> adjacency_;
  std::optional<GroupAction> action_;
  ValidationRecord flags_;
  std::optional<std::vector<int>> connection_set_;
  std::optional<Permutation> automorphism_;
  std::string name_;
};

/// Regular action of a group on itself: perm[g](x) = g·x.
GroupAction left_translation_action(const GroupPtr& group);

/// Neighbour maps per connection element s:
///   cayley             rho_s(x) = x·s
///   cayley_sum         rho_s(x) = s·x⁻¹
///   twisted_cayley     rho_s(x) = σ(x·s)
///   twisted_cayley_sum rho_s(x) = σ(s·x⁻¹)
/// The instance carries the left-translation action. Throws kNotUndirected
/// when a is not symmetric and kPreconditionViolated on bad arguments.
SpectralInstance build_instance(GraphKind kind, const GroupPtr& group, const std::vector<int>& connection_set,
                                const std::optional<Permutation>& automorphism = std::nullopt);

/// Throws kNotTransitive, kNotInvariant (a_{g·u, g·v} != a_{u,v}) or
/// kNotUndirected.
SpectralInstance vertex_transitive_instance(int n, std::vector<Permutation> rho, GroupAction action);

/// Recomputes every flag from the adjacency counts.
ValidationRecord validate_instance(const SpectralInstance& inst);

/// Same graph with every neighbour map repeated `times` times (d scales by
/// `times`, every a_uv likewise).
SpectralInstance repeat_connections(const SpectralInstance& inst, int times);

}  // namespace gapcert
