#include "gapcert/graph.hpp"

#include <algorithm>

#include "gapcert/error.hpp"

namespace gapcert {

namespace {

ValidationRecord compute_flags(int n, int d, std::span<const int> a) {
  ValidationRecord rec;
  rec.enough_vertices = n >= 2;
  rec.positive_degree = d > 0;
  auto at = [&](int u, int v) { return a[static_cast<std::size_t>(u) * n + v]; };

  rec.regular = true;
  for (int u = 0; u < n && rec.regular; ++u) {
    int row = 0, col = 0;
    for (int v = 0; v < n; ++v) {
      row += at(u, v);
      col += at(v, u);
    }
    rec.regular = row == d && col == d;
  }

  rec.undirected = true;
  for (int u = 0; u < n && rec.undirected; ++u)
    for (int v = u + 1; v < n; ++v)
      if (at(u, v) != at(v, u)) {
        rec.undirected = false;
        break;
      }

  // Connectivity and 2-colouring on the support, treating edges as undirected.
  std::vector<int> colour(n, -1);
  int components = 0;
  bool odd_cycle = false;
  for (int start = 0; start < n; ++start) {
    if (colour[start] >= 0) continue;
    ++components;
    colour[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (at(u, v) == 0 && at(v, u) == 0) continue;
        if (u == v) {
          odd_cycle = true;  // a loop is a closed walk of length one
          continue;
        }
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          stack.push_back(v);
        } else if (colour[v] == colour[u]) {
          odd_cycle = true;
        }
      }
    }
  }
  rec.connected = n >= 1 && components == 1;
  rec.nonbipartite = odd_cycle;
  return rec;
}

}  // namespace

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kCayley: return "cayley";
    case GraphKind::kCayleySum: return "cayley_sum";
    case GraphKind::kTwistedCayley: return "twisted_cayley";
    case GraphKind::kTwistedCayleySum: return "twisted_cayley_sum";
    case GraphKind::kVertexTransitive: return "vertex_transitive";
  }
  return "unknown";
}

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  for (auto kind : {GraphKind::kCayley, GraphKind::kCayleySum, GraphKind::kTwistedCayley,
                    GraphKind::kTwistedCayleySum, GraphKind::kVertexTransitive})
    if (graph_kind_name(kind) == name) return kind;
  return std::nullopt;
}

bool is_twisted(GraphKind kind) {
  return kind == GraphKind::kTwistedCayley || kind == GraphKind::kTwistedCayleySum;
}

std::string ValidationRecord::rejection_reason() const {
  if (!enough_vertices) return "fewer than two vertices";
  if (!positive_degree) return "degree zero";
  if (!regular) return "not regular";
  if (!undirected) return "directed";
  if (!connected) return "disconnected";
  if (!nonbipartite) return "bipartite";
  return {};
}

SpectralInstance::SpectralInstance(GraphKind kind, int n, std::vector<Permutation> rho,
                                   std::optional<GroupAction> action)
    : kind_(kind), n_(n), rho_(std::move(rho)), action_(std::move(action)) {
  if (n_ < 1) throw Error(ErrorCode::kPreconditionViolated, "instance needs at least one vertex");
  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!is_permutation(rho_[i], n_))
      throw Error(ErrorCode::kInvalidPermutation,
                  "neighbour map " + std::to_string(i) + " is not a bijection of 0.." + std::to_string(n_ - 1));
    for (int v = 0; v < n_; ++v) ++adjacency_[static_cast<std::size_t>(rho_[i][v]) * n_ + v];
  }
  if (action_ && action_->degree() != n_)
    throw Error(ErrorCode::kPreconditionViolated, "action degree does not match vertex count");
  flags_ = compute_flags(n_, d(), adjacency_);
}

const GroupAction& SpectralInstance::action() const {
  if (!action_) throw Error(ErrorCode::kPreconditionViolated, "instance carries no group action");
  return *action_;
}

GroupAction left_translation_action(const GroupPtr& group) {
  const int order = group->order();
  std::vector<Permutation> perms(order, Permutation(order));
  for (int g = 0; g < order; ++g)
    for (int x = 0; x < order; ++x) perms[g][x] = group->mul(g, x);
  return GroupAction::trusted(group, order, std::move(perms));
}

SpectralInstance build_instance(GraphKind kind, const GroupPtr& group, const std::vector<int>& connection_set,
                                const std::optional<Permutation>& automorphism) {
  if (!group) throw Error(ErrorCode::kPreconditionViolated, "build_instance needs a group");
  if (kind == GraphKind::kVertexTransitive)
    throw Error(ErrorCode::kPreconditionViolated, "use vertex_transitive_instance for vertex-transitive input");
  if (connection_set.empty()) throw Error(ErrorCode::kPreconditionViolated, "connection set is empty");
  const FiniteGroup& g = *group;
  for (int s : connection_set)
    if (!g.is_element(s))
      throw Error(ErrorCode::kPreconditionViolated, "connection element " + std::to_string(s) + " is out of range");

  Permutation sigma = identity_permutation(g.order());
  if (is_twisted(kind)) {
    if (!automorphism)
      throw Error(ErrorCode::kPreconditionViolated, "twisted kinds require an automorphism");
    if (!verify_automorphism(g, *automorphism))
      throw Error(ErrorCode::kPreconditionViolated, "supplied map is not a group automorphism");
    sigma = *automorphism;
  }

  std::vector<Permutation> rho;
  rho.reserve(connection_set.size());
  for (int s : connection_set) {
    Permutation p(g.order());
    for (int x = 0; x < g.order(); ++x) {
      switch (kind) {
        case GraphKind::kCayley: p[x] = g.mul(x, s); break;
        case GraphKind::kCayleySum: p[x] = g.mul(s, g.inv(x)); break;
        case GraphKind::kTwistedCayley: p[x] = sigma[g.mul(x, s)]; break;
        case GraphKind::kTwistedCayleySum: p[x] = sigma[g.mul(s, g.inv(x))]; break;
        case GraphKind::kVertexTransitive: break;
      }
    }
    rho.push_back(std::move(p));
  }
  SpectralInstance inst(kind, g.order(), std::move(rho), left_translation_action(group));
  if (!inst.flags().undirected)
    throw Error(ErrorCode::kNotUndirected,
                std::string(graph_kind_name(kind)) + " adjacency is not symmetric for this connection set");
  inst.set_connection_data(connection_set, is_twisted(kind) ? automorphism : std::nullopt);
  return inst;
}

SpectralInstance vertex_transitive_instance(int n, std::vector<Permutation> rho, GroupAction action) {
  if (action.degree() != n) throw Error(ErrorCode::kPreconditionViolated, "action degree does not match n");
  action.require_transitive();
  SpectralInstance inst(GraphKind::kVertexTransitive, n, std::move(rho), std::move(action));
  const GroupAction& act = inst.action();
  for (int g = 0; g < act.group().order(); ++g) {
    const Permutation& p = act.perm(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (inst.a(p[u], p[v]) != inst.a(u, v))
          throw Error(ErrorCode::kNotInvariant, "group element " + std::to_string(g) +
                                                    " does not preserve adjacency at (" + std::to_string(u) +
                                                    ", " + std::to_string(v) + ")");
  }
  if (!inst.flags().undirected) throw Error(ErrorCode::kNotUndirected, "adjacency is not symmetric");
  return inst;
}

ValidationRecord validate_instance(const SpectralInstance& inst) {
  return compute_flags(inst.n(), inst.d(), inst.adjacency());
}

SpectralInstance repeat_connections(const SpectralInstance& inst, int times) {
  if (times < 1) throw Error(ErrorCode::kPreconditionViolated, "repeat count must be positive");
  std::vector<Permutation> rho;
  for (int k = 0; k < times; ++k) rho.insert(rho.end(), inst.rho().begin(), inst.rho().end());
  std::optional<GroupAction> action;
  if (inst.has_action()) action = inst.action();
  SpectralInstance out(inst.kind(), inst.n(), std::move(rho), std::move(action));
  if (inst.connection_set()) {
    std::vector<int> s;
    for (int k = 0; k < times; ++k) s.insert(s.end(), inst.connection_set()->begin(), inst.connection_set()->end());
    out.set_connection_data(std::move(s), inst.automorphism());
  }
  out.set_name(inst.name() + (times > 1 ? " x" + std::to_string(times) : ""));
  return out;
}

}  // namespace gapcert
