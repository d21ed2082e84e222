#include "gapcert/group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "gapcert/error.hpp"

namespace gapcert {

namespace {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : p) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

std::string join_permutation(const Permutation& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
  os << ']';
  return os.str();
}

// Breadth-first closure of {identity} under right multiplication by `gens`.
ElementSet close_under(const FiniteGroup& group, const std::vector<int>& gens) {
  std::vector<char> member(group.order(), 0);
  std::vector<int> elems{group.identity()};
  member[group.identity()] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    const int x = elems[head];
    for (int s : gens) {
      const int y = group.mul(x, s);
      if (!member[y]) {
        member[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

bool is_permutation(std::span<const int> p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
  return r;
}

std::string cycle_notation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  std::ostringstream os;
  bool any = false;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) continue;
    any = true;
    os << '(';
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      os << (first ? "" : " ") << x;
      first = false;
      x = static_cast<std::size_t>(p[x]);
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(int order, std::vector<int> table, int identity,
                         std::vector<std::string> labels)
    : order_(order), identity_(identity), mul_(std::move(table)), labels_(std::move(labels)) {
  if (order_ < 1) fail(ErrorCode::kUnsupportedParameter, "group order must be positive");
  if (order_ > kMaxGroupOrder)
    fail(ErrorCode::kUnsupportedParameter,
         "group order " + std::to_string(order_) + " exceeds the limit " +
             std::to_string(kMaxGroupOrder));
  const auto n = static_cast<std::size_t>(order_);
  if (mul_.size() != n * n) fail(ErrorCode::kUnsupportedParameter, "multiplication table has wrong size");
  if (identity_ < 0 || identity_ >= order_) fail(ErrorCode::kUnsupportedParameter, "identity out of range");

  // Latin square.
  std::vector<bool> col_seen(n * n, false);
  for (int g = 0; g < order_; ++g) {
    std::vector<char> row_seen(n, 0);
    for (int h = 0; h < order_; ++h) {
      const int x = mul(g, h);
      if (x < 0 || x >= order_) fail(ErrorCode::kUnsupportedParameter, "table entry out of range");
      if (row_seen[x]) fail(ErrorCode::kUnsupportedParameter, "multiplication table row is not a permutation");
      row_seen[x] = 1;
      if (col_seen[static_cast<std::size_t>(h) * n + x])
        fail(ErrorCode::kUnsupportedParameter, "multiplication table column is not a permutation");
      col_seen[static_cast<std::size_t>(h) * n + x] = true;
    }
  }
  for (int g = 0; g < order_; ++g) {
    if (mul(identity_, g) != g || mul(g, identity_) != g)
      fail(ErrorCode::kUnsupportedParameter, "identity element is not neutral");
  }
  inv_.assign(n, -1);
  for (int g = 0; g < order_; ++g) {
    for (int h = 0; h < order_; ++h) {
      if (mul(g, h) == identity_) {
        inv_[g] = h;
        break;
      }
    }
    if (mul(inv_[g], g) != identity_) fail(ErrorCode::kUnsupportedParameter, "left and right inverses differ");
  }
  if (order_ <= kAssociativityCheckMaxOrder) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) {
        const int ab = mul(a, b);
        for (int c = 0; c < order_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            fail(ErrorCode::kUnsupportedParameter, "multiplication is not associative");
      }
  }
  if (labels_.empty()) {
    labels_.reserve(n);
    for (int g = 0; g < order_; ++g) labels_.push_back(std::to_string(g));
  } else if (labels_.size() != n) {
    fail(ErrorCode::kUnsupportedParameter, "label count does not match group order");
  }
}

bool FiniteGroup::is_abelian() const {
  for (int g = 0; g < order_; ++g)
    for (int h = g + 1; h < order_; ++h)
      if (mul(g, h) != mul(h, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// GroupAction

GroupAction GroupAction::trusted(GroupPtr group, int n, std::vector<Permutation> perms) {
  GroupAction action;
  action.group_ = std::move(group);
  action.n_ = n;
  action.perms_ = std::move(perms);
  return action;
}

GroupAction::GroupAction(GroupPtr group, int n, std::vector<Permutation> perms)
    : group_(std::move(group)), n_(n), perms_(std::move(perms)) {
  if (!group_) fail(ErrorCode::kPreconditionViolated, "action requires a group");
  if (n_ < 1) fail(ErrorCode::kUnsupportedParameter, "action degree must be positive");
  const int order = group_->order();
  if (static_cast<int>(perms_.size()) != order)
    fail(ErrorCode::kUnsupportedParameter, "action needs one permutation per group element");
  for (int g = 0; g < order; ++g)
    if (!is_permutation(perms_[g], n_))
      fail(ErrorCode::kInvalidPermutation, "action permutation for element " + std::to_string(g) +
                                               " is not a bijection of 0.." + std::to_string(n_ - 1));
  if (perms_[group_->identity()] != identity_permutation(n_))
    fail(ErrorCode::kUnsupportedParameter, "identity element must act trivially");
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) {
      const Permutation& pg = perms_[g];
      const Permutation& ph = perms_[h];
      const Permutation& pgh = perms_[group_->mul(g, h)];
      for (int x = 0; x < n_; ++x)
        if (pgh[x] != pg[ph[x]])
          fail(ErrorCode::kUnsupportedParameter,
               "action is not a homomorphism at (" + std::to_string(g) + ", " + std::to_string(h) + ")");
    }
}

bool GroupAction::is_transitive() const {
  std::vector<char> seen(n_, 0);
  for (const auto& p : perms_) seen[p[0]] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

int GroupAction::stabilizer_size() const {
  return static_cast<int>(std::count_if(perms_.begin(), perms_.end(),
                                        [](const Permutation& p) { return p[0] == 0; }));
}

void GroupAction::require_transitive() const {
  if (!is_transitive()) fail(ErrorCode::kNotTransitive, "group action has more than one orbit");
}

// ---------------------------------------------------------------------------
// Constructions

PermutationGroup group_from_permutation_generators(const std::vector<Permutation>& gens, int m,
                                                   int max_order) {
  if (m < 1) fail(ErrorCode::kUnsupportedParameter, "permutation degree must be positive");
  max_order = std::min(max_order, kMaxGroupOrder);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!is_permutation(gens[i], m))
      fail(ErrorCode::kInvalidPermutation,
           "generator " + std::to_string(i) + " " + join_permutation(gens[i]) + " is not a bijection of 0.." +
               std::to_string(m - 1));

  std::vector<Permutation> elems{identity_permutation(m)};
  std::unordered_map<Permutation, int, PermutationHash> index{{elems[0], 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      Permutation y = compose(elems[head], s);
      if (index.count(y)) continue;
      if (static_cast<int>(elems.size()) >= max_order)
        fail(ErrorCode::kClosureExceedsLimit,
             "permutation closure exceeds " + std::to_string(max_order) + " elements");
      index.emplace(y, static_cast<int>(elems.size()));
      elems.push_back(std::move(y));
    }
  }
  const int order = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      mul[static_cast<std::size_t>(g) * order + h] = index.at(compose(elems[g], elems[h]));
  std::vector<std::string> labels;
  labels.reserve(elems.size());
  for (const auto& p : elems) labels.push_back(cycle_notation(p));
  auto group = std::make_shared<const FiniteGroup>(order, std::move(mul), 0, std::move(labels));
  return {group, GroupAction::trusted(group, m, std::move(elems))};
}

std::optional<GroupFamily> parse_group_family(std::string_view name) {
  if (name == "cyclic") return GroupFamily::kCyclic;
  if (name == "dihedral") return GroupFamily::kDihedral;
  if (name == "symmetric") return GroupFamily::kSymmetric;
  if (name == "quaternion8") return GroupFamily::kQuaternion8;
  if (name == "direct_product") return GroupFamily::kDirectProduct;
  return std::nullopt;
}

std::string_view group_family_name(GroupFamily family) {
  switch (family) {
    case GroupFamily::kCyclic: return "cyclic";
    case GroupFamily::kDihedral: return "dihedral";
    case GroupFamily::kSymmetric: return "symmetric";
    case GroupFamily::kQuaternion8: return "quaternion8";
    case GroupFamily::kDirectProduct: return "direct_product";
  }
  return "unknown";
}

GroupPtr cyclic_group(int n) {
  if (n < 1 || n > kMaxGroupOrder)
    fail(ErrorCode::kUnsupportedParameter, "cyclic(n) needs 1 <= n <= " + std::to_string(kMaxGroupOrder));
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return std::make_shared<const FiniteGroup>(n, std::move(mul), 0, std::move(labels));
}

GroupPtr dihedral_group(int n) {
  if (n < 3 || 2 * n > kMaxGroupOrder)
    fail(ErrorCode::kUnsupportedParameter, "dihedral(n) needs 3 <= n <= " + std::to_string(kMaxGroupOrder / 2));
  const int order = 2 * n;
  // r^a s^i · r^b s^j = r^(a + (-1)^i b) s^(i+j)
  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int a = x % n, i = x / n, b = y % n, j = y / n;
      const int rot = ((a + (i ? -b : b)) % n + n) % n;
      mul[static_cast<std::size_t>(x) * order + y] = rot + n * ((i + j) % 2);
    }
  std::vector<std::string> labels;
  for (int x = 0; x < order; ++x) {
    const int a = x % n;
    std::string l = a == 0 ? (x < n ? "e" : "") : (a == 1 ? "r" : "r^" + std::to_string(a));
    if (x >= n) l += "s";
    labels.push_back(l);
  }
  return std::make_shared<const FiniteGroup>(order, std::move(mul), 0, std::move(labels));
}

GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 8) fail(ErrorCode::kUnsupportedParameter, "symmetric(n) needs 1 <= n <= 8");
  int order = 1;
  for (int i = 2; i <= n; ++i) order *= i;
  if (order > kMaxGroupOrder)
    fail(ErrorCode::kUnsupportedParameter, "symmetric(" + std::to_string(n) + ") has order " +
                                               std::to_string(order) + ", above the group order limit " +
                                               std::to_string(kMaxGroupOrder));
  std::vector<Permutation> elems;
  Permutation p = identity_permutation(n);
  do elems.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<Permutation, int> index;
  for (int i = 0; i < order; ++i) index.emplace(elems[i], i);
  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) mul[static_cast<std::size_t>(g) * order + h] = index.at(compose(elems[g], elems[h]));
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(join_permutation(e));
  return std::make_shared<const FiniteGroup>(order, std::move(mul), 0, std::move(labels));
}

GroupPtr quaternion8_group() {
  // Index 2u + s encodes (-1)^s · unit[u] with unit = {1, i, j, k}.
  // unit_mul[u][v] = (sign, unit) of unit[u] * unit[v].
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> mul(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int sign = (x % 2 + y % 2 + kSign[u][v]) % 2;
      mul[x * 8 + y] = 2 * kUnit[u][v] + sign;
    }
  std::vector<std::string> labels{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return std::make_shared<const FiniteGroup>(8, std::move(mul), 0, std::move(labels));
}

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const long long order_ll = static_cast<long long>(g.order()) * h.order();
  if (order_ll > kMaxGroupOrder)
    fail(ErrorCode::kUnsupportedParameter, "direct product order exceeds " + std::to_string(kMaxGroupOrder));
  const int order = static_cast<int>(order_ll);
  const int m = h.order();
  std::vector<int> mul(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      mul[static_cast<std::size_t>(x) * order + y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
  std::vector<std::string> labels;
  for (int x = 0; x < order; ++x) labels.push_back("(" + g.label(x / m) + "," + h.label(x % m) + ")");
  return std::make_shared<const FiniteGroup>(order, std::move(mul), g.identity() * m + h.identity(),
                                             std::move(labels));
}

// ---------------------------------------------------------------------------
// Subgroups

bool is_subgroup(const FiniteGroup& group, const ElementSet& subset) {
  std::vector<char> member(group.order(), 0);
  for (int g : subset) {
    if (!group.is_element(g) || member[g]) return false;
    member[g] = 1;
  }
  if (!member[group.identity()]) return false;
  for (int g : subset) {
    if (!member[group.inv(g)]) return false;
    for (int h : subset)
      if (!member[group.mul(g, h)]) return false;
  }
  return true;
}

ElementSet subgroup_generated(const FiniteGroup& group, std::span<const int> generators) {
  // Keep only generators that enlarge the current subgroup; there are at most
  // log2(order) of them, so each re-closure stays cheap.
  std::vector<int> basis;
  std::vector<char> member(group.order(), 0);
  member[group.identity()] = 1;
  ElementSet current{group.identity()};
  for (int g : generators) {
    if (member[g]) continue;
    basis.push_back(g);
    current = close_under(group, basis);
    for (int x : current) member[x] = 1;
  }
  return current;
}

std::vector<ElementSet> index_two_subgroups(const FiniteGroup& group) {
  const int order = group.order();
  if (order % 2 != 0) return {};

  std::vector<int> gens;
  std::vector<char> queued(order, 0);
  auto push = [&](int x) {
    if (!queued[x]) {
      queued[x] = 1;
      gens.push_back(x);
    }
  };
  for (int g = 0; g < order; ++g) push(group.mul(g, g));
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) push(group.commutator(g, h));
  const ElementSet normal = subgroup_generated(group, gens);
  const int quotient_order = order / static_cast<int>(normal.size());
  if (quotient_order < 2) return {};

  // Label cosets N·x.
  std::vector<int> coset(order, -1);
  std::vector<int> coset_rep;
  for (int x = 0; x < order; ++x) {
    if (coset[x] >= 0) continue;
    const int id = static_cast<int>(coset_rep.size());
    coset_rep.push_back(x);
    for (int n : normal) coset[group.mul(n, x)] = id;
  }

  // G/N is elementary abelian of order 2^r; give each coset its F2 coordinates.
  std::vector<unsigned> coord(quotient_order, 0);
  std::vector<char> spanned(quotient_order, 0);
  std::vector<int> spanned_list{coset[group.identity()]};
  spanned[coset[group.identity()]] = 1;
  int rank = 0;
  for (int g = 0; g < order && static_cast<int>(spanned_list.size()) < quotient_order; ++g) {
    if (spanned[coset[g]]) continue;
    const std::size_t existing = spanned_list.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const int c = spanned_list[i];
      const int next = coset[group.mul(coset_rep[c], g)];
      coord[next] = coord[c] | (1U << rank);
      spanned[next] = 1;
      spanned_list.push_back(next);
    }
    ++rank;
  }

  std::vector<ElementSet> result;
  for (unsigned functional = 1; functional < (1U << rank); ++functional) {
    ElementSet h;
    for (int x = 0; x < order; ++x)
      if (std::popcount(functional & coord[coset[x]]) % 2 == 0) h.push_back(x);
    if (static_cast<int>(h.size()) * 2 != order || !is_subgroup(group, h))
      fail(ErrorCode::kNotASubgroup, "index-two candidate failed verification");
    result.push_back(std::move(h));
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<int>> subgroup_orbits(const ElementSet& subgroup, const GroupAction& action) {
  if (!is_subgroup(action.group(), subgroup))
    fail(ErrorCode::kNotASubgroup, "element set is not a subgroup");
  const int n = action.degree();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int start = 0; start < n; ++start) {
    if (owner[start] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    std::vector<int> orbit;
    for (int h : subgroup) {
      const int y = action.perm(h)[start];
      if (owner[y] < 0) {
        owner[y] = id;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool verify_automorphism(const FiniteGroup& group, const Permutation& sigma) {
  if (!is_permutation(sigma, group.order()))
    fail(ErrorCode::kInvalidPermutation, "automorphism candidate is not a bijection of the group");
  if (sigma[group.identity()] != group.identity()) return false;
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      if (sigma[group.mul(g, h)] != group.mul(sigma[g], sigma[h])) return false;
  return true;
}

std::optional<bool> is_simple(const FiniteGroup& group, int max_order) {
  if (group.order() > max_order) return std::nullopt;
  if (group.order() == 1) return false;
  for (int g = 0; g < group.order(); ++g) {
    if (g == group.identity()) continue;
    std::vector<int> conjugates;
    for (int x = 0; x < group.order(); ++x) conjugates.push_back(group.mul(group.mul(x, g), group.inv(x)));
    if (static_cast<int>(subgroup_generated(group, conjugates).size()) < group.order()) return false;
  }
  return true;
}

}  // namespace gapcert
