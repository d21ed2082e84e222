#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/certify.hpp"

namespace gapcert {

struct ParsedInstance {
  SpectralInstance instance;
  bool assume_simple = false;
  std::optional<std::vector<Permutation>> left2right;
};

/// Instance document:
///   {"name": ..., "kind": "cayley" | "cayley_sum" | "twisted_cayley" | "twisted_cayley_sum",
///    "group": GROUP, "connection_set": [...], "automorphism": [...]}
/// or
///   {"kind": "vertex_transitive", "n": N, "rho": [[...], ...],
///    "action": {"generators": [[...], ...]} | {"group": GROUP, "perms": [[...], ...]}}
/// where GROUP is {"family": "cyclic" | "dihedral" | "symmetric", "n": k},
/// {"family": "quaternion8"}, {"family": "direct_product", "factors": [GROUP, GROUP]}
/// or {"generators": [[...], ...]}. Optional "assume_simple" (bool) and
/// "left2right" (one permutation per group element).
///
/// Throws kParseError naming the offending field, kInvalidPermutation, and the
/// construction errors of the graph builders.
ParsedInstance parse_instance(const std::string& text, int max_group_order = kMaxGroupOrder);
ParsedInstance load_instance(const std::string& path, int max_group_order = kMaxGroupOrder);

/// {"kind", "family", "n_range": [lo, hi] or [lo, hi, step], "degree_max",
///  "connection_policy": "all_symmetric" | "all_subsets" | "explicit",
///  "connection_sets": [[...]], "automorphism_policy": "identity" | "inversion" | "units" | "explicit",
///  "automorphisms": [[...]], "max_instances"}
FamilySpec parse_family_spec(const std::string& text);
FamilySpec load_family_spec(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace gapcert
