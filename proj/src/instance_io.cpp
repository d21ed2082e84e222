#include "gapcert/instance_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gapcert/error.hpp"

namespace gapcert {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) parse_fail(field, "expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) parse_fail(field, "out of range");
  return static_cast<int>(x);
}

std::vector<int> as_int_list(const json& v, const std::string& field) {
  if (!v.is_array()) parse_fail(field, "expected a list of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Permutation> as_perm_list(const json& v, const std::string& field, int n) {
  if (!v.is_array()) parse_fail(field, "expected a list of permutations");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    Permutation p = as_int_list(v[i], f);
    if (n >= 0 && !is_permutation(p, n))
      throw Error(ErrorCode::kInvalidPermutation, "field '" + f + "': not a bijection of 0.." + std::to_string(n - 1));
    out.push_back(std::move(p));
  }
  return out;
}

struct ParsedGroup {
  GroupPtr group;
  std::string text;
};

ParsedGroup parse_group(const json& g, const std::string& path, int max_order) {
  if (!g.is_object()) parse_fail(path, "expected an object");
  if (g.contains("generators")) {
    const json& gens_json = g["generators"];
    const std::string f = join(path, "generators");
    if (!gens_json.is_array() || gens_json.empty()) parse_fail(f, "expected a non-empty list of permutations");
    const int m = static_cast<int>(gens_json[0].is_array() ? gens_json[0].size() : 0);
    auto gens = as_perm_list(gens_json, f, m);
    auto pg = group_from_permutation_generators(gens, m, max_order);
    return {pg.group, "perm(" + std::to_string(pg.group->order()) + ")"};
  }
  const std::string fam_field = join(path, "family");
  const json& fam = require(g, "family", path);
  if (!fam.is_string()) parse_fail(fam_field, "expected a string");
  const auto family = parse_group_family(fam.get<std::string>());
  if (!family) parse_fail(fam_field, "unknown family '" + fam.get<std::string>() + "'");

  GroupPtr grp;
  std::string text;
  switch (*family) {
    case GroupFamily::kQuaternion8:
      grp = quaternion8_group();
      text = "quaternion8";
      break;
    case GroupFamily::kDirectProduct: {
      const std::string ff = join(path, "factors");
      const json& factors = require(g, "factors", path);
      if (!factors.is_array() || factors.size() != 2) parse_fail(ff, "expected exactly two groups");
      auto a = parse_group(factors[0], ff + "[0]", max_order);
      auto b = parse_group(factors[1], ff + "[1]", max_order);
      if (static_cast<long long>(a.group->order()) * b.group->order() > max_order)
        throw Error(ErrorCode::kUnsupportedParameter, "direct product exceeds the group order cap");
      grp = direct_product(*a.group, *b.group);
      text = a.text + "x" + b.text;
      break;
    }
    default: {
      const int n = as_int(require(g, "n", path), join(path, "n"));
      switch (*family) {
        case GroupFamily::kCyclic: grp = cyclic_group(n); break;
        case GroupFamily::kDihedral: grp = dihedral_group(n); break;
        case GroupFamily::kSymmetric: grp = symmetric_group(n); break;
        default: break;
      }
      text = std::string(group_family_name(*family)) + "(" + std::to_string(n) + ")";
    }
  }
  if (grp->order() > max_order)
    throw Error(ErrorCode::kUnsupportedParameter,
                "group order " + std::to_string(grp->order()) + " exceeds cap " + std::to_string(max_order));
  return {grp, text};
}

std::string list_text(const std::vector<int>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedInstance parse_instance(const std::string& text, int max_group_order) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("<root>", "expected an object");
  const json& kind_json = require(doc, "kind", "");
  if (!kind_json.is_string()) parse_fail("kind", "expected a string");
  const auto kind = parse_graph_kind(kind_json.get<std::string>());
  if (!kind) parse_fail("kind", "unknown kind '" + kind_json.get<std::string>() + "'");

  bool assume_simple = false;
  if (doc.contains("assume_simple")) {
    if (!doc["assume_simple"].is_boolean()) parse_fail("assume_simple", "expected a boolean");
    assume_simple = doc["assume_simple"].get<bool>();
  }

  std::optional<SpectralInstance> inst;
  std::string name;
  if (*kind == GraphKind::kVertexTransitive) {
    const int n = as_int(require(doc, "n", ""), "n");
    if (n < 1) parse_fail("n", "must be positive");
    auto rho = as_perm_list(require(doc, "rho", ""), "rho", n);
    const json& action = require(doc, "action", "");
    std::optional<GroupAction> act;
    if (action.contains("generators")) {
      auto gens = as_perm_list(action["generators"], "action.generators", n);
      auto pg = group_from_permutation_generators(gens, n, max_group_order);
      act.emplace(std::move(pg.action));
    } else {
      auto g = parse_group(require(action, "group", "action"), "action.group", max_group_order);
      auto perms = as_perm_list(require(action, "perms", "action"), "action.perms", n);
      if (static_cast<int>(perms.size()) != g.group->order())
        parse_fail("action.perms", "expected one permutation per group element");
      act.emplace(g.group, n, std::move(perms));
    }
    inst.emplace(vertex_transitive_instance(n, std::move(rho), std::move(*act)));
    name = "vertex_transitive n=" + std::to_string(n) + " d=" + std::to_string(inst->d());
  } else {
    const auto g = parse_group(require(doc, "group", ""), "group", max_group_order);
    const auto s = as_int_list(require(doc, "connection_set", ""), "connection_set");
    if (s.empty()) parse_fail("connection_set", "must not be empty");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!g.group->is_element(s[i]))
        parse_fail("connection_set[" + std::to_string(i) + "]", "not an element index of the group");
    std::optional<Permutation> sigma;
    if (doc.contains("automorphism")) {
      sigma = as_int_list(doc["automorphism"], "automorphism");
      if (!is_permutation(*sigma, g.group->order()))
        throw Error(ErrorCode::kInvalidPermutation, "field 'automorphism': not a bijection of the group elements");
      if (!verify_automorphism(*g.group, *sigma))
        parse_fail("automorphism", "not a group automorphism");
    } else if (is_twisted(*kind)) {
      parse_fail("automorphism", "required for twisted kinds");
    }
    inst.emplace(build_instance(*kind, g.group, s, sigma));
    name = kind_json.get<std::string>() + " " + g.text + " S=" + list_text(s);
    if (sigma) name += " sigma=" + list_text(*sigma);
  }

  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail("name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  inst->set_name(name);

  std::optional<std::vector<Permutation>> l2r;
  if (doc.contains("left2right")) {
    l2r = as_perm_list(doc["left2right"], "left2right", inst->n());
    if (static_cast<int>(l2r->size()) != inst->action().group().order())
      parse_fail("left2right", "expected one permutation per group element");
  }
  return ParsedInstance{std::move(*inst), assume_simple, std::move(l2r)};
}

ParsedInstance load_instance(const std::string& path, int max_group_order) {
  return parse_instance(read_text_file(path), max_group_order);
}

FamilySpec parse_family_spec(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("<root>", "expected an object");
  FamilySpec spec;

  const json& kind = require(doc, "kind", "");
  if (!kind.is_string()) parse_fail("kind", "expected a string");
  const auto k = parse_graph_kind(kind.get<std::string>());
  if (!k || *k == GraphKind::kVertexTransitive) parse_fail("kind", "expected one of the four group-based kinds");
  spec.kind = *k;

  const json& fam = require(doc, "family", "");
  if (!fam.is_string()) parse_fail("family", "expected a string");
  const auto f = parse_group_family(fam.get<std::string>());
  if (!f || *f == GroupFamily::kDirectProduct) parse_fail("family", "unsupported family '" + fam.get<std::string>() + "'");
  spec.family = *f;

  if (doc.contains("n_range")) {
    const auto r = as_int_list(doc["n_range"], "n_range");
    if (r.size() != 2 && r.size() != 3) parse_fail("n_range", "expected [lo, hi] or [lo, hi, step]");
    spec.n_min = r[0];
    spec.n_max = r[1];
    if (r.size() == 3) {
      if (r[2] < 1) parse_fail("n_range", "step must be positive");
      spec.n_step = r[2];
    }
  } else if (*f != GroupFamily::kQuaternion8) {
    parse_fail("n_range", "missing");
  } else {
    spec.n_min = spec.n_max = 8;
  }

  spec.degree_max = as_int(require(doc, "degree_max", ""), "degree_max");
  if (spec.degree_max < 1) parse_fail("degree_max", "must be positive");

  const std::string policy = doc.value("connection_policy", std::string("all_symmetric"));
  if (policy == "all_symmetric") {
    spec.connection_policy = ConnectionPolicy::kAllSymmetric;
  } else if (policy == "all_subsets") {
    spec.connection_policy = ConnectionPolicy::kAllSubsets;
  } else if (policy == "explicit") {
    spec.connection_policy = ConnectionPolicy::kExplicit;
    const json& sets = require(doc, "connection_sets", "");
    if (!sets.is_array()) parse_fail("connection_sets", "expected a list of lists");
    for (std::size_t i = 0; i < sets.size(); ++i)
      spec.connection_sets.push_back(as_int_list(sets[i], "connection_sets[" + std::to_string(i) + "]"));
  } else {
    parse_fail("connection_policy", "unknown policy '" + policy + "'");
  }

  const std::string apol = doc.value("automorphism_policy", std::string("identity"));
  if (apol == "identity") {
    spec.automorphism_policy = AutomorphismPolicy::kIdentity;
  } else if (apol == "inversion") {
    spec.automorphism_policy = AutomorphismPolicy::kInversion;
  } else if (apol == "units") {
    spec.automorphism_policy = AutomorphismPolicy::kUnits;
  } else if (apol == "explicit") {
    spec.automorphism_policy = AutomorphismPolicy::kExplicit;
    spec.automorphisms = as_perm_list(require(doc, "automorphisms", ""), "automorphisms", -1);
  } else {
    parse_fail("automorphism_policy", "unknown policy '" + apol + "'");
  }

  if (doc.contains("max_instances")) {
    spec.max_instances = as_int(doc["max_instances"], "max_instances");
    if (spec.max_instances < 1) parse_fail("max_instances", "must be positive");
  }
  return spec;
}

FamilySpec load_family_spec(const std::string& path) { return parse_family_spec(read_text_file(path)); }

}  // namespace gapcert
