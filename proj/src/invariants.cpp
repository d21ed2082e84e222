#include "gapcert/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "gapcert/error.hpp"

namespace gapcert {

Rational::Rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(ErrorCode::kPreconditionViolated, "zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  p_ = g ? p / g : 0;
  q_ = g ? q / g : 1;
}

std::string Rational::str() const {
  return q_ == 1 ? std::to_string(p_) : std::to_string(p_) + "/" + std::to_string(q_);
}

namespace {

void require_size(const SpectralInstance& inst, int max_n, const char* what) {
  if (inst.n() > max_n)
    throw Error(ErrorCode::kTooLargeForExact, std::string(what) + " scan needs n <= " + std::to_string(max_n) +
                                                  ", instance has n = " + std::to_string(inst.n()));
  if (inst.n() > 62) throw Error(ErrorCode::kTooLargeForExact, "bitmask scans need n <= 62");
}

// Non-loop neighbour multiset of x, one entry per ρ_i.
std::vector<std::vector<int>> neighbour_lists(const SpectralInstance& inst) {
  std::vector<std::vector<int>> nb(inst.n());
  for (const auto& rho : inst.rho())
    for (int v = 0; v < inst.n(); ++v)
      if (rho[v] != v) nb[v].push_back(rho[v]);
  return nb;
}

}  // namespace

Rational edge_cheeger_exact(const SpectralInstance& inst, int max_n) {
  require_size(inst, max_n, "edge Cheeger");
  const int n = inst.n();
  const std::int64_t d = inst.d();
  const auto nb = neighbour_lists(inst);

  std::uint64_t in_f = 0;
  std::int64_t cut = 0;
  int size = 0;
  std::int64_t best_cut = 1, best_vol = 0;  // best_vol = 0 marks "unset"
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int x = std::countr_zero(k);
    std::int64_t inside = 0, outside = 0;
    for (int y : nb[x]) ((in_f >> y) & 1 ? inside : outside) += 1;
    if ((in_f >> x) & 1) {
      cut += inside - outside;
      --size;
    } else {
      cut += outside - inside;
      ++size;
    }
    in_f ^= std::uint64_t{1} << x;
    if (size == 0 || size == n) continue;
    const std::int64_t vol = d * std::min(size, n - size);
    if (best_vol == 0 || static_cast<__int128>(cut) * best_vol < static_cast<__int128>(best_cut) * vol) {
      best_cut = cut;
      best_vol = vol;
    }
  }
  if (best_vol == 0) throw Error(ErrorCode::kPreconditionViolated, "edge Cheeger constant needs n >= 2");
  return {best_cut, best_vol};
}

Rational vertex_cheeger_exact(const SpectralInstance& inst, int max_n) {
  require_size(inst, max_n, "vertex Cheeger");
  const int n = inst.n();
  if (n > 26) throw Error(ErrorCode::kTooLargeForExact, "vertex Cheeger table needs n <= 26");
  if (n < 2) throw Error(ErrorCode::kPreconditionViolated, "vertex Cheeger constant needs n >= 2");
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (const auto& rho : inst.rho()) adj[v] |= std::uint32_t{1} << rho[v];

  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<std::uint32_t> reach(total, 0);
  std::int64_t best_p = 0, best_q = 0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int low = std::countr_zero(mask);
    reach[mask] = reach[mask & (mask - 1)] | adj[low];
    const int size = std::popcount(mask);
    if (2 * size > n) continue;
    const std::int64_t boundary = std::popcount(reach[mask] & ~mask);
    if (best_q == 0 || boundary * best_q < best_p * size) {
      best_p = boundary;
      best_q = size;
    }
  }
  return {best_p, best_q};
}

Rational edge_bipartiteness_exact(const SpectralInstance& inst, int max_n) {
  require_size(inst, max_n, "edge bipartiteness");
  const int n = inst.n();
  const std::int64_t d = inst.d();
  const auto nb = neighbour_lists(inst);
  std::vector<std::int64_t> loops(n, 0);
  for (const auto& rho : inst.rho())
    for (int v = 0; v < n; ++v)
      if (rho[v] == v) ++loops[v];

  // Base-3 odometer over digit ∈ {0, 1, 2} ↦ ψ ∈ {0, 1, −1}; the quadratic
  // form Q = Σ a_uv ψ_u ψ_v and ‖ψ‖² are updated one digit at a time.
  std::vector<int> digit(n, 0), psi(n, 0);
  std::int64_t q = 0, norm = 0;
  std::int64_t best_num = 0, best_den = 0;
  auto set = [&](int x, int value) {
    const int old = psi[x];
    if (old == value) return;
    std::int64_t cross = 0;
    for (int y : nb[x]) cross += psi[y];
    q += 2 * (value - old) * cross + loops[x] * (value * value - old * old);
    norm += value * value - old * old;
    psi[x] = value;
  };
  static constexpr int kValue[3] = {0, 1, -1};
  while (true) {
    int x = 0;
    while (x < n && digit[x] == 2) {
      digit[x] = 0;
      set(x, 0);
      ++x;
    }
    if (x == n) break;
    ++digit[x];
    set(x, kValue[digit[x]]);
    const std::int64_t num = d * norm + q;
    const std::int64_t den = 2 * d * norm;
    if (best_den == 0 || static_cast<__int128>(num) * best_den < static_cast<__int128>(best_num) * den) {
      best_num = num;
      best_den = den;
    }
  }
  return {best_num, best_den};
}

Overlap sigma_overlap(const Permutation& pi, const std::vector<int>& vset, int n) {
  if (!is_permutation(pi, n)) throw Error(ErrorCode::kInvalidPermutation, "overlap needs a permutation of 0..n-1");
  std::vector<char> in(n, 0);
  for (int v : vset) in.at(v) = 1;
  const Permutation inv = inverse(pi);
  Overlap out;
  for (int v = 0; v < n; ++v) {
    const bool src = in[inv[v]];
    if (in[v] == src) ++out.agree;
    if (in[v] && src) out.intersection.push_back(v);
  }
  out.sigma = static_cast<double>(out.agree) / n;
  return out;
}

NuResult nu_constant(const SpectralInstance& inst) {
  NuResult res;
  const GroupAction& act = inst.action();
  res.subgroups = index_two_subgroups(act.group());
  res.has_index_two = !res.subgroups.empty();
  if (!res.has_index_two) return res;

  int worst_agree = std::numeric_limits<int>::max();
  for (const auto& h : res.subgroups) {
    const auto orbits = subgroup_orbits(h, act);
    int best_agree = -1, best_i = 0;
    for (int i = 0; i < inst.d(); ++i) {
      int agree = std::numeric_limits<int>::max();
      for (const auto& orbit : orbits) agree = std::min(agree, sigma_overlap(inst.rho()[i], orbit, inst.n()).agree);
      if (agree > best_agree) {
        best_agree = agree;
        best_i = i;
      }
    }
    res.best_generator.push_back(best_i);
    worst_agree = std::min(worst_agree, best_agree);
  }
  res.nu = static_cast<double>(worst_agree) / inst.n();
  return res;
}

}  // namespace gapcert
