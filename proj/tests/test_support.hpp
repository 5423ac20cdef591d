#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "divmatch/digraph.hpp"
#include "divmatch/instance.hpp"

namespace divmatch::fixtures {

struct RandomLimits {
  std::size_t min_workers = 4;
  std::size_t max_workers = 10;
  std::size_t min_teams = 2;
  std::size_t max_teams = 3;
  std::size_t max_features = 3;
  std::size_t max_domain = 3;
  std::size_t max_columns = 4;
  Count max_cost = 9;
  Count max_lambda = 3;
  Count min_lambda = 1;
  CostMode mode = CostMode::kClass;
};

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

/// Small random instance within `lim`; every generated instance validates.
inline Instance random_instance(std::mt19937_64& rng, const RandomLimits& lim = {}) {
  Instance inst;
  const std::size_t nf = pick(rng, 1, lim.max_features);
  // Domains of size 1 are allowed but rarer.
  std::size_t space = 1;
  for (std::size_t k = 0; k < nf; ++k) {
    Feature f{"f" + std::to_string(k), {}};
    const std::size_t dom = rng() % 4 == 0 ? 1 : pick(rng, std::min<std::size_t>(2, lim.max_domain), lim.max_domain);
    for (std::size_t v = 0; v < dom; ++v) f.values.push_back("v" + std::to_string(v));
    space *= dom;
    inst.schema.features.push_back(std::move(f));
  }

  const std::size_t n = pick(rng, lim.min_workers, lim.max_workers);
  const std::size_t ncols = pick(rng, std::min<std::size_t>(2, std::min(space, n)), std::min({lim.max_columns, space, n}));
  std::set<std::vector<int>> combos;
  while (combos.size() < ncols) {
    std::vector<int> v;
    for (std::size_t k = 0; k < nf; ++k) v.push_back(static_cast<int>(pick(rng, 0, inst.schema.domain(k) - 1)));
    combos.insert(v);
  }
  std::vector<std::vector<int>> cols(combos.begin(), combos.end());
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t j = x < ncols ? x : pick(rng, 0, ncols - 1);
    inst.workers.push_back(Worker{cols[j]});
  }
  std::shuffle(inst.workers.begin(), inst.workers.end(), rng);

  const std::size_t t = pick(rng, lim.min_teams, lim.max_teams);
  const std::size_t assigned = pick(rng, n / 2, n);
  for (std::size_t i = 0; i < t; ++i) inst.teams.push_back(Team{"t" + std::to_string(i + 1), 0});
  for (std::size_t r = 0; r < assigned; ++r) inst.teams[pick(rng, 0, t - 1)].demand += 1;

  inst.costs.mode = lim.mode;
  const std::size_t width = lim.mode == CostMode::kClass ? inst.schema.domain(0) : n;
  inst.costs.u.assign(t, std::vector<Count>(width));
  for (auto& row : inst.costs.u) {
    for (auto& c : row) c = static_cast<Count>(pick(rng, 0, static_cast<std::size_t>(lim.max_cost)));
  }
  inst.weights.lambda0 = static_cast<Count>(pick(rng, 1, static_cast<std::size_t>(lim.max_lambda)));
  for (std::size_t k = 0; k < nf; ++k) {
    inst.weights.lambdas.push_back(static_cast<Count>(
        pick(rng, static_cast<std::size_t>(lim.min_lambda), static_cast<std::size_t>(lim.max_lambda))));
  }
  validate(inst);
  return inst;
}

/// Two teams of two; workers 2x(A,M) and 2x(B,F); zero costs; unit weights.
inline Instance two_by_two_instance() {
  Instance inst;
  inst.schema.features = {Feature{"country", {"A", "B"}}, Feature{"gender", {"M", "F"}}};
  inst.workers = {Worker{{0, 0}}, Worker{{0, 0}}, Worker{{1, 1}}, Worker{{1, 1}}};
  inst.teams = {Team{"t1", 2}, Team{"t2", 2}};
  inst.costs.mode = CostMode::kClass;
  inst.costs.u = {{0, 0}, {0, 0}};
  inst.weights.lambda0 = 1;
  inst.weights.lambdas = {1, 1};
  validate(inst);
  return inst;
}

inline Digraph random_digraph(std::mt19937_64& rng, std::size_t max_nodes) {
  const std::size_t n = 1 + rng() % max_nodes;
  Digraph g(n);
  const std::size_t m = rng() % (3 * n + 1);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t u = rng() % n;
    const std::size_t v = rng() % n;
    // Mostly positive weights so that graphs without negative cycles are common.
    const Count w = static_cast<Count>(rng() % 21) - 4;
    g.add_arc(u, v, w, rng() % 8 != 0);
  }
  return g;
}

inline bool simple_cycle_dfs(const Digraph& g, std::size_t start, std::size_t node, Count sum,
                      std::vector<bool>& on_path) {
  for (std::uint32_t id : g.out_arcs(node)) {
    const Arc& a = g.arc(id);
    if (!a.enabled || a.to < start) continue;
    if (a.to == start) {
      if (sum + a.weight < 0) return true;
      continue;
    }
    if (on_path[a.to]) continue;
    on_path[a.to] = true;
    const bool found = simple_cycle_dfs(g, start, a.to, sum + a.weight, on_path);
    on_path[a.to] = false;
    if (found) return true;
  }
  return false;
}

// Enumerates every simple cycle, rooted at its smallest node.
inline bool has_negative_cycle_exhaustive(const Digraph& g) {
  std::vector<bool> on_path(g.num_nodes(), false);
  for (std::size_t s = 0; s < g.num_nodes(); ++s) {
    on_path[s] = true;
    if (simple_cycle_dfs(g, s, s, 0, on_path)) return true;
    on_path[s] = false;
  }
  return false;
}

}  // namespace divmatch::fixtures
