#include "divmatch/negcycle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace divmatch {

std::size_t Digraph::add_arc(std::size_t from, std::size_t to, Count weight, bool enabled) {
  const std::size_t id = arcs_.size();
  arcs_.push_back(Arc{static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to), weight, enabled});
  out_[from].push_back(static_cast<std::uint32_t>(id));
  return id;
}

std::size_t Digraph::num_enabled() const {
  return static_cast<std::size_t>(std::count_if(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.enabled; }));
}

const char* to_string(Detector d) { return d == Detector::kBellmanFord ? "bf" : "gr"; }

std::optional<Detector> parse_detector(const std::string& s) {
  if (s == "bf" || s == "bellman_ford") return Detector::kBellmanFord;
  if (s == "gr" || s == "goldberg_radzik") return Detector::kGoldbergRadzik;
  return std::nullopt;
}

Count cycle_weight(const Digraph& g, const std::vector<std::size_t>& arcs) {
  if (arcs.empty()) throw std::logic_error("empty cycle");
  Count sum = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = g.arc(arcs[i]);
    const Arc& next = g.arc(arcs[(i + 1) % arcs.size()]);
    if (a.to != next.from) throw std::logic_error("arcs do not form a closed walk");
    sum += a.weight;
  }
  return sum;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Looks for a cycle in the parent graph (every node has at most one parent
// arc). Any such cycle has negative weight when parents come from relaxations.
std::optional<NegativeCycle> parent_graph_cycle(const Digraph& g, const std::vector<std::size_t>& parent) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> stamp(n, kNone);
  for (std::size_t start = 0; start < n; ++start) {
    if (stamp[start] != kNone) continue;
    std::size_t v = start;
    while (v != kNone && stamp[v] == kNone) {
      stamp[v] = start;
      v = parent[v] == kNone ? kNone : g.arc(parent[v]).from;
    }
    if (v == kNone || stamp[v] != start) continue;

    // v lies on a cycle of the parent graph; collect it backwards.
    NegativeCycle cycle;
    std::size_t u = v;
    do {
      cycle.arcs.push_back(parent[u]);
      u = g.arc(parent[u]).from;
    } while (u != v);
    std::reverse(cycle.arcs.begin(), cycle.arcs.end());
    cycle.weight = cycle_weight(g, cycle.arcs);
    if (cycle.weight >= 0) throw std::logic_error("parent-graph cycle with non-negative weight");
    return cycle;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NegativeCycle> bellman_ford_detect(const Digraph& g, DetectStats* stats) {
  const std::size_t n = g.num_nodes();
  std::vector<Count> dist(n, 0);
  std::vector<std::size_t> parent(n, kNone);
  DetectStats local;
  if (stats) *stats = local;
  if (n == 0) return std::nullopt;

  // n + 1 nodes counting the virtual source, so n rounds settle every
  // shortest path when no negative cycle exists.
  for (std::size_t round = 0; round < n; ++round) {
    ++local.passes;
    bool changed = false;
    for (std::size_t id = 0; id < g.num_arcs(); ++id) {
      const Arc& a = g.arc(id);
      if (!a.enabled) continue;
      ++local.relaxations;
      if (dist[a.from] + a.weight < dist[a.to]) {
        dist[a.to] = dist[a.from] + a.weight;
        parent[a.to] = id;
        changed = true;
      }
    }
    if (!changed) {
      if (stats) *stats = local;
      return std::nullopt;
    }
    if (auto cycle = parent_graph_cycle(g, parent)) {
      if (stats) *stats = local;
      return cycle;
    }
  }

  // n rounds without settling imply a negative cycle, and the per-round
  // check above would already have found its parent-graph trace.
  if (stats) *stats = local;
  throw std::logic_error("Bellman-Ford: relaxation persisted without a parent cycle");
}

std::optional<NegativeCycle> goldberg_radzik_detect(const Digraph& g, DetectStats* stats) {
  const std::size_t n = g.num_nodes();
  std::vector<Count> dist(n, 0);
  std::vector<std::size_t> parent(n, kNone);
  DetectStats local;

  // Scanning the virtual source labels every node with 0.
  std::vector<std::size_t> labeled(n);
  for (std::size_t v = 0; v < n; ++v) labeled[v] = v;

  enum : char { kWhite = 0, kGray = 1, kBlack = 2 };
  std::vector<char> color(n);
  std::vector<char> touched(n);
  std::vector<std::size_t> order;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // node, next out-arc position
  std::vector<std::size_t> stack_arc(n, kNone);             // arc used to reach a gray node

  auto reduced = [&](const Arc& a) { return dist[a.from] + a.weight - dist[a.to]; };

  while (true) {
    ++local.passes;
    // Keep only labeled nodes that still have an improving arc.
    std::vector<std::size_t> roots;
    for (std::size_t v : labeled) {
      for (std::uint32_t id : g.out_arcs(v)) {
        const Arc& a = g.arc(id);
        if (a.enabled && reduced(a) < 0) {
          roots.push_back(v);
          break;
        }
      }
    }
    if (roots.empty()) {
      if (stats) *stats = local;
      return std::nullopt;
    }

    // DFS over admissible arcs (reduced cost <= 0) for a topological order.
    std::fill(color.begin(), color.end(), kWhite);
    order.clear();
    for (std::size_t root : roots) {
      if (color[root] != kWhite) continue;
      color[root] = kGray;
      stack.assign(1, {root, 0});
      while (!stack.empty()) {
        auto& [u, pos] = stack.back();
        const auto& out = g.out_arcs(u);
        if (pos == out.size()) {
          color[u] = kBlack;
          order.push_back(u);
          stack.pop_back();
          continue;
        }
        const std::size_t id = out[pos++];
        const Arc& a = g.arc(id);
        if (!a.enabled || reduced(a) > 0) continue;
        if (color[a.to] == kWhite) {
          color[a.to] = kGray;
          stack_arc[a.to] = id;
          stack.emplace_back(a.to, 0);
        } else if (color[a.to] == kGray) {
          // Admissible cycle: its weight equals its reduced-cost sum (<= 0).
          NegativeCycle cycle;
          cycle.arcs.push_back(id);
          for (std::size_t x = a.from; x != a.to; x = g.arc(stack_arc[x]).from) cycle.arcs.push_back(stack_arc[x]);
          std::reverse(cycle.arcs.begin(), cycle.arcs.end());
          cycle.weight = cycle_weight(g, cycle.arcs);
          if (cycle.weight < 0) {
            if (stats) *stats = local;
            return cycle;
          }
          // Zero-weight admissible cycle: skip the back arc.
        }
      }
    }

    // Scan in topological order (reverse post-order).
    std::fill(touched.begin(), touched.end(), 0);
    labeled.clear();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t u = *it;
      for (std::uint32_t id : g.out_arcs(u)) {
        const Arc& a = g.arc(id);
        if (!a.enabled) continue;
        ++local.relaxations;
        if (dist[u] + a.weight < dist[a.to]) {
          dist[a.to] = dist[u] + a.weight;
          parent[a.to] = id;
          if (!touched[a.to]) {
            touched[a.to] = 1;
            labeled.push_back(a.to);
          }
        }
      }
    }
    if (auto cycle = parent_graph_cycle(g, parent)) {
      if (stats) *stats = local;
      return cycle;
    }
  }
}

std::optional<NegativeCycle> detect_negative_cycle(const Digraph& g, Detector detector, DetectStats* stats) {
  return detector == Detector::kBellmanFord ? bellman_ford_detect(g, stats) : goldberg_radzik_detect(g, stats);
}

}  // namespace divmatch
