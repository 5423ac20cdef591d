#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "divmatch/digraph.hpp"

namespace divmatch {

/// A simple directed cycle given as arc ids in traversal order.
struct NegativeCycle {
  std::vector<std::size_t> arcs;
  Count weight = 0;
};

enum class Detector { kBellmanFord, kGoldbergRadzik };

const char* to_string(Detector d);
std::optional<Detector> parse_detector(const std::string& s);

struct DetectStats {
  std::size_t passes = 0;
  std::size_t relaxations = 0;  // arc examinations in relaxation scans
};

// Both detectors start from a virtual source joined to every node by a
// zero-weight arc, so every component is searched. Only enabled arcs count.
// The returned cycle is simple and its weight is strictly negative.

std::optional<NegativeCycle> bellman_ford_detect(const Digraph& g, DetectStats* stats = nullptr);

/// Goldberg-Radzik label correcting: each pass topologically orders the
/// admissible subgraph reachable from the labeled set and scans it in order.
std::optional<NegativeCycle> goldberg_radzik_detect(const Digraph& g, DetectStats* stats = nullptr);

std::optional<NegativeCycle> detect_negative_cycle(const Digraph& g, Detector detector,
                                                   DetectStats* stats = nullptr);

/// Sum of arc weights; throws std::logic_error if the arcs do not close up.
Count cycle_weight(const Digraph& g, const std::vector<std::size_t>& arcs);

}  // namespace divmatch
