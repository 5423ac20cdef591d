#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "divmatch/solver.hpp"

namespace divmatch {

/// Solution document: teams with their worker lists, w, c (real teams),
/// objective parts, termination and the iteration log.
nlohmann::json solution_to_json(const Instance& inst, const SolveReport& report);

struct FeatureBalance {
  std::string feature;
  std::size_t teams = 0;     // teams with positive demand
  std::size_t balanced = 0;  // max - min count over the feature's values <= 1
  std::size_t skewed = 0;    // not balanced, every member shares one value
  double balanced_fraction = 0.0;
};

struct TeamHistogram {
  std::string team;
  Count demand = 0;
  std::vector<std::vector<Count>> counts;  // [feature][value]
};

struct BalanceReport {
  std::vector<TeamHistogram> teams;
  std::vector<FeatureBalance> features;
};

/// Throws InputError on a malformed solution document.
BalanceReport balance_report(const nlohmann::json& solution);
nlohmann::json to_json(const BalanceReport& report);
std::string to_text(const BalanceReport& report);

}  // namespace divmatch
