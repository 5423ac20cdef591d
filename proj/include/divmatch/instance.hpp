#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace divmatch {

using Count = std::int64_t;

/// Malformed or inconsistent input (bad JSON, wrong dimensions, bad values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total demand exceeds the number of workers.
class InfeasibleError : public InputError {
 public:
  InfeasibleError() : InputError("infeasible: demand exceeds workers") {}
  explicit InfeasibleError(const std::string& what) : InputError(what) {}
};

struct Feature {
  std::string name;
  std::vector<std::string> values;
};

struct FeatureSchema {
  std::vector<Feature> features;

  std::size_t size() const { return features.size(); }
  std::size_t domain(std::size_t k) const { return features.at(k).values.size(); }
};

/// One value index (0-based) per feature.
struct Worker {
  std::vector<int> feature_values;
};

struct Team {
  std::string name;
  Count demand = 0;
};

enum class CostMode { kClass, kWorker };

const char* to_string(CostMode mode);

/// Class mode: u[i][v] indexed by team and value of the first feature.
/// Worker mode: u[i][x] indexed by team and worker.
struct CostModel {
  CostMode mode = CostMode::kClass;
  std::vector<std::vector<Count>> u;
};

struct TradeoffWeights {
  Count lambda0 = 1;
  std::vector<Count> lambdas;

  Count max_lambda() const;
};

/// Immutable problem description. Teams are indexed 1..t in the algorithms;
/// `teams[i - 1]` holds team i and index 0 is reserved for the dummy team.
struct Instance {
  FeatureSchema schema;
  std::vector<Worker> workers;
  std::vector<Team> teams;
  CostModel costs;
  TradeoffWeights weights;

  std::size_t num_workers() const { return workers.size(); }
  std::size_t num_teams() const { return teams.size(); }
  std::size_t num_features() const { return schema.size(); }
  Count total_demand() const;
  Count demand(std::size_t team) const { return team == 0 ? 0 : teams[team - 1].demand; }

  /// Cost of putting worker `x` in real team `team` (1-based), either mode.
  Count worker_cost(std::size_t team, std::size_t x) const;

  /// True when worker-mode costs depend only on (team, first-feature value).
  bool costs_class_constant() const;
};

/// Throws InputError / InfeasibleError on any violated invariant, including
/// magnitudes that could overflow 64-bit objective arithmetic.
void validate(const Instance& inst);

Instance parse_instance(const nlohmann::json& doc);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
nlohmann::json to_json(const Instance& inst);

/// Rewrites class-mode costs into the equivalent per-worker table.
Instance to_worker_costs(const Instance& inst);
/// Collapses class-constant worker-mode costs into a class table.
Instance to_class_costs(const Instance& inst);

/// Distinct feature-value vectors present among the workers.
struct CombinationIndex {
  std::vector<std::vector<int>> columns;  // lexicographic order
  std::vector<Count> multiplicity;
  std::vector<std::size_t> column_of;     // worker -> column
  std::vector<std::vector<std::size_t>> members;

  std::size_t size() const { return columns.size(); }
};

CombinationIndex build_combination_index(const Instance& inst);

enum class GenderBalance { kBalanced, kAlternating, kAllSame };

struct ReviewerParams {
  std::size_t papers = 0;
  std::vector<std::size_t> reviewers_per_cluster;
  GenderBalance genders = GenderBalance::kBalanced;
  Count demand_per_paper = 4;
  std::uint64_t seed = 0;
  Count max_cost = 9;  // relevance costs are uniform in [0, max_cost]
  Count lambda0 = 1;
  Count lambda_cluster = 1;
  Count lambda_gender = 1;
};

/// Synthetic reviewer/paper instance: teams are papers, feature 0 is the
/// expertise cluster, feature 1 is gender, and class costs are relevance
/// penalties per (paper, cluster).
Instance generate_reviewer_instance(const ReviewerParams& params);

std::optional<GenderBalance> parse_gender_balance(const std::string& s);

}  // namespace divmatch
