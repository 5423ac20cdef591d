#include "divmatch/oracle.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "test_support.hpp"

using namespace divmatch;

namespace {

// Every worker -> team map with the right team sizes, scored by `score`.
template <typename Score>
Count brute_force_min(const Instance& inst, Score score) {
  const std::size_t n = inst.num_workers();
  const std::size_t t = inst.num_teams();
  WorkerAssignment a{std::vector<std::size_t>(n, 0)};
  Count best = std::numeric_limits<Count>::max();
  std::vector<Count> filled(t + 1, 0);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      for (std::size_t i = 1; i <= t; ++i) {
        if (filled[i] != inst.teams[i - 1].demand) return;
      }
      best = std::min(best, score(a));
      return;
    }
    for (std::size_t i = 0; i <= t; ++i) {
      if (i > 0 && filled[i] == inst.teams[i - 1].demand) continue;
      a.team_of[x] = i;
      ++filled[i];
      self(self, x + 1);
      --filled[i];
    }
  };
  rec(rec, 0);
  return best;
}

Instance relabel(const Instance& inst, std::mt19937_64& rng) {
  Instance out = inst;
  std::vector<std::size_t> team_perm(inst.num_teams());
  for (std::size_t i = 0; i < team_perm.size(); ++i) team_perm[i] = i;
  std::shuffle(team_perm.begin(), team_perm.end(), rng);
  for (std::size_t i = 0; i < team_perm.size(); ++i) {
    out.teams[i] = inst.teams[team_perm[i]];
    out.costs.u[i] = inst.costs.u[team_perm[i]];
  }
  for (std::size_t k = 0; k < inst.num_features(); ++k) {
    std::vector<int> value_perm(inst.schema.domain(k));
    for (std::size_t v = 0; v < value_perm.size(); ++v) value_perm[v] = static_cast<int>(v);
    std::shuffle(value_perm.begin(), value_perm.end(), rng);
    for (std::size_t v = 0; v < value_perm.size(); ++v) {
      out.schema.features[k].values[value_perm[v]] = inst.schema.features[k].values[v];
    }
    for (auto& w : out.workers) w.feature_values[k] = value_perm[w.feature_values[k]];
    if (k == 0 && inst.costs.mode == CostMode::kClass) {
      for (std::size_t i = 0; i < out.costs.u.size(); ++i) {
        for (std::size_t v = 0; v < value_perm.size(); ++v) {
          out.costs.u[i][value_perm[v]] = inst.costs.u[team_perm[i]][v];
        }
      }
    }
  }
  std::vector<std::size_t> worker_perm(inst.num_workers());
  for (std::size_t x = 0; x < worker_perm.size(); ++x) worker_perm[x] = x;
  std::shuffle(worker_perm.begin(), worker_perm.end(), rng);
  const Instance before = out;
  for (std::size_t x = 0; x < worker_perm.size(); ++x) {
    out.workers[x] = before.workers[worker_perm[x]];
    if (inst.costs.mode == CostMode::kWorker) {
      for (std::size_t i = 0; i < out.costs.u.size(); ++i) out.costs.u[i][x] = before.costs.u[i][worker_perm[x]];
    }
  }
  validate(out);
  return out;
}

}  // namespace

TEST(Oracle, TwoByTwo) {
  const Instance inst = fixtures::two_by_two_instance();
  const OracleResult r = enumerate_optimal(inst);
  EXPECT_EQ(r.optimum, 8);
  EXPECT_EQ(r.evaluated, 3u);
  EXPECT_EQ(r.optima, 1u);
  EXPECT_EQ(r.assignment.at(1, 0), 1);
  EXPECT_EQ(r.assignment.at(1, 1), 1);
  EXPECT_EQ(r.mode, CostMode::kClass);
}

TEST(Oracle, UniqueFeasiblePoint) {
  std::mt19937_64 rng(3);
  fixtures::RandomLimits lim;
  lim.min_teams = lim.max_teams = 1;
  Instance inst = fixtures::random_instance(rng, lim);
  inst.teams[0].demand = static_cast<Count>(inst.num_workers());
  const OracleResult r = enumerate_optimal(inst);
  EXPECT_EQ(r.evaluated, 1u);
  EXPECT_EQ(r.optimum, objective(inst, WorkerAssignment{std::vector<std::size_t>(inst.num_workers(), 1)}).objective);
}

TEST(Oracle, BudgetExceeded) {
  EXPECT_THROW(enumerate_optimal(fixtures::two_by_two_instance(), 2), OracleBudgetError);
  EXPECT_NO_THROW(enumerate_optimal(fixtures::two_by_two_instance(), 3));
}

TEST(Oracle, ZeroDiversityWeightIsMinCostMatching) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    fixtures::RandomLimits lim;
    lim.max_workers = 7;
    lim.mode = seed % 2 ? CostMode::kWorker : CostMode::kClass;
    Instance inst = fixtures::random_instance(rng, lim);
    for (auto& l : inst.weights.lambdas) l = 0;
    const Count best = brute_force_min(inst, [&](const WorkerAssignment& a) { return inst.weights.lambda0 * total_utility(inst, a); });
    EXPECT_EQ(enumerate_optimal(inst).optimum, best) << "seed " << seed;
  }
}

TEST(Oracle, MatchesWorkerLevelBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    fixtures::RandomLimits lim;
    lim.max_workers = 7;
    lim.mode = seed % 2 ? CostMode::kWorker : CostMode::kClass;
    const Instance inst = fixtures::random_instance(rng, lim);
    const Count best = brute_force_min(inst, [&](const WorkerAssignment& a) { return objective(inst, a).objective; });
    const OracleResult r = enumerate_optimal(inst);
    EXPECT_EQ(r.optimum, best) << "seed " << seed;
    const ColumnLayout layout = make_layout(inst, r.mode);
    EXPECT_EQ(objective(inst, layout, r.assignment).objective, r.optimum);
  }
}

TEST(Oracle, VisitorObjectiveAgreesWithObjectiveModule) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    fixtures::RandomLimits lim;
    lim.mode = seed % 2 ? CostMode::kWorker : CostMode::kClass;
    lim.max_workers = lim.mode == CostMode::kWorker ? 7 : 10;
    const Instance inst = fixtures::random_instance(rng, lim);
    const ColumnLayout layout = make_layout(inst, lim.mode);
    std::size_t seen = 0;
    enumerate_feasible(inst, layout, [&](const AssignmentMatrix& w, Count f) {
      ++seen;
      check_assignment(inst, layout, w);
      ASSERT_EQ(f, objective(inst, layout, w).objective);
    });
    EXPECT_GT(seen, 0u);
  }
}

TEST(Oracle, RandomFeasibleAssignmentsNeverBeatIt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const Instance inst = fixtures::random_instance(rng);
    const Count best = enumerate_optimal(inst).optimum;
    std::vector<std::size_t> order(inst.num_workers());
    for (std::size_t x = 0; x < order.size(); ++x) order[x] = x;
    for (int trial = 0; trial < 100; ++trial) {
      std::shuffle(order.begin(), order.end(), rng);
      WorkerAssignment a{std::vector<std::size_t>(inst.num_workers(), 0)};
      std::size_t pos = 0;
      for (std::size_t i = 0; i < inst.num_teams(); ++i) {
        for (Count d = 0; d < inst.teams[i].demand; ++d) a.team_of[order[pos++]] = i + 1;
      }
      EXPECT_GE(objective(inst, a).objective, best);
    }
  }
}

TEST(Oracle, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    fixtures::RandomLimits lim;
    lim.mode = seed % 2 ? CostMode::kWorker : CostMode::kClass;
    lim.max_workers = 7;
    const Instance inst = fixtures::random_instance(rng, lim);
    const Instance moved = relabel(inst, rng);
    EXPECT_EQ(enumerate_optimal(moved).optimum, enumerate_optimal(inst).optimum) << "seed " << seed;
  }
}
