// A small instance where cycle cancellation stops short of the optimum.
// No negative cycle remains and no single-visit exchange improves, yet
// swapping two workers for two others between the same pair of teams does.

#include <gtest/gtest.h>

#include <functional>

#include "divmatch/oracle.hpp"
#include "divmatch/solver.hpp"

using namespace divmatch;

namespace {

Instance local_optimum_instance() { return load_instance(std::string(DIVMATCH_GOLDEN_DIR) + "/local_optimum.json"); }

Count best_single_visit_gain(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w) {
  const Count f = objective(inst, layout, w).objective;
  const std::size_t switches = inst.num_teams() + 1;
  Count best = 0;
  std::vector<std::size_t> teams;
  std::vector<Move> moves;
  std::function<void()> rec = [&]() {
    if (teams.size() >= 2) {
      for (std::size_t k = 0; k < layout.size(); ++k) {
        moves.push_back(Move{teams.back(), teams.front(), k});
        if (const auto after = simulate(w, moves)) best = std::min(best, objective(inst, layout, *after).objective - f);
        moves.pop_back();
      }
    }
    if (teams.size() == switches) return;
    for (std::size_t s = 0; s < switches; ++s) {
      if (std::find(teams.begin(), teams.end(), s) != teams.end()) continue;
      if (teams.empty()) {
        teams.push_back(s);
        rec();
        teams.pop_back();
        continue;
      }
      for (std::size_t k = 0; k < layout.size(); ++k) {
        moves.push_back(Move{teams.back(), s, k});
        teams.push_back(s);
        rec();
        teams.pop_back();
        moves.pop_back();
      }
    }
  };
  rec();
  return best;
}

}  // namespace

TEST(LocalOptimum, NoNegativeCycleButNotOptimal) {
  const Instance inst = local_optimum_instance();
  SolverConfig cfg;
  cfg.detector = Detector::kBellmanFord;
  const SolveReport r = solve(inst, cfg);
  const OracleResult o = enumerate_optimal(inst);
  EXPECT_EQ(r.termination, Termination::kOptimal);
  EXPECT_GT(r.breakdown.objective, o.optimum);
  EXPECT_EQ(best_single_visit_gain(inst, r.layout, r.assignment), 0);

  // Two workers out and two in between one pair of teams.
  const AssignmentMatrix& w = r.assignment;
  Count best_swap = 0;
  for (std::size_t a = 1; a <= inst.num_teams(); ++a) {
    for (std::size_t b = 0; b <= inst.num_teams(); ++b) {
      if (a == b) continue;
      for (std::size_t j1 = 0; j1 < w.cols(); ++j1) {
        for (std::size_t j2 = 0; j2 < w.cols(); ++j2) {
          for (std::size_t k1 = 0; k1 < w.cols(); ++k1) {
            for (std::size_t k2 = 0; k2 < w.cols(); ++k2) {
              const auto after = simulate(w, {Move{a, b, j1}, Move{a, b, j2}, Move{b, a, k1}, Move{b, a, k2}});
              if (!after) continue;
              best_swap = std::min(best_swap, exchange_gain(inst, r.layout, w, *after));
            }
          }
        }
      }
    }
  }
  EXPECT_LT(best_swap, 0);
}
