#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divmatch/auxgraph.hpp"
#include "divmatch/negcycle.hpp"
#include "divmatch/objective.hpp"

namespace divmatch {

enum class LogLevel { kQuiet, kIter, kDebug };

std::optional<LogLevel> parse_log_level(const std::string& s);

struct SolverConfig {
  Detector detector = Detector::kGoldbergRadzik;
  std::optional<std::size_t> max_iterations;  // >= 1 when set
  CostMode mode = CostMode::kClass;
  LogLevel log_level = LogLevel::kQuiet;
  std::ostream* log = nullptr;  // iteration lines go here when set
  std::size_t rebuild_every = 64;
};

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t cycle_length = 0;  // arcs in the committed walk
  Count claimed = 0;             // arc-weight sum at detection time
  Count exact = 0;               // true objective change
  Count objective = 0;           // objective after the commit
};

/// "iter=<n> cycle_len=<l> claimed=<w> exact=<g> objective=<f>"
std::string format_record(const IterationRecord& r);

enum class Termination {
  kOptimal,       // the detector certified that no negative cycle remains
  kIterationCap,  // max_iterations commits were made first
  kStalled,       // negative cycles remained but none yielded an improving exchange
};

const char* to_string(Termination t);

struct SolveReport {
  ColumnLayout layout;
  AssignmentMatrix assignment;
  WorkerAssignment workers;
  ObjectiveBreakdown breakdown;
  Count initial_objective = 0;
  Count iteration_bound = 0;
  std::size_t iterations = 0;
  std::vector<IterationRecord> log;
  Termination termination = Termination::kOptimal;
  std::vector<std::string> warnings;
};

/// Greedy fill: the first column with unassigned workers goes into the first
/// team short of its demand; leftovers stay with the dummy team.
AssignmentMatrix initial_feasible(const Instance& inst, const ColumnLayout& layout);

/// lambda_max * |F| * n^2 + lambda0 * U, with U the utility of the initial
/// feasible assignment.
Count iteration_bound(const Instance& inst, const ColumnLayout& layout);
Count iteration_bound(const Instance& inst);

/// Splits a cyclic move sequence at repeated teams into cycles that visit
/// every team at most once.
std::vector<std::vector<Move>> split_at_repeated_teams(const std::vector<Move>& moves);

/// Applies moves to a copy of `w`; nullopt if any entry ends up negative.
std::optional<AssignmentMatrix> simulate(const AssignmentMatrix& w, const std::vector<Move>& moves);

/// Negative cycle cancellation from the greedy start, in cfg.mode.
SolveReport solve(const Instance& inst, const SolverConfig& cfg = {});

/// Same loop on per-worker ports.
SolveReport solve_general_weights(const Instance& inst, SolverConfig cfg = {});

}  // namespace divmatch
