#include "divmatch/solver.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace divmatch {

std::optional<LogLevel> parse_log_level(const std::string& s) {
  if (s == "quiet") return LogLevel::kQuiet;
  if (s == "iter") return LogLevel::kIter;
  if (s == "debug") return LogLevel::kDebug;
  return std::nullopt;
}

std::string format_record(const IterationRecord& r) {
  std::ostringstream os;
  os << "iter=" << r.iteration << " cycle_len=" << r.cycle_length << " claimed=" << r.claimed
     << " exact=" << r.exact << " objective=" << r.objective;
  return os.str();
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kOptimal:
      return "optimal";
    case Termination::kIterationCap:
      return "iteration-cap";
    case Termination::kStalled:
      return "stalled";
  }
  return "unknown";
}

AssignmentMatrix initial_feasible(const Instance& inst, const ColumnLayout& layout) {
  if (inst.total_demand() > static_cast<Count>(inst.num_workers())) throw InfeasibleError();
  const std::size_t t = inst.num_teams();
  AssignmentMatrix w(t + 1, layout.size());
  std::vector<Count> left = layout.multiplicity;
  std::size_t i = 1;
  std::size_t j = 0;
  Count need = t >= 1 ? inst.demand(1) : 0;
  while (i <= t && j < layout.size()) {
    if (need == 0) {
      if (++i <= t) need = inst.demand(i);
      continue;
    }
    if (left[j] == 0) {
      ++j;
      continue;
    }
    const Count take = std::min(need, left[j]);
    w.at(i, j) += take;
    left[j] -= take;
    need -= take;
  }
  for (std::size_t col = 0; col < layout.size(); ++col) w.at(0, col) = left[col];
  check_assignment(inst, layout, w);
  return w;
}

Count iteration_bound(const Instance& inst, const ColumnLayout& layout) {
  const Count n = static_cast<Count>(inst.num_workers());
  const Count u = total_utility(layout, initial_feasible(inst, layout));
  return inst.weights.max_lambda() * static_cast<Count>(inst.num_features()) * n * n + inst.weights.lambda0 * u;
}

Count iteration_bound(const Instance& inst) { return iteration_bound(inst, make_layout(inst, inst.costs.mode)); }

std::vector<std::vector<Move>> split_at_repeated_teams(const std::vector<Move>& moves) {
  std::vector<std::vector<Move>> cycles;
  if (moves.empty()) return cycles;
  // Walk the cycle keeping the open path; closing on a team already on the
  // path peels off that loop.
  std::vector<Move> path;
  std::vector<std::size_t> teams{moves.front().from};
  for (const Move& m : moves) {
    path.push_back(m);
    auto hit = std::find(teams.begin(), teams.end(), m.to);
    if (hit == teams.end()) {
      teams.push_back(m.to);
      continue;
    }
    const auto start = static_cast<std::size_t>(hit - teams.begin());
    cycles.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(start), path.end());
    path.resize(start);
    teams.resize(start + 1);
  }
  if (!path.empty()) throw std::invalid_argument("moves do not form a closed walk");
  return cycles;
}

std::optional<AssignmentMatrix> simulate(const AssignmentMatrix& w, const std::vector<Move>& moves) {
  AssignmentMatrix out = w;
  for (const Move& m : moves) {
    out.at(m.from, m.key) -= 1;
    out.at(m.to, m.key) += 1;
  }
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      if (out.at(i, j) < 0) return std::nullopt;
    }
  }
  return out;
}

namespace {

struct Candidate {
  std::vector<Move> moves;
  Count exact = 0;
};

std::optional<Candidate> evaluate(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w,
                                  Count current, std::vector<Move> moves) {
  auto after = simulate(w, moves);
  if (!after) return std::nullopt;
  const Count exact = objective(inst, layout, *after).objective - current;
  return Candidate{std::move(moves), exact};
}

}  // namespace

SolveReport solve(const Instance& inst, const SolverConfig& cfg) {
  if (cfg.max_iterations && *cfg.max_iterations < 1) throw InputError("max_iterations must be at least 1");
  if (cfg.rebuild_every < 1) throw InputError("rebuild_every must be at least 1");

  SolveReport report;
  report.layout = make_layout(inst, cfg.mode);
  const ColumnLayout& layout = report.layout;
  AssignmentMatrix start = initial_feasible(inst, layout);
  report.initial_objective = objective(inst, layout, start).objective;
  report.iteration_bound = inst.weights.max_lambda() * static_cast<Count>(inst.num_features()) *
                               static_cast<Count>(inst.num_workers() * inst.num_workers()) +
                           inst.weights.lambda0 * total_utility(layout, start);

  const bool log_iters = cfg.log && cfg.log_level != LogLevel::kQuiet;
  const bool log_debug = cfg.log && cfg.log_level == LogLevel::kDebug;
  auto warn = [&](const std::string& msg) {
    report.warnings.push_back(msg);
    if (log_iters) *cfg.log << "warning: " << msg << '\n';
  };

  AuxGraph graph(inst, layout, std::move(start));
  Count current = report.initial_objective;
  std::size_t since_rebuild = 0;

  while (true) {
    if (log_debug) *cfg.log << "graph before iteration " << report.iterations + 1 << ":\n" << graph.dump();
    auto detected = detect_negative_cycle(graph.digraph(), cfg.detector);
    if (!detected) {
      report.termination = graph.has_blocks() ? Termination::kStalled : Termination::kOptimal;
      break;
    }
    if (cfg.max_iterations && report.iterations >= *cfg.max_iterations) {
      report.termination = Termination::kIterationCap;
      break;
    }

    const ExchangeCycle cycle = graph.from_detected(detected->arcs);
    const std::vector<Move> moves = graph.moves(cycle);
    std::optional<Candidate> best = evaluate(inst, layout, graph.assignment(), current, moves);
    ExchangeCycle chosen = cycle;
    if (!best || best->exact >= 0) {
      // The arc weights are exact only when every team is visited once;
      // fall back to the single-visit pieces of the walk.
      best.reset();
      for (auto& piece : split_at_repeated_teams(moves)) {
        auto cand = evaluate(inst, layout, graph.assignment(), current, std::move(piece));
        if (cand && cand->exact < 0 && (!best || cand->exact < best->exact)) best = std::move(cand);
      }
      if (best) chosen = graph.cycle_from_moves(best->moves);
    }

    if (!best) {
      const auto worst = std::min_element(cycle.arcs.begin(), cycle.arcs.end(), [&](std::size_t a, std::size_t b) {
        return graph.digraph().arc(a).weight < graph.digraph().arc(b).weight;
      });
      std::ostringstream msg;
      msg << "negative cycle (claimed " << cycle.claimed_weight
          << ") has no improving sub-exchange; excluding arc " << *worst << " and re-detecting";
      warn(msg.str());
      graph.block(*worst);
      continue;
    }
    if (best->exact > -1) throw std::logic_error("committed exchange does not decrease the objective");

    graph.apply(chosen);
    current += best->exact;
    ++report.iterations;
    const IterationRecord rec{report.iterations, chosen.arcs.size(), chosen.claimed_weight, best->exact, current};
    report.log.push_back(rec);
    if (log_iters) *cfg.log << format_record(rec) << '\n';

    if (++since_rebuild >= cfg.rebuild_every) {
      AssignmentMatrix w = graph.assignment();
      graph = AuxGraph(inst, layout, std::move(w));
      since_rebuild = 0;
    }
  }

  report.assignment = graph.assignment();
  report.breakdown = objective(inst, layout, report.assignment);
  if (report.breakdown.objective != current) throw std::logic_error("objective drifted from committed gains");
  report.workers = to_worker_assignment(inst, layout, report.assignment);
  return report;
}

SolveReport solve_general_weights(const Instance& inst, SolverConfig cfg) {
  cfg.mode = CostMode::kWorker;
  return solve(inst, cfg);
}

}  // namespace divmatch
