#include "divmatch/oracle.hpp"

#include <string>
#include <vector>

namespace divmatch {

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst, const ColumnLayout& layout, const FeasibleVisitor& visit, std::size_t budget)
      : inst_(inst),
        layout_(layout),
        visit_(visit),
        budget_(budget),
        t_(inst.num_teams()),
        k_(layout.size()),
        w_(t_ + 1, k_),
        left_(layout.multiplicity) {}

  std::size_t run() {
    if (t_ == 0) return 0;
    start_team(1, 0);
    return leaves_;
  }

 private:
  void start_team(std::size_t i, Count partial) {
    if (i > t_) {
      leaf(partial);
      return;
    }
    fill(i, 0, inst_.demand(i), partial);
  }

  void fill(std::size_t i, std::size_t j, Count need, Count partial) {
    if (++nodes_ > 64 * budget_) over_budget();
    if (need == 0) {
      start_team(i + 1, partial + team_value(i));
      return;
    }
    if (j == k_ || suffix_capacity(j) < need) return;
    const Count most = std::min(need, left_[j]);
    for (Count a = 0; a <= most; ++a) {
      w_.at(i, j) = a;
      left_[j] -= a;
      fill(i, j + 1, need - a, partial);
      left_[j] += a;
    }
    w_.at(i, j) = 0;
  }

  Count suffix_capacity(std::size_t j) const {
    Count s = 0;
    for (std::size_t x = j; x < k_; ++x) s += left_[x];
    return s;
  }

  // lambda0 * cost + sum_k lambda_k * sum_v count^2 for one real team row.
  Count team_value(std::size_t i) const {
    Count value = 0;
    for (std::size_t j = 0; j < k_; ++j) value += inst_.weights.lambda0 * layout_.cost[i][j] * w_.at(i, j);
    for (std::size_t k = 0; k < inst_.num_features(); ++k) {
      std::vector<Count> hist(inst_.schema.domain(k), 0);
      for (std::size_t j = 0; j < k_; ++j) hist[static_cast<std::size_t>(layout_.values[j][k])] += w_.at(i, j);
      Count sq = 0;
      for (Count h : hist) sq += h * h;
      value += inst_.weights.lambdas[k] * sq;
    }
    return value;
  }

  void leaf(Count value) {
    if (++leaves_ > budget_) over_budget();
    for (std::size_t j = 0; j < k_; ++j) w_.at(0, j) = left_[j];
    visit_(w_, value);
    for (std::size_t j = 0; j < k_; ++j) w_.at(0, j) = 0;
  }

  [[noreturn]] void over_budget() const {
    throw OracleBudgetError("oracle budget exceeded: more than " + std::to_string(budget_) +
                            " assignments to enumerate");
  }

  const Instance& inst_;
  const ColumnLayout& layout_;
  const FeasibleVisitor& visit_;
  std::size_t budget_;
  std::size_t t_;
  std::size_t k_;
  AssignmentMatrix w_;
  std::vector<Count> left_;
  std::size_t leaves_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace

std::size_t enumerate_feasible(const Instance& inst, const ColumnLayout& layout, const FeasibleVisitor& visit,
                               std::size_t budget) {
  return Enumerator(inst, layout, visit, budget).run();
}

OracleResult enumerate_optimal(const Instance& inst, std::size_t budget) {
  OracleResult result;
  result.mode = inst.costs_class_constant() ? CostMode::kClass : CostMode::kWorker;
  const ColumnLayout layout = make_layout(inst, result.mode);
  bool found = false;
  result.evaluated = enumerate_feasible(
      inst, layout,
      [&](const AssignmentMatrix& w, Count value) {
        if (!found || value < result.optimum) {
          found = true;
          result.optimum = value;
          result.assignment = w;
          result.optima = 1;
        } else if (value == result.optimum) {
          ++result.optima;
        }
      },
      budget);
  return result;
}

}  // namespace divmatch
