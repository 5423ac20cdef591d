#include "divmatch/objective.hpp"

#include <string>

namespace divmatch {

ColumnLayout make_layout(const Instance& inst, CostMode mode) {
  ColumnLayout layout;
  layout.mode = mode;
  const std::size_t t = inst.num_teams();
  if (mode == CostMode::kClass) {
    if (!inst.costs_class_constant()) {
      throw InputError("worker costs vary within a first-feature class; class mode is not applicable");
    }
    CombinationIndex idx = build_combination_index(inst);
    layout.values = std::move(idx.columns);
    layout.multiplicity = std::move(idx.multiplicity);
    layout.members = std::move(idx.members);
  } else {
    for (std::size_t x = 0; x < inst.num_workers(); ++x) {
      layout.values.push_back(inst.workers[x].feature_values);
      layout.multiplicity.push_back(1);
      layout.members.push_back({x});
    }
  }
  layout.cost.assign(t + 1, std::vector<Count>(layout.size(), 0));
  for (std::size_t i = 1; i <= t; ++i) {
    for (std::size_t j = 0; j < layout.size(); ++j) {
      layout.cost[i][j] = inst.worker_cost(i, layout.members[j].front());
    }
  }
  return layout;
}

Count AssignmentMatrix::row_sum(std::size_t i) const {
  Count s = 0;
  for (std::size_t j = 0; j < cols_; ++j) s += at(i, j);
  return s;
}

Count AssignmentMatrix::col_sum(std::size_t j) const {
  Count s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += at(i, j);
  return s;
}

void check_assignment(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w) {
  const std::size_t t = inst.num_teams();
  if (w.rows() != t + 1 || w.cols() != layout.size()) {
    throw InputError("assignment matrix shape " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                     " does not match instance (" + std::to_string(t + 1) + "x" +
                     std::to_string(layout.size()) + ")");
  }
  for (std::size_t i = 0; i <= t; ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (w.at(i, j) < 0) throw InputError("assignment matrix has a negative entry");
    }
  }
  for (std::size_t j = 0; j < w.cols(); ++j) {
    if (w.col_sum(j) != layout.multiplicity[j]) {
      throw InputError("assignment column " + std::to_string(j) + " does not account for every worker");
    }
  }
  for (std::size_t i = 1; i <= t; ++i) {
    if (w.row_sum(i) != inst.demand(i)) {
      throw InputError("team " + std::to_string(i) + " does not receive exactly its demand");
    }
  }
}

CountTensor::CountTensor(const FeatureSchema& schema, std::size_t teams_with_dummy) : rows_(teams_with_dummy) {
  for (const auto& f : schema.features) {
    feature_base_.push_back(stride_);
    domains_.push_back(f.values.size());
    stride_ += f.values.size();
  }
  data_.assign(rows_ * stride_, 0);
}

CountTensor count_tensor(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w) {
  CountTensor c(inst.schema, w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const Count m = w.at(i, j);
      if (m == 0) continue;
      const auto& v = layout.values[j];
      for (std::size_t k = 0; k < v.size(); ++k) c.at(i, k, static_cast<std::size_t>(v[k])) += m;
    }
  }
  return c;
}

Embedding embed(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w, std::size_t k) {
  if (k >= inst.num_features()) throw InputError("feature index out of range");
  Embedding e;
  e.feature = k;
  e.m.assign(w.rows(), std::vector<Count>(inst.schema.domain(k), 0));
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      e.m[i][static_cast<std::size_t>(layout.values[j][k])] += w.at(i, j);
    }
  }
  return e;
}

Count diversity_k(const CountTensor& c, std::size_t k) {
  if (k >= c.num_features()) throw InputError("feature index out of range");
  Count d = 0;
  for (std::size_t i = 1; i < c.rows(); ++i) {
    for (std::size_t v = 0; v < c.domain(k); ++v) d += c.at(i, k, v) * c.at(i, k, v);
  }
  return d;
}

Count total_utility(const ColumnLayout& layout, const AssignmentMatrix& w) {
  if (w.cols() != layout.size() || w.rows() != layout.cost.size()) {
    throw InputError("assignment does not match the cost layout");
  }
  Count tu = 0;
  for (std::size_t i = 1; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) tu += layout.cost[i][j] * w.at(i, j);
  }
  return tu;
}

Count total_utility(const Instance& inst, const WorkerAssignment& a) {
  if (a.team_of.size() != inst.num_workers()) throw InputError("worker assignment has the wrong length");
  Count tu = 0;
  for (std::size_t x = 0; x < a.team_of.size(); ++x) tu += inst.worker_cost(a.team_of[x], x);
  return tu;
}

namespace {

ObjectiveBreakdown compose(const Instance& inst, Count tu, const CountTensor& c) {
  ObjectiveBreakdown out;
  out.total_utility = tu;
  out.objective = inst.weights.lambda0 * tu;
  for (std::size_t k = 0; k < inst.num_features(); ++k) {
    out.diversity.push_back(diversity_k(c, k));
    out.objective += inst.weights.lambdas[k] * out.diversity.back();
  }
  return out;
}

}  // namespace

ObjectiveBreakdown objective(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w) {
  check_assignment(inst, layout, w);
  return compose(inst, total_utility(layout, w), count_tensor(inst, layout, w));
}

ObjectiveBreakdown objective(const Instance& inst, const WorkerAssignment& a) {
  if (a.team_of.size() != inst.num_workers()) throw InputError("worker assignment has the wrong length");
  CountTensor c(inst.schema, inst.num_teams() + 1);
  std::vector<Count> size(inst.num_teams() + 1, 0);
  for (std::size_t x = 0; x < a.team_of.size(); ++x) {
    const std::size_t i = a.team_of[x];
    if (i > inst.num_teams()) throw InputError("worker assigned to an unknown team");
    size[i] += 1;
    const auto& v = inst.workers[x].feature_values;
    for (std::size_t k = 0; k < v.size(); ++k) c.at(i, k, static_cast<std::size_t>(v[k])) += 1;
  }
  for (std::size_t i = 1; i <= inst.num_teams(); ++i) {
    if (size[i] != inst.demand(i)) {
      throw InputError("team " + std::to_string(i) + " does not receive exactly its demand");
    }
  }
  return compose(inst, total_utility(inst, a), c);
}

Count exchange_gain(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& before,
                    const AssignmentMatrix& after) {
  if (before.rows() != after.rows() || before.cols() != after.cols()) {
    throw InputError("exchange_gain: mismatched matrix shapes");
  }
  return objective(inst, layout, after).objective - objective(inst, layout, before).objective;
}

WorkerAssignment to_worker_assignment(const Instance& inst, const ColumnLayout& layout,
                                      const AssignmentMatrix& w) {
  check_assignment(inst, layout, w);
  WorkerAssignment a;
  a.team_of.assign(inst.num_workers(), 0);
  for (std::size_t j = 0; j < w.cols(); ++j) {
    std::size_t next = 0;
    for (std::size_t i = 1; i < w.rows(); ++i) {
      for (Count r = 0; r < w.at(i, j); ++r) a.team_of[layout.members[j][next++]] = i;
    }
  }
  return a;
}

AssignmentMatrix to_matrix(const Instance& inst, const ColumnLayout& layout, const WorkerAssignment& a) {
  if (a.team_of.size() != inst.num_workers()) throw InputError("worker assignment has the wrong length");
  AssignmentMatrix w(inst.num_teams() + 1, layout.size());
  for (std::size_t j = 0; j < layout.size(); ++j) {
    for (std::size_t x : layout.members[j]) {
      if (a.team_of[x] > inst.num_teams()) throw InputError("worker assigned to an unknown team");
      w.at(a.team_of[x], j) += 1;
    }
  }
  check_assignment(inst, layout, w);
  return w;
}

}  // namespace divmatch
