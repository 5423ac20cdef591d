#pragma once

#include <cstddef>
#include <vector>

#include "divmatch/instance.hpp"

namespace divmatch {

/// The columns of the matrix view. In class mode a column is one distinct
/// feature combination and its workers are interchangeable; in worker mode
/// every worker is its own column of multiplicity one.
struct ColumnLayout {
  CostMode mode = CostMode::kClass;
  std::vector<std::vector<int>> values;          // feature vector per column
  std::vector<Count> multiplicity;
  std::vector<std::vector<std::size_t>> members;  // worker indices per column
  std::vector<std::vector<Count>> cost;           // [team 0..t][column], row 0 is zero

  std::size_t size() const { return values.size(); }
  std::size_t num_features() const { return values.empty() ? 0 : values.front().size(); }
};

/// Class-mode layout needs class costs (worker-mode tables that are
/// class-constant are accepted); worker-mode layout accepts either.
ColumnLayout make_layout(const Instance& inst, CostMode mode);

/// w[i][j]: workers of column j held by team i, row 0 being the dummy team.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  AssignmentMatrix(std::size_t teams_with_dummy, std::size_t columns)
      : rows_(teams_with_dummy), cols_(columns), data_(teams_with_dummy * columns, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Count& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Count at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Count row_sum(std::size_t i) const;
  Count col_sum(std::size_t j) const;

  bool operator==(const AssignmentMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Count> data_;
};

/// Throws InputError unless row and column sums match demands and multiplicities.
void check_assignment(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w);

/// c[i][k][v]: workers in team i with value v of feature k. Rows cover the
/// dummy team too; diversity only ever reads rows 1..t.
class CountTensor {
 public:
  CountTensor() = default;
  CountTensor(const FeatureSchema& schema, std::size_t teams_with_dummy);

  Count& at(std::size_t i, std::size_t k, std::size_t v) { return data_[offset(i, k, v)]; }
  Count at(std::size_t i, std::size_t k, std::size_t v) const { return data_[offset(i, k, v)]; }
  std::size_t rows() const { return rows_; }
  std::size_t num_features() const { return domains_.size(); }
  std::size_t domain(std::size_t k) const { return domains_[k]; }

  bool operator==(const CountTensor&) const = default;

 private:
  std::size_t offset(std::size_t i, std::size_t k, std::size_t v) const {
    return i * stride_ + feature_base_[k] + v;
  }

  std::size_t rows_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::size_t> domains_;
  std::vector<std::size_t> feature_base_;
  std::vector<Count> data_;
};

CountTensor count_tensor(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w);

/// M_k: the assignment matrix with columns merged by their value of feature k.
struct Embedding {
  std::size_t feature = 0;
  std::vector<std::vector<Count>> m;  // [team 0..t][value]
};

Embedding embed(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w, std::size_t k);

struct ObjectiveBreakdown {
  Count total_utility = 0;
  std::vector<Count> diversity;  // D_k per feature
  Count objective = 0;

  bool operator==(const ObjectiveBreakdown&) const = default;
};

/// Worker -> team map (0 = unassigned).
struct WorkerAssignment {
  std::vector<std::size_t> team_of;
};

Count diversity_k(const CountTensor& c, std::size_t k);
Count total_utility(const ColumnLayout& layout, const AssignmentMatrix& w);
Count total_utility(const Instance& inst, const WorkerAssignment& a);

ObjectiveBreakdown objective(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& w);
ObjectiveBreakdown objective(const Instance& inst, const WorkerAssignment& a);

/// objective(after) - objective(before); negative means the exchange helps.
Count exchange_gain(const Instance& inst, const ColumnLayout& layout, const AssignmentMatrix& before,
                    const AssignmentMatrix& after);

/// Expands a matrix into a concrete worker map (members of a column are
/// handed out to teams in index order).
WorkerAssignment to_worker_assignment(const Instance& inst, const ColumnLayout& layout,
                                      const AssignmentMatrix& w);
AssignmentMatrix to_matrix(const Instance& inst, const ColumnLayout& layout, const WorkerAssignment& a);

}  // namespace divmatch
