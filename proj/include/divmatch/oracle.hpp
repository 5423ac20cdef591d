#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "divmatch/objective.hpp"

namespace divmatch {

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleBudget = 10'000'000;

struct OracleResult {
  CostMode mode = CostMode::kClass;
  Count optimum = 0;
  AssignmentMatrix assignment;     // first optimum in enumeration order
  std::size_t optima = 0;          // matrices attaining the optimum
  std::size_t evaluated = 0;       // feasible matrices visited
};

using FeasibleVisitor = std::function<void(const AssignmentMatrix& w, Count objective)>;

/// Visits every assignment matrix over `layout` with the required row and
/// column sums. Throws OracleBudgetError once more than `budget` matrices
/// have been produced.
std::size_t enumerate_feasible(const Instance& inst, const ColumnLayout& layout, const FeasibleVisitor& visit,
                               std::size_t budget = kDefaultOracleBudget);

/// Exhaustive minimum. Class-constant costs are enumerated as count matrices
/// over feature combinations; otherwise every worker is its own column.
OracleResult enumerate_optimal(const Instance& inst, std::size_t budget = kDefaultOracleBudget);

}  // namespace divmatch
