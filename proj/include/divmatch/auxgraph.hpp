#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "divmatch/digraph.hpp"
#include "divmatch/negcycle.hpp"
#include "divmatch/objective.hpp"

namespace divmatch {

enum class PortSide { kIn = 0, kOut = 1 };

/// A port of team `team`'s switch. `key` is a column of the layout: a
/// feature combination in class mode, a worker in worker mode.
struct Port {
  std::size_t team = 0;
  PortSide side = PortSide::kIn;
  std::size_t key = 0;

  bool operator==(const Port&) const = default;
};

enum class EdgeKind { kIntra, kInter };

/// One worker of column `key` leaves team `from` and joins team `to`.
struct Move {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t key = 0;

  bool operator==(const Move&) const = default;
};

/// Closed walk in the auxiliary graph, alternating inter and intra arcs.
struct ExchangeCycle {
  std::vector<std::size_t> arcs;
  Count claimed_weight = 0;
};

/// Weight of the intra-switch arc from input `a` to output `b`: -2*lambda_k
/// for every feature on which the two combinations agree, 0 in the dummy switch.
Count intra_weight(const std::vector<int>& a, const std::vector<int>& b, std::size_t team,
                   const TradeoffWeights& weights);

/// Objective change of moving one worker of `column` from team `from` to
/// team `to` under the current counts. Dummy-team terms vanish.
Count inter_weight(const ColumnLayout& layout, std::size_t column, std::size_t from, std::size_t to,
                   const CountTensor& c, const TradeoffWeights& weights);

/// The switch graph over the current assignment. It owns a copy of the
/// assignment and its count tensor and keeps arc weights in sync with them.
class AuxGraph {
 public:
  AuxGraph(const Instance& inst, const ColumnLayout& layout, AssignmentMatrix w);

  const Digraph& digraph() const { return graph_; }
  const AssignmentMatrix& assignment() const { return w_; }
  const CountTensor& counts() const { return c_; }

  std::size_t num_switches() const { return switches_; }
  std::size_t num_keys() const { return keys_; }

  std::size_t node(const Port& p) const {
    return (p.team * 2 + static_cast<std::size_t>(p.side)) * keys_ + p.key;
  }
  Port port(std::size_t node) const;
  EdgeKind kind(std::size_t arc) const { return arc < inter_base_ ? EdgeKind::kIntra : EdgeKind::kInter; }
  std::size_t intra_arc(std::size_t team, std::size_t in_key, std::size_t out_key) const;
  std::size_t inter_arc(std::size_t from_team, std::size_t to_team, std::size_t key) const;

  /// Moves encoded by the inter arcs of a closed walk, in walk order.
  std::vector<Move> moves(const ExchangeCycle& cycle) const;
  /// Builds the closed walk for a cyclic move sequence (move i must end
  /// where move i+1 starts); the claimed weight uses current arc weights.
  ExchangeCycle cycle_from_moves(const std::vector<Move>& moves) const;
  ExchangeCycle from_detected(const std::vector<std::size_t>& arcs) const;

  /// Performs the exchange and re-weights the arcs whose counters changed.
  /// Throws std::invalid_argument for a malformed or disabled walk, or one
  /// whose net effect would leave a team short of a column.
  void apply(const ExchangeCycle& cycle);

  /// Temporarily removes an arc from detection; cleared by clear_blocks().
  void block(std::size_t arc);
  void clear_blocks();
  bool has_blocks() const { return !blocked_.empty(); }

  /// "team:side:key -> team:side:key weight kind enabled", one arc per line.
  std::string dump() const;

  bool operator==(const AuxGraph& other) const {
    return graph_ == other.graph_ && w_ == other.w_ && c_ == other.c_;
  }

 private:
  void move_one(const Move& m);
  void refresh_deltas(std::size_t team, std::size_t key);
  void refresh_out(std::size_t team, std::size_t key);
  void refresh_in(std::size_t team, std::size_t key);
  Count out_delta(std::size_t team, std::size_t key) const;
  Count in_delta(std::size_t team, std::size_t key) const;

  const Instance* inst_;
  const ColumnLayout* layout_;
  AssignmentMatrix w_;
  CountTensor c_;
  std::size_t switches_;
  std::size_t keys_;
  std::size_t inter_base_;
  Digraph graph_;
  std::vector<Count> out_delta_;  // [team * keys + key]
  std::vector<Count> in_delta_;
  std::vector<std::vector<std::size_t>> related_;  // columns sharing a feature value
  std::vector<std::size_t> blocked_;
};

}  // namespace divmatch
