#include "divmatch/auxgraph.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace divmatch {

Count intra_weight(const std::vector<int>& a, const std::vector<int>& b, std::size_t team,
                   const TradeoffWeights& weights) {
  if (team == 0) return 0;
  Count w = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) w -= 2 * weights.lambdas[k];
  }
  return w;
}

Count inter_weight(const ColumnLayout& layout, std::size_t column, std::size_t from, std::size_t to,
                   const CountTensor& c, const TradeoffWeights& weights) {
  if (from == to) throw std::invalid_argument("inter_weight: source and target team coincide");
  const auto& v = layout.values[column];
  Count w = 0;
  if (from != 0) {
    w -= weights.lambda0 * layout.cost[from][column];
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Count x = c.at(from, k, static_cast<std::size_t>(v[k]));
      w += weights.lambdas[k] * ((x - 1) * (x - 1) - x * x);
    }
  }
  if (to != 0) {
    w += weights.lambda0 * layout.cost[to][column];
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Count x = c.at(to, k, static_cast<std::size_t>(v[k]));
      w += weights.lambdas[k] * ((x + 1) * (x + 1) - x * x);
    }
  }
  return w;
}

AuxGraph::AuxGraph(const Instance& inst, const ColumnLayout& layout, AssignmentMatrix w)
    : inst_(&inst),
      layout_(&layout),
      w_(std::move(w)),
      switches_(inst.num_teams() + 1),
      keys_(layout.size()),
      inter_base_(switches_ * keys_ * keys_),
      graph_(2 * keys_ * switches_) {
  check_assignment(inst, layout, w_);
  c_ = count_tensor(inst, layout, w_);

  related_.resize(keys_);
  for (std::size_t a = 0; a < keys_; ++a) {
    for (std::size_t b = 0; b < keys_; ++b) {
      const auto& va = layout.values[a];
      const auto& vb = layout.values[b];
      for (std::size_t k = 0; k < va.size(); ++k) {
        if (va[k] == vb[k]) {
          related_[a].push_back(b);
          break;
        }
      }
    }
  }

  out_delta_.assign(switches_ * keys_, 0);
  in_delta_.assign(switches_ * keys_, 0);
  for (std::size_t s = 0; s < switches_; ++s) {
    for (std::size_t j = 0; j < keys_; ++j) refresh_deltas(s, j);
  }

  for (std::size_t s = 0; s < switches_; ++s) {
    for (std::size_t a = 0; a < keys_; ++a) {
      for (std::size_t b = 0; b < keys_; ++b) {
        graph_.add_arc(node({s, PortSide::kIn, a}), node({s, PortSide::kOut, b}),
                       intra_weight(layout.values[a], layout.values[b], s, inst.weights));
      }
    }
  }
  for (std::size_t s = 0; s < switches_; ++s) {
    for (std::size_t j = 0; j < keys_; ++j) {
      for (std::size_t s2 = 0; s2 < switches_; ++s2) {
        if (s2 == s) continue;
        graph_.add_arc(node({s, PortSide::kOut, j}), node({s2, PortSide::kIn, j}),
                       out_delta(s, j) + in_delta(s2, j), w_.at(s, j) > 0);
      }
    }
  }
}

Port AuxGraph::port(std::size_t node) const {
  Port p;
  p.key = node % keys_;
  const std::size_t rest = node / keys_;
  p.side = static_cast<PortSide>(rest % 2);
  p.team = rest / 2;
  return p;
}

std::size_t AuxGraph::intra_arc(std::size_t team, std::size_t in_key, std::size_t out_key) const {
  return (team * keys_ + in_key) * keys_ + out_key;
}

std::size_t AuxGraph::inter_arc(std::size_t from_team, std::size_t to_team, std::size_t key) const {
  if (from_team == to_team) throw std::invalid_argument("inter arc needs two distinct teams");
  const std::size_t slot = to_team < from_team ? to_team : to_team - 1;
  return inter_base_ + (from_team * keys_ + key) * (switches_ - 1) + slot;
}

Count AuxGraph::out_delta(std::size_t team, std::size_t key) const { return out_delta_[team * keys_ + key]; }
Count AuxGraph::in_delta(std::size_t team, std::size_t key) const { return in_delta_[team * keys_ + key]; }

void AuxGraph::refresh_deltas(std::size_t team, std::size_t key) {
  Count out = 0;
  Count in = 0;
  if (team != 0) {
    const Count lambda0 = inst_->weights.lambda0;
    out = -lambda0 * layout_->cost[team][key];
    in = lambda0 * layout_->cost[team][key];
    const auto& v = layout_->values[key];
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Count x = c_.at(team, k, static_cast<std::size_t>(v[k]));
      const Count lambda = inst_->weights.lambdas[k];
      out += lambda * (1 - 2 * x);
      in += lambda * (2 * x + 1);
    }
  }
  out_delta_[team * keys_ + key] = out;
  in_delta_[team * keys_ + key] = in;
}

void AuxGraph::refresh_out(std::size_t team, std::size_t key) {
  const bool available = w_.at(team, key) > 0;
  for (std::size_t s2 = 0; s2 < switches_; ++s2) {
    if (s2 == team) continue;
    Arc& a = graph_.arc(inter_arc(team, s2, key));
    a.weight = out_delta(team, key) + in_delta(s2, key);
    a.enabled = available;
  }
}

void AuxGraph::refresh_in(std::size_t team, std::size_t key) {
  for (std::size_t s1 = 0; s1 < switches_; ++s1) {
    if (s1 == team) continue;
    graph_.arc(inter_arc(s1, team, key)).weight = out_delta(s1, key) + in_delta(team, key);
  }
}

std::vector<Move> AuxGraph::moves(const ExchangeCycle& cycle) const {
  std::vector<Move> out;
  for (std::size_t id : cycle.arcs) {
    if (kind(id) != EdgeKind::kInter) continue;
    const Arc& a = graph_.arc(id);
    const Port from = port(a.from);
    out.push_back(Move{from.team, port(a.to).team, from.key});
  }
  return out;
}

ExchangeCycle AuxGraph::cycle_from_moves(const std::vector<Move>& moves) const {
  if (moves.empty()) throw std::invalid_argument("empty move cycle");
  ExchangeCycle cycle;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move& m = moves[i];
    const Move& next = moves[(i + 1) % moves.size()];
    if (m.to != next.from) throw std::invalid_argument("moves do not form a cycle");
    cycle.arcs.push_back(inter_arc(m.from, m.to, m.key));
    cycle.arcs.push_back(intra_arc(m.to, m.key, next.key));
  }
  cycle.claimed_weight = cycle_weight(graph_, cycle.arcs);
  return cycle;
}

ExchangeCycle AuxGraph::from_detected(const std::vector<std::size_t>& arcs) const {
  ExchangeCycle cycle;
  cycle.arcs = arcs;
  cycle.claimed_weight = cycle_weight(graph_, arcs);
  return cycle;
}

void AuxGraph::move_one(const Move& m) {
  // Counters may dip below zero between moves of one walk; apply() has
  // already checked that the net result is non-negative.
  w_.at(m.from, m.key) -= 1;
  w_.at(m.to, m.key) += 1;
  const auto& v = layout_->values[m.key];
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto val = static_cast<std::size_t>(v[k]);
    c_.at(m.from, k, val) -= 1;
    c_.at(m.to, k, val) += 1;
  }

  for (std::size_t team : {m.from, m.to}) {
    if (team == 0) {
      refresh_out(0, m.key);
      continue;
    }
    for (std::size_t j : related_[m.key]) refresh_deltas(team, j);
  }
  for (std::size_t team : {m.from, m.to}) {
    if (team == 0) continue;
    for (std::size_t j : related_[m.key]) {
      refresh_out(team, j);
      refresh_in(team, j);
    }
  }
}

void AuxGraph::apply(const ExchangeCycle& cycle) {
  const auto& arcs = cycle.arcs;
  if (arcs.empty() || arcs.size() % 2 != 0) throw std::invalid_argument("exchange cycle must alternate arc kinds");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i] >= graph_.num_arcs()) throw std::invalid_argument("exchange cycle references an unknown arc");
    const Arc& a = graph_.arc(arcs[i]);
    const Arc& next = graph_.arc(arcs[(i + 1) % arcs.size()]);
    if (a.to != next.from) throw std::invalid_argument("exchange cycle is not closed");
    if (kind(arcs[i]) == kind(arcs[(i + 1) % arcs.size()])) {
      throw std::invalid_argument("exchange cycle must alternate arc kinds");
    }
    if (!a.enabled) throw std::invalid_argument("exchange cycle uses a disabled arc");
  }
  const std::vector<Move> ms = moves(cycle);
  std::map<std::pair<std::size_t, std::size_t>, Count> net;
  for (const Move& m : ms) {
    net[{m.from, m.key}] -= 1;
    net[{m.to, m.key}] += 1;
  }
  for (const auto& [cell, delta] : net) {
    if (w_.at(cell.first, cell.second) + delta < 0) {
      throw std::invalid_argument("exchange cycle moves more workers than a team holds");
    }
  }
  clear_blocks();
  for (const Move& m : ms) move_one(m);
}

void AuxGraph::block(std::size_t arc) {
  graph_.arc(arc).enabled = false;
  blocked_.push_back(arc);
}

void AuxGraph::clear_blocks() {
  for (std::size_t id : blocked_) {
    if (kind(id) == EdgeKind::kIntra) {
      graph_.arc(id).enabled = true;
    } else {
      const Port from = port(graph_.arc(id).from);
      graph_.arc(id).enabled = w_.at(from.team, from.key) > 0;
    }
  }
  blocked_.clear();
}

std::string AuxGraph::dump() const {
  std::ostringstream os;
  auto put = [&](std::size_t n) {
    const Port p = port(n);
    os << p.team << ':' << (p.side == PortSide::kIn ? "in" : "out") << ':' << p.key;
  };
  for (std::size_t id = 0; id < graph_.num_arcs(); ++id) {
    const Arc& a = graph_.arc(id);
    put(a.from);
    os << " -> ";
    put(a.to);
    os << ' ' << a.weight << ' ' << (kind(id) == EdgeKind::kIntra ? "intra" : "inter") << ' '
       << (a.enabled ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace divmatch
