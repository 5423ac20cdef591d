#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "divmatch/instance.hpp"

namespace divmatch {

struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  Count weight = 0;
  bool enabled = true;

  bool operator==(const Arc&) const = default;
};

/// Directed multigraph with integer arc weights. Arcs keep their insertion
/// ids; adjacency lists are in id order so scans are deterministic.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t nodes) : out_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, Count weight, bool enabled = true);

  std::size_t num_nodes() const { return out_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  const Arc& arc(std::size_t id) const { return arcs_[id]; }
  Arc& arc(std::size_t id) { return arcs_[id]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<std::uint32_t>& out_arcs(std::size_t node) const { return out_[node]; }
  std::size_t num_enabled() const;

  bool operator==(const Digraph& other) const { return arcs_ == other.arcs_; }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
};

}  // namespace divmatch
