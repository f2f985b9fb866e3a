#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nwb/rng.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// Node positions plus the unit-disk graph they induce. Nodes are
/// identified by their index; two distinct nodes are adjacent iff their
/// distance is <= radio range (ties connect).
class TopologySnapshot {
 public:
  TopologySnapshot(std::vector<Position> positions, double radio_range);

  std::size_t size() const { return positions_.size(); }
  double radio_range() const { return radio_range_; }

  const std::vector<Position>& positions() const { return positions_; }
  const Position& position(NodeId node) const;
  /// Sorted ascending.
  std::span<const NodeId> neighbors(NodeId node) const;
  bool adjacent(NodeId a, NodeId b) const;
  bool contains(NodeId node) const { return node < positions_.size(); }

 private:
  std::vector<Position> positions_;
  double radio_range_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Uniform i.i.d. placement over the scenario area. With
/// `scenario.require_connected`, placements are redrawn until connected.
TopologySnapshot place_nodes(const Scenario& scenario, const RngStream& placement);

/// Nodes at graph distance 1..k from `node`, sorted. Throws
/// std::out_of_range for an unknown node and std::invalid_argument for k == 0.
std::vector<NodeId> k_hop_neighbors(const TopologySnapshot& topo, NodeId node, unsigned k);

/// Nodes in the connected component of `node` (including it), sorted.
std::vector<NodeId> component_of(const TopologySnapshot& topo, NodeId node);

/// Throws std::invalid_argument on an empty topology.
bool is_connected(const TopologySnapshot& topo);

}  // namespace nwb
