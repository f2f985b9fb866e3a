#include "nwb/topology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace nwb {

TopologySnapshot::TopologySnapshot(std::vector<Position> positions, double radio_range)
    : positions_(std::move(positions)), radio_range_(radio_range), adjacency_(positions_.size()) {
  const auto n = static_cast<NodeId>(positions_.size());
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (distance(positions_[a], positions_[b]) <= radio_range_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
      }
    }
  }
  // Pairs are visited in (a, b) order so every list is already sorted.
}

const Position& TopologySnapshot::position(NodeId node) const {
  if (!contains(node)) throw std::out_of_range("unknown node " + std::to_string(node));
  return positions_[node];
}

std::span<const NodeId> TopologySnapshot::neighbors(NodeId node) const {
  if (!contains(node)) throw std::out_of_range("unknown node " + std::to_string(node));
  return adjacency_[node];
}

bool TopologySnapshot::adjacent(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

TopologySnapshot place_nodes(const Scenario& scenario, const RngStream& placement) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto gen = placement.sub({attempt});
    std::vector<Position> positions(scenario.node_count);
    for (auto& p : positions) {
      p.x = gen.uniform(0.0, scenario.area_width);
      p.y = gen.uniform(0.0, scenario.area_height);
    }
    TopologySnapshot topo(std::move(positions), scenario.radio_range);
    if (!scenario.require_connected || is_connected(topo)) return topo;
  }
}

namespace {

// Breadth-first search to depth `max_depth`; returns per-node depth or -1.
std::vector<int> bfs_depths(const TopologySnapshot& topo, NodeId source, unsigned max_depth) {
  std::vector<int> depth(topo.size(), -1);
  std::deque<NodeId> queue{source};
  depth[source] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (static_cast<unsigned>(depth[u]) == max_depth) continue;
    for (NodeId v : topo.neighbors(u)) {
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return depth;
}

}  // namespace

std::vector<NodeId> k_hop_neighbors(const TopologySnapshot& topo, NodeId node, unsigned k) {
  if (!topo.contains(node)) throw std::out_of_range("unknown node " + std::to_string(node));
  if (k == 0) throw std::invalid_argument("k_hop_neighbors: k must be >= 1");
  auto depth = bfs_depths(topo, node, k);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < depth.size(); ++v) {
    if (depth[v] > 0) out.push_back(v);
  }
  return out;
}

std::vector<NodeId> component_of(const TopologySnapshot& topo, NodeId node) {
  if (!topo.contains(node)) throw std::out_of_range("unknown node " + std::to_string(node));
  auto depth = bfs_depths(topo, node, static_cast<unsigned>(topo.size()));
  std::vector<NodeId> out;
  for (NodeId v = 0; v < depth.size(); ++v) {
    if (depth[v] >= 0) out.push_back(v);
  }
  return out;
}

bool is_connected(const TopologySnapshot& topo) {
  if (topo.size() == 0) throw std::invalid_argument("is_connected: empty topology");
  return component_of(topo, 0).size() == topo.size();
}

}  // namespace nwb
