#pragma once

#include <map>
#include <vector>

#include "nwb/rng.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// Closed-form node motion. Static nodes never move; random-waypoint nodes
/// travel straight to uniformly drawn waypoints at a speed drawn uniformly
/// from [0.5, 1.5] x mean_speed, pausing `pause_time` at each.
class MobilityModel {
 public:
  struct Leg {
    SimTime depart;
    SimTime arrive;
    SimTime resume;  // arrive + pause
    Position from;
    Position to;
    double speed;
  };

  MobilityModel(const Scenario& scenario, std::vector<Position> initial, RngStream stream);

  std::size_t size() const { return initial_.size(); }
  bool moving() const;

  Position position_at(NodeId node, SimTime time) const;
  /// Legs of `node` covering at least [0, until].
  const std::vector<Leg>& legs(NodeId node, SimTime until) const;

  /// Per-node hello offset in [0, hello_period).
  SimTime hello_phase(NodeId node) const { return phases_.at(node); }

 private:
  void extend(NodeId node, SimTime until) const;

  MobilityConfig config_;
  double width_;
  double height_;
  std::vector<Position> initial_;
  std::vector<SimTime> phases_;
  RngStream stream_;
  mutable std::vector<std::vector<Leg>> legs_;
};

struct HelloPacket {
  NodeId sender;
  SimTime time;
  std::vector<NodeId> neighbors;  // sender's 1-hop list, sorted
};

/// Possibly-stale neighborhood knowledge built from received hellos.
class NeighborTable {
 public:
  explicit NeighborTable(NodeId self) : self_(self) {}

  NodeId self() const { return self_; }

  void on_hello(const HelloPacket& hello, SimTime now);
  /// Drops 1-hop entries last heard before `now - expiry` with their
  /// 2-hop contributions.
  void expire(SimTime now, SimTime expiry);

  bool has_neighbor(NodeId node) const { return one_hop_.contains(node); }
  /// Sorted 1-hop neighbors.
  std::vector<NodeId> one_hop() const;
  /// Sorted nodes within two hops (1-hop included), excluding self.
  std::vector<NodeId> within_two_hops() const;
  /// Sorted nodes exactly two hops away (not 1-hop, not self).
  std::vector<NodeId> strict_two_hop() const;
  /// Last announced neighbor list of a 1-hop neighbor, or nullptr.
  const std::vector<NodeId>* neighbors_of(NodeId node) const;

  const std::map<NodeId, SimTime>& last_heard() const { return one_hop_; }
  const std::map<NodeId, std::vector<NodeId>>& two_hop() const { return two_hop_; }

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

 private:
  NodeId self_;
  std::map<NodeId, SimTime> one_hop_;
  std::map<NodeId, std::vector<NodeId>> two_hop_;
};

NeighborTable expire_neighbors(NeighborTable table, SimTime now, SimTime expiry);

/// Expires the sender's own table, then announces its current 1-hop list.
HelloPacket emit_hello(NeighborTable& own, SimTime time, SimTime expiry);

}  // namespace nwb
