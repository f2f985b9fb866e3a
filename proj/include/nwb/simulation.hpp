#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "nwb/engine.hpp"
#include "nwb/metrics.hpp"
#include "nwb/mobility.hpp"
#include "nwb/protocols.hpp"
#include "nwb/radio.hpp"
#include "nwb/rng.hpp"
#include "nwb/topology.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// Propagation delay applied to every delivery.
inline constexpr SimTime kPropagationDelay = 1e-6;

/// One simulation run: a scenario (placement, mobility, loss, protocol, SR)
/// carrying a sequence of non-overlapping NWBs.
///
/// NWB k originates at warmup + k * nwb_spacing and is finalized when the
/// next one starts. Neighbor discovery runs only for protocols that consult
/// neighbor tables.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);
  /// Uses the given initial positions instead of random placement.
  Simulation(Scenario scenario, std::vector<Position> positions);

  const Scenario& scenario() const { return scenario_; }
  const TopologySnapshot& initial_topology() const { return topology_; }
  const MobilityModel& mobility() const { return mobility_; }
  const Scheduler& scheduler() const { return scheduler_; }
  const NeighborTable& table(NodeId node) const { return tables_.at(node); }

  void enable_trace(bool on) { scheduler_.enable_trace(on); }

  /// Origin order for `count` NWBs: a traffic-stream permutation of the
  /// nodes, cycled when count exceeds node_count.
  std::vector<NodeId> origin_order(std::uint32_t count) const;

  /// Runs one NWB per listed origin, in order.
  std::vector<NwbCounters> run(std::span<const NodeId> origins);
  /// One NWB per node (the default experiment).
  std::vector<NwbCounters> run() { return run(origin_order(scenario_.node_count)); }

  /// Advances the clock without traffic (hellos keep running).
  void advance_to(SimTime time) { scheduler_.run_until(time); }

  Position position_of(NodeId node, SimTime time) const;

 private:
  struct ActiveNwb {
    NwbId id;
    std::uint32_t index = 0;
    std::vector<ProtocolState> states;
    NwbCounters counters;
    std::size_t pending = 0;
  };

  void start_hellos();
  void hello_tick(NodeId node, std::uint64_t round);

  void originate(std::uint32_t index, NodeId origin);
  void receive(std::uint32_t index, NodeId node, std::shared_ptr<const NwbPacket> pkt);
  void transmit(std::uint32_t index, NodeId node, bool sr_copy);
  void apply(std::uint32_t index, NodeId node, const PolicyDecision& decision);
  void after_base_transmit(std::uint32_t index, NodeId node);
  void lba_assess(std::uint32_t index, NodeId node);
  void sr_expire(std::uint32_t index, NodeId node);

  TimerHandle schedule_nwb(std::uint32_t index, SimTime delay, EventKind kind, NodeId node,
                           Scheduler::Handler handler);
  void cancel_nwb(std::uint32_t index, std::optional<TimerHandle>& handle);
  ActiveNwb* active(std::uint32_t index);

  NeighborTable& fresh_table(NodeId node);
  bool in_range(NodeId a, NodeId b, const std::vector<Position>& live) const;
  std::vector<Position> live_positions(SimTime time) const;

  Scenario scenario_;
  RngStream placement_;
  RngStream mobility_stream_;
  RngStream loss_;
  RngStream protocol_delay_;
  RngStream sr_;
  RngStream traffic_;

  TopologySnapshot topology_;
  MobilityModel mobility_;
  Radio radio_;
  Scheduler scheduler_;
  std::vector<NeighborTable> tables_;
  std::uint64_t hello_tx_ = 0;
  std::map<std::uint32_t, ActiveNwb> active_;
  std::uint32_t next_index_ = 0;
  std::vector<std::uint32_t> origin_seq_;
};

}  // namespace nwb
