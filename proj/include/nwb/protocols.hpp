#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "nwb/engine.hpp"
#include "nwb/mobility.hpp"
#include "nwb/rng.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// One copy of a broadcast packet as seen on the air.
struct NwbPacket {
  NwbId nwb;
  std::uint32_t nwb_index = 0;
  NodeId sender = 0;
  std::optional<Position> sender_position;         // LBA
  std::optional<std::vector<NodeId>> forwarder_set;  // AHBP / DCB, sorted
  std::uint32_t hop_count = 0;
  bool sr_copy = false;
};

/// Header fields a transmitting node attaches.
struct Headers {
  std::optional<std::vector<NodeId>> forwarder_set;

  friend bool operator==(const Headers&, const Headers&) = default;
};

/// Per-node, per-NWB bookkeeping.
struct ProtocolState {
  bool received = false;  // received or originated
  bool originator = false;
  SimTime first_rx_time = 0.0;
  std::uint32_t hop_count = 0;
  std::uint32_t heard_count = 0;
  std::uint32_t heard_after_tx = 0;  // receptions after the base transmission
  std::vector<std::pair<NodeId, Position>> heard_senders;
  std::set<NodeId> covered;  // SBA
  std::optional<TimerHandle> pending_timer;
  bool transmitted = false;  // base transmission done
  bool designated_forwarder = false;
  Headers headers;  // attached to the base transmission, reused by SR

  std::optional<TimerHandle> sr_timer;
  bool sr_transmitted = false;
  std::uint32_t tx_count = 0;
};

struct PolicyDecision {
  enum class Action {
    kNoTransmit,
    kTransmitAt,  // cancellable pending transmission after `delay`
    kAssessAt,    // protocol timer after `delay` (LBA assessment)
  };

  Action action = Action::kNoTransmit;
  SimTime delay = 0.0;
  Headers headers;
  bool cancel_pending = false;

  static PolicyDecision no_transmit() { return {}; }
  static PolicyDecision transmit_at(SimTime delay, Headers headers = {}) {
    return {Action::kTransmitAt, delay, std::move(headers), false};
  }
  static PolicyDecision assess_at(SimTime delay) { return {Action::kAssessAt, delay, {}, false}; }

  bool transmits() const { return action == Action::kTransmitAt; }
};

/// Common reception bookkeeping; returns true on the first reception.
bool record_reception(ProtocolState& state, const NwbPacket& pkt, SimTime now);

PolicyDecision flooding_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                                   const ProtocolConfig& config, SplitMix64& rng);

// --- LBA -------------------------------------------------------------------

/// First reception arms an assessment timer in [0, rad_max]; every
/// reception records the sender's advertised location.
PolicyDecision lba_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const ProtocolConfig& config, SplitMix64& rng);

/// Monte Carlo estimate of the fraction of the disk (center, radius) not
/// covered by any of the equal-radius disks around `senders`.
double estimate_uncovered_fraction(const Position& center, double radius,
                                   std::span<const Position> senders, std::uint32_t samples,
                                   SplitMix64& rng);

PolicyDecision lba_on_timer(ProtocolState& state, const Position& self_position,
                            double radius, double threshold_fraction,
                            std::uint32_t mc_samples, SplitMix64& rng);

// --- SBA -------------------------------------------------------------------

/// Upper bound of the SBA random assessment delay for `self`.
SimTime sba_max_delay(const NeighborTable& table, const ProtocolConfig& config);

/// Returns kTransmitAt on a first reception that leaves some own neighbor
/// uncovered; on a duplicate sets `cancel_pending` once every neighbor is
/// covered.
PolicyDecision sba_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const NeighborTable& table, const ProtocolConfig& config,
                              SplitMix64& rng);

// --- AHBP / DCB ------------------------------------------------------------

/// {upstream} plus upstream's neighbors according to `table`.
std::vector<NodeId> covered_by(const NeighborTable& table, NodeId upstream);

/// Greedy set cover of the strict 2-hop neighborhood (minus
/// `already_covered`) by 1-hop neighbors. Ties go to the lowest id.
std::vector<NodeId> ahbp_select_forwarders(const NeighborTable& table,
                                           std::span<const NodeId> already_covered);

/// AHBP selection, extended greedily until each 1-hop neighbor is within
/// range of two transmitters among {self} plus the set, where a second
/// coverer exists.
std::vector<NodeId> dcb_select_forwarders(const NeighborTable& table,
                                          std::span<const NodeId> already_covered);

PolicyDecision ahbp_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                               const NeighborTable& table, const ProtocolConfig& config,
                               SplitMix64& rng);

PolicyDecision dcb_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const NeighborTable& table, const ProtocolConfig& config,
                              SplitMix64& rng);

/// Immediate transmission by the origin, with the protocol's headers.
/// `table` may be null for protocols that do not use one.
PolicyDecision originate_nwb(ProtocolState& state, NodeId origin, ProtocolKind protocol,
                             const NeighborTable* table, SimTime now);

}  // namespace nwb
