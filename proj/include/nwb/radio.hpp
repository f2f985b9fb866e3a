#pragma once

#include <cstdint>

#include "nwb/rng.hpp"
#include "nwb/topology.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// Identity of one transmission, used to key its per-receiver loss draws.
/// For data packets: (nwb index, sender tx ordinal). For hellos: (hello
/// round, 0).
struct TxKey {
  bool hello = false;
  std::uint64_t id = 0;
  std::uint64_t ordinal = 0;
};

/// Receiver-side delivery decision: range test, then the loss model.
class Radio {
 public:
  Radio(LossModelConfig config, RngStream loss_stream);

  const LossModelConfig& config() const { return config_; }

  /// `in_range` is the caller's live-position range test. Each
  /// (transmission, receiver) pair gets an independent Bernoulli draw.
  /// Throws std::invalid_argument if sender == receiver.
  bool delivered(NodeId sender, NodeId receiver, bool in_range, const TxKey& key) const;

  bool delivered(NodeId sender, NodeId receiver, const TopologySnapshot& topo,
                 const TxKey& key) const {
    return delivered(sender, receiver, topo.adjacent(sender, receiver), key);
  }

 private:
  LossModelConfig config_;
  RngStream loss_;
};

}  // namespace nwb
