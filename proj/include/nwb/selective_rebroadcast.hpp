#pragma once

#include <optional>

#include "nwb/protocols.hpp"
#include "nwb/rng.hpp"
#include "nwb/types.hpp"

namespace nwb {

/// An SR timer to arm after a node's base transmission.
struct SrTimer {
  SimTime delay;
  bool conditional;  // Counter mode: suppressed once n rebroadcasts are heard
};

/// Called right after the base transmission (origination included).
/// Probabilistic: an unconditional resend with probability p. Counter: a
/// conditional resend. At most one SR timer per node per NWB.
std::optional<SrTimer> sr_after_transmit(const ProtocolState& state, const SrConfig& config,
                                         SplitMix64& rng);

/// Rebroadcasts heard inside the configured counting window.
std::uint32_t sr_evidence(const ProtocolState& state, const SrConfig& config);

/// Counter mode, on every reception: true iff the pending SR timer should
/// be cancelled (heard_count >= n).
bool sr_on_duplicate(const ProtocolState& state, const SrConfig& config);

/// SR timer expiry. Resends the base headers unless the counter threshold
/// is already met or an SR copy was already sent.
PolicyDecision sr_fire(ProtocolState& state, const SrConfig& config);

}  // namespace nwb
