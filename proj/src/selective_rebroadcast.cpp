#include "nwb/selective_rebroadcast.hpp"

namespace nwb {

std::optional<SrTimer> sr_after_transmit(const ProtocolState& state, const SrConfig& config,
                                         SplitMix64& rng) {
  if (!state.transmitted || state.sr_transmitted || state.sr_timer) return std::nullopt;
  switch (config.mode) {
    case SrMode::kNone:
      return std::nullopt;
    case SrMode::kProbabilistic:
      if (rng.bernoulli(config.p)) return SrTimer{config.timeout, false};
      return std::nullopt;
    case SrMode::kCounter:
      return SrTimer{config.timeout, true};
  }
  return std::nullopt;
}

std::uint32_t sr_evidence(const ProtocolState& state, const SrConfig& config) {
  return config.count_from_first_reception ? state.heard_count : state.heard_after_tx;
}

bool sr_on_duplicate(const ProtocolState& state, const SrConfig& config) {
  return config.mode == SrMode::kCounter && state.sr_timer.has_value() &&
         sr_evidence(state, config) >= config.n;
}

PolicyDecision sr_fire(ProtocolState& state, const SrConfig& config) {
  state.sr_timer.reset();
  if (state.sr_transmitted || !state.transmitted) return PolicyDecision::no_transmit();
  if (config.mode == SrMode::kCounter && sr_evidence(state, config) >= config.n) {
    return PolicyDecision::no_transmit();
  }
  state.sr_transmitted = true;
  return PolicyDecision::transmit_at(0.0, state.headers);
}

}  // namespace nwb
