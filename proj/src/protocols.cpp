#include "nwb/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nwb {

namespace {

bool contains_sorted(std::span<const NodeId> set, NodeId node) {
  return std::binary_search(set.begin(), set.end(), node);
}

bool in_forwarder_set(const NwbPacket& pkt, NodeId self) {
  return pkt.forwarder_set && contains_sorted(*pkt.forwarder_set, self);
}

// True if `a` and `b` are neighbors according to either announced list.
bool known_adjacent(const NeighborTable& table, NodeId a, NodeId b) {
  if (const auto* na = table.neighbors_of(a); na && contains_sorted(*na, b)) return true;
  if (const auto* nb = table.neighbors_of(b); nb && contains_sorted(*nb, a)) return true;
  return false;
}

SimTime jitter(const ProtocolConfig& config, SplitMix64& rng) {
  return rng.uniform(0.0, config.jitter_max);
}

}  // namespace

bool record_reception(ProtocolState& state, const NwbPacket& pkt, SimTime now) {
  ++state.heard_count;
  if (state.transmitted) ++state.heard_after_tx;
  if (pkt.sender_position) state.heard_senders.emplace_back(pkt.sender, *pkt.sender_position);
  if (state.received) return false;
  state.received = true;
  state.first_rx_time = now;
  state.hop_count = pkt.hop_count + 1;
  return true;
}

PolicyDecision flooding_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                                   const ProtocolConfig& config, SplitMix64& rng) {
  if (!record_reception(state, pkt, now)) return PolicyDecision::no_transmit();
  return PolicyDecision::transmit_at(jitter(config, rng));
}

PolicyDecision lba_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const ProtocolConfig& config, SplitMix64& rng) {
  if (!record_reception(state, pkt, now)) return PolicyDecision::no_transmit();
  return PolicyDecision::assess_at(rng.uniform(0.0, config.rad_max));
}

double estimate_uncovered_fraction(const Position& center, double radius,
                                   std::span<const Position> senders, std::uint32_t samples,
                                   SplitMix64& rng) {
  if (samples == 0) return 0.0;
  const double r2 = radius * radius;
  std::uint32_t uncovered = 0;
  for (std::uint32_t i = 0; i < samples; ++i) {
    // Uniform point in the disk.
    const double rho = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double x = center.x + rho * std::cos(theta);
    const double y = center.y + rho * std::sin(theta);
    const bool hit = std::any_of(senders.begin(), senders.end(), [&](const Position& s) {
      const double dx = x - s.x;
      const double dy = y - s.y;
      return dx * dx + dy * dy <= r2;
    });
    if (!hit) ++uncovered;
  }
  return static_cast<double>(uncovered) / samples;
}

PolicyDecision lba_on_timer(ProtocolState& state, const Position& self_position,
                            double radius, double threshold_fraction,
                            std::uint32_t mc_samples, SplitMix64& rng) {
  state.pending_timer.reset();
  if (state.transmitted) return PolicyDecision::no_transmit();
  std::vector<Position> senders;
  senders.reserve(state.heard_senders.size());
  for (const auto& [_, pos] : state.heard_senders) senders.push_back(pos);
  const double extra = estimate_uncovered_fraction(self_position, radius, senders, mc_samples, rng);
  if (extra > threshold_fraction) return PolicyDecision::transmit_at(0.0);
  return PolicyDecision::no_transmit();
}

SimTime sba_max_delay(const NeighborTable& table, const ProtocolConfig& config) {
  const auto own = table.last_heard().size();
  std::size_t max_degree = own;
  for (const auto& [_, list] : table.two_hop()) max_degree = std::max(max_degree, list.size());
  const double scaled = config.jitter_max * static_cast<double>(1 + max_degree) /
                        static_cast<double>(1 + own);
  return std::min(config.rad_max, scaled);
}

PolicyDecision sba_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const NeighborTable& table, const ProtocolConfig& config,
                              SplitMix64& rng) {
  const bool first = record_reception(state, pkt, now);
  state.covered.insert(pkt.sender);
  if (const auto* list = table.neighbors_of(pkt.sender)) {
    state.covered.insert(list->begin(), list->end());
  }
  const auto mine = table.one_hop();
  const bool all_covered = std::all_of(mine.begin(), mine.end(),
                                       [&](NodeId v) { return state.covered.contains(v); });
  if (first) {
    if (all_covered) return PolicyDecision::no_transmit();
    return PolicyDecision::transmit_at(rng.uniform(0.0, sba_max_delay(table, config)));
  }
  PolicyDecision decision;
  decision.cancel_pending = state.pending_timer.has_value() && !state.transmitted && all_covered;
  return decision;
}

std::vector<NodeId> covered_by(const NeighborTable& table, NodeId upstream) {
  std::vector<NodeId> out{upstream};
  if (const auto* list = table.neighbors_of(upstream)) out.insert(out.end(), list->begin(), list->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> ahbp_select_forwarders(const NeighborTable& table,
                                           std::span<const NodeId> already_covered) {
  std::vector<NodeId> uncovered;
  for (NodeId v : table.strict_two_hop()) {
    if (!contains_sorted(already_covered, v)) uncovered.push_back(v);
  }
  const auto candidates = table.one_hop();
  std::vector<NodeId> chosen;
  while (!uncovered.empty()) {
    std::size_t best_gain = 0;
    NodeId best = 0;
    for (NodeId c : candidates) {
      const auto* reach = table.neighbors_of(c);
      if (!reach) continue;
      std::size_t gain = 0;
      for (NodeId v : uncovered) gain += contains_sorted(*reach, v) ? 1 : 0;
      if (gain > best_gain) {  // strict: keeps the lowest id on ties
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0) break;
    chosen.push_back(best);
    const auto& reach = *table.neighbors_of(best);
    std::erase_if(uncovered, [&](NodeId v) { return contains_sorted(reach, v); });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<NodeId> dcb_select_forwarders(const NeighborTable& table,
                                          std::span<const NodeId> already_covered) {
  std::vector<NodeId> chosen = ahbp_select_forwarders(table, already_covered);
  const auto mine = table.one_hop();

  // Transmitter count per 1-hop neighbor: self plus chosen forwarders in range.
  std::vector<std::uint32_t> count(mine.size(), 1);
  for (std::size_t i = 0; i < mine.size(); ++i) {
    for (NodeId f : chosen) {
      if (f != mine[i] && known_adjacent(table, f, mine[i])) ++count[i];
    }
  }
  for (;;) {
    std::size_t best_gain = 0;
    NodeId best = 0;
    for (NodeId c : mine) {
      if (contains_sorted(chosen, c)) continue;
      std::size_t gain = 0;
      for (std::size_t i = 0; i < mine.size(); ++i) {
        if (count[i] < 2 && mine[i] != c && known_adjacent(table, c, mine[i])) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0) break;
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best), best);
    for (std::size_t i = 0; i < mine.size(); ++i) {
      if (mine[i] != best && known_adjacent(table, best, mine[i])) ++count[i];
    }
  }
  return chosen;
}

namespace {

template <typename Select>
PolicyDecision designated_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                                     const NeighborTable& table, const ProtocolConfig& config,
                                     SplitMix64& rng, Select select) {
  record_reception(state, pkt, now);
  if (state.transmitted || state.pending_timer || !in_forwarder_set(pkt, table.self())) {
    return PolicyDecision::no_transmit();
  }
  state.designated_forwarder = true;
  const auto upstream = covered_by(table, pkt.sender);
  return PolicyDecision::transmit_at(jitter(config, rng), Headers{select(table, upstream)});
}

}  // namespace

PolicyDecision ahbp_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                               const NeighborTable& table, const ProtocolConfig& config,
                               SplitMix64& rng) {
  return designated_on_receive(state, pkt, now, table, config, rng, ahbp_select_forwarders);
}

PolicyDecision dcb_on_receive(ProtocolState& state, const NwbPacket& pkt, SimTime now,
                              const NeighborTable& table, const ProtocolConfig& config,
                              SplitMix64& rng) {
  return designated_on_receive(state, pkt, now, table, config, rng, dcb_select_forwarders);
}

PolicyDecision originate_nwb(ProtocolState& state, NodeId origin, ProtocolKind protocol,
                             const NeighborTable* table, SimTime now) {
  state.received = true;
  state.originator = true;
  state.first_rx_time = now;
  Headers headers;
  if (protocol == ProtocolKind::kAhbp || protocol == ProtocolKind::kDcb) {
    const std::vector<NodeId> self{origin};
    if (table == nullptr) {
      headers.forwarder_set.emplace();
    } else if (protocol == ProtocolKind::kAhbp) {
      headers.forwarder_set = ahbp_select_forwarders(*table, self);
    } else {
      headers.forwarder_set = dcb_select_forwarders(*table, self);
    }
  }
  return PolicyDecision::transmit_at(0.0, std::move(headers));
}

}  // namespace nwb
