#include "nwb/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "nwb/selective_rebroadcast.hpp"

namespace nwb {

namespace {

Scenario with_node_count(Scenario scenario, std::size_t count) {
  scenario.node_count = static_cast<std::uint32_t>(count);
  return scenario;
}

TopologySnapshot checked_placement(const Scenario& scenario, std::vector<Position> positions) {
  for (const auto& p : positions) {
    if (p.x < 0 || p.x > scenario.area_width || p.y < 0 || p.y > scenario.area_height) {
      throw std::invalid_argument("Simulation: position outside the scenario area");
    }
  }
  return TopologySnapshot(std::move(positions), scenario.radio_range);
}

}  // namespace

Simulation::Simulation(Scenario scenario)
    : Simulation(scenario, place_nodes((scenario.validate(), scenario),
                                       RngStream(scenario.seed, StreamName::kPlacement))
                               .positions()) {}

Simulation::Simulation(Scenario scenario, std::vector<Position> positions)
    : scenario_(with_node_count(std::move(scenario), positions.size())),
      placement_(scenario_.seed, StreamName::kPlacement),
      mobility_stream_(scenario_.seed, StreamName::kMobility),
      loss_(scenario_.seed, StreamName::kLoss),
      protocol_delay_(scenario_.seed, StreamName::kProtocolDelay),
      sr_(scenario_.seed, StreamName::kSr),
      traffic_(scenario_.seed, StreamName::kTraffic),
      topology_(checked_placement(scenario_, std::move(positions))),
      mobility_(scenario_, topology_.positions(), mobility_stream_),
      radio_(scenario_.loss, loss_),
      origin_seq_(scenario_.node_count, 0) {
  scenario_.validate();
  tables_.reserve(scenario_.node_count);
  for (NodeId i = 0; i < scenario_.node_count; ++i) tables_.emplace_back(i);
  if (uses_neighbor_tables(scenario_.protocol.kind)) start_hellos();
}

std::vector<NodeId> Simulation::origin_order(std::uint32_t count) const {
  std::vector<NodeId> perm(scenario_.node_count);
  for (NodeId i = 0; i < perm.size(); ++i) perm[i] = i;
  // Fisher-Yates with a traffic-stream generator.
  auto gen = traffic_.sub({0});
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(gen() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  std::vector<NodeId> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) out.push_back(perm[k % perm.size()]);
  return out;
}

Position Simulation::position_of(NodeId node, SimTime time) const {
  return mobility_.position_at(node, time);
}

std::vector<Position> Simulation::live_positions(SimTime time) const {
  if (!mobility_.moving()) return topology_.positions();
  std::vector<Position> out;
  out.reserve(scenario_.node_count);
  for (NodeId i = 0; i < scenario_.node_count; ++i) out.push_back(mobility_.position_at(i, time));
  return out;
}

bool Simulation::in_range(NodeId a, NodeId b, const std::vector<Position>& live) const {
  if (!mobility_.moving()) return topology_.adjacent(a, b);
  return distance(live[a], live[b]) <= scenario_.radio_range;
}

NeighborTable& Simulation::fresh_table(NodeId node) {
  auto& table = tables_[node];
  table.expire(scheduler_.now(), scenario_.mobility.expiry());
  return table;
}

// --- neighbor discovery -----------------------------------------------------

void Simulation::start_hellos() {
  for (NodeId i = 0; i < scenario_.node_count; ++i) {
    scheduler_.schedule(mobility_.hello_phase(i), EventKind::kHelloTick,
                        [this, i] { hello_tick(i, 0); }, i);
  }
}

void Simulation::hello_tick(NodeId node, std::uint64_t round) {
  const SimTime now = scheduler_.now();
  const HelloPacket hello = emit_hello(tables_[node], now, scenario_.mobility.expiry());
  ++hello_tx_;
  const auto live = live_positions(now);
  for (NodeId j = 0; j < scenario_.node_count; ++j) {
    if (j == node) continue;
    if (radio_.delivered(node, j, in_range(node, j, live), TxKey{true, round, 0})) {
      tables_[j].on_hello(hello, now);
    }
  }
  scheduler_.schedule_in(scenario_.mobility.hello_period, EventKind::kHelloTick,
                         [this, node, round] { hello_tick(node, round + 1); }, node);
}

// --- NWB bookkeeping --------------------------------------------------------

Simulation::ActiveNwb* Simulation::active(std::uint32_t index) {
  auto it = active_.find(index);
  return it == active_.end() ? nullptr : &it->second;
}

TimerHandle Simulation::schedule_nwb(std::uint32_t index, SimTime delay, EventKind kind,
                                     NodeId node, Scheduler::Handler handler) {
  ++active(index)->pending;
  return scheduler_.schedule_in(
      delay, kind,
      [this, index, h = std::move(handler)] {
        // Events of an already finalized NWB are dropped.
        if (auto* a = active(index)) {
          --a->pending;
          h();
        }
      },
      node);
}

void Simulation::cancel_nwb(std::uint32_t index, std::optional<TimerHandle>& handle) {
  if (handle && scheduler_.cancel(*handle)) {
    if (auto* a = active(index)) --a->pending;
  }
  handle.reset();
}

std::vector<NwbCounters> Simulation::run(std::span<const NodeId> origins) {
  std::vector<NwbCounters> out;
  out.reserve(origins.size());
  for (NodeId origin : origins) {
    if (origin >= scenario_.node_count) throw std::out_of_range("run: unknown origin");
    const std::uint32_t index = next_index_++;
    const SimTime start =
        std::max(scheduler_.now(), scenario_.warmup + index * scenario_.nwb_spacing);
    scheduler_.run_until(start);  // warmup and idle gaps are not charged to the NWB
    const std::uint64_t hello_start = hello_tx_;
    scheduler_.schedule(start, EventKind::kNwbOriginate,
                        [this, index, origin] { originate(index, origin); }, origin);
    scheduler_.run_until(start + scenario_.nwb_spacing);

    auto node = active_.extract(index);
    ActiveNwb& nwb = node.mapped();
    NwbCounters& c = nwb.counters;
    c.quiescent = nwb.pending == 0;
    c.hello_tx = hello_tx_ - hello_start;
    c.tx_per_node.resize(scenario_.node_count);
    for (NodeId i = 0; i < scenario_.node_count; ++i) {
      if (nwb.states[i].received) c.covered_nodes.push_back(i);
      c.tx_per_node[i] = static_cast<std::uint8_t>(nwb.states[i].tx_count);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// --- NWB dynamics -----------------------------------------------------------

void Simulation::originate(std::uint32_t index, NodeId origin) {
  ActiveNwb nwb;
  nwb.id = NwbId{origin, origin_seq_[origin]++};
  nwb.index = index;
  nwb.states.resize(scenario_.node_count);
  nwb.counters.nwb_index = index;
  nwb.counters.origin = origin;
  nwb.counters.node_count = scenario_.node_count;
  nwb.counters.covered = 1;
  nwb.counters.connected =
      mobility_.moving()
          ? is_connected(TopologySnapshot(live_positions(scheduler_.now()), scenario_.radio_range))
          : is_connected(topology_);
  active_.emplace(index, std::move(nwb));

  const NeighborTable* table =
      uses_neighbor_tables(scenario_.protocol.kind) ? &fresh_table(origin) : nullptr;
  auto& state = active(index)->states[origin];
  apply(index, origin,
        originate_nwb(state, origin, scenario_.protocol.kind, table, scheduler_.now()));
}

void Simulation::apply(std::uint32_t index, NodeId node, const PolicyDecision& decision) {
  auto& state = active(index)->states[node];
  if (decision.cancel_pending) cancel_nwb(index, state.pending_timer);
  switch (decision.action) {
    case PolicyDecision::Action::kNoTransmit:
      break;
    case PolicyDecision::Action::kTransmitAt:
      state.headers = decision.headers;
      state.pending_timer =
          schedule_nwb(index, decision.delay, EventKind::kTransmitStart, node, [this, index, node] {
            auto& st = active(index)->states[node];
            st.pending_timer.reset();
            if (st.transmitted) return;
            transmit(index, node, false);
            st.transmitted = true;
            after_base_transmit(index, node);
          });
      break;
    case PolicyDecision::Action::kAssessAt:
      state.pending_timer = schedule_nwb(index, decision.delay, EventKind::kTimerFire, node,
                                         [this, index, node] { lba_assess(index, node); });
      break;
  }
}

void Simulation::transmit(std::uint32_t index, NodeId node, bool sr_copy) {
  ActiveNwb& nwb = *active(index);
  ProtocolState& state = nwb.states[node];
  const std::uint32_t ordinal = state.tx_count++;
  ++nwb.counters.transmissions;
  if (sr_copy) ++nwb.counters.sr_transmissions;

  const SimTime now = scheduler_.now();
  auto pkt = std::make_shared<NwbPacket>();
  pkt->nwb = nwb.id;
  pkt->nwb_index = index;
  pkt->sender = node;
  if (scenario_.protocol.kind == ProtocolKind::kLba) pkt->sender_position = position_of(node, now);
  pkt->forwarder_set = state.headers.forwarder_set;
  pkt->hop_count = state.hop_count;
  pkt->sr_copy = sr_copy;
  std::shared_ptr<const NwbPacket> shared = std::move(pkt);

  const auto live = live_positions(now);
  for (NodeId j = 0; j < scenario_.node_count; ++j) {
    if (j == node) continue;
    if (radio_.delivered(node, j, in_range(node, j, live), TxKey{false, index, ordinal})) {
      schedule_nwb(index, kPropagationDelay, EventKind::kReceive, j,
                   [this, index, j, shared] { receive(index, j, shared); });
    }
  }
}

void Simulation::receive(std::uint32_t index, NodeId node, std::shared_ptr<const NwbPacket> pkt) {
  ActiveNwb& nwb = *active(index);
  ProtocolState& state = nwb.states[node];
  const bool had = state.received;
  const SimTime now = scheduler_.now();
  const ProtocolConfig& cfg = scenario_.protocol;
  auto gen = protocol_delay_.sub({index, node, 0});

  PolicyDecision decision;
  switch (cfg.kind) {
    case ProtocolKind::kFlooding:
      decision = flooding_on_receive(state, *pkt, now, cfg, gen);
      break;
    case ProtocolKind::kLba:
      decision = lba_on_receive(state, *pkt, now, cfg, gen);
      break;
    case ProtocolKind::kSba:
      decision = sba_on_receive(state, *pkt, now, fresh_table(node), cfg, gen);
      break;
    case ProtocolKind::kAhbp:
      decision = ahbp_on_receive(state, *pkt, now, fresh_table(node), cfg, gen);
      break;
    case ProtocolKind::kDcb:
      decision = dcb_on_receive(state, *pkt, now, fresh_table(node), cfg, gen);
      break;
  }
  if (!had && state.received) ++nwb.counters.covered;
  apply(index, node, decision);
  if (sr_on_duplicate(state, scenario_.sr)) cancel_nwb(index, state.sr_timer);
}

void Simulation::lba_assess(std::uint32_t index, NodeId node) {
  auto& state = active(index)->states[node];
  auto gen = protocol_delay_.sub({index, node, 1});
  const auto& cfg = scenario_.protocol;
  apply(index, node,
        lba_on_timer(state, position_of(node, scheduler_.now()), scenario_.radio_range,
                     cfg.lba_threshold_fraction, cfg.lba_mc_samples, gen));
}

void Simulation::after_base_transmit(std::uint32_t index, NodeId node) {
  auto& state = active(index)->states[node];
  auto gen = sr_.sub({index, node});
  if (auto timer = sr_after_transmit(state, scenario_.sr, gen)) {
    state.sr_timer = schedule_nwb(index, timer->delay, EventKind::kTimerFire, node,
                                  [this, index, node] { sr_expire(index, node); });
  }
}

void Simulation::sr_expire(std::uint32_t index, NodeId node) {
  auto& state = active(index)->states[node];
  if (sr_fire(state, scenario_.sr).transmits()) transmit(index, node, true);
}

}  // namespace nwb
