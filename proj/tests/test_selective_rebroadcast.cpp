#include <doctest.h>

#include <vector>

#include "nwb/selective_rebroadcast.hpp"
#include "nwb/simulation.hpp"
#include "nwb/topology.hpp"

using namespace nwb;

namespace {

SrConfig counter(std::uint32_t n, bool from_first_reception = false) {
  SrConfig c;
  c.mode = SrMode::kCounter;
  c.n = n;
  c.count_from_first_reception = from_first_reception;
  return c;
}

Scenario lossless(ProtocolKind kind, SrConfig sr) {
  Scenario s;
  s.protocol.kind = kind;
  s.loss.drop_probability = 0.0;
  s.sr = sr;
  return s;
}

ProtocolState transmitted_state() {
  ProtocolState st;
  st.received = true;
  st.transmitted = true;
  return st;
}

}  // namespace

TEST_CASE("no SR timer without a base transmission or with SR off") {
  SplitMix64 rng(1);
  ProtocolState idle;
  CHECK_FALSE(sr_after_transmit(idle, counter(2), rng));
  auto st = transmitted_state();
  CHECK_FALSE(sr_after_transmit(st, SrConfig{}, rng));
  auto t = sr_after_transmit(st, counter(2), rng);
  REQUIRE(t);
  CHECK(t->conditional);
  CHECK(t->delay == SrConfig{}.timeout);
}

TEST_CASE("probabilistic SR schedules with frequency p, unconditionally") {
  SrConfig c;
  c.mode = SrMode::kProbabilistic;
  c.p = 0.25;
  SplitMix64 rng(2);
  auto st = transmitted_state();
  int armed = 0;
  for (int i = 0; i < 20000; ++i) {
    if (auto t = sr_after_transmit(st, c, rng)) {
      CHECK_FALSE(t->conditional);
      ++armed;
    }
  }
  CHECK(std::abs(armed / 20000.0 - 0.25) < 0.015);
  st.heard_count = 10;
  st.heard_after_tx = 10;
  CHECK(sr_fire(st, c).transmits());
}

TEST_CASE("counter: two rebroadcasts heard cancel, one does not") {
  auto c = counter(2);
  auto st = transmitted_state();
  st.sr_timer = TimerHandle{1};
  ProtocolState heard_one = st;
  heard_one.heard_after_tx = 1;
  CHECK_FALSE(sr_on_duplicate(heard_one, c));
  auto fired = sr_fire(heard_one, c);
  CHECK(fired.transmits());
  CHECK(fired.delay == 0.0);
  CHECK(heard_one.sr_transmitted);

  ProtocolState heard_two = st;
  heard_two.heard_after_tx = 2;
  CHECK(sr_on_duplicate(heard_two, c));
  CHECK_FALSE(sr_fire(heard_two, c).transmits());
}

TEST_CASE("counting window selects which receptions count") {
  auto st = transmitted_state();
  st.heard_count = 3;
  st.heard_after_tx = 1;
  CHECK(sr_evidence(st, counter(2, true)) == 3);
  CHECK(sr_evidence(st, counter(2, false)) == 1);
}

TEST_CASE("receptions before the base transmission stay out of the after-transmit window") {
  ProtocolState st;
  NwbPacket p;
  p.sender = 1;
  record_reception(st, p, 0.0);
  record_reception(st, p, 0.0);
  CHECK(st.heard_count == 2);
  CHECK(st.heard_after_tx == 0);
  st.transmitted = true;
  record_reception(st, p, 0.1);
  CHECK(st.heard_after_tx == 1);
}

TEST_CASE("at most one SR copy, with the original headers") {
  auto st = transmitted_state();
  st.headers.forwarder_set = std::vector<NodeId>{4, 7};
  auto c = counter(2);
  auto first = sr_fire(st, c);
  REQUIRE(first.transmits());
  CHECK(first.headers == st.headers);
  CHECK_FALSE(sr_fire(st, c).transmits());
  SplitMix64 rng(3);
  CHECK_FALSE(sr_after_transmit(st, c, rng));
}

TEST_CASE("two nodes, flooding, counter n=2 counted from first reception: 3 transmissions") {
  // A(0) originates at t0, B(1) rebroadcasts after jitter j < 0.01.
  // A's window holds only B's rebroadcast when its timer fires at t0 + 0.1, so
  // A resends. B then has A's original and A's resend (2) and cancels.
  Simulation sim(lossless(ProtocolKind::kFlooding, counter(2, true)), {{0, 0}, {100, 0}});
  const std::vector<NodeId> origin{0};
  const auto c = sim.run(origin).at(0);
  CHECK(c.covered == 2);
  CHECK(c.transmissions == 3);
  CHECK(c.sr_transmissions == 1);
  CHECK(c.tx_per_node == std::vector<std::uint8_t>{2, 1});
  CHECK(static_cast<double>(c.transmissions) / c.covered == doctest::Approx(1.5));
}

TEST_CASE("two nodes, flooding, counter n=2 counted after transmission: 4 transmissions") {
  // Same trace, but B's window opens at its own send: it hears only A's
  // resend (1 < 2) and resends too.
  Simulation sim(lossless(ProtocolKind::kFlooding, counter(2)), {{0, 0}, {100, 0}});
  const std::vector<NodeId> origin{0};
  const auto c = sim.run(origin).at(0);
  CHECK(c.transmissions == 4);
  CHECK(c.tx_per_node == std::vector<std::uint8_t>{2, 2});
}

TEST_CASE("probabilistic p = 1 without loss doubles every transmission") {
  SrConfig c;
  c.mode = SrMode::kProbabilistic;
  c.p = 1.0;
  auto s = lossless(ProtocolKind::kFlooding, c);
  s.require_connected = true;
  Simulation sim(s);
  for (const auto& r : sim.run()) {
    CHECK(r.covered == s.node_count);
    CHECK(static_cast<double>(r.transmissions) / r.covered == doctest::Approx(2.0));
  }
}

TEST_CASE("non-forwarding AHBP nodes never transmit, even with SR") {
  TopologySnapshot topo({{100, 500}, {300, 500}, {500, 500}}, 250.0);
  NeighborTable t1(1);
  for (NodeId j : {0u, 2u}) {
    auto n = topo.neighbors(j);
    t1.on_hello(HelloPacket{j, 0.0, std::vector<NodeId>(n.begin(), n.end())}, 0.0);
  }
  NwbPacket p;
  p.sender = 0;
  p.forwarder_set = std::vector<NodeId>{};
  ProtocolState st;
  SplitMix64 rng(4);
  CHECK_FALSE(ahbp_on_receive(st, p, 0.0, t1, ProtocolConfig{}, rng).transmits());
  CHECK_FALSE(sr_after_transmit(st, counter(2), rng));
  CHECK_FALSE(sr_fire(st, counter(2)).transmits());
}

TEST_CASE("SR copies pair with base transmissions") {
  for (auto kind : {ProtocolKind::kFlooding, ProtocolKind::kSba, ProtocolKind::kAhbp}) {
    auto s = lossless(kind, counter(2));
    s.loss.drop_probability = 0.3;
    s.seed = 4;
    Simulation sim(s);
    for (const auto& r : sim.run()) {
      std::uint64_t twice = 0, total = 0;
      for (auto n : r.tx_per_node) {
        CHECK(n <= 2);
        twice += n == 2 ? 1 : 0;
        total += n;
      }
      CHECK(r.sr_transmissions == twice);
      CHECK(r.transmissions == total);
    }
  }
}
