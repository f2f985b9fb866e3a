#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nwb/radio.hpp"

using namespace nwb;

namespace {

LossModelConfig drop(double p, bool hellos = true) {
  LossModelConfig c;
  c.kind = LossKind::kBernoulliDrop;
  c.drop_probability = p;
  c.drop_applies_to_hellos = hellos;
  return c;
}

}  // namespace

TEST_CASE("out of range never delivers") {
  Radio r(drop(0.0), RngStream(1, StreamName::kLoss));
  CHECK_FALSE(r.delivered(0, 1, false, TxKey{}));
  CHECK(r.delivered(0, 1, true, TxKey{}));
}

TEST_CASE("perfect channel delivers everything in range") {
  LossModelConfig c;
  c.kind = LossKind::kPerfect;
  c.drop_probability = 0.9;
  Radio r(c, RngStream(1, StreamName::kLoss));
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(r.delivered(0, 1, true, TxKey{false, i, 0}));
}

TEST_CASE("drop 1 delivers nothing") {
  Radio r(drop(1.0), RngStream(1, StreamName::kLoss));
  for (std::uint64_t i = 0; i < 100; ++i) CHECK_FALSE(r.delivered(0, 1, true, TxKey{false, i, 0}));
}

TEST_CASE("self delivery is an error") {
  Radio r(drop(0.1), RngStream(1, StreamName::kLoss));
  CHECK_THROWS_AS(r.delivered(3, 3, true, TxKey{}), std::invalid_argument);
}

TEST_CASE("delivery rate matches 1 - p over many transmissions") {
  // 10000 trials at p = 0.3: binomial sd of the rate is ~0.0046.
  Radio r(drop(0.3), RngStream(8, StreamName::kLoss));
  int ok = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) ok += r.delivered(2, 5, true, TxKey{false, i, 0}) ? 1 : 0;
  CHECK(std::abs(ok / 10000.0 - 0.70) < 0.02);
}

TEST_CASE("receivers of one transmission are independent") {
  Radio r(drop(0.5), RngStream(4, StreamName::kLoss));
  const int n = 20000;
  int a = 0, b = 0, both = 0;
  for (int i = 0; i < n; ++i) {
    const TxKey key{false, static_cast<std::uint64_t>(i), 0};
    const bool x = r.delivered(0, 1, true, key);
    const bool y = r.delivered(0, 2, true, key);
    a += x;
    b += y;
    both += x && y;
  }
  const double pa = a / double(n), pb = b / double(n), pab = both / double(n);
  const double corr = (pab - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb));
  CHECK(std::abs(corr) < 0.03);
}

TEST_CASE("draws are keyed by transmission, not call order") {
  Radio r(drop(0.5), RngStream(6, StreamName::kLoss));
  const TxKey key{false, 3, 1};
  const bool first = r.delivered(0, 1, true, key);
  for (std::uint64_t i = 0; i < 10; ++i) (void)r.delivered(0, 1, true, TxKey{false, i, 0});
  CHECK(r.delivered(0, 1, true, key) == first);
}

TEST_CASE("hellos can be exempt from drops") {
  Radio exempt(drop(1.0, false), RngStream(1, StreamName::kLoss));
  CHECK(exempt.delivered(0, 1, true, TxKey{true, 4, 0}));
  CHECK_FALSE(exempt.delivered(0, 1, true, TxKey{false, 4, 0}));
  Radio dropped(drop(1.0, true), RngStream(1, StreamName::kLoss));
  CHECK_FALSE(dropped.delivered(0, 1, true, TxKey{true, 4, 0}));
}

TEST_CASE("topology overload uses adjacency") {
  TopologySnapshot t({{0, 0}, {100, 0}, {400, 0}}, 250.0);
  Radio r(drop(0.0), RngStream(1, StreamName::kLoss));
  CHECK(r.delivered(0, 1, t, TxKey{}));
  CHECK_FALSE(r.delivered(0, 2, t, TxKey{}));
}
