#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace nwb {

/// The six independent random streams of a run.
enum class StreamName { kPlacement, kMobility, kLoss, kProtocolDelay, kSr, kTraffic };

std::string_view to_string(StreamName name);

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator; cheap to
/// construct, which lets every event own a private substream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// True with probability p.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

/// A named random stream derived from (scenario seed, name).
///
/// Draws are keyed rather than sequential: `sub({nwb, node, ...})` returns
/// a generator whose sequence depends only on the stream identity and the
/// key. The same event therefore sees the same random values no matter
/// which other events happened before it, so changing one knob (drop
/// probability, SR mode, protocol) never perturbs unrelated draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamName name);

  StreamName name() const { return name_; }
  std::uint64_t key() const { return key_; }

  SplitMix64 sub(std::initializer_list<std::uint64_t> keys) const;
  /// One uniform draw in [0, 1) for the given key.
  double uniform(std::initializer_list<std::uint64_t> keys) const;

 private:
  StreamName name_;
  std::uint64_t key_;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace nwb
