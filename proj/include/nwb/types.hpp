#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nwb {

using NodeId = std::uint32_t;
using SimTime = double;  // seconds of virtual time

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

/// Identity of one network-wide broadcast: the originating node plus its
/// per-origin sequence number. Stable across all rebroadcasts.
struct NwbId {
  NodeId origin = 0;
  std::uint32_t seq = 0;

  friend auto operator<=>(const NwbId&, const NwbId&) = default;
};

/// Raised for any malformed configuration value. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProtocolKind { kFlooding, kLba, kSba, kAhbp, kDcb };
enum class MobilityKind { kStatic, kRandomWaypoint };
enum class LossKind { kPerfect, kBernoulliDrop };
enum class SrMode { kNone, kProbabilistic, kCounter };

std::string_view to_string(ProtocolKind kind);
std::string_view to_string(MobilityKind kind);
std::string_view to_string(LossKind kind);
std::string_view to_string(SrMode mode);

ProtocolKind parse_protocol(std::string_view text);
MobilityKind parse_mobility(std::string_view text);
LossKind parse_loss(std::string_view text);
SrMode parse_sr_mode(std::string_view text);

/// True for protocols that consult 2-hop neighbor tables built from hellos.
bool uses_neighbor_tables(ProtocolKind kind);

struct LossModelConfig {
  LossKind kind = LossKind::kBernoulliDrop;
  double drop_probability = 0.0;
  bool drop_applies_to_hellos = true;
};

struct MobilityConfig {
  MobilityKind kind = MobilityKind::kStatic;
  double mean_speed = 0.0;  // m/s
  double pause_time = 0.0;  // s
  double hello_period = 1.0;
  double expiry_factor = 2.5;  // neighbor expiry = expiry_factor * hello_period
  double position_update_period = 1.0;  // trace output only

  double expiry() const { return expiry_factor * hello_period; }
};

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::kFlooding;
  double jitter_max = 0.010;
  double rad_max = 0.050;
  double lba_threshold_fraction = 0.10;
  std::uint32_t lba_mc_samples = 2000;
};

struct SrConfig {
  SrMode mode = SrMode::kNone;
  double p = 0.5;
  std::uint32_t n = 2;
  double timeout = 0.100;
  /// Counter mode evidence window: receptions since the first reception
  /// (true) or only those after the node's own base transmission (false).
  bool count_from_first_reception = false;
};

/// Full configuration of one simulated scenario (one seed).
struct Scenario {
  double area_width = 1000.0;
  double area_height = 1000.0;
  std::uint32_t node_count = 30;
  double radio_range = 250.0;
  std::uint64_t seed = 1;
  bool require_connected = false;

  LossModelConfig loss;
  MobilityConfig mobility;
  ProtocolConfig protocol;
  SrConfig sr;

  double warmup = 3.0;       // first NWB origination time
  double nwb_spacing = 2.0;  // gap between successive NWBs

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

}  // namespace nwb
