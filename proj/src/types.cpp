#include "nwb/types.hpp"

#include <cmath>
#include <string>

namespace nwb {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kFlooding: return "flooding";
    case ProtocolKind::kLba: return "lba";
    case ProtocolKind::kSba: return "sba";
    case ProtocolKind::kAhbp: return "ahbp";
    case ProtocolKind::kDcb: return "dcb";
  }
  return "unknown";
}

std::string_view to_string(MobilityKind kind) {
  return kind == MobilityKind::kStatic ? "static" : "random_waypoint";
}

std::string_view to_string(LossKind kind) {
  return kind == LossKind::kPerfect ? "perfect" : "bernoulli_drop";
}

std::string_view to_string(SrMode mode) {
  switch (mode) {
    case SrMode::kNone: return "none";
    case SrMode::kProbabilistic: return "prob";
    case SrMode::kCounter: return "counter";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view text) {
  for (auto k : {ProtocolKind::kFlooding, ProtocolKind::kLba, ProtocolKind::kSba,
                 ProtocolKind::kAhbp, ProtocolKind::kDcb}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("protocol: unknown protocol '" + std::string(text) +
                    "' (expected flooding|lba|sba|ahbp|dcb)");
}

MobilityKind parse_mobility(std::string_view text) {
  if (text == "static") return MobilityKind::kStatic;
  if (text == "random_waypoint" || text == "rwp") return MobilityKind::kRandomWaypoint;
  throw ConfigError("mobility.kind: unknown value '" + std::string(text) +
                    "' (expected static|random_waypoint)");
}

LossKind parse_loss(std::string_view text) {
  if (text == "perfect") return LossKind::kPerfect;
  if (text == "bernoulli_drop" || text == "bernoulli") return LossKind::kBernoulliDrop;
  throw ConfigError("loss.kind: unknown value '" + std::string(text) +
                    "' (expected perfect|bernoulli_drop)");
}

SrMode parse_sr_mode(std::string_view text) {
  if (text == "none") return SrMode::kNone;
  if (text == "prob" || text == "probabilistic") return SrMode::kProbabilistic;
  if (text == "counter") return SrMode::kCounter;
  throw ConfigError("sr.mode: unknown value '" + std::string(text) +
                    "' (expected none|prob|counter)");
}

bool uses_neighbor_tables(ProtocolKind kind) {
  return kind == ProtocolKind::kSba || kind == ProtocolKind::kAhbp ||
         kind == ProtocolKind::kDcb;
}

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(std::string(key) + ": " + what);
}

}  // namespace

void Scenario::validate() const {
  require(std::isfinite(area_width) && area_width > 0, "scenario.area_width", "must be > 0");
  require(std::isfinite(area_height) && area_height > 0, "scenario.area_height", "must be > 0");
  require(node_count >= 1, "scenario.node_count", "must be >= 1");
  require(std::isfinite(radio_range) && radio_range > 0, "scenario.radio_range", "must be > 0");
  require(loss.drop_probability >= 0 && loss.drop_probability <= 1, "loss.drop_probability",
          "must be in [0, 1]");
  require(mobility.mean_speed >= 0, "mobility.mean_speed", "must be >= 0");
  require(mobility.pause_time >= 0, "mobility.pause_time", "must be >= 0");
  require(mobility.hello_period > 0, "mobility.hello_period", "must be > 0");
  require(mobility.expiry_factor > 1, "mobility.expiry_factor",
          "must be > 1 (expiry must exceed the hello period)");
  require(mobility.position_update_period > 0, "mobility.position_update_period", "must be > 0");
  require(protocol.jitter_max >= 0, "protocol.jitter_max", "must be >= 0");
  require(protocol.rad_max >= 0, "protocol.rad_max", "must be >= 0");
  require(protocol.lba_threshold_fraction >= 0 && protocol.lba_threshold_fraction <= 1,
          "protocol.lba.threshold_fraction", "must be in [0, 1]");
  require(protocol.lba_mc_samples >= 1, "protocol.lba.mc_samples", "must be >= 1");
  require(sr.p >= 0 && sr.p <= 1, "sr.p", "must be in [0, 1]");
  require(sr.n >= 1, "sr.n", "must be >= 1");
  require(sr.timeout > protocol.rad_max + protocol.jitter_max, "sr.timeout",
          "must exceed protocol.rad_max + protocol.jitter_max");
  require(warmup >= 0, "scenario.warmup", "must be >= 0");
  require(nwb_spacing > sr.timeout + protocol.rad_max + protocol.jitter_max, "scenario.nwb_spacing",
          "must leave room for one NWB to complete (> sr.timeout + rad_max + jitter_max)");
}

}  // namespace nwb
