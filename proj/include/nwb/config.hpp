#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nwb/types.hpp"

namespace nwb {

/// Flat `key = value` configuration. `#` starts a comment; keys are dotted
/// (e.g. `loss.drop_probability`); list values are comma separated.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);

/// One selective-rebroadcast variant of a sweep, written `none`,
/// `prob:<p>` or `counter:<n>`.
struct SrVariant {
  SrMode mode = SrMode::kNone;
  double p = 0.0;
  std::uint32_t n = 0;

  std::string label() const;
  friend auto operator<=>(const SrVariant&, const SrVariant&) = default;
};

SrVariant parse_sr_variant(const std::string& text, const SrConfig& defaults);

struct SweepConfig {
  Scenario base;
  std::vector<ProtocolKind> protocols;
  std::vector<SrVariant> sr_modes;
  std::vector<double> drop_probabilities;
  std::vector<std::uint32_t> node_counts;
  std::vector<double> speeds;  // 0 means static
  std::uint32_t seeds = 20;
  std::optional<std::uint32_t> nwbs_per_seed;  // unset: one per node
  std::uint64_t run_cap = 2'000'000;           // max NWB rows

  /// Every key this format understands.
  static const std::vector<std::string>& known_keys();

  /// Throws ConfigError naming the offending key.
  static SweepConfig from_map(const ConfigMap& map);
  void validate() const;

  /// Canonical `key = value` text that round-trips through from_map.
  std::string to_text() const;
};

}  // namespace nwb
