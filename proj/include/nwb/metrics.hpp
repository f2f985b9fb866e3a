#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwb/types.hpp"

namespace nwb {

/// Raw per-NWB counters collected by the simulator.
struct NwbCounters {
  std::uint32_t nwb_index = 0;
  NodeId origin = 0;
  std::uint32_t node_count = 0;
  std::uint32_t covered = 0;          // nodes that received or originated
  std::uint64_t transmissions = 0;    // every data send, SR resends included
  std::uint64_t sr_transmissions = 0;
  std::uint64_t hello_tx = 0;         // hellos sent during the NWB window
  bool quiescent = true;
  bool connected = true;              // live topology at origination
  std::vector<NodeId> covered_nodes;  // sorted
  std::vector<std::uint8_t> tx_per_node;
};

/// Identifies the experiment cell a run belongs to.
struct RunDescriptor {
  std::uint32_t scenario_id = 0;
  Scenario scenario;
};

/// One CSV row.
struct RunRecord {
  std::uint32_t scenario_id = 0;
  std::uint64_t seed = 0;
  std::string protocol;
  std::string sr_mode;
  double sr_p = 0.0;
  std::uint32_t sr_n = 0;
  std::uint32_t node_count = 0;
  double drop_p = 0.0;
  double speed_mps = 0.0;
  std::uint32_t nwb_index = 0;
  NodeId origin = 0;
  bool connected = true;
  std::uint32_t covered = 0;
  std::uint64_t transmissions = 0;
  double coverage = 0.0;
  double norm_overhead = 0.0;
  std::uint64_t hello_tx = 0;
  bool quiescent = true;
};

inline constexpr std::array<std::string_view, 18> kCsvColumns = {
    "scenario_id", "seed",    "protocol",  "sr_mode",   "sr_p",          "sr_n",
    "node_count",  "drop_p",  "speed_mps", "nwb_index", "origin",        "connected",
    "covered",     "transmissions", "coverage", "norm_overhead", "hello_tx", "quiescent"};

/// coverage = covered / node_count; normalized overhead = transmissions /
/// covered. The origin counts as covered and its first send as a
/// transmission.
RunRecord finalize_run(const RunDescriptor& run, const NwbCounters& counters);

struct Stats {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation; 0 for n == 1
  double ci95_half = 0.0;  // normal approximation: 1.96 * stddev / sqrt(n)
};

/// Throws std::invalid_argument on an empty input.
Stats describe(std::span<const double> values);

struct AggregateRecord {
  std::vector<std::string> key;
  std::size_t runs = 0;
  std::size_t excluded = 0;  // non-quiescent records left out
  Stats coverage;
  Stats norm_overhead;
};

/// Folds one group of records. Non-quiescent records are excluded with a
/// warning on stderr. Throws std::invalid_argument if nothing remains.
AggregateRecord aggregate(std::span<const RunRecord> records, std::vector<std::string> key);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunRecord& record);
std::string format_number(double value);

}  // namespace nwb
