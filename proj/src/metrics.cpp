#include "nwb/metrics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace nwb {

RunRecord finalize_run(const RunDescriptor& run, const NwbCounters& counters) {
  const Scenario& s = run.scenario;
  if (counters.covered == 0 || counters.transmissions == 0) {
    throw std::invalid_argument("finalize_run: origin must count as covered and as a sender");
  }
  RunRecord r;
  r.scenario_id = run.scenario_id;
  r.seed = s.seed;
  r.protocol = std::string(to_string(s.protocol.kind));
  r.sr_mode = std::string(to_string(s.sr.mode));
  r.sr_p = s.sr.mode == SrMode::kProbabilistic ? s.sr.p : 0.0;
  r.sr_n = s.sr.mode == SrMode::kCounter ? s.sr.n : 0;
  r.node_count = s.node_count;
  r.drop_p = s.loss.kind == LossKind::kPerfect ? 0.0 : s.loss.drop_probability;
  r.speed_mps = s.mobility.kind == MobilityKind::kStatic ? 0.0 : s.mobility.mean_speed;
  r.nwb_index = counters.nwb_index;
  r.origin = counters.origin;
  r.connected = counters.connected;
  r.covered = counters.covered;
  r.transmissions = counters.transmissions;
  r.coverage = static_cast<double>(r.covered) / static_cast<double>(s.node_count);
  r.norm_overhead = static_cast<double>(r.transmissions) / static_cast<double>(r.covered);
  r.hello_tx = counters.hello_tx;
  r.quiescent = counters.quiescent;
  return r;
}

Stats describe(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("describe: empty sample");
  // Welford's single-pass recurrence.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : values) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  Stats s;
  s.n = n;
  s.mean = mean;
  s.stddev = n > 1 ? std::sqrt(std::max(0.0, m2) / static_cast<double>(n - 1)) : 0.0;
  s.ci95_half = 1.96 * s.stddev / std::sqrt(static_cast<double>(n));
  return s;
}

AggregateRecord aggregate(std::span<const RunRecord> records, std::vector<std::string> key) {
  AggregateRecord agg;
  agg.key = std::move(key);
  std::vector<double> coverage;
  std::vector<double> overhead;
  coverage.reserve(records.size());
  overhead.reserve(records.size());
  for (const auto& r : records) {
    if (!r.quiescent) {
      ++agg.excluded;
      continue;
    }
    coverage.push_back(r.coverage);
    overhead.push_back(r.norm_overhead);
  }
  if (agg.excluded > 0) {
    std::cerr << "warning: " << agg.excluded
              << " non-quiescent record(s) excluded from aggregate (nwb_spacing too small?)\n";
  }
  if (coverage.empty()) throw std::invalid_argument("aggregate: empty group");
  agg.runs = coverage.size();
  agg.coverage = describe(coverage);
  agg.norm_overhead = describe(overhead);
  return agg;
}

std::string format_number(double value) { return fmt::format("{}", value); }

void write_csv_header(std::ostream& out) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) out << ',';
    out << kCsvColumns[i];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const RunRecord& r) {
  fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario_id,
             r.seed, r.protocol, r.sr_mode, r.sr_p, r.sr_n, r.node_count, r.drop_p, r.speed_mps,
             r.nwb_index, r.origin, r.connected ? 1 : 0, r.covered, r.transmissions, r.coverage,
             r.norm_overhead, r.hello_tx, r.quiescent ? 1 : 0);
}

}  // namespace nwb
