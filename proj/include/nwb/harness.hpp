#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nwb/config.hpp"
#include "nwb/metrics.hpp"

namespace nwb {

/// One simulation run of a sweep: an experiment cell at one seed.
struct SweepRun {
  std::uint32_t scenario_id;  // cell index
  Scenario scenario;
  std::uint32_t nwbs;
};

/// Cells nest as node_count > speed > protocol > sr variant > drop; seeds
/// are innermost. The enumeration order is the CSV row order.
std::vector<SweepRun> enumerate_runs(const SweepConfig& config);
std::uint64_t count_rows(const SweepConfig& config);

/// Runs every simulation of one (cell, seed) and returns its rows.
std::vector<RunRecord> execute_run(const SweepRun& run);

/// Throws ConfigError when the row count exceeds the run cap. Rows come
/// back in enumeration order regardless of `jobs`.
std::vector<RunRecord> run_sweep(const SweepConfig& config, unsigned jobs);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// Job count from NWB_JOBS, else the hardware concurrency.
unsigned default_jobs();

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Parses rows of a harness CSV. Throws std::runtime_error naming the first
/// missing or unexpected column.
std::vector<RunRecord> parse_records(const CsvTable& table);

/// Groups by the named columns (first-appearance order) and aggregates.
std::vector<AggregateRecord> summarize(const CsvTable& table,
                                       const std::vector<std::string>& group_by);
std::string render_summary(const std::vector<std::string>& group_by,
                           const std::vector<AggregateRecord>& groups);

const std::vector<std::string>& preset_names();
/// Config text for a named experiment preset; throws ConfigError if unknown.
std::string preset_config(const std::string& name);

}  // namespace nwb
