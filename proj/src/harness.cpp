#include "nwb/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nwb/simulation.hpp"

namespace nwb {

std::vector<SweepRun> enumerate_runs(const SweepConfig& config) {
  std::vector<SweepRun> runs;
  std::uint32_t cell = 0;
  for (auto nodes : config.node_counts) {
    for (double speed : config.speeds) {
      for (auto protocol : config.protocols) {
        for (const auto& sr : config.sr_modes) {
          for (double drop : config.drop_probabilities) {
            Scenario s = config.base;
            s.node_count = nodes;
            s.mobility.mean_speed = speed;
            s.mobility.kind = speed > 0 ? MobilityKind::kRandomWaypoint : MobilityKind::kStatic;
            s.protocol.kind = protocol;
            s.sr.mode = sr.mode;
            if (sr.mode == SrMode::kProbabilistic) s.sr.p = sr.p;
            if (sr.mode == SrMode::kCounter) s.sr.n = sr.n;
            s.loss.drop_probability = drop;
            for (std::uint32_t k = 0; k < config.seeds; ++k) {
              Scenario seeded = s;
              seeded.seed = config.base.seed + k;
              runs.push_back(SweepRun{cell, seeded, config.nwbs_per_seed.value_or(nodes)});
            }
            ++cell;
          }
        }
      }
    }
  }
  return runs;
}

std::uint64_t count_rows(const SweepConfig& config) {
  std::uint64_t rows = 0;
  for (auto nodes : config.node_counts) {
    const std::uint64_t per_seed = config.nwbs_per_seed.value_or(nodes);
    rows += per_seed * config.seeds * config.speeds.size() * config.protocols.size() *
            config.sr_modes.size() * config.drop_probabilities.size();
  }
  return rows;
}

std::vector<RunRecord> execute_run(const SweepRun& run) {
  Simulation sim(run.scenario);
  const auto counters = sim.run(sim.origin_order(run.nwbs));
  const RunDescriptor descriptor{run.scenario_id, run.scenario};
  std::vector<RunRecord> out;
  out.reserve(counters.size());
  for (const auto& c : counters) out.push_back(finalize_run(descriptor, c));
  return out;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config, unsigned jobs) {
  const auto rows = count_rows(config);
  if (rows > config.run_cap) {
    throw ConfigError(fmt::format("sweep.run_cap: sweep needs {} NWB rows, cap is {}", rows,
                                  config.run_cap));
  }
  const auto runs = enumerate_runs(config);
  std::vector<std::vector<RunRecord>> results(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) results[i] = execute_run(runs[i]);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(runs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::vector<RunRecord> out;
  out.reserve(rows);
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(out));
  return out;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  write_csv_header(out);
  for (const auto& r : records) write_csv_row(out, r);
}

unsigned default_jobs() {
  if (const char* env = std::getenv("NWB_JOBS")) {
    unsigned v = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// --- CSV reading ------------------------------------------------------------

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_field(const std::string& column, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("column '" + column + "': cannot parse '" + text + "'");
  }
  return v;
}

void check_header(const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i >= header.size()) {
      throw std::runtime_error(fmt::format("CSV header: missing column '{}'", kCsvColumns[i]));
    }
    if (header[i] != kCsvColumns[i]) {
      throw std::runtime_error(fmt::format("CSV header: expected column '{}' at position {}, got '{}'",
                                           kCsvColumns[i], i, header[i]));
    }
  }
  if (header.size() > kCsvColumns.size()) {
    throw std::runtime_error(
        fmt::format("CSV header: unexpected column '{}'", header[kCsvColumns.size()]));
  }
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV: missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_row(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split_row(line);
    if (row.size() != table.header.size()) {
      throw std::runtime_error(fmt::format("CSV: row {} has {} fields, header has {}",
                                           table.rows.size() + 1, row.size(), table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file '" + path + "'");
  return read_csv(in);
}

std::vector<RunRecord> parse_records(const CsvTable& table) {
  check_header(table.header);
  std::vector<RunRecord> out;
  out.reserve(table.rows.size());
  auto col = [](std::size_t i) { return std::string(kCsvColumns[i]); };
  for (const auto& row : table.rows) {
    RunRecord r;
    r.scenario_id = parse_field<std::uint32_t>(col(0), row[0]);
    r.seed = parse_field<std::uint64_t>(col(1), row[1]);
    r.protocol = row[2];
    r.sr_mode = row[3];
    r.sr_p = parse_field<double>(col(4), row[4]);
    r.sr_n = parse_field<std::uint32_t>(col(5), row[5]);
    r.node_count = parse_field<std::uint32_t>(col(6), row[6]);
    r.drop_p = parse_field<double>(col(7), row[7]);
    r.speed_mps = parse_field<double>(col(8), row[8]);
    r.nwb_index = parse_field<std::uint32_t>(col(9), row[9]);
    r.origin = parse_field<NodeId>(col(10), row[10]);
    r.connected = parse_field<int>(col(11), row[11]) != 0;
    r.covered = parse_field<std::uint32_t>(col(12), row[12]);
    r.transmissions = parse_field<std::uint64_t>(col(13), row[13]);
    r.coverage = parse_field<double>(col(14), row[14]);
    r.norm_overhead = parse_field<double>(col(15), row[15]);
    r.hello_tx = parse_field<std::uint64_t>(col(16), row[16]);
    r.quiescent = parse_field<int>(col(17), row[17]) != 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AggregateRecord> summarize(const CsvTable& table,
                                       const std::vector<std::string>& group_by) {
  const auto records = parse_records(table);
  std::vector<std::size_t> columns;
  for (const auto& name : group_by) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
      throw std::runtime_error("--group-by: unknown column '" + name + "'");
    }
    columns.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }
  std::map<std::vector<std::string>, std::size_t> slot;
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<RunRecord>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::vector<std::string> key;
    for (auto c : columns) key.push_back(table.rows[i][c]);
    auto [it, inserted] = slot.try_emplace(key, groups.size());
    if (inserted) {
      keys.push_back(key);
      groups.emplace_back();
    }
    groups[it->second].push_back(records[i]);
  }
  std::vector<AggregateRecord> out;
  out.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) out.push_back(aggregate(groups[g], keys[g]));
  return out;
}

std::string render_summary(const std::vector<std::string>& group_by,
                           const std::vector<AggregateRecord>& groups) {
  std::vector<std::string> header = group_by;
  for (const char* h : {"runs", "coverage_mean", "coverage_sd", "coverage_ci95", "overhead_mean",
                        "overhead_sd", "overhead_ci95"}) {
    header.emplace_back(h);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& g : groups) {
    std::vector<std::string> row = g.key;
    row.push_back(std::to_string(g.runs));
    for (double v : {g.coverage.mean, g.coverage.stddev, g.coverage.ci95_half,
                     g.norm_overhead.mean, g.norm_overhead.stddev, g.norm_overhead.ci95_half}) {
      row.push_back(fmt::format("{:.12g}", v));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += fmt::format("{:<{}}", row[c], width[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

// --- presets ------------------------------------------------------------------

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig5_controlled_drop_30", "fig7_50node", "mobility_15mps", "counter_sr_30", "prob_sr_30"};
  return names;
}

std::string preset_config(const std::string& name) {
  SweepConfig cfg;
  cfg.protocols = {ProtocolKind::kFlooding, ProtocolKind::kLba, ProtocolKind::kSba,
                   ProtocolKind::kAhbp, ProtocolKind::kDcb};
  cfg.sr_modes = {SrVariant{}};
  cfg.drop_probabilities = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  cfg.node_counts = {30};
  cfg.speeds = {0.0};
  cfg.seeds = 20;

  std::string title;
  if (name == "fig5_controlled_drop_30") {
    title = "Node coverage and overhead under controlled drop, 30 nodes";
  } else if (name == "fig7_50node") {
    title = "Node coverage and overhead under controlled drop, 50 nodes";
    cfg.node_counts = {50};
  } else if (name == "mobility_15mps") {
    title = "Random waypoint at 15 m/s, zero drop, with and without counter SR (n = 2)";
    cfg.drop_probabilities = {0.0};
    cfg.speeds = {15.0};
    cfg.sr_modes = {SrVariant{}, SrVariant{SrMode::kCounter, 0.0, 2}};
  } else if (name == "counter_sr_30") {
    title = "Counter SR (n = 2) on every protocol, 30 nodes, controlled drop";
    cfg.sr_modes = {SrVariant{}, SrVariant{SrMode::kCounter, 0.0, 2}};
  } else if (name == "prob_sr_30") {
    title = "Flooding with probabilistic SR, 30 nodes, controlled drop";
    cfg.protocols = {ProtocolKind::kFlooding};
    cfg.sr_modes = {SrVariant{}, SrVariant{SrMode::kProbabilistic, 0.25, 0},
                    SrVariant{SrMode::kProbabilistic, 0.5, 0},
                    SrVariant{SrMode::kProbabilistic, 0.75, 0}};
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("--name: unknown preset '" + name + "' (known: " + known + ")");
  }
  cfg.validate();
  return "# preset: " + name + "\n# " + title + "\n" + cfg.to_text();
}

}  // namespace nwb
