// nwbsim: run network-wide broadcast sweeps and summarize their CSV output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nwb/config.hpp"
#include "nwb/harness.hpp"

namespace {

std::vector<std::string> split_columns(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-wide broadcast simulator for mobile ad hoc networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned jobs = nwb::default_jobs();
  auto* run = app.add_subcommand("run", "Execute a sweep and write one CSV row per NWB");
  run->add_option("--config", config_path, "Sweep configuration file")->required();
  run->add_option("--out", out_path, "Output CSV path")->required();
  run->add_option("--jobs", jobs, "Parallel runs (default: $NWB_JOBS or hardware threads)");

  std::string in_path;
  std::string group_by = "protocol,sr_mode,drop_p";
  auto* summarize = app.add_subcommand("summarize", "Aggregate a CSV by the given columns");
  summarize->add_option("--in", in_path, "CSV produced by 'run'")->required();
  summarize->add_option("--group-by", group_by, "Comma-separated grouping columns");

  std::string preset_name;
  std::string preset_out;
  auto* presets = app.add_subcommand("presets", "Write a built-in experiment configuration");
  presets->add_option("--name", preset_name, "Preset id (omit to list)");
  presets->add_option("--out", preset_out, "Output file (default: stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a configuration file");
  validate->add_option("--config", validate_path, "Sweep configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = nwb::SweepConfig::from_map(nwb::load_config_file(config_path));
      const auto records = nwb::run_sweep(cfg, jobs);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
      nwb::write_csv(out, records);
      std::cerr << "wrote " << records.size() << " rows to " << out_path << "\n";
    } else if (*summarize) {
      const auto columns = split_columns(group_by);
      const auto table = nwb::read_csv_file(in_path);
      std::cout << nwb::render_summary(columns, nwb::summarize(table, columns));
    } else if (*presets) {
      if (preset_name.empty()) {
        for (const auto& n : nwb::preset_names()) std::cout << n << "\n";
        return 0;
      }
      const auto text = nwb::preset_config(preset_name);
      if (preset_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(preset_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + preset_out + "'");
        out << text;
      }
    } else if (*validate) {
      const auto cfg = nwb::SweepConfig::from_map(nwb::load_config_file(validate_path));
      const auto rows = nwb::count_rows(cfg);
      if (rows > cfg.run_cap) {
        throw nwb::ConfigError("sweep.run_cap: sweep needs " + std::to_string(rows) +
                               " NWB rows, cap is " + std::to_string(cfg.run_cap));
      }
      std::cout << "ok: " << rows << " NWB rows\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
