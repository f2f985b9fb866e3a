#include "nwb/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nwb {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::uint32_t to_u32(const std::string& key, const std::string& text) {
  const auto v = to_uint(key, text);
  if (v > 0xffffffffULL) throw ConfigError(key + ": value too large");
  return static_cast<std::uint32_t>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key + ": expected true|false, got '" + text + "'");
}

template <typename T, typename F>
std::vector<T> list_of(const std::string& key, const std::string& value, F convert) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(convert(key, item));
  if (out.empty()) throw ConfigError(key + ": list must not be empty");
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{}", items[i]);
  }
  return out;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ConfigMap parse_config(std::istream& in) {
  ConfigMap map;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", lineno, line));
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", lineno));
    if (map.contains(key)) throw ConfigError(key + ": duplicate key");
    map.emplace(std::move(key), std::move(value));
  }
  return map;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string SrVariant::label() const {
  switch (mode) {
    case SrMode::kNone: return "none";
    case SrMode::kProbabilistic: return fmt::format("prob:{}", p);
    case SrMode::kCounter: return fmt::format("counter:{}", n);
  }
  return "none";
}

SrVariant parse_sr_variant(const std::string& text, const SrConfig& defaults) {
  const auto colon = text.find(':');
  const std::string head = colon == std::string::npos ? text : text.substr(0, colon);
  SrVariant v;
  v.mode = parse_sr_mode(head);
  if (v.mode == SrMode::kProbabilistic) {
    v.p = colon == std::string::npos ? defaults.p : to_double("sr.p", text.substr(colon + 1));
    if (!(v.p >= 0 && v.p <= 1)) throw ConfigError("sr.p: must be in [0, 1]");
  } else if (v.mode == SrMode::kCounter) {
    v.n = colon == std::string::npos ? defaults.n : to_u32("sr.n", text.substr(colon + 1));
    if (v.n < 1) throw ConfigError("sr.n: must be >= 1");
  } else if (colon != std::string::npos) {
    throw ConfigError("sweep.sr_modes: 'none' takes no parameter");
  }
  return v;
}

const std::vector<std::string>& SweepConfig::known_keys() {
  static const std::vector<std::string> keys = {
      "scenario.area_width",        "scenario.area_height",
      "scenario.node_count",        "scenario.radio_range",
      "scenario.seed",              "scenario.require_connected",
      "scenario.warmup",            "scenario.nwb_spacing",
      "loss.kind",                  "loss.drop_probability",
      "loss.drop_applies_to_hellos", "mobility.kind",
      "mobility.mean_speed",        "mobility.pause_time",
      "mobility.hello_period",      "mobility.expiry_factor",
      "mobility.position_update_period", "protocol",
      "protocol.jitter_max",        "protocol.rad_max",
      "protocol.lba.threshold_fraction", "protocol.lba.mc_samples",
      "sr.mode",                    "sr.p",
      "sr.n",                       "sr.timeout",
      "sr.count_window",
      "sweep.protocols",            "sweep.sr_modes",
      "sweep.drop_probabilities",   "sweep.node_counts",
      "sweep.speeds",               "sweep.seeds",
      "sweep.nwbs_per_seed",        "sweep.run_cap",
  };
  return keys;
}

SweepConfig SweepConfig::from_map(const ConfigMap& map) {
  const auto& keys = known_keys();
  for (const auto& [key, _] : map) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key + ": unknown configuration key");
    }
  }
  auto get = [&](const char* key) -> const std::string* {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
  };

  SweepConfig cfg;
  Scenario& s = cfg.base;
  if (auto* v = get("scenario.area_width")) s.area_width = to_double("scenario.area_width", *v);
  if (auto* v = get("scenario.area_height")) s.area_height = to_double("scenario.area_height", *v);
  if (auto* v = get("scenario.node_count")) s.node_count = to_u32("scenario.node_count", *v);
  if (auto* v = get("scenario.radio_range")) s.radio_range = to_double("scenario.radio_range", *v);
  if (auto* v = get("scenario.seed")) s.seed = to_uint("scenario.seed", *v);
  if (auto* v = get("scenario.require_connected")) {
    s.require_connected = to_bool("scenario.require_connected", *v);
  }
  if (auto* v = get("scenario.warmup")) s.warmup = to_double("scenario.warmup", *v);
  if (auto* v = get("scenario.nwb_spacing")) s.nwb_spacing = to_double("scenario.nwb_spacing", *v);

  if (auto* v = get("loss.kind")) s.loss.kind = parse_loss(*v);
  if (auto* v = get("loss.drop_probability")) {
    s.loss.drop_probability = to_double("loss.drop_probability", *v);
  }
  if (auto* v = get("loss.drop_applies_to_hellos")) {
    s.loss.drop_applies_to_hellos = to_bool("loss.drop_applies_to_hellos", *v);
  }

  if (auto* v = get("mobility.kind")) s.mobility.kind = parse_mobility(*v);
  if (auto* v = get("mobility.mean_speed")) s.mobility.mean_speed = to_double("mobility.mean_speed", *v);
  if (auto* v = get("mobility.pause_time")) s.mobility.pause_time = to_double("mobility.pause_time", *v);
  if (auto* v = get("mobility.hello_period")) {
    s.mobility.hello_period = to_double("mobility.hello_period", *v);
  }
  if (auto* v = get("mobility.expiry_factor")) {
    s.mobility.expiry_factor = to_double("mobility.expiry_factor", *v);
  }
  if (auto* v = get("mobility.position_update_period")) {
    s.mobility.position_update_period = to_double("mobility.position_update_period", *v);
  }

  if (auto* v = get("protocol")) s.protocol.kind = parse_protocol(*v);
  if (auto* v = get("protocol.jitter_max")) s.protocol.jitter_max = to_double("protocol.jitter_max", *v);
  if (auto* v = get("protocol.rad_max")) s.protocol.rad_max = to_double("protocol.rad_max", *v);
  if (auto* v = get("protocol.lba.threshold_fraction")) {
    s.protocol.lba_threshold_fraction = to_double("protocol.lba.threshold_fraction", *v);
  }
  if (auto* v = get("protocol.lba.mc_samples")) {
    s.protocol.lba_mc_samples = to_u32("protocol.lba.mc_samples", *v);
  }

  if (auto* v = get("sr.mode")) s.sr.mode = parse_sr_mode(*v);
  if (auto* v = get("sr.p")) s.sr.p = to_double("sr.p", *v);
  if (auto* v = get("sr.n")) s.sr.n = to_u32("sr.n", *v);
  if (auto* v = get("sr.timeout")) s.sr.timeout = to_double("sr.timeout", *v);
  if (auto* v = get("sr.count_window")) {
    if (*v == "first_reception") {
      s.sr.count_from_first_reception = true;
    } else if (*v == "after_transmit") {
      s.sr.count_from_first_reception = false;
    } else {
      throw ConfigError("sr.count_window: expected first_reception|after_transmit, got '" + *v + "'");
    }
  }

  if (auto* v = get("sweep.protocols")) {
    cfg.protocols = list_of<ProtocolKind>("sweep.protocols", *v,
                                          [](const std::string&, const std::string& t) {
                                            return parse_protocol(t);
                                          });
  } else {
    cfg.protocols = {s.protocol.kind};
  }
  if (auto* v = get("sweep.sr_modes")) {
    cfg.sr_modes = list_of<SrVariant>("sweep.sr_modes", *v,
                                      [&](const std::string&, const std::string& t) {
                                        return parse_sr_variant(t, s.sr);
                                      });
  } else {
    SrVariant base{s.sr.mode, s.sr.mode == SrMode::kProbabilistic ? s.sr.p : 0.0,
                   s.sr.mode == SrMode::kCounter ? s.sr.n : 0u};
    cfg.sr_modes = {base};
  }
  if (auto* v = get("sweep.drop_probabilities")) {
    cfg.drop_probabilities = list_of<double>("sweep.drop_probabilities", *v, to_double);
  } else {
    cfg.drop_probabilities = {s.loss.drop_probability};
  }
  if (auto* v = get("sweep.node_counts")) {
    cfg.node_counts = list_of<std::uint32_t>("sweep.node_counts", *v, to_u32);
  } else {
    cfg.node_counts = {s.node_count};
  }
  if (auto* v = get("sweep.speeds")) {
    cfg.speeds = list_of<double>("sweep.speeds", *v, to_double);
  } else {
    cfg.speeds = {s.mobility.kind == MobilityKind::kStatic ? 0.0 : s.mobility.mean_speed};
  }
  if (auto* v = get("sweep.seeds")) cfg.seeds = to_u32("sweep.seeds", *v);
  if (auto* v = get("sweep.nwbs_per_seed")) {
    if (*v != "per_node") cfg.nwbs_per_seed = to_u32("sweep.nwbs_per_seed", *v);
  }
  if (auto* v = get("sweep.run_cap")) cfg.run_cap = to_uint("sweep.run_cap", *v);

  sort_unique(cfg.protocols);
  sort_unique(cfg.sr_modes);
  sort_unique(cfg.drop_probabilities);
  sort_unique(cfg.node_counts);
  sort_unique(cfg.speeds);
  cfg.validate();
  return cfg;
}

void SweepConfig::validate() const {
  if (protocols.empty()) throw ConfigError("sweep.protocols: list must not be empty");
  if (sr_modes.empty()) throw ConfigError("sweep.sr_modes: list must not be empty");
  if (drop_probabilities.empty()) throw ConfigError("sweep.drop_probabilities: list must not be empty");
  if (node_counts.empty()) throw ConfigError("sweep.node_counts: list must not be empty");
  if (speeds.empty()) throw ConfigError("sweep.speeds: list must not be empty");
  if (seeds < 1) throw ConfigError("sweep.seeds: must be >= 1");
  if (nwbs_per_seed && *nwbs_per_seed < 1) throw ConfigError("sweep.nwbs_per_seed: must be >= 1");
  for (double p : drop_probabilities) {
    if (!(p >= 0 && p <= 1)) throw ConfigError("sweep.drop_probabilities: values must be in [0, 1]");
  }
  for (auto n : node_counts) {
    if (n < 1) throw ConfigError("sweep.node_counts: values must be >= 1");
  }
  for (double v : speeds) {
    if (!(v >= 0)) throw ConfigError("sweep.speeds: values must be >= 0");
  }
  base.validate();
}

std::string SweepConfig::to_text() const {
  const Scenario& s = base;
  std::vector<std::string> protos;
  for (auto p : protocols) protos.emplace_back(to_string(p));
  std::vector<std::string> srs;
  for (const auto& v : sr_modes) srs.push_back(v.label());

  std::string out;
  auto line = [&](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("scenario.area_width", s.area_width);
  line("scenario.area_height", s.area_height);
  line("scenario.radio_range", s.radio_range);
  line("scenario.seed", s.seed);
  line("scenario.require_connected", s.require_connected);
  line("scenario.warmup", s.warmup);
  line("scenario.nwb_spacing", s.nwb_spacing);
  line("loss.kind", to_string(s.loss.kind));
  line("loss.drop_applies_to_hellos", s.loss.drop_applies_to_hellos);
  line("mobility.pause_time", s.mobility.pause_time);
  line("mobility.hello_period", s.mobility.hello_period);
  line("mobility.expiry_factor", s.mobility.expiry_factor);
  line("protocol.jitter_max", s.protocol.jitter_max);
  line("protocol.rad_max", s.protocol.rad_max);
  line("protocol.lba.threshold_fraction", s.protocol.lba_threshold_fraction);
  line("protocol.lba.mc_samples", s.protocol.lba_mc_samples);
  line("sr.timeout", s.sr.timeout);
  line("sr.count_window", s.sr.count_from_first_reception ? "first_reception" : "after_transmit");
  line("sweep.protocols", join(protos));
  line("sweep.sr_modes", join(srs));
  line("sweep.drop_probabilities", join(drop_probabilities));
  line("sweep.node_counts", join(node_counts));
  line("sweep.speeds", join(speeds));
  line("sweep.seeds", seeds);
  if (nwbs_per_seed) {
    line("sweep.nwbs_per_seed", *nwbs_per_seed);
  } else {
    line("sweep.nwbs_per_seed", "per_node");
  }
  line("sweep.run_cap", run_cap);
  return out;
}

}  // namespace nwb
