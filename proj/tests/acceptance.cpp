// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nwb/config.hpp"
#include "nwb/harness.hpp"
#include "nwb/metrics.hpp"
#include "nwb/simulation.hpp"
#include "nwb/topology.hpp"

using namespace nwb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  fmt::print("{} {}: {}\n", ok ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Two-sided 95% critical value of Student's t with 19 degrees of freedom.
constexpr double kT19 = 2.093;

struct PresetRun {
  SweepConfig config;
  std::vector<RunRecord> records;
  std::string csv;
  double seconds = 0.0;
};

SweepConfig preset(const std::string& name) {
  std::istringstream in(preset_config(name));
  auto cfg = SweepConfig::from_map(parse_config(in));
  cfg.validate();
  return cfg;
}

PresetRun run_preset(const std::string& name, unsigned jobs) {
  PresetRun out;
  out.config = preset(name);
  const auto t0 = Clock::now();
  out.records = run_sweep(out.config, jobs);
  out.seconds = seconds_since(t0);
  std::ostringstream csv;
  write_csv(csv, out.records);
  out.csv = csv.str();
  return out;
}

struct Cell {
  std::string protocol;
  std::string sr_mode = "none";
  double drop = 0.0;
  double sr_p = 0.0;
};

bool in_cell(const RunRecord& r, const Cell& c) {
  return r.protocol == c.protocol && r.sr_mode == c.sr_mode && r.drop_p == c.drop &&
         r.sr_p == c.sr_p;
}

// Per-seed mean of `field` over the NWBs of one cell, in seed order.
std::vector<double> per_seed(const std::vector<RunRecord>& records, const Cell& cell,
                             double RunRecord::*field) {
  std::map<std::uint64_t, std::pair<double, std::size_t>> acc;
  for (const auto& r : records) {
    if (!in_cell(r, cell)) continue;
    auto& [sum, n] = acc[r.seed];
    sum += r.*field;
    ++n;
  }
  std::vector<double> out;
  for (const auto& [_, v] : acc) out.push_back(v.first / static_cast<double>(v.second));
  return out;
}

std::vector<double> coverage(const std::vector<RunRecord>& rs, const Cell& c) {
  return per_seed(rs, c, &RunRecord::coverage);
}

std::vector<double> overhead(const std::vector<RunRecord>& rs, const Cell& c) {
  return per_seed(rs, c, &RunRecord::norm_overhead);
}

double mean(const std::vector<double>& v) { return describe(v).mean; }

double std_error(const std::vector<double>& v) {
  const auto s = describe(v);
  return s.stddev / std::sqrt(static_cast<double>(s.n));
}

struct Paired {
  double mean_diff = 0.0;
  double t = 0.0;
};

// Paired comparison of a - b over shared seeds.
Paired paired(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const auto s = describe(d);
  Paired p;
  p.mean_diff = s.mean;
  p.t = s.stddev > 0 ? s.mean / (s.stddev / std::sqrt(static_cast<double>(s.n)))
                     : (s.mean > 0 ? INFINITY : 0.0);
  return p;
}

const std::vector<std::string> kProtocols = {"flooding", "lba", "sba", "ahbp", "dcb"};
const std::vector<double> kDrops = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};

// --- criteria -----------------------------------------------------------------

void flooding_identity() {
  const auto t0 = Clock::now();
  Scenario s;
  s.require_connected = true;
  s.loss.drop_probability = 0.0;
  std::size_t runs = 0, exact = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    s.seed = seed;
    Simulation sim(s);
    const RunDescriptor d{0, sim.scenario()};
    for (const auto& c : sim.run()) {
      const auto r = finalize_run(d, c);
      ++runs;
      if (r.coverage == 1.0 && r.norm_overhead == 1.0) ++exact;
    }
  }
  const double secs = seconds_since(t0);
  report(exact == runs && secs < 5.0, "flooding identity",
         fmt::format("{}/{} NWBs with coverage 1 and overhead 1 on 20 connected 30-node "
                     "scenarios, {:.2f} s",
                     exact, runs, secs));
}

void oracle_equivalence() {
  // Small areas keep random placements of 2..6 nodes connected often enough.
  std::size_t instances = 0, matched = 0;
  for (std::uint64_t k = 0; instances < 1000; ++k) {
    Scenario s;
    s.seed = 1000 + k;
    s.node_count = 2 + static_cast<std::uint32_t>(k % 5);
    s.area_width = s.area_height = 500.0;
    s.loss.drop_probability = 0.0;
    Simulation sim(s);
    const auto& topo = sim.initial_topology();
    if (!is_connected(topo)) continue;
    ++instances;
    const NodeId origin = static_cast<NodeId>(k % s.node_count);
    const std::vector<NodeId> origins{origin};
    const auto c = sim.run(origins).at(0);

    std::vector<bool> seen(topo.size(), false);
    std::queue<NodeId> q;
    seen[origin] = true;
    q.push(origin);
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (NodeId v = 0; v < topo.size(); ++v) {
        const auto& a = topo.position(u);
        const auto& b = topo.position(v);
        if (!seen[v] && std::hypot(a.x - b.x, a.y - b.y) <= s.radio_range) {
          seen[v] = true;
          q.push(v);
        }
      }
    }
    std::vector<NodeId> reach;
    for (NodeId v = 0; v < topo.size(); ++v) {
      if (seen[v]) reach.push_back(v);
    }
    if (reach == c.covered_nodes) ++matched;
  }
  report(matched == instances, "oracle equivalence",
         fmt::format("{}/{} connected instances on 2..6 nodes match BFS reachability", matched,
                     instances));
}

void overhead_reduction(const PresetRun& fig7) {
  bool ok = true;
  std::string detail;
  for (const char* p : {"ahbp", "dcb", "sba"}) {
    const auto v = overhead(fig7.records, Cell{p});
    const auto worst = *std::max_element(v.begin(), v.end());
    ok = ok && mean(v) < 1.0 && worst < 1.0 && v.size() == 20;
    detail += fmt::format("{} mean {:.3f} (max seed {:.3f}); ", p, mean(v), worst);
  }
  const auto flood = overhead(fig7.records, Cell{"flooding"});
  detail += fmt::format("flooding mean {:.3f}", mean(flood));
  report(ok, "overhead reduction (50 nodes, zero loss)", detail);
}

void degradation_trend(const PresetRun& fig5, const PresetRun& fig7) {
  bool ok = true;
  std::string detail;
  for (const auto& p : kProtocols) {
    std::vector<std::vector<double>> cov;
    for (double d : kDrops) cov.push_back(coverage(fig5.records, Cell{p, "none", d}));
    std::string series;
    for (std::size_t i = 0; i < cov.size(); ++i) {
      series += fmt::format("{}{:.3f}", i ? "," : "", mean(cov[i]));
      if (i + 1 < cov.size()) {
        const double pooled = std::hypot(std_error(cov[i]), std_error(cov[i + 1]));
        if (mean(cov[i + 1]) > mean(cov[i]) + pooled) ok = false;
      }
    }
    detail += fmt::format("{} [{}]; ", p, series);
  }
  const double sparse = mean(coverage(fig5.records, Cell{"flooding", "none", 0.5}));
  const double dense = mean(coverage(fig7.records, Cell{"flooding", "none", 0.5}));
  ok = ok && sparse < dense;
  detail += fmt::format("flooding at drop 0.5: 30 nodes {:.3f} < 50 nodes {:.3f}", sparse, dense);
  report(ok, "degradation trend", detail);
}

void static_vs_dynamic(const PresetRun& fig5) {
  std::map<std::string, std::vector<double>> cov;
  for (const auto& p : kProtocols) cov[p] = coverage(fig5.records, Cell{p, "none", 0.3});
  bool ok = true;
  std::string detail;
  for (const char* p : {"lba", "sba", "ahbp", "dcb"}) {
    const auto t = paired(cov["flooding"], cov[p]);
    ok = ok && t.mean_diff > 0 && t.t > kT19;
    detail += fmt::format("flooding-{} {:+.4f} (t={:.2f}); ", p, t.mean_diff, t.t);
  }
  std::vector<double> dynamic(20), fixed(20);
  for (std::size_t i = 0; i < 20; ++i) {
    dynamic[i] = (cov["sba"][i] + cov["lba"][i]) / 2;
    fixed[i] = (cov["ahbp"][i] + cov["dcb"][i]) / 2;
  }
  const auto g = paired(dynamic, fixed);
  ok = ok && g.mean_diff > 0 && g.t > kT19;
  detail += fmt::format("{{sba,lba}}-{{ahbp,dcb}} {:+.4f} (t={:.2f})", g.mean_diff, g.t);
  report(ok, "static-vs-dynamic gap (drop 0.3, paired over 20 seeds)", detail);
}

void sr_coverage_gain(const PresetRun& counter, const PresetRun& prob) {
  const double flood_plain = mean(coverage(counter.records, Cell{"flooding", "none", 0.3}));
  bool ok = true;
  std::string detail;
  for (const auto& p : kProtocols) {
    const auto base = coverage(counter.records, Cell{p, "none", 0.3});
    const auto with = coverage(counter.records, Cell{p, "counter", 0.3});
    std::size_t not_worse = 0;
    for (std::size_t i = 0; i < base.size(); ++i) not_worse += with[i] >= base[i] ? 1 : 0;
    const bool cell_ok = not_worse == 20 && mean(with) > flood_plain;
    ok = ok && cell_ok;
    detail += fmt::format("{}+SR {:.4f} ({}/20 seeds >= plain {:.4f}); ", p, mean(with),
                          not_worse, mean(base));
  }
  const double c = mean(coverage(counter.records, Cell{"flooding", "counter", 0.3}));
  const double pr = mean(coverage(prob.records, Cell{"flooding", "prob", 0.3, 0.5}));
  ok = ok && c >= pr;
  detail += fmt::format("plain flooding {:.4f}; counter {:.4f} vs prob(0.5) {:.4f}",
                        flood_plain, c, pr);
  report(ok, "SR coverage gain (drop 0.3, counter n=2)", detail);
}

void sr_adaptivity(const PresetRun& counter, const PresetRun& prob) {
  bool ok = true;
  std::string series;
  double prev = -1.0;
  for (double d : kDrops) {
    const double o = mean(overhead(counter.records, Cell{"flooding", "counter", d}));
    if (o <= prev) ok = false;
    prev = o;
    series += fmt::format("{}{:.3f}", series.empty() ? "" : ",", o);
  }
  std::string probs;
  for (double p : {0.25, 0.5, 0.75}) {
    std::vector<double> all;
    for (const auto& r : prob.records) {
      if (in_cell(r, Cell{"flooding", "prob", 0.0, p})) all.push_back(r.norm_overhead);
    }
    const double o = mean(all);
    ok = ok && std::abs(o - (1.0 + p)) <= 0.02;
    probs += fmt::format(" p={} -> {:.4f};", p, o);
  }
  report(ok, "SR adaptivity",
         fmt::format("counter overhead over drop 0..0.5 [{}];{}", series, probs));
}

void mobility(const PresetRun& mob) {
  std::map<std::string, double> plain, with;
  for (const auto& p : kProtocols) {
    plain[p] = mean(coverage(mob.records, Cell{p, "none", 0.0}));
    with[p] = mean(coverage(mob.records, Cell{p, "counter", 0.0}));
  }
  const double static_max = std::max(plain["ahbp"], plain["dcb"]);
  const double dynamic_min = std::min({plain["flooding"], plain["sba"], plain["lba"]});
  bool ok = static_max < dynamic_min;
  std::string detail;
  for (const auto& p : kProtocols) {
    ok = ok && with[p] > plain[p];
    detail += fmt::format("{} {:.4f}->{:.4f}; ", p, plain[p], with[p]);
  }
  detail += fmt::format("max(ahbp,dcb) {:.4f} vs min(flooding,sba,lba) {:.4f}", static_max,
                        dynamic_min);
  report(ok, "mobility degradation (15 m/s, zero drop)", detail);
}

void determinism_and_scale(const std::vector<std::pair<std::string, PresetRun>>& first) {
  bool identical = true;
  std::string detail;
  double fig5_serial = 0.0;
  for (const auto& [name, run] : first) {
    // Serial re-run against the parallel first pass.
    const auto again = run_preset(name, 1);
    const bool same = again.csv == run.csv;
    identical = identical && same;
    if (name == "fig5_controlled_drop_30") fig5_serial = again.seconds;
    detail += fmt::format("{} {}; ", name, same ? "identical" : "DIFFERS");
  }
  const std::size_t fig5_rows = first.front().second.records.size();
  const bool ok = identical && fig5_rows == 18000 && fig5_serial < 300.0;
  detail += fmt::format("fig5 preset {} NWBs in {:.1f} s on one thread", fig5_rows, fig5_serial);
  report(ok, "determinism and scale", detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  flooding_identity();
  oracle_equivalence();

  const unsigned jobs = default_jobs();
  std::vector<std::pair<std::string, PresetRun>> runs;
  for (const auto& name : preset_names()) runs.emplace_back(name, run_preset(name, jobs));
  auto get = [&](const std::string& name) -> const PresetRun& {
    for (const auto& [n, r] : runs) {
      if (n == name) return r;
    }
    throw std::logic_error("no preset " + name);
  };

  overhead_reduction(get("fig7_50node"));
  degradation_trend(get("fig5_controlled_drop_30"), get("fig7_50node"));
  static_vs_dynamic(get("fig5_controlled_drop_30"));
  sr_coverage_gain(get("counter_sr_30"), get("prob_sr_30"));
  sr_adaptivity(get("counter_sr_30"), get("prob_sr_30"));
  mobility(get("mobility_15mps"));
  determinism_and_scale(runs);

  fmt::print("{} criteria failed; total {:.1f} s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
