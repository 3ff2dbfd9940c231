// qsn: planar-code memory design and shipping-protocol simulation suite.
//
// Subcommands: table1, memory-time, select-distance, threshold, fit,
// surgery-check, netsim, sweep. Every run writes its outputs plus a
// manifest.json into the output directory; --from-manifest replays a
// recorded run and reproduces its outputs byte for byte.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsn/catalog.h"
#include "qsn/code_model.h"
#include "qsn/logistics.h"
#include "qsn/manifest.h"
#include "qsn/montecarlo.h"
#include "qsn/netsim.h"
#include "qsn/surgery.h"

using nlohmann::ordered_json;
using namespace qsn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

struct GlobalOptions {
  std::string catalog_path;
  std::string out_dir;
  std::string format = "text";
  uint64_t seed = 1;
  long long trials = -1;  // -1: per-command default
};

std::string default_out_dir() {
  if (const char* env = std::getenv("QSN_OUT_DIR")) return env;
  return "qsn_out";
}

std::vector<model::PlatformSpec> load_platforms(const GlobalOptions& opts) {
  if (opts.catalog_path.empty()) {
    std::vector<model::PlatformSpec> out;
    for (const auto& entry : model::default_catalog()) out.push_back(entry.platform);
    return out;
  }
  return model::load_catalog(opts.catalog_path);
}

std::string fmt(double v) { return format_double(v); }

std::string csv_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit_stdout(const GlobalOptions& opts, const std::string& text_block, const std::string& csv_block,
                 const ordered_json& machine) {
  if (opts.format == "machine")
    std::fputs((machine.dump(2) + "\n").c_str(), stdout);
  else if (opts.format == "csv")
    std::fputs(csv_block.c_str(), stdout);
  else
    std::fputs(text_block.c_str(), stdout);
}

void write_manifest(const GlobalOptions& opts, const std::string& command, const ordered_json& config,
                    std::vector<std::string> outputs) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config = config;
  manifest.seed = opts.seed;
  outputs.push_back("manifest.json");
  manifest.outputs = std::move(outputs);
  manifest.save((std::filesystem::path(opts.out_dir) / "manifest.json").string());
}

// ---------------------------------------------------------------- table1

int run_table1(const GlobalOptions& opts, const ordered_json& config) {
  const auto platforms = opts.catalog_path.empty() && config.contains("platforms")
                             ? [&] {
                                 std::vector<model::PlatformSpec> ps;
                                 for (const auto& pj : config.at("platforms")) {
                                   model::PlatformSpec p;
                                   p.name = pj.at("name").get<std::string>();
                                   p.pitch = pj.at("pitch_m").get<double>();
                                   p.gate_time = pj.at("gate_time_s").get<double>();
                                   p.error_rate = pj.at("error_rate").get<double>();
                                   ps.push_back(std::move(p));
                                 }
                                 return ps;
                               }()
                             : load_platforms(opts);
  if (platforms.empty()) throw std::runtime_error("catalog is empty");

  model::LinkTarget target;
  target.link_infidelity = config.at("link_infidelity").get<double>();
  target.storage_time = config.at("storage_days").get<double>() * model::kSecondsPerDay;
  logistics::ShipSpec ship;
  ship.teu_count = config.at("teu_count").get<long long>();
  ship.qubit_volume_per_teu = config.at("qubit_volume_per_teu").get<double>();
  ship.one_way_transit = config.at("transit_days").get<double>() * model::kSecondsPerDay;
  model::FailureFit fit;
  fit.alpha = config.at("alpha").get<double>();
  fit.beta = config.at("beta").get<double>();

  const auto table = logistics::build_table1(platforms, target, ship, fit);

  std::ostringstream csv;
  csv << "name,d,N,capacity_per_m3,capacity,bandwidth_hz,capacity_match,bandwidth_match,flag\n";
  std::ostringstream text;
  char line[256];
  text << "platform            d      N   capacity   bandwidth(Hz)  match\n";
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json j;
    j["name"] = row.name;
    j["feasible"] = row.feasible;
    if (row.feasible) {
      j["d"] = row.distance;
      j["N"] = row.qubit_count;
      j["capacity_per_m3"] = row.capacity_per_m3;
      j["capacity_text"] = row.capacity_text;
      j["bandwidth_hz"] = row.bandwidth_hz;
    }
    if (row.has_reference) {
      j["capacity_match"] = row.capacity_matches;
      j["bandwidth_match"] = row.bandwidth_matches;
      j["known_inconsistent_reference"] = row.flagged_inconsistent;
      j["reference_bandwidth_hz"] = row.reference.bandwidth_hz;
    }
    rows.push_back(j);
    const char* match = !row.has_reference          ? "-"
                        : row.flagged_inconsistent  ? "MISMATCH(flagged)"
                        : row.bandwidth_matches     ? "ok"
                                                    : "MISMATCH";
    if (row.feasible) {
      std::snprintf(line, sizeof line, "%-18s %3d %6lld %10s %15.4g  %s\n", row.name.c_str(), row.distance,
                    row.qubit_count, row.capacity_text.c_str(), row.bandwidth_hz, match);
      csv << row.name << ',' << row.distance << ',' << row.qubit_count << ','
          << csv_num(row.capacity_per_m3) << ',' << row.capacity_text << ',' << csv_num(row.bandwidth_hz)
          << ',' << (row.capacity_matches ? 1 : 0) << ',' << (row.bandwidth_matches ? 1 : 0) << ','
          << (row.flagged_inconsistent ? "inconsistent-reference" : "") << '\n';
    } else {
      std::snprintf(line, sizeof line, "%-18s infeasible within the distance cap\n", row.name.c_str());
      csv << row.name << ",,,,,,,,infeasible\n";
    }
    text << line;
  }
  ordered_json machine;
  machine["table1"] = rows;
  machine["config"] = config;

  write_text_file((std::filesystem::path(opts.out_dir) / "table1.csv").string(), csv.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "table1.txt").string(), text.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "table1.json").string(), machine.dump(2));
  write_manifest(opts, "table1", config, {"table1.csv", "table1.txt", "table1.json"});
  emit_stdout(opts, text.str(), csv.str(), machine);
  return kExitOk;
}

// ----------------------------------------------------------- memory-time

int run_memory_time(const GlobalOptions& opts, const ordered_json& config) {
  model::FailureFit fit;
  fit.alpha = config.at("alpha").get<double>();
  fit.beta = config.at("beta").get<double>();
  const double p = config.at("p").get<double>();
  const double gate_time = config.at("gate_time_s").get<double>();
  const double plink = config.at("link_infidelity").get<double>();

  ordered_json machine;
  machine["config"] = config;
  std::ostringstream text, csv;
  std::vector<std::string> outputs;

  if (config.contains("grid_n")) {
    const auto ns = config.at("grid_n").get<std::vector<long long>>();
    const auto plinks = config.at("grid_link_infidelity").get<std::vector<double>>();
    const auto grid = model::memory_time_grid(ns, plinks, gate_time, p, fit);
    csv << "N,d,link_infidelity,seconds\n";
    for (size_t i = 0; i < grid.qubit_counts.size(); ++i)
      for (size_t j = 0; j < grid.link_infidelities.size(); ++j)
        csv << grid.qubit_counts[i] << ',' << grid.distances[i] << ','
            << csv_num(grid.link_infidelities[j]) << ',' << csv_num(grid.seconds[i][j]) << '\n';
    std::ostringstream contour;
    contour << "N,link_infidelity\n";
    for (const auto& point : grid.one_year_contour)
      contour << csv_num(point.qubit_count) << ',' << csv_num(point.link_infidelity) << '\n';
    machine["skipped_n"] = grid.skipped_n;
    machine["contour_points"] = grid.one_year_contour.size();
    text << "grid of " << grid.qubit_counts.size() << " x " << grid.link_infidelities.size()
         << " memory times; " << grid.one_year_contour.size() << " one-year contour points; "
         << grid.skipped_n.size() << " N values skipped\n";
    write_text_file((std::filesystem::path(opts.out_dir) / "memory_grid.csv").string(), csv.str());
    write_text_file((std::filesystem::path(opts.out_dir) / "one_year_contour.csv").string(), contour.str());
    outputs = {"memory_grid.csv", "one_year_contour.csv", "memory_time.json"};
  } else {
    const int d = config.at("d").get<int>();
    const double exact = model::memory_time(p, d, gate_time, plink, fit);
    const double approx = model::memory_time_approx(p, d, gate_time, plink, fit);
    machine["seconds"] = exact;
    machine["days"] = exact / model::kSecondsPerDay;
    machine["unbounded"] = std::isinf(exact);
    machine["approx_seconds"] = approx;
    machine["per_cycle_failure"] = model::per_cycle_failure(p, d, fit);
    machine["fit_reliable"] = fit.reliable_for(p);
    csv << "d,p,gate_time_s,link_infidelity,seconds,days,approx_seconds,fit_reliable\n"
        << d << ',' << csv_num(p) << ',' << csv_num(gate_time) << ',' << csv_num(plink) << ','
        << csv_num(exact) << ',' << csv_num(exact / model::kSecondsPerDay) << ',' << csv_num(approx) << ','
        << (fit.reliable_for(p) ? 1 : 0) << '\n';
    if (std::isinf(exact))
      text << "memory time: unbounded (P_L = 0)\n";
    else
      text << "memory time: " << fmt(exact) << " s = " << fmt(exact / model::kSecondsPerDay) << " days"
           << (fit.reliable_for(p) ? "" : "  [beta*p >= 0.5: outside the trusted fit regime]") << "\n"
           << "small-P_L approximation: " << fmt(approx) << " s\n";
    outputs = {"memory_time.csv", "memory_time.json"};
    write_text_file((std::filesystem::path(opts.out_dir) / "memory_time.csv").string(), csv.str());
  }
  write_text_file((std::filesystem::path(opts.out_dir) / "memory_time.json").string(), machine.dump(2));
  write_manifest(opts, "memory-time", config, outputs);
  emit_stdout(opts, text.str(), csv.str(), machine);
  return kExitOk;
}

// ------------------------------------------------------- select-distance

int run_select_distance(const GlobalOptions& opts, const ordered_json& config) {
  const auto platforms = load_platforms(opts);
  model::LinkTarget target;
  target.link_infidelity = config.at("link_infidelity").get<double>();
  target.storage_time = config.at("storage_days").get<double>() * model::kSecondsPerDay;
  model::FailureFit fit;
  fit.alpha = config.at("alpha").get<double>();
  fit.beta = config.at("beta").get<double>();
  const int d_max = config.at("d_max").get<int>();

  std::ostringstream text, csv;
  csv << "name,feasible,d,N,cycle_time_s,per_cycle_failure,fit_reliable\n";
  ordered_json rows = ordered_json::array();
  for (const auto& platform : platforms) {
    const auto sel = model::select_distance(platform, target, fit, d_max);
    ordered_json j;
    j["name"] = platform.name;
    j["feasible"] = sel.feasible;
    if (sel.feasible) {
      j["d"] = sel.memory.distance;
      j["N"] = sel.memory.qubit_count;
      j["cycle_time_s"] = sel.memory.cycle_time;
      j["per_cycle_failure"] = sel.memory.per_cycle_failure;
      j["fit_reliable"] = sel.memory.fit_reliable;
      csv << platform.name << ",1," << sel.memory.distance << ',' << sel.memory.qubit_count << ','
          << csv_num(sel.memory.cycle_time) << ',' << csv_num(sel.memory.per_cycle_failure) << ','
          << (sel.memory.fit_reliable ? 1 : 0) << '\n';
      text << platform.name << ": d=" << sel.memory.distance << "  N=" << sel.memory.qubit_count << "\n";
    } else {
      csv << platform.name << ",0,,,,,\n";
      text << platform.name << ": infeasible up to d=" << d_max << "\n";
    }
    rows.push_back(j);
  }
  ordered_json machine;
  machine["selection"] = rows;
  machine["config"] = config;
  write_text_file((std::filesystem::path(opts.out_dir) / "selection.csv").string(), csv.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "selection.json").string(), machine.dump(2));
  write_manifest(opts, "select-distance", config, {"selection.csv", "selection.json"});
  emit_stdout(opts, text.str(), csv.str(), machine);
  return kExitOk;
}

// -------------------------------------------------------------- threshold

int run_threshold(const GlobalOptions& opts, const ordered_json& config) {
  const auto ds = config.at("d").get<std::vector<int>>();
  const auto ps = config.at("p").get<std::vector<double>>();
  const long long trials = config.at("trials").get<long long>();
  const uint64_t seed = config.at("seed").get<uint64_t>();
  if (trials < 1) throw std::runtime_error("trials must be >= 1");
  for (int d : ds)
    if (d > 9 || d < 3)
      throw std::runtime_error("desk-scale envelope: sampled distances must stay within 3 <= d <= 9 "
                               "(larger d is analytic-extrapolation territory)");
  for (double p : ps)
    if (p < 5e-4) throw std::runtime_error("desk-scale envelope: p >= 5e-4 for meaningful sampling");
  if (trials > 10000000) throw std::runtime_error("desk-scale envelope: trials <= 1e7 per point");

  std::ostringstream csv;
  csv << "d,p,trials,failures,failure_rate,ci_low,ci_high,upper_bound_only\n";
  std::vector<std::vector<surface::TrialStats>> curves;
  uint64_t stream = 0;
  for (int d : ds) {
    curves.emplace_back();
    for (double p : ps) {
      const auto stats = surface::estimate_failure(d, p, trials, seed + 1000 * stream++);
      curves.back().push_back(stats);
      csv << d << ',' << csv_num(p) << ',' << stats.trials << ',' << stats.failures << ','
          << csv_num(stats.failure_rate) << ',' << csv_num(stats.ci_low) << ',' << csv_num(stats.ci_high)
          << ',' << (stats.upper_bound_only ? 1 : 0) << '\n';
    }
  }
  ordered_json machine;
  machine["config"] = config;
  std::ostringstream text;
  text << "threshold scan: " << ds.size() << " distances x " << ps.size() << " error rates, " << trials
       << " trials per point\n";
  if (curves.size() >= 2) {
    const auto crossing = surface::estimate_crossing(curves[0], curves[1]);
    if (crossing.found) {
      machine["crossing"] = {{"p_low", crossing.p_low},
                             {"p_high", crossing.p_high},
                             {"p_estimate", crossing.p_estimate}};
      text << "estimated d=" << ds[0] << " / d=" << ds[1] << " crossing: p ~ " << fmt(crossing.p_estimate)
           << " (bracketed in [" << fmt(crossing.p_low) << ", " << fmt(crossing.p_high) << "])\n";
    } else {
      machine["crossing"] = nullptr;
      text << "no crossing bracketed on this grid\n";
    }
  }
  write_text_file((std::filesystem::path(opts.out_dir) / "threshold.csv").string(), csv.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "threshold.json").string(), machine.dump(2));
  write_manifest(opts, "threshold", config, {"threshold.csv", "threshold.json"});
  emit_stdout(opts, text.str() + csv.str(), csv.str(), machine);
  return kExitOk;
}

// -------------------------------------------------------------------- fit

int run_fit(const GlobalOptions& opts, const ordered_json& config) {
  const auto ds = config.at("d").get<std::vector<int>>();
  const auto ps = config.at("p").get<std::vector<double>>();
  const auto trials_list = config.at("trials").get<std::vector<long long>>();
  const uint64_t seed = config.at("seed").get<uint64_t>();

  std::vector<surface::TrialStats> stats;
  std::ostringstream csv;
  csv << "d,p,trials,failures,failure_rate\n";
  uint64_t stream = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    const long long trials = trials_list[i < trials_list.size() ? i : trials_list.size() - 1];
    for (double p : ps) {
      const auto s = surface::estimate_failure(ds[i], p, trials, seed + 1000 * stream++);
      stats.push_back(s);
      csv << ds[i] << ',' << csv_num(p) << ',' << s.trials << ',' << s.failures << ','
          << csv_num(s.failure_rate) << '\n';
    }
  }
  const model::FailureFit defaults;
  const auto fit = surface::fit_failure_model(stats, defaults.valid_p_max);
  ordered_json machine;
  machine["config"] = config;
  machine["ok"] = fit.ok;
  std::ostringstream text;
  if (fit.ok) {
    machine["alpha"] = fit.fit.alpha;
    machine["beta"] = fit.fit.beta;
    machine["rms_residual"] = fit.diagnostics.rms_residual;
    machine["max_abs_residual"] = fit.diagnostics.max_abs_residual;
    machine["r_squared"] = fit.diagnostics.r_squared;
    machine["points_used"] = fit.diagnostics.points_used;
    text << "fit: alpha = " << fmt(fit.fit.alpha) << ", beta = " << fmt(fit.fit.beta)
         << "  (RMS log-residual " << fmt(fit.diagnostics.rms_residual) << ", R^2 "
         << fmt(fit.diagnostics.r_squared) << ", " << fit.diagnostics.points_used << " points)\n";
  } else {
    machine["error"] = fit.message;
    text << "fit failed: " << fit.message << "\n";
  }
  write_text_file((std::filesystem::path(opts.out_dir) / "fit_points.csv").string(), csv.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "fit.json").string(), machine.dump(2));
  write_manifest(opts, "fit", config, {"fit_points.csv", "fit.json"});
  emit_stdout(opts, text.str(), csv.str(), machine);
  return fit.ok ? kExitOk : kExitDomainError;
}

// ----------------------------------------------------------- surgery-check

int run_surgery_check(const GlobalOptions& opts, const ordered_json& config) {
  const auto ds = config.at("d").get<std::vector<int>>();
  const int cases = config.at("cases").get<int>();
  const uint64_t seed = config.at("seed").get<uint64_t>();
  const std::string inputs = config.at("inputs").get<std::string>();
  if (inputs.size() != 2) throw std::runtime_error("inputs must be two of 0/1/+/-");

  ordered_json machine;
  machine["config"] = config;
  ordered_json reports = ordered_json::array();
  std::ostringstream text;
  bool all_pass = true;
  for (int d : ds) {
    const auto report = surgery::verify_bell(d, cases, seed, inputs[0], inputs[1]);
    ordered_json j;
    j["d"] = d;
    j["cases_run"] = report.cases_run;
    j["cases_passed"] = report.cases_passed;
    j["inputs"] = inputs;
    ordered_json case_list = ordered_json::array();
    for (const auto& c : report.cases) {
      ordered_json cj;
      cj["seed"] = c.seed;
      cj["pass"] = c.pass;
      cj["merge_product_minus"] = c.merge_product_minus;
      if (!c.pass) cj["detail"] = c.detail;
      case_list.push_back(cj);
    }
    j["cases"] = case_list;
    reports.push_back(j);
    all_pass &= report.cases_passed == report.cases_run;
    text << "d=" << d << " (" << inputs << "): " << report.cases_passed << "/" << report.cases_run
         << " Bell verifications passed\n";
  }
  machine["reports"] = reports;
  machine["all_pass"] = all_pass;
  write_text_file((std::filesystem::path(opts.out_dir) / "surgery.json").string(), machine.dump(2));
  write_manifest(opts, "surgery-check", config, {"surgery.json"});
  emit_stdout(opts, text.str(), text.str(), machine);
  return all_pass ? kExitOk : kExitDomainError;
}

// ----------------------------------------------------------------- netsim

netsim::ScenarioConfig scenario_from_json(const ordered_json& j) {
  netsim::ScenarioConfig config;
  if (j.contains("platform")) {
    const auto& pj = j.at("platform");
    if (pj.is_string()) {
      bool found = false;
      for (const auto& entry : model::default_catalog())
        if (entry.platform.name == pj.get<std::string>()) {
          config.platform = entry.platform;
          found = true;
        }
      if (!found) throw std::runtime_error("unknown platform name: " + pj.get<std::string>());
    } else {
      config.platform.name = pj.at("name").get<std::string>();
      config.platform.pitch = pj.at("pitch_m").get<double>();
      config.platform.gate_time = pj.at("gate_time_s").get<double>();
      config.platform.error_rate = pj.at("error_rate").get<double>();
    }
  }
  if (j.contains("link_infidelity")) config.target.link_infidelity = j.at("link_infidelity").get<double>();
  if (j.contains("storage_days"))
    config.target.storage_time = j.at("storage_days").get<double>() * model::kSecondsPerDay;
  if (j.contains("alpha")) config.fit.alpha = j.at("alpha").get<double>();
  if (j.contains("beta")) config.fit.beta = j.at("beta").get<double>();
  if (j.contains("teu_count")) config.ship.teu_count = j.at("teu_count").get<long long>();
  if (j.contains("qubit_volume_per_teu"))
    config.ship.qubit_volume_per_teu = j.at("qubit_volume_per_teu").get<double>();
  if (j.contains("transit_days"))
    config.ship.one_way_transit = j.at("transit_days").get<double>() * model::kSecondsPerDay;
  if (j.contains("groups")) config.groups = j.at("groups").get<int>();
  if (j.contains("online_containers")) config.online_containers = j.at("online_containers").get<int>();
  if (j.contains("parallel_width")) config.parallel_width = j.at("parallel_width").get<int>();
  if (j.contains("slowdown")) config.slowdown = j.at("slowdown").get<double>();
  if (j.contains("horizon_days"))
    config.horizon = j.at("horizon_days").get<double>() * model::kSecondsPerDay;
  if (j.contains("warm_start")) config.warm_start = j.at("warm_start").get<bool>();
  if (j.contains("container_loss_probability"))
    config.container_loss_probability = j.at("container_loss_probability").get<double>();
  if (j.contains("seed")) config.seed = j.at("seed").get<uint64_t>();
  if (j.contains("per_pair_granularity"))
    config.per_pair_granularity = j.at("per_pair_granularity").get<bool>();
  return config;
}

ordered_json report_to_json(const netsim::SimReport& report) {
  ordered_json j;
  j["realized_bandwidth_hz"] = report.realized_bandwidth_hz;
  j["analytic_bandwidth_hz"] = report.analytic_bandwidth_hz;
  j["steady_start_s"] = report.steady_start;
  j["created"] = report.created;
  j["consumed"] = report.consumed;
  j["discarded"] = report.discarded;
  j["stored"] = report.stored;
  j["in_transit"] = report.in_transit;
  j["max_buffer_a"] = report.max_buffer[0];
  j["max_buffer_b"] = report.max_buffer[1];
  j["interface_busy_fraction_a"] = report.interface_busy_fraction[0];
  j["interface_busy_fraction_b"] = report.interface_busy_fraction[1];
  j["phase_fraction"] = {{"idle", report.phase_fraction[0]},
                         {"entangling", report.phase_fraction[1]},
                         {"entangled_stored", report.phase_fraction[2]},
                         {"in_transit", report.phase_fraction[3]},
                         {"consuming", report.phase_fraction[4]}};
  j["legs_completed"] = report.legs_completed;
  j["sticks_missed_boat"] = report.sticks_missed_boat;
  j["deadlock"] = report.deadlock;
  if (report.deadlock) j["deadlock_detail"] = report.deadlock_detail;
  j["invariants_ok"] = report.invariants_ok;
  if (!report.invariants_ok) j["invariant_detail"] = report.invariant_detail;
  j["event_log_digest"] = report.event_log_digest;
  j["events_processed"] = report.events_processed;
  return j;
}

int run_netsim(const GlobalOptions& opts, const ordered_json& config) {
  netsim::ScenarioConfig scenario = scenario_from_json(config.at("scenario"));
  const bool keep_log = config.at("event_log").get<bool>();
  netsim::FleetSim sim(scenario, keep_log);
  sim.run();
  const auto& report = sim.report();

  ordered_json machine;
  machine["config"] = config;
  machine["report"] = report_to_json(report);
  std::ostringstream text;
  text << "realized bandwidth: " << fmt(report.realized_bandwidth_hz) << " Hz (analytic "
       << fmt(report.analytic_bandwidth_hz) << " Hz)\n"
       << "consumed " << report.consumed << " Ebits over " << report.legs_completed << " legs; invariants "
       << (report.invariants_ok ? "ok" : ("VIOLATED: " + report.invariant_detail)) << "\n";
  if (report.deadlock) text << "DEADLOCK: " << report.deadlock_detail << "\n";

  std::vector<std::string> outputs = {"netsim_report.json"};
  if (keep_log) {
    write_text_file((std::filesystem::path(opts.out_dir) / "event_log.csv").string(),
                    "time,event,container,location,ebits\n" + sim.event_log());
    outputs.push_back("event_log.csv");
  }
  write_text_file((std::filesystem::path(opts.out_dir) / "netsim_report.json").string(), machine.dump(2));
  write_manifest(opts, "netsim", config, outputs);
  emit_stdout(opts, text.str(), text.str(), machine);
  if (report.deadlock || !report.invariants_ok) return kExitDomainError;
  return kExitOk;
}

// ------------------------------------------------------------------ sweep

int run_sweep(const GlobalOptions& opts, const ordered_json& config) {
  netsim::ScenarioConfig base = scenario_from_json(config.at("scenario"));
  const auto slowdowns = config.at("slowdowns").get<std::vector<double>>();
  const auto widths = config.at("widths").get<std::vector<int>>();
  const auto onlines = config.at("online_counts").get<std::vector<int>>();

  const auto sweep = netsim::sweep_interface(base, slowdowns, widths, onlines);
  std::ostringstream csv;
  csv << "online_containers,parallel_width,slowdown,bandwidth_hz,fraction_of_analytic\n";
  for (const auto& cell : sweep.cells)
    csv << cell.online_containers << ',' << cell.parallel_width << ',' << csv_num(cell.slowdown) << ','
        << csv_num(cell.bandwidth_hz) << ',' << csv_num(cell.fraction_of_analytic) << '\n';

  ordered_json machine;
  machine["config"] = config;
  ordered_json maxes = ordered_json::array();
  std::ostringstream text;
  for (const auto& [online, slowdown] : sweep.max_slowdown_at_full_bandwidth) {
    maxes.push_back({{"online_containers", online}, {"max_slowdown_at_99pct", slowdown}});
    text << "online=" << online << ": full bandwidth (>=99%) retained up to slowdown " << fmt(slowdown)
         << "\n";
  }
  machine["max_slowdown_at_full_bandwidth"] = maxes;
  machine["online_needed_for_100x"] = sweep.online_needed_for_100x;
  if (sweep.online_needed_for_100x > 0)
    text << "100x slowdown sustained at full bandwidth with " << sweep.online_needed_for_100x
         << " containers online\n";
  ordered_json cells = ordered_json::array();
  for (const auto& cell : sweep.cells)
    cells.push_back({{"online", cell.online_containers},
                     {"width", cell.parallel_width},
                     {"slowdown", cell.slowdown},
                     {"bandwidth_hz", cell.bandwidth_hz},
                     {"fraction", cell.fraction_of_analytic}});
  machine["cells"] = cells;

  write_text_file((std::filesystem::path(opts.out_dir) / "sweep.csv").string(), csv.str());
  write_text_file((std::filesystem::path(opts.out_dir) / "sweep.json").string(), machine.dump(2));
  write_manifest(opts, "sweep", config, {"sweep.csv", "sweep.json"});
  emit_stdout(opts, text.str() + csv.str(), csv.str(), machine);
  return kExitOk;
}

int dispatch(const GlobalOptions& opts, const std::string& command, const ordered_json& config) {
  std::filesystem::create_directories(opts.out_dir);
  if (command == "table1") return run_table1(opts, config);
  if (command == "memory-time") return run_memory_time(opts, config);
  if (command == "select-distance") return run_select_distance(opts, config);
  if (command == "threshold") return run_threshold(opts, config);
  if (command == "fit") return run_fit(opts, config);
  if (command == "surgery-check") return run_surgery_check(opts, config);
  if (command == "netsim") return run_netsim(opts, config);
  if (command == "sweep") return run_sweep(opts, config);
  throw std::runtime_error("unknown command in manifest: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsn: error-corrected quantum memory design and shipping-protocol simulation"};
  app.set_version_flag("--version", std::string("qsn ") + kToolVersion);

  GlobalOptions opts;
  opts.out_dir = default_out_dir();
  std::string from_manifest;
  app.add_option("--catalog", opts.catalog_path, "platform catalog CSV (name,pitch_m,gate_time_s,error_rate)");
  app.add_option("--out-dir", opts.out_dir, "output directory (env QSN_OUT_DIR)");
  app.add_option("--seed", opts.seed, "base RNG seed");
  app.add_option("--trials", opts.trials, "Monte Carlo trials per point");
  app.add_option("--format", opts.format, "stdout format")
      ->check(CLI::IsMember({"csv", "text", "machine"}));
  app.add_option("--from-manifest", from_manifest, "replay a recorded run from its manifest.json");

  // table1
  auto* table1 = app.add_subcommand("table1", "reproduce the platform capacity/bandwidth table");
  double t1_plink = 1e-10, t1_storage_days = 40.0, t1_volume = 1.0, t1_transit_days = 20.0;
  double t1_alpha = 0.3, t1_beta = 70.0;
  long long t1_teu = 10000;
  table1->add_option("--link-infidelity", t1_plink, "permitted final link infidelity");
  table1->add_option("--storage-days", t1_storage_days, "target storage time in days");
  table1->add_option("--teu", t1_teu, "ship capacity in TEU");
  table1->add_option("--qubit-volume", t1_volume, "m^3 of quantum memories per TEU");
  table1->add_option("--transit-days", t1_transit_days, "one-way transit time in days");
  table1->add_option("--alpha", t1_alpha, "failure-fit alpha");
  table1->add_option("--beta", t1_beta, "failure-fit beta");

  // memory-time
  auto* memory_time = app.add_subcommand("memory-time", "evaluate the memory-time model");
  double mt_p = 1e-3, mt_gate = 3.5e-6, mt_plink = 1e-10, mt_alpha = 0.3, mt_beta = 70.0;
  int mt_d = 33;
  std::vector<long long> mt_grid_n;
  std::vector<double> mt_grid_plink;
  memory_time->add_option("--p", mt_p, "physical error rate");
  memory_time->add_option("--d", mt_d, "code distance");
  memory_time->add_option("--gate-time", mt_gate, "physical gate time in seconds");
  memory_time->add_option("--link-infidelity", mt_plink, "permitted link infidelity");
  memory_time->add_option("--alpha", mt_alpha, "failure-fit alpha");
  memory_time->add_option("--beta", mt_beta, "failure-fit beta");
  memory_time->add_option("--grid-n", mt_grid_n, "N values for a memory-time grid");
  memory_time->add_option("--grid-link-infidelity", mt_grid_plink, "P_link values for the grid");

  // select-distance
  auto* select = app.add_subcommand("select-distance", "minimal code distance per platform");
  double sd_plink = 1e-10, sd_storage_days = 40.0, sd_alpha = 0.3, sd_beta = 70.0;
  int sd_dmax = 1000;
  select->add_option("--link-infidelity", sd_plink, "permitted final link infidelity");
  select->add_option("--storage-days", sd_storage_days, "target storage time in days");
  select->add_option("--alpha", sd_alpha, "failure-fit alpha");
  select->add_option("--beta", sd_beta, "failure-fit beta");
  select->add_option("--d-max", sd_dmax, "distance scan cap");

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Monte Carlo logical failure curves");
  std::vector<int> th_d = {3, 5};
  std::vector<double> th_p = {0.004, 0.0045, 0.005, 0.006, 0.0075, 0.0095};
  threshold->add_option("--d", th_d, "code distances");
  threshold->add_option("--p", th_p, "physical error rates");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit (alpha, beta) to Monte Carlo data");
  std::vector<int> fit_d = {3, 5, 7};
  std::vector<double> fit_p = {1e-3, 2e-3, 3e-3};
  std::vector<long long> fit_trials = {200000, 500000, 500000};
  fit_cmd->add_option("--d", fit_d, "code distances");
  fit_cmd->add_option("--p", fit_p, "physical error rates");
  fit_cmd->add_option("--point-trials", fit_trials, "trials per distance (parallel to --d)");

  // surgery-check
  auto* surgery_cmd = app.add_subcommand("surgery-check", "verify Bell-pair creation on the tableau");
  std::vector<int> sg_d = {2, 3};
  int sg_cases = 100;
  std::string sg_inputs = "00";
  surgery_cmd->add_option("--d", sg_d, "code distances");
  surgery_cmd->add_option("--cases", sg_cases, "random-outcome seeds per distance");
  surgery_cmd->add_option("--inputs", sg_inputs, "logical input pair, two of 0/1/+/- (default 00)");

  // netsim + sweep share scenario flags
  auto* netsim_cmd = app.add_subcommand("netsim", "simulate the shipping protocol");
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep interface slowdown/width/online counts");
  std::string ns_scenario_path;
  std::string ns_platform = "NV- (optical)";
  long long ns_teu = 10000;
  int ns_groups = -1, ns_online = 1, ns_width = 1;
  double ns_slowdown = 1.0, ns_horizon_days = 200.0, ns_loss = 0.0, ns_transit_days = 20.0;
  bool ns_cold = false, ns_event_log = false, ns_per_pair = false;
  for (CLI::App* cmd : {netsim_cmd, sweep_cmd}) {
    cmd->add_option("--scenario", ns_scenario_path, "scenario JSON file (overrides other flags)");
    cmd->add_option("--platform", ns_platform, "built-in platform name");
    cmd->add_option("--teu", ns_teu, "ship capacity in TEU");
    cmd->add_option("--groups", ns_groups, "online pairs (default: one per TEU)");
    cmd->add_option("--online", ns_online, "simultaneous container interfaces per terminal");
    cmd->add_option("--width", ns_width, "intra-stick parallel width");
    cmd->add_option("--slowdown", ns_slowdown, "inter-container interface slowdown factor");
    cmd->add_option("--horizon-days", ns_horizon_days, "simulated horizon in days");
    cmd->add_option("--transit-days", ns_transit_days, "one-way transit in days");
    cmd->add_option("--loss", ns_loss, "per-voyage container loss probability");
    cmd->add_flag("--cold-start", ns_cold, "start with unentangled mobiles at terminal A");
    cmd->add_flag("--per-pair", ns_per_pair, "event per Bell pair instead of per stick");
  }
  netsim_cmd->add_flag("--event-log", ns_event_log, "write event_log.csv");
  std::vector<double> sw_slowdowns = {1, 2, 5, 9, 10, 20, 50, 100};
  std::vector<int> sw_widths = {1};
  std::vector<int> sw_onlines = {1, 2, 4, 8, 11, 16};
  sweep_cmd->add_option("--slowdowns", sw_slowdowns, "slowdown factors to sweep");
  sweep_cmd->add_option("--widths", sw_widths, "parallel widths to sweep");
  sweep_cmd->add_option("--onlines", sw_onlines, "online container counts to sweep");

  app.require_subcommand(0, 1);
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return kExitUsageError;
  }

  try {
    if (!from_manifest.empty()) {
      const RunManifest manifest = RunManifest::load(from_manifest);
      opts.seed = manifest.seed;
      return dispatch(opts, manifest.command, manifest.config);
    }
    if (app.get_subcommands().empty()) {
      std::fprintf(stderr, "error: a subcommand is required (see --help)\n");
      return kExitUsageError;
    }

    ordered_json config;
    const std::string name = app.get_subcommands()[0]->get_name();
    if (name == "table1") {
      config["link_infidelity"] = t1_plink;
      config["storage_days"] = t1_storage_days;
      config["teu_count"] = t1_teu;
      config["qubit_volume_per_teu"] = t1_volume;
      config["transit_days"] = t1_transit_days;
      config["alpha"] = t1_alpha;
      config["beta"] = t1_beta;
      if (!opts.catalog_path.empty()) {
        ordered_json platforms = ordered_json::array();
        for (const auto& p : model::load_catalog(opts.catalog_path))
          platforms.push_back({{"name", p.name},
                               {"pitch_m", p.pitch},
                               {"gate_time_s", p.gate_time},
                               {"error_rate", p.error_rate}});
        config["platforms"] = platforms;
      }
    } else if (name == "memory-time") {
      config["p"] = mt_p;
      config["d"] = mt_d;
      config["gate_time_s"] = mt_gate;
      config["link_infidelity"] = mt_plink;
      config["alpha"] = mt_alpha;
      config["beta"] = mt_beta;
      if (!mt_grid_n.empty()) {
        config["grid_n"] = mt_grid_n;
        config["grid_link_infidelity"] = mt_grid_plink;
      }
    } else if (name == "select-distance") {
      config["link_infidelity"] = sd_plink;
      config["storage_days"] = sd_storage_days;
      config["alpha"] = sd_alpha;
      config["beta"] = sd_beta;
      config["d_max"] = sd_dmax;
    } else if (name == "threshold") {
      config["d"] = th_d;
      config["p"] = th_p;
      config["trials"] = opts.trials >= 0 ? opts.trials : 20000;
      config["seed"] = opts.seed;
    } else if (name == "fit") {
      config["d"] = fit_d;
      config["p"] = fit_p;
      if (opts.trials >= 0) {
        config["trials"] = std::vector<long long>{opts.trials};
      } else {
        config["trials"] = fit_trials;
      }
      config["seed"] = opts.seed;
    } else if (name == "surgery-check") {
      config["d"] = sg_d;
      config["cases"] = sg_cases;
      config["seed"] = opts.seed;
      config["inputs"] = sg_inputs;
    } else if (name == "netsim" || name == "sweep") {
      ordered_json scenario;
      if (!ns_scenario_path.empty()) {
        scenario = ordered_json::parse(read_text_file(ns_scenario_path));
      } else {
        scenario["platform"] = ns_platform;
        scenario["teu_count"] = ns_teu;
        scenario["groups"] = ns_groups;
        scenario["online_containers"] = ns_online;
        scenario["parallel_width"] = ns_width;
        scenario["slowdown"] = ns_slowdown;
        scenario["horizon_days"] = ns_horizon_days;
        scenario["transit_days"] = ns_transit_days;
        scenario["warm_start"] = !ns_cold;
        scenario["container_loss_probability"] = ns_loss;
        scenario["seed"] = opts.seed;
        scenario["per_pair_granularity"] = ns_per_pair;
      }
      config["scenario"] = scenario;
      if (name == "netsim") config["event_log"] = ns_event_log;
      if (name == "sweep") {
        config["slowdowns"] = sw_slowdowns;
        config["widths"] = sw_widths;
        config["online_counts"] = sw_onlines;
      }
    }
    return dispatch(opts, name, config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomainError;
  }
}
