#include "qsn/netsim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsn::netsim {

const char* location_name(Location loc) {
  switch (loc) {
    case Location::kTerminalA: return "A";
    case Location::kTerminalB: return "B";
    case Location::kAtSea: return "sea";
  }
  return "?";
}

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::kIdle: return "idle";
    case Phase::kEntangling: return "entangling";
    case Phase::kEntangledStored: return "entangled-stored";
    case Phase::kInTransit: return "in-transit";
    case Phase::kConsuming: return "consuming";
  }
  return "?";
}

void ScenarioConfig::finalize() {
  platform.validate();
  target.validate();
  fit.validate();
  ship.validate();
  if (groups < 0) groups = static_cast<int>(ship.teu_count);
  if (groups < 1) throw std::invalid_argument("scenario: need at least one online pair");
  if (containers_per_group != 7)
    throw std::invalid_argument("scenario: the rotation protocol uses exactly 7 containers per online pair");
  if (online_containers < 1) throw std::invalid_argument("scenario: online container count must be >= 1");
  if (parallel_width < 1) throw std::invalid_argument("scenario: parallel width must be >= 1");
  if (slowdown < 1.0) throw std::invalid_argument("scenario: slowdown must be >= 1");
  if (!(container_loss_probability >= 0.0 && container_loss_probability < 1.0))
    throw std::invalid_argument("scenario: loss probability must be in [0, 1)");
  if (horizon < 3.0 * 2.0 * ship.one_way_transit)
    throw std::invalid_argument("scenario: horizon must cover at least three round trips");

  const auto selection = model::select_distance(platform, target, fit);
  if (!selection.feasible)
    throw std::invalid_argument("scenario: platform cannot reach the storage target at any distance");
  distance = selection.memory.distance;
  const auto stick = logistics::make_stick(platform, selection.memory);
  stick_ebits = static_cast<long long>(std::floor(stick.capacity_per_m3 * ship.qubit_volume_per_teu));
  bell_time = 12.0 * distance * platform.gate_time;
  stick_time = logistics::stick_entangle_time(static_cast<double>(stick_ebits), bell_time, parallel_width,
                                              slowdown);
  if (per_pair_granularity && stick_ebits * static_cast<long long>(groups) > 200000)
    throw std::invalid_argument("scenario: per-pair granularity is for small fleets (ebits x groups <= 2e5)");
}

FleetSim::FleetSim(const ScenarioConfig& config, bool keep_event_log)
    : config_(config), keep_event_log_(keep_event_log), rng_(config.seed) {
  config_.finalize();
  const int g = config_.groups;
  containers_.resize(static_cast<size_t>(g) * 7);
  running_.resize(containers_.size(), Job{0, JobKind::kEntangle, 0});
  waiting_for_stationary_.resize(2);
  phase_population_.assign(5, 0);

  const long long c = config_.stick_ebits;
  for (int group = 0; group < g; ++group) {
    const int base = group * 7;
    for (int i = 0; i < 7; ++i) {
      Container& unit = containers_[base + i];
      unit.id = base + i;
      unit.group = group;
      unit.role = i < 4 ? Role::kStationary : Role::kMobile;
      unit.location = (i == 2 || i == 3 || i == 6) ? Location::kTerminalB : Location::kTerminalA;
    }
    if (config_.warm_start) {
      // One prepared mobile at each terminal, one entangled unit mid-ocean.
      auto entangle_pair = [&](int mobile, int stationary) {
        containers_[mobile].ebits = c;
        containers_[mobile].partner = stationary;
        containers_[stationary].partner = mobile;
        containers_[mobile].phase = Phase::kEntangledStored;
        containers_[stationary].phase = Phase::kEntangledStored;
      };
      entangle_pair(base + 4, base + 0);  // at A, ready to ship
      entangle_pair(base + 5, base + 1);  // aboard ship, A -> B
      entangle_pair(base + 6, base + 2);  // at B, ready to ship
      containers_[base + 5].location = Location::kAtSea;
      containers_[base + 5].phase = Phase::kInTransit;
      cargo_.push_back(base + 5);
      created_ += 3 * c;
      stored_[0] += c;
      stored_[1] += c;
      in_transit_ += c;
      if (c == 0) {
        // Zero-capacity sticks carry nothing; keep them ashore and idle.
        containers_[base + 4].phase = Phase::kIdle;
        containers_[base + 5].phase = Phase::kIdle;
        containers_[base + 5].location = Location::kTerminalA;
        containers_[base + 6].phase = Phase::kIdle;
        for (int i : {0, 1, 2}) containers_[base + i].partner = -1;
        for (int i : {4, 5, 6}) containers_[base + i].partner = -1;
      }
    }
  }
  if (config_.warm_start && config_.stick_ebits == 0) cargo_.clear();

  for (auto& unit : containers_) ++phase_population_[static_cast<int>(unit.phase)];

  if (config_.warm_start) {
    ship_at_sea_ = true;
    cold_waiting_ = false;
    push_event(config_.ship.one_way_transit / 2.0, EventKind::kShipArrive,
               static_cast<int>(Location::kTerminalB));
  } else {
    ship_at_sea_ = false;
    ship_port_ = Location::kTerminalA;
    cold_waiting_ = true;
    // Entangle every mobile unit at A; one per group first so the first
    // shipload covers all groups.
    for (int slot = 4; slot <= 6; ++slot)
      for (int group = 0; group < g; ++group) start_entangle(group * 7 + slot);
  }
  report_.analytic_bandwidth_hz = static_cast<double>(config_.stick_ebits) *
                                  static_cast<double>(config_.ship.teu_count) / config_.ship.one_way_transit;
  report_.steady_start = config_.warm_start ? 2.0 * config_.ship.one_way_transit : 0.0;
}

void FleetSim::advance_phase_integrals(double now) {
  const double dt = now - phase_mark_;
  if (dt > 0) {
    for (int i = 0; i < 5; ++i) phase_integral_[i] += dt * static_cast<double>(phase_population_[i]);
    phase_mark_ = now;
  }
}

void FleetSim::set_phase(Container& c, Phase phase) {
  if (c.phase == phase) return;
  advance_phase_integrals(clock_);
  --phase_population_[static_cast<int>(c.phase)];
  ++phase_population_[static_cast<int>(phase)];
  c.phase = phase;
}

void FleetSim::log_event(double t, const char* what, int container, Location loc, long long ebits) {
  char line[128];
  const int len = std::snprintf(line, sizeof line, "%.6f,%s,%d,%s,%lld\n", t, what, container,
                                location_name(loc), ebits);
  for (int i = 0; i < len; ++i) {
    digest_ ^= static_cast<unsigned char>(line[i]);
    digest_ *= 1099511628211ULL;
  }
  if (keep_event_log_) event_log_.append(line, static_cast<size_t>(len));
}

void FleetSim::push_event(double t, EventKind kind, int subject) {
  events_.push(Event{t, next_seq_++, kind, subject});
}

void FleetSim::request_job(int terminal, Job job) {
  pending_[terminal].push_back(job);
  start_or_queue(terminal);
}

void FleetSim::start_or_queue(int terminal) {
  while (active_jobs_[terminal] < config_.online_containers && !pending_[terminal].empty()) {
    const Job job = pending_[terminal].front();
    pending_[terminal].pop_front();
    begin_job(terminal, job);
  }
}

void FleetSim::begin_job(int terminal, const Job& job) {
  busy_integral_[terminal] += active_jobs_[terminal] * (clock_ - busy_mark_[terminal]);
  busy_mark_[terminal] = clock_;
  ++active_jobs_[terminal];
  running_[job.container] = job;
  const double duration = config_.per_pair_granularity
                              ? config_.bell_time * config_.slowdown / config_.parallel_width *
                                    static_cast<double>(job.batch)
                              : config_.stick_time;
  push_event(clock_ + duration, EventKind::kJobDone, job.container);
}

int FleetSim::free_stationary(int terminal, int group) const {
  const int base = group * 7 + (terminal == 0 ? 0 : 2);
  for (int i = 0; i < 2; ++i)
    if (containers_[base + i].partner < 0) return base + i;
  return -1;
}

void FleetSim::start_entangle(int container_id) {
  Container& c = containers_[container_id];
  const int terminal = terminal_of(c);
  if (config_.stick_ebits == 0) {
    set_phase(c, Phase::kIdle);
    return;
  }
  const int stationary = free_stationary(terminal, c.group);
  if (stationary < 0) {
    set_phase(c, Phase::kIdle);
    waiting_for_stationary_[terminal].push_back(container_id);
    return;
  }
  c.partner = stationary;
  containers_[stationary].partner = container_id;
  set_phase(c, Phase::kEntangling);
  set_phase(containers_[stationary], Phase::kEntangling);
  const long long batch = config_.per_pair_granularity ? 1 : config_.stick_ebits;
  request_job(terminal, Job{container_id, JobKind::kEntangle, batch});
}

void FleetSim::release_stationary(int stationary_id) {
  Container& s = containers_[stationary_id];
  const int terminal = terminal_of(s);
  s.partner = -1;
  set_phase(s, Phase::kIdle);
  auto& waiting = waiting_for_stationary_[terminal];
  for (auto it = waiting.begin(); it != waiting.end(); ++it)
    if (containers_[*it].group == s.group) {
      const int container_id = *it;
      waiting.erase(it);
      start_entangle(container_id);
      return;
    }
}

void FleetSim::finish_job(int container_id) {
  Container& c = containers_[container_id];
  const int terminal = terminal_of(c);
  busy_integral_[terminal] += active_jobs_[terminal] * (clock_ - busy_mark_[terminal]);
  busy_mark_[terminal] = clock_;
  --active_jobs_[terminal];
  const Job job = running_[container_id];

  if (job.kind == JobKind::kEntangle) {
    c.ebits += job.batch;
    created_ += job.batch;
    stored_[terminal] += job.batch;
    report_.max_buffer[terminal] = std::max(report_.max_buffer[terminal], stored_[terminal]);
    if (c.ebits >= config_.stick_ebits) {
      set_phase(c, Phase::kEntangledStored);
      if (c.partner >= 0) set_phase(containers_[c.partner], Phase::kEntangledStored);
      log_event(clock_, "entangled", container_id, c.location, c.ebits);
      if (cold_waiting_ && !ship_at_sea_ && static_cast<int>(ship_port_) == terminal) try_cold_departure();
    } else {
      request_job(terminal, Job{container_id, JobKind::kEntangle, 1});
    }
  } else {
    c.ebits -= job.batch;
    consumed_ += job.batch;
    stored_[terminal] -= job.batch;
    consumption_log_.emplace_back(clock_, job.batch);
    if (c.ebits <= 0) {
      log_event(clock_, "consumed", container_id, c.location, config_.stick_ebits);
      if (c.partner >= 0) {
        const int partner = c.partner;
        c.partner = -1;
        containers_[partner].partner = -1;
        release_stationary(partner);
      }
      start_entangle(container_id);
    } else {
      request_job(terminal, Job{container_id, JobKind::kConsume, 1});
    }
  }
  start_or_queue(terminal);
}

void FleetSim::try_cold_departure() {
  const int terminal = static_cast<int>(ship_port_);
  long long prepared = 0;
  for (const auto& c : containers_)
    if (c.role == Role::kMobile && terminal_of(c) == terminal && c.phase == Phase::kEntangledStored &&
        c.ebits > 0)
      ++prepared;
  const long long want = std::min<long long>(config_.ship.teu_count, config_.groups);
  if (prepared >= want) {
    cold_waiting_ = false;
    depart(terminal);
  }
}

void FleetSim::depart(int terminal) {
  if (first_departure_ < 0.0) first_departure_ = clock_;
  std::vector<uint8_t> group_loaded(config_.groups, 0);
  long long slots = config_.ship.teu_count;
  cargo_.clear();
  for (auto& c : containers_) {
    if (slots == 0) break;
    if (c.role != Role::kMobile || terminal_of(c) != terminal || c.phase != Phase::kEntangledStored)
      continue;
    if (c.ebits <= 0 || group_loaded[c.group]) continue;
    group_loaded[c.group] = 1;
    c.location = Location::kAtSea;
    set_phase(c, Phase::kInTransit);
    stored_[terminal] -= c.ebits;
    in_transit_ += c.ebits;
    if (c.ebits <= 0) ++zero_ebit_at_sea_;
    cargo_.push_back(c.id);
    --slots;
    log_event(clock_, "load", c.id, static_cast<Location>(terminal), c.ebits);
  }
  for (const auto& c : containers_)
    if (c.role == Role::kMobile && terminal_of(c) == terminal && c.phase == Phase::kEntangledStored)
      ++report_.sticks_missed_boat;
  ship_at_sea_ = true;
  const int other = 1 - terminal;
  log_event(clock_, "depart", -1, static_cast<Location>(terminal), 0);
  push_event(clock_ + config_.ship.one_way_transit, EventKind::kShipArrive, other);
}

void FleetSim::ship_arrive(int terminal) {
  ship_at_sea_ = false;
  ship_port_ = static_cast<Location>(terminal);
  ++report_.legs_completed;
  log_event(clock_, "arrive", -1, static_cast<Location>(terminal), 0);

  for (int container_id : cargo_) {
    Container& c = containers_[container_id];
    c.location = static_cast<Location>(terminal);
    const bool lost = config_.container_loss_probability > 0.0 &&
                      rng_.bernoulli(config_.container_loss_probability);
    if (lost) {
      discarded_ += c.ebits;
      in_transit_ -= c.ebits;
      log_event(clock_, "loss", container_id, c.location, c.ebits);
      c.ebits = 0;
      if (c.partner >= 0) {
        const int partner = c.partner;
        c.partner = -1;
        containers_[partner].partner = -1;
        release_stationary(partner);
      }
      start_entangle(container_id);
      continue;
    }
    in_transit_ -= c.ebits;
    stored_[terminal] += c.ebits;
    report_.max_buffer[terminal] = std::max(report_.max_buffer[terminal], stored_[terminal]);
    log_event(clock_, "unload", container_id, c.location, c.ebits);
    if (c.ebits > 0) {
      set_phase(c, Phase::kConsuming);
      const long long batch = config_.per_pair_granularity ? 1 : c.ebits;
      request_job(terminal, Job{container_id, JobKind::kConsume, batch});
    } else {
      start_entangle(container_id);
    }
  }
  cargo_.clear();
  depart(terminal);
}

void FleetSim::check_invariants() {
  if (!report_.invariants_ok) return;
  if (zero_ebit_at_sea_ != 0) {
    report_.invariants_ok = false;
    report_.invariant_detail = "unentangled container at sea";
    return;
  }
  const long long lhs = created_;
  const long long rhs = stored_[0] + stored_[1] + in_transit_ + consumed_ + discarded_;
  if (lhs != rhs) {
    report_.invariants_ok = false;
    report_.invariant_detail = "Ebit conservation violated: created " + std::to_string(lhs) +
                               " != accounted " + std::to_string(rhs);
  }
}

void FleetSim::run() {
  const double horizon = config_.horizon;
  while (!events_.empty() && events_.top().time <= horizon) {
    const Event event = events_.top();
    events_.pop();
    clock_ = event.time;
    switch (event.kind) {
      case EventKind::kShipArrive: ship_arrive(event.subject); break;
      case EventKind::kJobDone: finish_job(event.subject); break;
    }
    ++report_.events_processed;
    check_invariants();
  }
  if (events_.empty() && clock_ < horizon) {
    // Nothing left that could ever fire: with a scheduled ship this never
    // happens; a cold start that cannot assemble a load stalls here.
    if (cold_waiting_ || consumed_ == 0) {
      report_.deadlock = config_.stick_ebits != 0;
      if (report_.deadlock)
        report_.deadlock_detail =
            "no enabled event after t=" + std::to_string(clock_) + "s; ship never assembled a full load";
    }
  }
  clock_ = horizon;
  advance_phase_integrals(horizon);
  for (int t = 0; t < 2; ++t) {
    busy_integral_[t] += active_jobs_[t] * (horizon - busy_mark_[t]);
    busy_mark_[t] = horizon;
  }

  if (!config_.warm_start)
    report_.steady_start =
        first_departure_ < 0.0 ? horizon
                               : std::min(horizon, first_departure_ + 2.0 * config_.ship.one_way_transit);

  report_.clock_end = horizon;
  report_.created = created_;
  report_.consumed = consumed_;
  report_.discarded = discarded_;
  report_.stored = stored_[0] + stored_[1];
  report_.in_transit = in_transit_;
  for (int t = 0; t < 2; ++t)
    report_.interface_busy_fraction[t] =
        busy_integral_[t] / (horizon * static_cast<double>(config_.online_containers));
  const double denom = horizon * static_cast<double>(containers_.size());
  for (int i = 0; i < 5; ++i) report_.phase_fraction[i] = phase_integral_[i] / denom;
  report_.event_log_digest = digest_;
  if (report_.steady_start < horizon && report_.consumed > 0)
    report_.realized_bandwidth_hz = window_bandwidth(report_.steady_start, horizon);
}

double FleetSim::window_bandwidth(double start, double end, bool* pre_steady) const {
  if (!(end > start)) throw std::invalid_argument("bandwidth window must have positive length");
  if (end > config_.horizon + 1e-9) throw std::invalid_argument("bandwidth window exceeds the horizon");
  if (pre_steady) *pre_steady = start < report_.steady_start;
  long long total = 0;
  for (const auto& [t, ebits] : consumption_log_)
    if (t > start && t <= end) total += ebits;
  return static_cast<double>(total) / (end - start);
}

SimReport simulate(const ScenarioConfig& config) {
  FleetSim sim(config);
  sim.run();
  return sim.report();
}

SweepResult sweep_interface(const ScenarioConfig& base, const std::vector<double>& slowdowns,
                            const std::vector<int>& widths, const std::vector<int>& online_counts) {
  if (slowdowns.empty() || widths.empty() || online_counts.empty())
    throw std::invalid_argument("sweep: ranges must be nonempty");
  SweepResult result;
  for (int online : online_counts)
    for (int width : widths)
      for (double slowdown : slowdowns) {
        ScenarioConfig config = base;
        config.online_containers = online;
        config.parallel_width = width;
        config.slowdown = slowdown;
        const SimReport report = simulate(config);
        SweepCell cell;
        cell.slowdown = slowdown;
        cell.parallel_width = width;
        cell.online_containers = online;
        cell.bandwidth_hz = report.realized_bandwidth_hz;
        cell.fraction_of_analytic =
            report.analytic_bandwidth_hz > 0 ? report.realized_bandwidth_hz / report.analytic_bandwidth_hz
                                             : 0.0;
        result.cells.push_back(cell);
      }
  for (int online : online_counts) {
    double best = 0.0;
    for (const auto& cell : result.cells)
      if (cell.online_containers == online && cell.parallel_width == 1 && cell.fraction_of_analytic >= 0.99)
        best = std::max(best, cell.slowdown);
    result.max_slowdown_at_full_bandwidth.emplace_back(online, best);
  }
  for (const auto& cell : result.cells)
    if (cell.slowdown == 100.0 && cell.parallel_width == 1 && cell.fraction_of_analytic >= 0.99) {
      if (result.online_needed_for_100x == 0 || cell.online_containers < result.online_needed_for_100x)
        result.online_needed_for_100x = cell.online_containers;
    }
  return result;
}

}  // namespace qsn::netsim
