#ifndef QSN_NETSIM_H_
#define QSN_NETSIM_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "qsn/catalog.h"
#include "qsn/code_model.h"
#include "qsn/logistics.h"
#include "qsn/rng.h"

namespace qsn::netsim {

enum class Role : uint8_t { kStationary, kMobile };
enum class Location : uint8_t { kTerminalA = 0, kTerminalB = 1, kAtSea = 2 };
enum class Phase : uint8_t { kIdle, kEntangling, kEntangledStored, kInTransit, kConsuming };

const char* location_name(Location loc);
const char* phase_name(Phase phase);

struct Container {
  int id = 0;
  int group = 0;
  Role role = Role::kMobile;
  Location location = Location::kTerminalA;
  Phase phase = Phase::kIdle;
  long long ebits = 0;
  int partner = -1;  // entangled counterpart, or -1
};

/// Full scenario: hardware platform, storage target, ship, interface
/// parameters and simulation controls. Derived stick figures are filled
/// in by finalize().
struct ScenarioConfig {
  model::PlatformSpec platform = model::default_catalog()[0].platform;
  model::LinkTarget target;
  model::FailureFit fit;
  logistics::ShipSpec ship;

  int groups = -1;  // online pairs; default = ship.teu_count
  int containers_per_group = 7;
  int online_containers = 1;  // simultaneous interface slots per terminal
  int parallel_width = 1;
  double slowdown = 1.0;
  double horizon = 200.0 * model::kSecondsPerDay;
  bool warm_start = true;
  double container_loss_probability = 0.0;  // per voyage, per container
  uint64_t seed = 0;
  bool per_pair_granularity = false;

  // Derived by finalize().
  int distance = 0;
  long long stick_ebits = 0;  // integer Ebits per container
  double bell_time = 0.0;
  double stick_time = 0.0;  // time to entangle or consume one stick

  void finalize();
};

struct SimReport {
  double clock_end = 0.0;
  double steady_start = 0.0;
  double realized_bandwidth_hz = 0.0;  // consumed over [steady_start, end]
  double analytic_bandwidth_hz = 0.0;  // stick_ebits * teu / transit
  long long created = 0, consumed = 0, discarded = 0, stored = 0, in_transit = 0;
  long long max_buffer[2] = {0, 0};  // peak stored Ebits per terminal
  double interface_busy_fraction[2] = {0.0, 0.0};
  double phase_fraction[5] = {0, 0, 0, 0, 0};  // container-time share per phase
  int legs_completed = 0;
  long long sticks_missed_boat = 0;  // prepared too late for a departure
  bool deadlock = false;
  std::string deadlock_detail;
  bool invariants_ok = true;
  std::string invariant_detail;
  uint64_t event_log_digest = 0;
  long long events_processed = 0;
};

/// Deterministic discrete-event simulation of the seven-container
/// rotation protocol. Events are ordered by (time, sequence number);
/// identical configs and seeds replay byte-identical logs.
class FleetSim {
 public:
  explicit FleetSim(const ScenarioConfig& config, bool keep_event_log = false);

  /// Process events up to the configured horizon.
  void run();

  const SimReport& report() const { return report_; }
  const std::vector<Container>& containers() const { return containers_; }
  const std::string& event_log() const { return event_log_; }

  /// Consumed Ebits in (start, end] divided by the window length.
  /// Throws on an empty window; flags windows beginning before steady
  /// state via *pre_steady.
  double window_bandwidth(double start, double end, bool* pre_steady = nullptr) const;

 private:
  enum class EventKind : uint8_t { kShipArrive, kJobDone };
  struct Event {
    double time;
    uint64_t seq;
    EventKind kind;
    int subject;  // terminal for kShipArrive, container for kJobDone
    bool operator>(const Event& other) const {
      return time != other.time ? time > other.time : seq > other.seq;
    }
  };
  enum class JobKind : uint8_t { kEntangle, kConsume };
  struct Job {
    int container;
    JobKind kind;
    long long batch;
  };

  ScenarioConfig config_;
  bool keep_event_log_;
  Rng rng_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  uint64_t next_seq_ = 0;
  double clock_ = 0.0;

  std::vector<Container> containers_;
  std::vector<std::vector<int>> stationaries_at_;  // [terminal][...] container ids, per group bucketed
  std::deque<Job> pending_[2];
  int active_jobs_[2] = {0, 0};
  std::vector<Job> running_; // indexed by container id: current job (batch) while consuming/entangling
  std::vector<std::deque<int>> waiting_for_stationary_;  // [terminal] container ids

  // Ship state.
  bool ship_at_sea_ = false;
  Location ship_port_ = Location::kTerminalA;  // when docked
  std::vector<int> cargo_;
  bool cold_waiting_ = true;  // docked, waiting for a full load (cold start)
  double first_departure_ = -1.0;

  // Ledger and diagnostics.
  long long created_ = 0, consumed_ = 0, discarded_ = 0, stored_[2] = {0, 0}, in_transit_ = 0;
  long long zero_ebit_at_sea_ = 0;
  std::vector<std::pair<double, long long>> consumption_log_;
  double busy_integral_[2] = {0.0, 0.0};
  double busy_mark_[2] = {0.0, 0.0};
  double phase_integral_[5] = {0, 0, 0, 0, 0};
  double phase_mark_ = 0.0;
  std::vector<long long> phase_population_;
  SimReport report_;
  std::string event_log_;
  uint64_t digest_ = 1469598103934665603ULL;  // FNV-1a basis

  void set_phase(Container& c, Phase phase);
  void advance_phase_integrals(double now);
  void log_event(double t, const char* what, int container, Location loc, long long ebits);
  void push_event(double t, EventKind kind, int subject);
  void request_job(int terminal, Job job);
  void start_or_queue(int terminal);
  void begin_job(int terminal, const Job& job);
  void finish_job(int container);
  void ship_arrive(int terminal);
  void try_cold_departure();
  void depart(int terminal);
  void start_entangle(int container);
  int free_stationary(int terminal, int group) const;
  void release_stationary(int stationary_id);
  void check_invariants();
  int terminal_of(const Container& c) const { return static_cast<int>(c.location); }
};

/// init_fleet + run + report in one call.
SimReport simulate(const ScenarioConfig& config);

struct SweepCell {
  double slowdown = 1.0;
  int parallel_width = 1;
  int online_containers = 1;
  double bandwidth_hz = 0.0;
  double fraction_of_analytic = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  /// Per online-container count: largest swept slowdown keeping >= 99%
  /// of the analytic bandwidth (width 1).
  std::vector<std::pair<int, double>> max_slowdown_at_full_bandwidth;
  /// Smallest swept online count sustaining >= 99% at slowdown 100, or 0.
  int online_needed_for_100x = 0;
};

SweepResult sweep_interface(const ScenarioConfig& base, const std::vector<double>& slowdowns,
                            const std::vector<int>& widths, const std::vector<int>& online_counts);

}  // namespace qsn::netsim

#endif  // QSN_NETSIM_H_
