#ifndef QSN_LOGISTICS_H_
#define QSN_LOGISTICS_H_

#include <string>
#include <vector>

#include "qsn/catalog.h"
#include "qsn/code_model.h"

namespace qsn::logistics {

using model::FailureFit;
using model::LinkTarget;
using model::MemorySpec;
using model::PlatformSpec;

/// A dedicated container ship: TEU slots, cubic meters of each TEU
/// devoted to quantum memories (the rest is support infrastructure),
/// and the one-way transit time in seconds.
struct ShipSpec {
  long long teu_count = 10000;
  double qubit_volume_per_teu = 1.0;  // of the 40 m^3 internal volume
  double one_way_transit = 20.0 * model::kSecondsPerDay;

  void validate() const;
};

/// Memorystick packing for one platform: unit volume (sqrt(N)*pitch)^3
/// and logical-qubit (Ebit) density per cubic meter.
struct StickSpec {
  PlatformSpec platform;
  MemorySpec memory;
  double unit_volume = 0.0;
  double capacity_per_m3 = 0.0;

  /// Integer Ebits actually allocated into `volume` cubic meters.
  long long allocated_ebits(double volume = 1.0) const;
};

/// Ebits per cubic meter, 1 / (sqrt(N) * pitch)^3.
double stick_capacity(const MemorySpec& memory, const PlatformSpec& platform);

StickSpec make_stick(const PlatformSpec& platform, const MemorySpec& memory);

/// Steady-state entanglement bandwidth in Hz for a full shipload:
/// capacity_per_container * teu_count / one_way_transit.
double effective_bandwidth(double capacity_per_container, const ShipSpec& ship);

/// Time to entangle (or consume) a whole stick through the container
/// interface: capacity * bell_time * slowdown / parallel_width.
double stick_entangle_time(double capacity_ebits, double bell_time, int parallel_width = 1,
                           double slowdown = 1.0);

/// "12.7KEb" style formatting, 3 significant figures.
std::string format_ebits(double ebits);

struct Table1Row {
  std::string name;
  bool feasible = false;
  int distance = 0;
  long long qubit_count = 0;
  double capacity_per_m3 = 0.0;
  double bandwidth_hz = 0.0;
  std::string capacity_text;
  // Comparison against the published values, when known for this row.
  bool has_reference = false;
  model::PlatformReference reference;
  bool capacity_matches = false;   // 2 significant figures
  bool bandwidth_matches = false;  // 2 significant figures
  bool flagged_inconsistent = false;
};

struct Table1 {
  std::vector<Table1Row> rows;
  LinkTarget target;
  ShipSpec ship;
  FailureFit fit;
};

/// select_distance + stick_capacity + effective_bandwidth per platform.
/// Infeasible platforms are reported per row, never fatal.
Table1 build_table1(const std::vector<PlatformSpec>& catalog, const LinkTarget& target, const ShipSpec& ship,
                    const FailureFit& fit);

/// True when a and b agree after rounding to `sig_figs` significant figures.
bool matches_to_sig_figs(double a, double b, int sig_figs);

}  // namespace qsn::logistics

#endif  // QSN_LOGISTICS_H_
