#include "qsn/logistics.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsn::logistics {

void ShipSpec::validate() const {
  if (teu_count < 0) throw std::invalid_argument("ship: teu_count must be >= 0");
  if (!(qubit_volume_per_teu > 0.0 && qubit_volume_per_teu <= 40.0))
    throw std::invalid_argument("ship: qubit volume per TEU must be in (0, 40] m^3");
  if (!(one_way_transit > 0.0)) throw std::invalid_argument("ship: transit time must be > 0");
}

double stick_capacity(const MemorySpec& memory, const PlatformSpec& platform) {
  const double side = std::sqrt(static_cast<double>(memory.qubit_count)) * platform.pitch;
  return 1.0 / (side * side * side);
}

StickSpec make_stick(const PlatformSpec& platform, const MemorySpec& memory) {
  StickSpec stick;
  stick.platform = platform;
  stick.memory = memory;
  const double side = std::sqrt(static_cast<double>(memory.qubit_count)) * platform.pitch;
  stick.unit_volume = side * side * side;
  stick.capacity_per_m3 = 1.0 / stick.unit_volume;
  return stick;
}

long long StickSpec::allocated_ebits(double volume) const {
  return static_cast<long long>(std::floor(capacity_per_m3 * volume));
}

double effective_bandwidth(double capacity_per_container, const ShipSpec& ship) {
  ship.validate();
  return capacity_per_container * static_cast<double>(ship.teu_count) / ship.one_way_transit;
}

double stick_entangle_time(double capacity_ebits, double bell_time, int parallel_width, double slowdown) {
  if (parallel_width < 1) throw std::invalid_argument("parallel_width must be >= 1");
  if (slowdown < 1.0) throw std::invalid_argument("slowdown must be >= 1");
  if (capacity_ebits < 0.0 || bell_time < 0.0) throw std::invalid_argument("negative capacity or bell time");
  return capacity_ebits * bell_time * slowdown / static_cast<double>(parallel_width);
}

bool matches_to_sig_figs(double a, double b, int sig_figs) {
  if (a == b) return true;
  if (a <= 0.0 || b <= 0.0) return false;
  char ta[64], tb[64];
  std::snprintf(ta, sizeof ta, "%.*e", sig_figs - 1, a);
  std::snprintf(tb, sizeof tb, "%.*e", sig_figs - 1, b);
  return std::string(ta) == tb;
}

std::string format_ebits(double ebits) {
  struct Prefix {
    double scale;
    const char* tag;
  };
  static const Prefix prefixes[] = {{1e12, "T"}, {1e9, "G"}, {1e6, "M"}, {1e3, "K"}, {1.0, ""}};
  for (const auto& pre : prefixes) {
    if (ebits >= pre.scale || pre.scale == 1.0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g%sEb", ebits / pre.scale, pre.tag);
      return buf;
    }
  }
  return "0Eb";
}

Table1 build_table1(const std::vector<PlatformSpec>& catalog, const LinkTarget& target, const ShipSpec& ship,
                    const FailureFit& fit) {
  if (catalog.empty()) throw std::invalid_argument("table1: catalog is empty");
  ship.validate();
  Table1 table;
  table.target = target;
  table.ship = ship;
  table.fit = fit;
  for (const auto& platform : catalog) {
    Table1Row row;
    row.name = platform.name;
    const auto selection = model::select_distance(platform, target, fit);
    if (!selection.feasible) {
      table.rows.push_back(std::move(row));
      continue;
    }
    row.feasible = true;
    row.distance = selection.memory.distance;
    row.qubit_count = selection.memory.qubit_count;
    const StickSpec stick = make_stick(platform, selection.memory);
    row.capacity_per_m3 = stick.capacity_per_m3;
    row.capacity_text = format_ebits(stick.capacity_per_m3 * ship.qubit_volume_per_teu);
    row.bandwidth_hz = effective_bandwidth(stick.capacity_per_m3 * ship.qubit_volume_per_teu, ship);
    const auto ref = model::reference_for(platform.name);
    if (ref.qubit_count > 0) {
      row.has_reference = true;
      row.reference = ref;
      row.capacity_matches = matches_to_sig_figs(row.capacity_per_m3, ref.capacity_per_m3, 2);
      row.bandwidth_matches = matches_to_sig_figs(row.bandwidth_hz, ref.bandwidth_hz, 2);
      row.flagged_inconsistent = ref.bandwidth_known_inconsistent;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qsn::logistics
