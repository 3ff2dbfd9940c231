#ifndef QSN_CATALOG_H_
#define QSN_CATALOG_H_

#include <string>
#include <vector>

#include "qsn/code_model.h"

namespace qsn::model {

/// Published reference values used to annotate reproduced table rows.
/// A row with no reference has expected_* <= 0.
struct PlatformReference {
  int distance = 0;
  long long qubit_count = 0;
  double capacity_per_m3 = 0.0;
  double bandwidth_hz = 0.0;
  /// Set when the published bandwidth is known not to follow from the
  /// published capacity formula (see the NV- dense row).
  bool bandwidth_known_inconsistent = false;
};

struct CatalogEntry {
  PlatformSpec platform;
  PlatformReference reference;
};

/// The six built-in hardware rows with their published reference values.
const std::vector<CatalogEntry>& default_catalog();

/// Catalog file: CSV with header "name,pitch_m,gate_time_s,error_rate".
/// Lines starting with '#' are comments. Errors carry line numbers.
std::vector<PlatformSpec> load_catalog(const std::string& path);
void save_catalog(const std::string& path, const std::vector<PlatformSpec>& platforms);

/// Reference values for a named built-in platform, or an empty reference.
PlatformReference reference_for(const std::string& name);

}  // namespace qsn::model

#endif  // QSN_CATALOG_H_
