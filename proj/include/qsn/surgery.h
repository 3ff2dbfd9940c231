#ifndef QSN_SURGERY_H_
#define QSN_SURGERY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qsn/patch.h"
#include "qsn/pauli.h"
#include "qsn/rng.h"
#include "qsn/tableau.h"

namespace qsn::surgery {

using surface::CodePatch;

/// Two distance-d patches side by side on a (2d-1) x (4d-1) grid with
/// the seam column between their facing (logical-Z) edges. Merging
/// measures the merged patch's stabilizer set; the new X checks in the
/// seam column multiply up to X_L X_L.
struct SurgeryLayout {
  int distance = 0;
  int grid_rows = 0, grid_cols = 0;
  CodePatch left, right;
  CodePatch merged;
  std::vector<int> seam_data;        // (odd row, seam column)
  std::vector<int> seam_check_ids;   // indices into merged.checks
  int num_qubits() const { return grid_rows * grid_cols; }
};

SurgeryLayout make_layout(int distance);

/// T = 12*d*t: d rounds of seam-stabilizer measurement for the merge and
/// d confirmation rounds for the split, at 6 gates per round.
double bell_pair_time(int distance, double gate_time);

/// Outcome log of one merge/split procedure and the Pauli correction it
/// implies. Corrections are tracked, never applied to the state.
struct ByproductRecord {
  // Per merge round, one outcome bit per seam check (1 = -1 eigenvalue).
  std::vector<std::vector<uint8_t>> seam_outcomes;
  bool merge_product_minus = false;  // X_L X_L readout
  std::vector<uint8_t> split_seam_x_outcomes;       // seam data X measurements
  std::vector<uint8_t> confirm_outcomes;            // first confirmation round, patch checks
  PauliString correction;  // accumulated frame over the whole grid
};

/// Measure the merged patch's stabilizers for `rounds` rounds (default d).
/// Patches must hold valid code states; seam data qubits must be fresh
/// |0>. Outcomes beyond the seam checks are asserted deterministic.
ByproductRecord merge(const SurgeryLayout& layout, Tableau& tableau, Rng& rng, int rounds = 0);

/// Measure out the seam data in the X basis, then run `rounds` rounds of
/// both patches' stabilizers (default d). Extends `record` with split
/// outcomes and gauge corrections.
void split(const SurgeryLayout& layout, Tableau& tableau, Rng& rng, ByproductRecord& record,
           int rounds = 0);

/// Project a fresh patch into |0>_L, |1>_L, |+>_L or |->_L.
void prepare_patch(const CodePatch& patch, Tableau& tableau, char basis_state, Rng& rng);

/// Expected sign of `observable` on the corrected state: the measured
/// value XORed with the correction's commutation parity. 0 means +1.
int corrected_sign(const Tableau& tableau, const ByproductRecord& record, const PauliString& observable);

PauliString logical_x(const CodePatch& patch, int num_qubits);
PauliString logical_z(const CodePatch& patch, int num_qubits);
PauliString check_operator(const surface::Check& check, int num_qubits);

/// One verification case of the Bell-pair procedure: prepare the two
/// patches, merge, split; passes when every patch stabilizer and both
/// Bell operators X_L X_L, Z_L Z_L come out +1 after byproduct
/// correction.
///
/// With this seam orientation the merge measures X_L X_L, so |0>,|0>
/// inputs produce the Bell pair: the merge itself projects the two
/// definite-Z_L patches onto (|00> + |11>)/sqrt(2) and the split
/// releases it. A |+> input instead survives as a definite single-patch
/// X_L, which leaves the pair in a product state no Pauli byproduct can
/// entangle.
struct BellCase {
  uint64_t seed = 0;
  bool merge_product_minus = false;
  bool pass = false;
  std::string detail;  // first failing operator, if any
};

BellCase verify_bell_once(int distance, uint64_t seed, char left_state = '0', char right_state = '0');

struct VerificationReport {
  int distance = 0;
  int cases_run = 0;
  int cases_passed = 0;
  char left_state = '0';
  char right_state = '0';
  std::vector<BellCase> cases;
};

VerificationReport verify_bell(int distance, int num_cases, uint64_t seed0, char left_state = '0',
                               char right_state = '0');

}  // namespace qsn::surgery

#endif  // QSN_SURGERY_H_
