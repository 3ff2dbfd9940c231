#ifndef QSN_PATCH_H_
#define QSN_PATCH_H_

#include <cstdint>
#include <vector>

#include "qsn/circuit.h"

namespace qsn::surface {

/// One stabilizer: the ancilla site that measures it and the data sites
/// in its support (weight 2..4 depending on boundaries).
struct Check {
  int ancilla_site = 0;
  bool x_type = false;
  std::vector<int> data_sites;
};

/// Planar-code patch on a (2d-1) x (2d-1) site grid, possibly embedded
/// in a larger grid (lattice surgery). Site index = row * grid_cols + col.
/// Data qubits sit where row+col is even; X ancillas at (even, odd),
/// Z ancillas at (odd, even). Logical X is the X chain down column
/// col0 (top-bottom); logical Z the Z chain along row row0 (left-right).
struct CodePatch {
  int distance = 0;
  int grid_rows = 0, grid_cols = 0;  // full embedding grid
  int row0 = 0, col0 = 0;            // region origin (col0 even)
  int region_rows = 0, region_cols = 0;

  std::vector<int> data_sites;
  std::vector<Check> checks;
  std::vector<int> logical_x_sites;  // column chain, X operators
  std::vector<int> logical_z_sites;  // row chain, Z operators

  int num_sites() const { return grid_rows * grid_cols; }
  int site(int r, int c) const { return r * grid_cols + c; }
  size_t data_count() const { return data_sites.size(); }
  size_t check_count(bool x_type) const;
};

/// Standalone patch at distance d (d >= 2): N = (2d-1)^2 sites split
/// into data and ancilla roles, stabilizer supports of weight <= 4.
CodePatch build_patch(int distance);

/// Patch spanning [row0, row0+rows) x [col0, col0+cols) of a larger grid.
CodePatch build_patch_region(int distance, int grid_rows, int grid_cols, int row0, int col0, int rows,
                             int cols);

/// One 6-step syndrome-extraction round per repetition: ancilla init,
/// four data-ancilla CNOT steps in fixed north/west/east/south order,
/// ancilla measurement. Every qubit gets exactly one operation per step
/// (explicit idles), so uniform per-operation noise covers idling.
/// Measurement order within a round follows patch.checks order.
Circuit syndrome_circuit(const CodePatch& patch, int rounds = 1);

}  // namespace qsn::surface

#endif  // QSN_PATCH_H_
