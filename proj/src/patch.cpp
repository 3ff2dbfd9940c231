#include "qsn/patch.h"

#include <stdexcept>

namespace qsn::surface {

size_t CodePatch::check_count(bool x_type) const {
  size_t count = 0;
  for (const auto& check : checks) count += check.x_type == x_type;
  return count;
}

CodePatch build_patch_region(int distance, int grid_rows, int grid_cols, int row0, int col0, int rows,
                             int cols) {
  if (distance < 2) throw std::invalid_argument("patch distance must be >= 2");
  if (col0 % 2 != 0 || row0 % 2 != 0)
    throw std::invalid_argument("patch region origin must sit on even coordinates");
  if (row0 + rows > grid_rows || col0 + cols > grid_cols)
    throw std::invalid_argument("patch region exceeds grid");

  CodePatch patch;
  patch.distance = distance;
  patch.grid_rows = grid_rows;
  patch.grid_cols = grid_cols;
  patch.row0 = row0;
  patch.col0 = col0;
  patch.region_rows = rows;
  patch.region_cols = cols;

  const auto in_region = [&](int r, int c) {
    return r >= row0 && r < row0 + rows && c >= col0 && c < col0 + cols;
  };

  for (int r = row0; r < row0 + rows; ++r)
    for (int c = col0; c < col0 + cols; ++c) {
      if ((r + c) % 2 == 0) {
        patch.data_sites.push_back(patch.site(r, c));
        continue;
      }
      Check check;
      check.ancilla_site = patch.site(r, c);
      check.x_type = r % 2 == 0;  // (even, odd) -> X; (odd, even) -> Z
      // North, west, east, south; also the CNOT schedule order.
      const int nr[4] = {r - 1, r, r, r + 1};
      const int nc[4] = {c, c - 1, c + 1, c};
      for (int k = 0; k < 4; ++k)
        if (in_region(nr[k], nc[k])) check.data_sites.push_back(patch.site(nr[k], nc[k]));
      patch.checks.push_back(std::move(check));
    }

  for (int r = row0; r < row0 + rows; r += 2) patch.logical_x_sites.push_back(patch.site(r, col0));
  for (int c = col0; c < col0 + cols; c += 2) patch.logical_z_sites.push_back(patch.site(row0, c));
  return patch;
}

CodePatch build_patch(int distance) {
  const int side = 2 * distance - 1;
  return build_patch_region(distance, side, side, 0, 0, side, side);
}

Circuit syndrome_circuit(const CodePatch& patch, int rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  Circuit circuit;
  circuit.num_qubits = patch.num_sites();

  for (int round = 0; round < rounds; ++round) {
    const uint32_t t0 = 6 * round;
    std::vector<uint8_t> busy(patch.num_sites(), 0);

    // Step 0: ancilla preparation, data idle.
    for (const auto& check : patch.checks)
      circuit.append(t0, check.x_type ? OpKind::kInitX : OpKind::kInitZ, check.ancilla_site);
    for (int q : patch.data_sites) circuit.append(t0, OpKind::kIdle, q);

    // Steps 1-4: CNOTs in N/W/E/S order (data_sites is stored in that
    // order; boundary checks skip missing directions and idle instead).
    for (int step = 1; step <= 4; ++step) {
      const uint32_t t = t0 + step;
      std::fill(busy.begin(), busy.end(), 0);
      for (const auto& check : patch.checks) {
        const int r = check.ancilla_site / patch.grid_cols;
        const int c = check.ancilla_site % patch.grid_cols;
        const int nr[4] = {r - 1, r, r, r + 1};
        const int nc[4] = {c, c - 1, c + 1, c};
        const int target_site = patch.site(nr[step - 1], nc[step - 1]);
        bool have = false;
        for (int q : check.data_sites) have |= q == target_site;
        if (!have) {
          circuit.append(t, OpKind::kIdle, check.ancilla_site);
          busy[check.ancilla_site] = 1;
          continue;
        }
        if (check.x_type)
          circuit.append(t, OpKind::kCnot, check.ancilla_site, target_site);
        else
          circuit.append(t, OpKind::kCnot, target_site, check.ancilla_site);
        busy[check.ancilla_site] = 1;
        busy[target_site] = 1;
      }
      for (int q : patch.data_sites)
        if (!busy[q]) circuit.append(t, OpKind::kIdle, q);
    }

    // Step 5: ancilla readout, data idle.
    for (const auto& check : patch.checks)
      circuit.append(t0 + 5, check.x_type ? OpKind::kMeasureX : OpKind::kMeasureZ, check.ancilla_site);
    for (int q : patch.data_sites) circuit.append(t0 + 5, OpKind::kIdle, q);
  }
  return circuit;
}

}  // namespace qsn::surface
