#ifndef QSN_TABLEAU_H_
#define QSN_TABLEAU_H_

#include <cstdint>
#include <vector>

#include "qsn/pauli.h"
#include "qsn/rng.h"

namespace qsn {

/// Stabilizer state of n qubits in the destabilizer/stabilizer tableau
/// representation (Aaronson-Gottesman). Starts in |0...0>.
///
/// Rows are signed Pauli strings; destabilizer i anticommutes with
/// stabilizer i and commutes with every other row. The group rank stays
/// n under all supported gates and measurements.
///
/// Instances are single-owner mutable state: use one per thread, or
/// serialize access externally.
class Tableau {
 public:
  explicit Tableau(size_t n);

  size_t num_qubits() const { return n_; }

  void h(size_t q);
  void s(size_t q);
  void cnot(size_t control, size_t target);
  void x(size_t q);
  void y(size_t q);
  void z(size_t q);

  /// Measure in the Z (X) basis. Returns the outcome bit: 0 for +1, 1 for -1.
  bool measure_z(size_t q, Rng& rng);
  bool measure_x(size_t q, Rng& rng);

  /// True if a Z (X) basis measurement of q would be deterministic.
  bool z_deterministic(size_t q) const;
  bool x_deterministic(size_t q) const;

  /// Collapse q to |0> (|+>).
  void reset_z(size_t q, Rng& rng);
  void reset_x(size_t q, Rng& rng);

  /// Measure a signed Pauli observable. Deterministic (no state change,
  /// rng untouched) when the operator is in +/- the stabilizer group;
  /// otherwise a uniformly random outcome with projection.
  bool measure_pauli(const PauliString& pauli, Rng& rng);

  /// Outcome the next measure_pauli would return, or -1 if random.
  int peek_pauli(const PauliString& pauli) const;

  const PauliString& stabilizer(size_t i) const { return stab_[i]; }
  const PauliString& destabilizer(size_t i) const { return dest_[i]; }

  /// Structural audit: ranks, commutation pattern, canonical pairing.
  bool check_invariants() const;

 private:
  size_t n_;
  std::vector<PauliString> dest_, stab_;

  int find_anticommuting_stabilizer(const PauliString& pauli) const;
};

}  // namespace qsn

#endif  // QSN_TABLEAU_H_
