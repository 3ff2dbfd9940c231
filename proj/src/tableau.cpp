#include "qsn/tableau.h"

#include <cassert>
#include <stdexcept>

namespace qsn {

Tableau::Tableau(size_t n) : n_(n) {
  dest_.reserve(n);
  stab_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    PauliString d(n), s(n);
    d.set_x(i, true);  // X_i
    s.set_z(i, true);  // Z_i
    dest_.push_back(std::move(d));
    stab_.push_back(std::move(s));
  }
}

void Tableau::h(size_t q) {
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows) {
      const bool xb = r.x_bit(q), zb = r.z_bit(q);
      if (xb && zb) r.set_sign(!r.sign());
      r.set_x(q, zb);
      r.set_z(q, xb);
    }
}

void Tableau::s(size_t q) {
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows) {
      const bool xb = r.x_bit(q), zb = r.z_bit(q);
      if (xb && zb) r.set_sign(!r.sign());
      r.set_z(q, zb ^ xb);
    }
}

void Tableau::cnot(size_t control, size_t target) {
  if (control == target) throw std::invalid_argument("cnot: control == target");
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows) {
      const bool xc = r.x_bit(control), zc = r.z_bit(control);
      const bool xt = r.x_bit(target), zt = r.z_bit(target);
      if (xc && zt && (xt == zc)) r.set_sign(!r.sign());
      r.set_x(target, xt ^ xc);
      r.set_z(control, zc ^ zt);
    }
}

void Tableau::x(size_t q) {
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows)
      if (r.z_bit(q)) r.set_sign(!r.sign());
}

void Tableau::z(size_t q) {
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows)
      if (r.x_bit(q)) r.set_sign(!r.sign());
}

void Tableau::y(size_t q) {
  for (auto rows : {&dest_, &stab_})
    for (auto& r : *rows)
      if (r.x_bit(q) != r.z_bit(q)) r.set_sign(!r.sign());
}

int Tableau::find_anticommuting_stabilizer(const PauliString& pauli) const {
  for (size_t i = 0; i < n_; ++i)
    if (!stab_[i].commutes_with(pauli)) return static_cast<int>(i);
  return -1;
}

int Tableau::peek_pauli(const PauliString& pauli) const {
  if (pauli.num_qubits() != n_) throw std::invalid_argument("pauli size mismatch");
  if (find_anticommuting_stabilizer(pauli) >= 0) return -1;
  // Deterministic: express pauli as a product of stabilizers. Destabilizer
  // i anticommutes only with stabilizer i, so the factor set is read off
  // the destabilizer commutation pattern.
  PauliString acc(n_);
  for (size_t i = 0; i < n_; ++i)
    if (!dest_[i].commutes_with(pauli)) acc.left_mul(stab_[i]);
  assert(acc.same_letters(pauli));
  return acc.sign() != pauli.sign() ? 1 : 0;
}

bool Tableau::measure_pauli(const PauliString& pauli, Rng& rng) {
  if (pauli.num_qubits() != n_) throw std::invalid_argument("pauli size mismatch");
  const int p = find_anticommuting_stabilizer(pauli);
  if (p < 0) {
    const int det = peek_pauli(pauli);
    assert(det >= 0);
    return det != 0;
  }
  // Random outcome: multiply every other anticommuting row by stab_[p],
  // retire stab_[p] to the destabilizer slot, install the measured
  // operator with the sampled sign.
  const PauliString pivot = stab_[p];
  for (size_t i = 0; i < n_; ++i) {
    if (!dest_[i].commutes_with(pauli)) dest_[i].left_mul(pivot);
    if (static_cast<int>(i) != p && !stab_[i].commutes_with(pauli)) stab_[i].left_mul(pivot);
  }
  dest_[p] = pivot;
  const bool outcome = rng.next_bool();
  stab_[p] = pauli;
  stab_[p].set_sign(pauli.sign() ^ outcome);
  return outcome;
}

bool Tableau::measure_z(size_t q, Rng& rng) {
  PauliString zq(n_);
  zq.set_z(q, true);
  return measure_pauli(zq, rng);
}

bool Tableau::measure_x(size_t q, Rng& rng) {
  PauliString xq(n_);
  xq.set_x(q, true);
  return measure_pauli(xq, rng);
}

bool Tableau::z_deterministic(size_t q) const {
  PauliString zq(n_);
  zq.set_z(q, true);
  return peek_pauli(zq) >= 0;
}

bool Tableau::x_deterministic(size_t q) const {
  PauliString xq(n_);
  xq.set_x(q, true);
  return peek_pauli(xq) >= 0;
}

void Tableau::reset_z(size_t q, Rng& rng) {
  if (measure_z(q, rng)) x(q);
}

void Tableau::reset_x(size_t q, Rng& rng) {
  reset_z(q, rng);
  h(q);
}

bool Tableau::check_invariants() const {
  for (size_t i = 0; i < n_; ++i) {
    if (dest_[i].commutes_with(stab_[i])) return false;
    for (size_t j = 0; j < n_; ++j) {
      if (!stab_[i].commutes_with(stab_[j]) && i != j) return false;
      if (!dest_[i].commutes_with(dest_[j]) && i != j) return false;
      if (i != j && !dest_[i].commutes_with(stab_[j])) return false;
    }
  }
  return true;
}

}  // namespace qsn
