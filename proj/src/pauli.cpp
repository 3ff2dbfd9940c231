#include "qsn/pauli.h"

#include <cassert>
#include <stdexcept>

namespace qsn {

PauliString PauliString::from_text(const std::string& text) {
  size_t at = 0;
  bool sign = false;
  if (at < text.size() && (text[at] == '+' || text[at] == '-')) {
    sign = text[at] == '-';
    ++at;
  }
  PauliString p(text.size() - at);
  p.sign_ = sign;
  for (size_t q = 0; at < text.size(); ++at, ++q) p.set_pauli(q, text[at]);
  return p;
}

void PauliString::set_x(size_t q, bool v) {
  const uint64_t m = uint64_t{1} << (q & 63);
  if (v)
    x_[q >> 6] |= m;
  else
    x_[q >> 6] &= ~m;
}

void PauliString::set_z(size_t q, bool v) {
  const uint64_t m = uint64_t{1} << (q & 63);
  if (v)
    z_[q >> 6] |= m;
  else
    z_[q >> 6] &= ~m;
}

void PauliString::set_pauli(size_t q, char letter) {
  switch (letter) {
    case 'I': set_x(q, false); set_z(q, false); break;
    case 'X': set_x(q, true);  set_z(q, false); break;
    case 'Y': set_x(q, true);  set_z(q, true);  break;
    case 'Z': set_x(q, false); set_z(q, true);  break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
}

char PauliString::pauli_at(size_t q) const {
  const int code = (x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0);
  return "IXZY"[code];
}

bool PauliString::is_identity() const {
  for (size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | z_[w]) return false;
  return true;
}

size_t PauliString::weight() const {
  size_t total = 0;
  for (size_t w = 0; w < x_.size(); ++w) total += __builtin_popcountll(x_[w] | z_[w]);
  return total;
}

bool PauliString::commutes_with(const PauliString& other) const {
  assert(n_ == other.n_);
  uint64_t acc = 0;
  for (size_t w = 0; w < x_.size(); ++w)
    acc ^= (x_[w] & other.z_[w]) ^ (z_[w] & other.x_[w]);
  return (__builtin_popcountll(acc) & 1) == 0;
}

void PauliString::left_mul(const PauliString& other) {
  assert(n_ == other.n_);
  // Power-of-i exponent of sigma_a * sigma_b, a = other (left), b = this.
  // Word-parallel form of the per-qubit lookup.
  int phase = (sign_ ? 2 : 0) + (other.sign_ ? 2 : 0);
  for (size_t w = 0; w < x_.size(); ++w) {
    const uint64_t ax = other.x_[w], az = other.z_[w];
    const uint64_t bx = x_[w], bz = z_[w];
    // Per qubit: i-exponent of sigma_a sigma_b is +1 for XY, YZ, ZX and
    // -1 for YX, ZY, XZ (cyclic order), 0 otherwise.
    const uint64_t plus = (ax & ~az & bx & bz) |   // X * Y -> +i Z
                          (ax & az & ~bx & bz) |   // Y * Z -> +i X
                          (~ax & az & bx & ~bz);   // Z * X -> +i Y
    const uint64_t minus = (ax & az & bx & ~bz) |  // Y * X -> -i Z
                           (~ax & az & bx & bz) |  // Z * Y -> -i X
                           (ax & ~az & ~bx & bz);  // X * Z -> -i Y
    phase += __builtin_popcountll(plus) - __builtin_popcountll(minus);
    x_[w] ^= ax;
    z_[w] ^= az;
  }
  phase &= 3;
  assert(phase == 0 || phase == 2);
  sign_ = phase == 2;
}

std::string PauliString::to_text() const {
  std::string out;
  out.reserve(n_ + 1);
  out.push_back(sign_ ? '-' : '+');
  for (size_t q = 0; q < n_; ++q) out.push_back(pauli_at(q));
  return out;
}

}  // namespace qsn
