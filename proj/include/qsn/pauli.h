#ifndef QSN_PAULI_H_
#define QSN_PAULI_H_

#include <cstdint>
#include <string>
#include <vector>

namespace qsn {

/// Dense n-qubit Pauli operator with a real sign, (-1)^sign * P.
///
/// The per-qubit letter is encoded in two bit planes: x bit set for X/Y,
/// z bit set for Z/Y. Products track powers of i internally and must
/// resolve to a real phase (valid for the Hermitian products that arise
/// in stabilizer bookkeeping).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(size_t n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

  /// Parse "+XIZY" / "-ZZ" style strings.
  static PauliString from_text(const std::string& text);

  size_t num_qubits() const { return n_; }

  bool x_bit(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  void set_x(size_t q, bool v);
  void set_z(size_t q, bool v);

  /// 0 -> +P, 1 -> -P.
  bool sign() const { return sign_; }
  void set_sign(bool s) { sign_ = s; }

  void set_pauli(size_t q, char letter);  // one of I X Y Z
  char pauli_at(size_t q) const;

  bool is_identity() const;
  size_t weight() const;

  bool commutes_with(const PauliString& other) const;

  /// this <- other * this, tracking phase. The accumulated power of i
  /// must be real; asserts otherwise.
  void left_mul(const PauliString& other);

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && sign_ == other.sign_ && x_ == other.x_ && z_ == other.z_;
  }
  /// Same letters, ignoring sign.
  bool same_letters(const PauliString& other) const { return x_ == other.x_ && z_ == other.z_; }

  std::string to_text() const;

 private:
  size_t n_ = 0;
  bool sign_ = false;
  std::vector<uint64_t> x_, z_;

  friend class Tableau;
};

}  // namespace qsn

#endif  // QSN_PAULI_H_
