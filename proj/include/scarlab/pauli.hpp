#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "scarlab/bits.hpp"

namespace scarlab {

// n-qubit Pauli string  P = i^phase * prod_q X_q^{x_q} Z_q^{z_q}
// (per qubit the X factor stands left of the Z factor).
struct PauliString {
  int n = 0;
  Bitset x;
  Bitset z;
  uint8_t phase = 0;  // exponent of i, mod 4

  PauliString() = default;
  explicit PauliString(int n_) : n(n_), x(n_), z(n_) {}

  static PauliString identity(int n) { return PauliString(n); }
  // op is one of 'I','X','Y','Z'; Y_q is stored as i * X_q Z_q.
  static PauliString single(int n, char op, int q);
  static PauliString x_mask(int n, const Bitset& m);
  static PauliString z_mask(int n, const Bitset& m);
  static PauliString x_mask_u64(int n, uint64_t m);
  static PauliString z_mask_u64(int n, uint64_t m);
  // Label format: optional sign/phase prefix (+, -, i, -i) followed by one
  // letter per qubit, qubit 0 first ("+XIZY").
  static PauliString from_label(const std::string& label);

  PauliString operator*(const PauliString& o) const;

  bool commutes_with(const PauliString& o) const {
    return x.parity_and(o.z) == z.parity_and(o.x);
  }

  bool is_identity() const { return x.none() && z.none() && phase == 0; }
  // P^dag = i^{-e} (-1)^{|x&z|} X^x Z^z, so P is Hermitian iff e = |x&z| mod 2.
  bool is_hermitian() const { return (phase & 1) == ((x & z).count() & 1); }

  std::complex<double> phase_value() const {
    static const std::complex<double> tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tab[phase & 3];
  }

  // P |b> = coeff * |b ^ x>, with coeff = i^phase * (-1)^{popcount(z & b)}
  // (bit value 1 encodes sigma^z = -1).
  std::pair<uint64_t, std::complex<double>> apply_to_basis(uint64_t b) const {
    std::complex<double> c = phase_value();
    if (z.parity_and_u64(b)) c = -c;
    return {b ^ x.to_u64(), c};
  }

  std::string label() const;
};

}  // namespace scarlab
