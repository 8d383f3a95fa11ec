#include "scarlab/pauli.hpp"

#include <stdexcept>

namespace scarlab {

PauliString PauliString::single(int n, char op, int q) {
  PauliString p(n);
  switch (op) {
    case 'I':
      break;
    case 'X':
      p.x.set(q);
      break;
    case 'Z':
      p.z.set(q);
      break;
    case 'Y':
      p.x.set(q);
      p.z.set(q);
      p.phase = 1;
      break;
    default:
      throw std::invalid_argument("PauliString::single: bad operator letter");
  }
  return p;
}

PauliString PauliString::x_mask(int n, const Bitset& m) {
  PauliString p(n);
  p.x = m;
  return p;
}

PauliString PauliString::z_mask(int n, const Bitset& m) {
  PauliString p(n);
  p.z = m;
  return p;
}

PauliString PauliString::x_mask_u64(int n, uint64_t m) {
  return x_mask(n, Bitset::from_u64(n, m));
}

PauliString PauliString::z_mask_u64(int n, uint64_t m) {
  return z_mask(n, Bitset::from_u64(n, m));
}

PauliString PauliString::from_label(const std::string& label) {
  size_t pos = 0;
  uint8_t phase = 0;
  if (pos < label.size() && (label[pos] == '+' || label[pos] == '-')) {
    if (label[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < label.size() && label[pos] == 'i') {
    phase = (phase + 1) & 3;
    ++pos;
  }
  int n = int(label.size() - pos);
  PauliString p(n);
  p.phase = phase;
  for (int q = 0; q < n; ++q) {
    PauliString s = single(n, label[pos + q], q);
    p.x ^= s.x;
    p.z ^= s.z;
    p.phase = (p.phase + s.phase) & 3;
  }
  return p;
}

PauliString PauliString::operator*(const PauliString& o) const {
  if (n != o.n) throw std::invalid_argument("PauliString width mismatch");
  PauliString r(n);
  // Commuting Z^{z} past X^{o.x} qubit-wise gives (-1)^{|z & o.x|}.
  r.phase = (phase + o.phase + 2 * (z.parity_and(o.x) ? 1 : 0)) & 3;
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  return r;
}

std::string PauliString::label() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  // Report the conventional letters; Y contributes one factor of i which we
  // pull out of the stored phase.
  int e = phase;
  std::string body(n, 'I');
  for (int q = 0; q < n; ++q) {
    bool bx = x.test(q), bz = z.test(q);
    if (bx && bz) {
      body[q] = 'Y';
      e = (e + 3) & 3;
    } else if (bx) {
      body[q] = 'X';
    } else if (bz) {
      body[q] = 'Z';
    }
  }
  return std::string(prefix[e & 3]) + body;
}

}  // namespace scarlab
