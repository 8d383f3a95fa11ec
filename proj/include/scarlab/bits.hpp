#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scarlab {

// Dynamically sized bit vector used for Pauli support masks, GF(2) linear
// algebra and tableau rows.  Fixed width at construction; all binary
// operations require equal widths.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  static Bitset from_u64(int nbits, uint64_t value) {
    Bitset b(nbits);
    if (!b.w_.empty()) b.w_[0] = value;
    b.trim();
    return b;
  }

  int size() const { return nbits_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void set(int i, bool v = true) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  Bitset& operator^=(const Bitset& o) {
    for (size_t j = 0; j < w_.size(); ++j) w_[j] ^= o.w_[j];
    return *this;
  }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  Bitset& operator&=(const Bitset& o) {
    for (size_t j = 0; j < w_.size(); ++j) w_[j] &= o.w_[j];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  Bitset& operator|=(const Bitset& o) {
    for (size_t j = 0; j < w_.size(); ++j) w_[j] |= o.w_[j];
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }

  // Parity of popcount(*this & other).
  bool parity_and(const Bitset& o) const {
    uint64_t acc = 0;
    for (size_t j = 0; j < w_.size(); ++j) acc ^= w_[j] & o.w_[j];
    return __builtin_parityll(acc);
  }

  bool parity_and_u64(uint64_t mask) const {
    return __builtin_parityll((w_.empty() ? 0 : w_[0]) & mask);
  }

  // Index of the highest set bit, or -1 when empty.
  int highest_set() const {
    for (int j = int(w_.size()) - 1; j >= 0; --j)
      if (w_[j]) return j * 64 + 63 - __builtin_clzll(w_[j]);
    return -1;
  }

  // Index of the lowest set bit, or -1 when empty.
  int lowest_set() const {
    for (size_t j = 0; j < w_.size(); ++j)
      if (w_[j]) return int(j) * 64 + __builtin_ctzll(w_[j]);
    return -1;
  }

  uint64_t to_u64() const { return w_.empty() ? 0 : w_[0]; }

  // MSB (bit nbits-1) first, matching the on-disk bitstring convention.
  std::string to_string() const {
    std::string s(nbits_, '0');
    for (int i = 0; i < nbits_; ++i)
      if (test(i)) s[nbits_ - 1 - i] = '1';
    return s;
  }

  size_t hash() const {
    size_t h = size_t(nbits_) * 0x9e3779b97f4a7c15ull;
    for (uint64_t w : w_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

  bool operator==(const Bitset&) const = default;

 private:
  void trim() {
    if (nbits_ % 64 && !w_.empty())
      w_.back() &= (uint64_t(1) << (nbits_ % 64)) - 1;
  }

  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace scarlab
