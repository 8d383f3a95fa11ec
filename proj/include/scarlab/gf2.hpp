#pragma once

#include <optional>
#include <vector>

#include "scarlab/bits.hpp"

namespace scarlab {

// Solution set of a linear system over GF(2): the affine space
// particular + span(nullspace).
struct Gf2Solution {
  Bitset particular;
  std::vector<Bitset> nullspace;
};

// Linear system A x = b over GF(2), rows added incrementally.
class Gf2System {
 public:
  explicit Gf2System(int nvars) : n_(nvars) {}

  void add_row(const Bitset& coeffs, bool rhs);
  void add_row_u64(uint64_t mask, bool rhs) {
    add_row(Bitset::from_u64(n_, mask), rhs);
  }

  int num_vars() const { return n_; }
  int num_rows() const { return int(rows_.size()); }

  // Returns nullopt when the system is inconsistent.  Pivots are chosen at
  // the lowest available column index, so the output is deterministic.
  std::optional<Gf2Solution> solve() const;

  // Reduced row echelon basis of the span of the coefficient rows.
  std::vector<Bitset> row_space_basis() const;

 private:
  int n_;
  std::vector<Bitset> rows_;
  std::vector<uint8_t> rhs_;
};

// RREF basis of span(rows); zero rows are dropped.
std::vector<Bitset> gf2_rref(std::vector<Bitset> rows);

// RREF basis of the projection of span(rows) onto the coordinates selected by
// `region` (all other coordinates zeroed).  Used to classify the diagonal
// symmetries a constrained sector induces on a subsystem.
std::vector<Bitset> gf2_project_row_space(const std::vector<Bitset>& rows,
                                          const Bitset& region);

}  // namespace scarlab
