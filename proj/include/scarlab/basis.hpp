#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "scarlab/bits.hpp"
#include "scarlab/geometry.hpp"
#include "scarlab/pauli.hpp"

namespace scarlab {

enum class Side { lgt, ising };

std::string side_name(Side s);
Side side_from_name(const std::string& name);

// Identifies the subspace a basis spans.  For the gauge theory the sector is
// fixed by the Gauss laws (all +1) plus the two ribbon eigenvalues vx, vy.
// For the Ising chain the basis always spans the full 2^(2L) space; `parity`
// only records which global spin-flip sector downstream consumers resolve.
struct SectorSpec {
  Side side = Side::lgt;
  int L = 0;
  int k = 2;
  int vx = +1;
  int vy = +1;
  int parity = 0;  // Ising metadata: 0 = unresolved, otherwise +-1

  std::string label() const;
};

class SectorBasis {
 public:
  SectorSpec spec;
  int n_qubits = 0;

  int64_t dimension() const {
    return full_space_ ? (int64_t(1) << n_qubits) : int64_t(states_.size());
  }

  uint64_t state_at(int64_t i) const {
    return full_space_ ? uint64_t(i) : states_[i];
  }

  // Position of a configuration in the basis, or -1 when it is not in the
  // sector.  O(1) amortized (identity map or hash lookup).
  int64_t index_of(uint64_t s) const {
    if (full_space_) return int64_t(s);
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  bool contains(uint64_t s) const { return index_of(s) >= 0; }

  static SectorBasis full_space(SectorSpec spec, int n_qubits);
  static SectorBasis from_states(SectorSpec spec, int n_qubits,
                                 std::vector<uint64_t> states);

 private:
  bool full_space_ = false;
  std::vector<uint64_t> states_;  // ascending
  std::unordered_map<uint64_t, int64_t> index_;
};

// All z-type parity constraints that carve the physical sector out of the
// link space: one row per site (Gauss law) plus the two ribbons.  Row order:
// sites (c,r) with c outer, r inner; then x ribbon; then y ribbon.
std::vector<Bitset> lgt_constraint_rows(const LadderGeometry& geom);

// Enumerates the joint +1 eigenspace of all Gauss operators with ribbon
// eigenvalues (vx, vy).  Dimension is 2^(kL-1).
SectorBasis enumerate_lgt_sector(const LadderGeometry& geom, int vx, int vy);

// Full 2^(2L)-dimensional spin basis of the two-leg transverse-field Ising
// chain.  Spin p (1-based, legs stacked as p and p+L) is qubit p-1.
SectorBasis enumerate_ising_basis(int L, int parity = 0);

// ---------------------------------------------------------------------------

struct StateVector {
  const SectorBasis* basis = nullptr;
  std::vector<std::complex<double>> amp;

  StateVector() = default;
  explicit StateVector(const SectorBasis& b)
      : basis(&b), amp(b.dimension(), 0.0) {}

  int64_t dimension() const { return int64_t(amp.size()); }
  double norm() const;
  void normalize();
  // Multiplies by a global sign so the first nonzero amplitude has positive
  // real part (canonical phase for real-amplitude states).
  void fix_phase();
};

std::complex<double> inner(const StateVector& a, const StateVector& b);

StateVector basis_state(const SectorBasis& b, uint64_t config);

// Applies a Pauli string inside the sector; throws std::domain_error if the
// string maps any sector configuration outside the sector.
StateVector apply_pauli(const StateVector& psi, const PauliString& p);

// <psi| prod_{i in mask} sigma^z_i |psi> for a diagonal mask.
double diagonal_z_expectation(const StateVector& psi, uint64_t mask);

}  // namespace scarlab
