#pragma once

#include <string>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/hamiltonian.hpp"
#include "scarlab/operators.hpp"

namespace scarlab {

// Labels one analytic scar state.
//  - even ladders host a pair of zero-energy states (which = 1, 2) whose rung
//    ZZ pattern alternates as +-(-1)^p with all rung XX = -1;
//  - odd ladders host a 4L-dimensional tower phi_alpha(k), alpha = 1..4,
//    k = 1..L, with a single pattern defect ("domain wall") at rung k.
struct ScarLabel {
  bool even = false;
  int which = 1;  // even ladders: 1 or 2
  int alpha = 1;  // odd ladders: 1..4
  int k = 1;      // odd ladders: defect rung 1..L

  std::string name() const;
};

// Rung stabilizer signs of the labelled state; p is the 1-based rung/column.
int scar_zz_sign(const ScarLabel& label, int L, int p);
int scar_xx_sign(const ScarLabel& label, int L, int p);

// All scar labels of a ladder: 2 states for even L (ordering which = 1, 2),
// 4L states for odd L (ordering k outer, alpha inner, i.e. index
// (k-1)*4 + alpha-1).
std::vector<ScarLabel> scar_labels(int L);
int scar_index(int L, const ScarLabel& label);

// One target stabilizer generator (sign * op has eigenvalue +1).
struct StabilizerTarget {
  PauliString op;
  int sign = +1;
  std::string name;
};

// Full generating set (4L generators for the gauge side on 4L links, 2L for
// the spin side on 2L qubits) of the labelled scar state's stabilizer group.
// Gauge side includes the Gauss laws and both ribbons (vy = +1 always; vx
// selectable).
std::vector<StabilizerTarget> scar_stabilizer_targets_lgt(
    const LadderGeometry& geom, const ScarLabel& label, int vx = +1);
std::vector<StabilizerTarget> scar_stabilizer_targets_ising(
    int L, const ScarLabel& label);

// Explicit state vector of the labelled scar in the given basis (gauge sector
// basis with vy = +1, or the full spin basis).  The amplitude of the seed
// configuration is positive; amplitudes are +-2^{-(L-1)/2} (gauge side) or
// +-2^{-L/2} (spin side).
StateVector scar_state(const SectorBasis& basis, const ScarLabel& label);

// All scar states of the ladder, in scar_labels order.
std::vector<StateVector> scar_states(const SectorBasis& basis);

// Random superposition of odd-L scar basis states whose boundary rungs are
// pinned to Z_a Z_{a+L} = +1 and Z_b Z_{b+L} = -1, with the rung defect
// trapped strictly between columns a and b: terms phi_i(k) with a < k < b
// (i in {1,4} for even k, {2,3} for odd k) plus phi_4(a) and phi_1(b).
// Requires odd L and even columns 2 <= a < b <= L-1.  Coefficients are drawn
// from the seeded generator and normalized.
StateVector boundary_pinned_superposition(const SectorBasis& basis, int a,
                                          int b, uint64_t seed);

// max_j ||H phi_j|| over the given states (exact eigenstates at E = 0 give
// values at rounding level).
double scar_eigen_residual(const SparseOperator& h,
                           const std::vector<StateVector>& states);

// max_j || (1 - P) H phi_j || with P the projector on span(states); the
// states must be orthonormal (checked).
double subspace_leakage(const SparseOperator& h,
                        const std::vector<StateVector>& states);

// Gram-matrix deviation from the identity.
double gram_deviation(const std::vector<StateVector>& states);

// Numerical projection <phi_i|H|phi_j> (real; imaginary parts checked).
DenseMatrix projected_hamiltonian(const SparseOperator& h,
                                  const std::vector<StateVector>& states);

// Analytic effective Hamiltonian on the odd-L scar tower, 4L x 4L, basis
// ordered as scar_labels.  Depends on vx through the boundary bond and on the
// detuning through the rung it strikes.  Valid for any odd L >= 3 (the
// dimension never touches the exponentially large sector).
DenseMatrix effective_scar_hamiltonian(int L, const CouplingConfig& cfg,
                                       int vx = +1);

// Projector onto span(states) applied to a vector (helper for scar flagging).
void project_onto_span(const std::vector<StateVector>& states,
                       const std::complex<double>* in,
                       std::complex<double>* out);

}  // namespace scarlab
