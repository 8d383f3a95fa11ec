#pragma once

#include <vector>

#include "scarlab/hamiltonian.hpp"
#include "scarlab/linalg.hpp"
#include "scarlab/pauli.hpp"

namespace scarlab {

// Jordan-Wigner dictionary on the 2L-spin chain, ordered qubit 0..2L-1.
// Majorana pair per site:  gamma_a = prod_{q<a}(-X_q) Z_a,
// gammabar_a = -i X_a gamma_a  (a = 1..2L, 1-based).  Complex modes pair the
// two legs of rung p:  c_p = (gamma_p - i gamma_{p+L})/2 and
// cbar_p = (gammabar_p - i gammabar_{p+L})/2.
PauliString jw_gamma(int L, int a);
PauliString jw_gamma_bar(int L, int a);

CMatrix dense_pauli_matrix(const PauliString& p);

// Dense rung-fermion number operator N = sum_p (n_p + nbar_p).
CMatrix jw_number_operator(int L);

// Full identity battery at a given (small) L: Majorana algebra, the operator
// dictionary between spin and fermion language term by term, the conserved
// quadratic charge (N - L)^2 commuting with every Hamiltonian term family,
// and the scar subspace's characterization as extremal-charge eigenspace.
std::vector<CheckResult> run_fermion_checks(int L);

}  // namespace scarlab
