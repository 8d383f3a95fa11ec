#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/bits.hpp"
#include "scarlab/pauli.hpp"

namespace scarlab {

// Stabilizer-state tableau (Aaronson-Gottesman layout): rows 0..n-1 are
// destabilizers, rows n..2n-1 stabilizers, one scratch row.  Every row is an
// (x, z) bit pair with a sign bit; the represented Pauli of a row is
// (-1)^sign i^{|x&z|} prod_q X^x Z^z, i.e. Y written directly.
class Tableau {
 public:
  explicit Tableau(int n);  // |0...0>

  int n() const { return n_; }

  void h(int q);
  void s(int q);
  void x(int q);
  void z(int q);
  void cnot(int control, int target);
  void cz(int a, int b);

  // True when Z_q commutes with the whole stabilizer group, i.e. a Z
  // measurement of q has a deterministic outcome.
  bool z_deterministic(int q) const;

  // Measures Z_q and updates the state.  forced = +1/-1 pins the outcome of
  // a random measurement (and must agree with a deterministic one);
  // forced = 0 leaves it to the generator, which deterministic measurements
  // never touch.  Returns the outcome as +1 (|0>) or -1 (|1>).
  int measure_z(int q, int forced = 0, std::mt19937_64* rng = nullptr);

  // <P> of the stabilizer state: +1/-1 when P is (up to sign) a stabilizer
  // group element, 0 when the expectation vanishes.  P must be Hermitian.
  int expectation(const PauliString& p) const;

  // Tableau with the stabilizer half in row-reduced echelon form (fixed
  // pivot order: X block by column, then the pure-Z block).  Canonical rows
  // identify the state uniquely; destabilizer rows are not meaningful
  // afterwards.
  Tableau canonical() const;

  // State identity (not representation) comparison via canonical forms.
  bool same_state(const Tableau& other) const;

  // Dense amplitudes on the 2^n computational basis (n <= 14); the phase
  // convention makes the lowest-index support amplitude real positive.
  std::vector<std::complex<double>> to_statevector() const;

 private:
  void rowsum(int h, int i);

  int n_;
  std::vector<Bitset> x_, z_;  // 2n+1 rows (scratch last)
  std::vector<uint8_t> r_;
};

// Brute-force stabilizer Renyi entropy M_2 = -log(sum_P <P>^4 / 2^n) over
// all 4^n Pauli strings; 0 exactly on stabilizer states, log(4/3) on the
// T-rotated qubit.  Capped at n <= 10 by the 8^n cost.
double stabilizer_renyi_entropy_2(const std::vector<std::complex<double>>& amp);
// Same for a state on a full 2^n basis (sector bases are rejected).
double stabilizer_renyi_entropy_2(const StateVector& psi);

}  // namespace scarlab
