#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scarlab/scars.hpp"
#include "scarlab/stabilizer.hpp"

namespace scarlab {

enum class GateKind { H, S, X, Z, CNOT, CZ, MeasureZ };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = -1;
  int q1 = -1;             // CNOT target / CZ partner
  int cbit = -1;           // MeasureZ destination
  int cond = -1;           // classical control bit, -1 when unconditioned
  bool cond_value = true;  // apply when cbits[cond] == cond_value
};

// Clifford circuit with mid-circuit Z measurements and classical
// feedforward.  Qubits are numbered data first (0..n_data-1), ancillas
// after; classical bits are written by measurements and read by conditions.
//
// Text form (one directive or gate per line; '#' starts a comment):
//   qubits N        data qubit count
//   ancillas N      optional, default 0
//   creg N          classical bit count (required when measuring)
//   h Q | s Q | x Q | z Q
//   cnot C T | cz A B
//   measure Q -> cK
// any gate line may end in "if cK" or "if !cK" to condition on a classical
// bit written by an earlier measurement.
struct Circuit {
  int n_data = 0;
  int n_ancillas = 0;
  int n_cbits = 0;
  std::vector<Gate> gates;

  int width() const { return n_data + n_ancillas; }

  // Throws std::invalid_argument on out-of-range targets, duplicate qubits,
  // unwritten classical conditions, or measurements without a register.
  void validate() const;

  std::string to_text() const;
  static Circuit from_text(const std::string& text);

  Gate& add(GateKind kind, int q0, int q1 = -1, int cbit = -1);
};

struct ShotResult {
  Tableau tableau;
  std::vector<uint8_t> cbits;
  std::vector<uint8_t> outcomes;  // measurement results in program order
};

// Executes the circuit on |0...0>.  rng resolves free measurement outcomes
// (deterministic ones never consult it); it may be null for circuits whose
// measurements are all deterministic.
ShotResult run_circuit(const Circuit& circuit, std::mt19937_64* rng);

// Deterministically explores every measurement-outcome branch (free
// measurements fork, deterministic ones do not).
std::vector<ShotResult> run_all_branches(const Circuit& circuit,
                                         int max_branches = 4096);

// Stabilizer targets a preparation circuit must satisfy: the gauge-side scar
// table (4L generators) plus an explicit V_y ribbon target.  vy = -1 asks
// for the mirrored sector whose row-1 horizontal pattern is flipped.
std::vector<StabilizerTarget> scar_circuit_targets(int L,
                                                   const ScarLabel& label,
                                                   int vy = +1);

// True when every target expectation matches its sign; ops narrower than
// the tableau are padded with identities (ancilla qubits).
bool tableau_satisfies(const Tableau& t,
                       const std::vector<StabilizerTarget>& targets);

// Measurement-free scar preparation on the 4L links (odd L, v_y = +1).
// With resolve_sector the x-ribbon is pinned to V_x = +1 by a parity fan-in
// before the rungs are paired (depth grows with L); without it the circuit
// is the constant-depth rung-local layer (horizontal links in sigma^z
// eigenstates, one Bell pair per rung), which satisfies every target except
// the ribbon, left unresolved (<V_x> = 0).
Circuit prep_scar_circuit(int L, const ScarLabel& label,
                          bool resolve_sector = true);

// Mid-circuit-measurement route: L ancillas measure the rung sigma^x sigma^x
// parities, feedforward sigma^z corrections steer every branch to the same
// rung pattern, and one reused ancilla measures the x ribbon (correction
// sigma^x sigma^x on rung 0).  Ancillas are reset to |0> at the end, so all
// branches finish in the identical tableau of prep_scar_circuit.  vy selects
// the V_y sector via the row-1 horizontal pattern.
Circuit prep_scar_circuit_mcm(int L, const ScarLabel& label, int vy = +1);

}  // namespace scarlab
