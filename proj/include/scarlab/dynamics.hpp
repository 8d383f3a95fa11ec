#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/entanglement.hpp"
#include "scarlab/hamiltonian.hpp"
#include "scarlab/scars.hpp"

namespace scarlab {

// Return amplitudes of a time series: values[i] = <psi0|psi(times[i])>.
struct EchoSeries {
  std::vector<double> times;  // physical time, or layer count for circuits
  std::vector<std::complex<double>> values;
  std::string initial_label;
  std::string kind;  // "hamiltonian" | "random-circuit" | "scar-subspace"
  double g = 0.0;
  int L = 0;

  // Mean of |value| over the trailing `window` fraction of samples.
  double late_time_average(double window = 0.25) const;
};

// exp(-iHt) engine: cached dense eigendecomposition when the sector dimension
// fits the cap, restarted Lanczos exponential above it.  Lanczos steps are
// sized adaptively against the local-error target and the Krylov basis is
// rebuilt after each accepted substep.
class Propagator {
 public:
  struct Options {
    int64_t dense_cap = 4096;
    int krylov_dim = 30;
    double tol = 1e-10;     // local error target per substep
    int max_halvings = 60;  // refusal threshold for the adaptive step
  };

  explicit Propagator(const SparseOperator& h);
  Propagator(const SparseOperator& h, Options opt);

  bool dense() const { return !eig_.evals.empty(); }

  // |psi(t)> = exp(-iHt)|psi0>.  t may be negative.
  StateVector evolve(const StateVector& psi0, double t) const;

  // Advances amplitudes in place by dt (the workhorse for trajectories).
  void advance(std::vector<std::complex<double>>& amp, double dt) const;

 private:
  const SparseOperator* h_ = nullptr;
  Options opt_;
  SpectrumResult eig_;  // dense path only
};

// One-call convenience wrapper around Propagator.
StateVector evolve(const SparseOperator& h, const StateVector& psi0, double t,
                   Propagator::Options opt = {});

// L(t) = <psi0|exp(-iHt)|psi0> on an ascending time grid (marched
// incrementally, so the cost is one trajectory).
EchoSeries loschmidt_echo(const SparseOperator& h, const StateVector& psi0,
                          const std::vector<double>& times,
                          Propagator::Options opt = {});

// Echo of a scar basis state computed entirely inside the 4L-dimensional
// effective Hamiltonian; exact for any odd L at O((4L)^3) cost.
EchoSeries scar_subspace_echo(int L, const CouplingConfig& cfg,
                              const ScarLabel& label,
                              const std::vector<double>& times);

// <sigma^z_link> of a gauge-side state.
double electric_expectation(const StateVector& psi, int link);

// Least-squares slope of log|values| against log(g * times) over the
// half-open time window [t_lo, t_hi]; requires at least two samples inside.
double echo_loglog_slope(const EchoSeries& series, double t_lo, double t_hi);

// Deterministic z-product sector state exactly orthogonal to every scar.
// Scar rung patterns have exactly one aligned cyclic bond (odd L) or none
// (even L); the search picks the most balanced-magnetization configuration
// violating that count, so the horizontal-link stabilizers kill every scar
// overlap identically.  The mismatch is re-verified against each scar
// pattern before returning.
StateVector nonscar_product_state(const SectorBasis& basis);

// Per-layer angle triples (alpha, beta, gamma), one value per family and
// layer (site-uniform).  sample() draws each angle independently and
// uniformly from [0, 2pi) with an mt19937_64 stream; the plateau heights do
// not depend on the angle distribution.
struct RandomCircuitAngles {
  uint64_t seed = 0;
  std::vector<std::array<double, 3>> layers;

  static RandomCircuitAngles sample(int s, uint64_t seed);
};

// Applies layers U(alpha, beta, gamma): the rung-ZZ exponential, then the
// transverse (plaquette-flip) exponential, then the in-row bond exponential,
// in the written order of the layer definition.  Works on a gauge sector
// basis (families mapped through the duality dictionary) or on the full spin
// space; the wrap bond carries the sector's vx sign on both sides.
class RandomCircuitEngine {
 public:
  explicit RandomCircuitEngine(const SectorBasis& basis);

  const SectorBasis& basis() const { return *basis_; }

  void apply_layer(std::vector<std::complex<double>>& amp, double alpha,
                   double beta, double gamma) const;

 private:
  const SectorBasis* basis_ = nullptr;
  std::vector<int32_t> diag_alpha_;  // per-state rung-family eigenvalue
  std::vector<int32_t> diag_gamma_;  // per-state bond-family eigenvalue
  // Commuting involutions of the transverse family as basis permutations.
  std::vector<std::vector<int32_t>> flip_perms_;
};

// States after each of the s layers, psi(0) first (s+1 entries).
std::vector<StateVector> random_circuit_evolve(const RandomCircuitEngine& eng,
                                               const StateVector& psi0,
                                               const RandomCircuitAngles& angles,
                                               int s);

// Streaming echo over circuit layers: times are layer counts 0..s.
EchoSeries random_circuit_echo(const RandomCircuitEngine& eng,
                               const StateVector& psi0,
                               const RandomCircuitAngles& angles, int s);

// Entanglement split along a trajectory.
struct EntanglementSeries {
  std::vector<double> times;
  std::vector<double> s_dist;
  std::vector<double> s_symm;
};

EntanglementSeries entanglement_trajectory(const Propagator& prop,
                                           const StateVector& psi0,
                                           const Cut& cut,
                                           const std::vector<double>& times);

EntanglementSeries circuit_entanglement_trajectory(
    const RandomCircuitEngine& eng, const StateVector& psi0,
    const RandomCircuitAngles& angles, int s, const Cut& cut);

}  // namespace scarlab
