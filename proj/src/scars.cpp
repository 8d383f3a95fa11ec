#include "scarlab/scars.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace scarlab {

namespace {

// Family signs of the odd-L tower: s_alpha fixes the pattern away from the
// defect, t_alpha the value on the defect rung.
constexpr int kS[5] = {0, +1, -1, -1, +1};
constexpr int kT[5] = {0, -1, +1, -1, +1};

int pow_m1(int e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

std::string ScarLabel::name() const {
  if (even) return "psi" + std::to_string(which);
  return "phi" + std::to_string(alpha) + "(" + std::to_string(k) + ")";
}

int scar_zz_sign(const ScarLabel& label, int L, int p) {
  (void)L;
  if (label.even) {
    int base = pow_m1(p);
    return label.which == 1 ? base : -base;
  }
  const int k = label.k, a = label.alpha;
  if (p == k) return kT[a];
  if (p < k) return kS[a] * pow_m1(k - p);
  return -kS[a] * pow_m1(k - p);
}

int scar_xx_sign(const ScarLabel& label, int L, int p) {
  (void)L;
  if (label.even) return -1;
  return p == label.k ? +1 : -1;
}

std::vector<ScarLabel> scar_labels(int L) {
  if (L < 2) throw std::invalid_argument("scar labels need L >= 2");
  std::vector<ScarLabel> out;
  if (L % 2 == 0) {
    for (int w = 1; w <= 2; ++w) {
      ScarLabel s;
      s.even = true;
      s.which = w;
      out.push_back(s);
    }
  } else {
    for (int k = 1; k <= L; ++k)
      for (int a = 1; a <= 4; ++a) {
        ScarLabel s;
        s.alpha = a;
        s.k = k;
        out.push_back(s);
      }
  }
  return out;
}

int scar_index(int L, const ScarLabel& label) {
  if (L % 2 == 0) return label.which - 1;
  return (label.k - 1) * 4 + (label.alpha - 1);
}

std::vector<StabilizerTarget> scar_stabilizer_targets_lgt(
    const LadderGeometry& geom, const ScarLabel& label, int vx) {
  if (geom.k != 2)
    throw std::invalid_argument("scar states require a two-row ladder");
  const int L = geom.L, n = geom.n_links;
  std::vector<StabilizerTarget> t;

  auto zz = [&](int p) {  // 1-based column label, wraps
    return scar_zz_sign(label, L, (p - 1 + L) % L + 1);
  };

  // sigma^z on every horizontal link; both rows carry the same pattern.
  for (int c = 0; c < L; ++c)
    for (int r = 0; r < 2; ++r)
      t.push_back({PauliString::z_mask_u64(n, uint64_t(1) << geom.h_link(c, r)),
                   zz(c + 1), "z_" + geom.link_name(geom.h_link(c, r))});

  // Vertical rung ZZ pairs, values fixed by the Gauss laws.
  for (int c = 0; c < L; ++c) {
    uint64_t m = (uint64_t(1) << geom.v_link(c, 0)) |
                 (uint64_t(1) << geom.v_link(c, 1));
    t.push_back({PauliString::z_mask_u64(n, m), zz(c) * zz(c + 1),
                 "rungzz_" + std::to_string(c + 1)});
  }

  // x ribbon.
  t.push_back({PauliString::z_mask_u64(n, geom.x_ribbon_mask()), vx, "Vx"});

  // Plaquette-pair X stabilizers; the product of all L is the identity, so
  // only the first L-1 are generators.
  for (int p = 1; p <= L - 1; ++p) {
    uint64_t m = geom.plaquette_mask(p - 1, 0) ^ geom.plaquette_mask(p - 1, 1);
    t.push_back({PauliString::x_mask_u64(n, m), scar_xx_sign(label, L, p),
                 "rungxx_" + std::to_string(p)});
  }
  return t;
}

std::vector<StabilizerTarget> scar_stabilizer_targets_ising(
    int L, const ScarLabel& label) {
  const int n = 2 * L;
  std::vector<StabilizerTarget> t;
  for (int p = 1; p <= L; ++p) {
    Bitset m(n);
    m.set(p - 1);
    m.set(p - 1 + L);
    t.push_back({PauliString::z_mask(n, m), scar_zz_sign(label, L, p),
                 "rungzz_" + std::to_string(p)});
  }
  for (int p = 1; p <= L; ++p) {
    Bitset m(n);
    m.set(p - 1);
    m.set(p - 1 + L);
    t.push_back({PauliString::x_mask(n, m), scar_xx_sign(label, L, p),
                 "rungxx_" + std::to_string(p)});
  }
  return t;
}

namespace {

// psi <- (psi + sign * P psi) / sqrt(2); P must be a pure-X Pauli whose
// image is orthogonal to psi (true along the construction chain).
void chain_project(StateVector& psi, const PauliString& p, int sign) {
  StateVector flipped = apply_pauli(psi, p);
  const double s = 1.0 / std::sqrt(2.0);
  for (int64_t i = 0; i < psi.dimension(); ++i)
    psi.amp[i] = (psi.amp[i] + double(sign) * flipped.amp[i]) * s;
}

StateVector scar_state_lgt(const SectorBasis& basis, const ScarLabel& label) {
  const SectorSpec& spec = basis.spec;
  if (spec.vy != +1)
    throw std::invalid_argument("scar states live in the vy = +1 sector");
  LadderGeometry geom(spec.L, spec.k);
  const int L = geom.L;

  auto zz = [&](int p) { return scar_zz_sign(label, L, (p - 1 + L) % L + 1); };

  // Seed configuration: definite sigma^z everywhere.  Horizontal links carry
  // the rung pattern on both rows; top-row vertical links are all up except
  // for one flip when vx = -1; bottom-row vertical links close the Gauss laws.
  uint64_t seed = 0;
  auto bit_of = [](int sign) { return sign < 0 ? uint64_t(1) : uint64_t(0); };
  for (int c = 0; c < L; ++c)
    for (int r = 0; r < 2; ++r)
      seed |= bit_of(zz(c + 1)) << geom.h_link(c, r);
  for (int c = 0; c < L; ++c) {
    uint64_t v0 = (c == 0 && spec.vx < 0) ? 1 : 0;
    seed |= v0 << geom.v_link(c, 0);
    uint64_t h0 = (seed >> geom.h_link((c - 1 + L) % L, 0)) & 1;
    uint64_t h1 = (seed >> geom.h_link(c, 0)) & 1;
    seed |= (h0 ^ h1 ^ v0) << geom.v_link(c, 1);
  }

  StateVector psi = basis_state(basis, seed);
  for (int p = 1; p <= L - 1; ++p) {
    uint64_t m = geom.plaquette_mask(p - 1, 0) ^ geom.plaquette_mask(p - 1, 1);
    chain_project(psi, PauliString::x_mask_u64(geom.n_links, m),
                  scar_xx_sign(label, L, p));
  }
  return psi;
}

StateVector scar_state_ising(const SectorBasis& basis, const ScarLabel& label) {
  const int L = basis.spec.L;
  const int n = 2 * L;
  uint64_t seed = 0;
  for (int p = 1; p <= L; ++p)
    if (scar_zz_sign(label, L, p) < 0) seed |= uint64_t(1) << (p - 1);

  StateVector psi = basis_state(basis, seed);
  for (int p = 1; p <= L; ++p) {
    Bitset m(n);
    m.set(p - 1);
    m.set(p - 1 + L);
    chain_project(psi, PauliString::x_mask(n, m), scar_xx_sign(label, L, p));
  }
  return psi;
}

}  // namespace

StateVector scar_state(const SectorBasis& basis, const ScarLabel& label) {
  const int L = basis.spec.L;
  if (label.even != (L % 2 == 0))
    throw std::invalid_argument("scar label parity does not match L");
  if (label.even && (label.which < 1 || label.which > 2))
    throw std::invalid_argument("even-ladder scar index must be 1 or 2");
  if (!label.even &&
      (label.alpha < 1 || label.alpha > 4 || label.k < 1 || label.k > L))
    throw std::invalid_argument("scar label out of range");
  return basis.spec.side == Side::lgt ? scar_state_lgt(basis, label)
                                      : scar_state_ising(basis, label);
}

std::vector<StateVector> scar_states(const SectorBasis& basis) {
  std::vector<StateVector> out;
  for (const ScarLabel& l : scar_labels(basis.spec.L))
    out.push_back(scar_state(basis, l));
  return out;
}

StateVector boundary_pinned_superposition(const SectorBasis& basis, int a,
                                          int b, uint64_t seed) {
  const int L = basis.spec.L;
  if (L % 2 == 0) throw std::invalid_argument("pinned superpositions need odd L");
  if (a % 2 || b % 2 || a < 2 || b <= a || b > L - 1)
    throw std::invalid_argument(
        "pinned superpositions need even columns 2 <= a < b <= L-1");

  std::vector<ScarLabel> terms;
  static constexpr int kEvenPair[2] = {1, 4}, kOddPair[2] = {2, 3};
  for (int k = a + 1; k < b; ++k) {
    const int* pair = k % 2 == 0 ? kEvenPair : kOddPair;
    terms.push_back({false, 0, pair[0], k});
    terms.push_back({false, 0, pair[1], k});
  }
  terms.push_back({false, 0, 4, a});
  terms.push_back({false, 0, 1, b});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector psi(basis);
  for (const ScarLabel& label : terms) {
    std::complex<double> c(gauss(rng), gauss(rng));
    StateVector phi = scar_state(basis, label);
    for (int64_t i = 0; i < psi.dimension(); ++i) psi.amp[i] += c * phi.amp[i];
  }
  psi.normalize();
  return psi;
}

double scar_eigen_residual(const SparseOperator& h,
                           const std::vector<StateVector>& states) {
  double worst = 0;
  for (const StateVector& s : states) {
    StateVector hs = h.apply(s);
    worst = std::max(worst, hs.norm());
  }
  return worst;
}

double gram_deviation(const std::vector<StateVector>& states) {
  double worst = 0;
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i; j < states.size(); ++j) {
      std::complex<double> g = inner(states[i], states[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

void project_onto_span(const std::vector<StateVector>& states,
                       const std::complex<double>* in,
                       std::complex<double>* out) {
  const int64_t dim = states.empty() ? 0 : states[0].dimension();
  for (int64_t i = 0; i < dim; ++i) out[i] = 0;
  for (const StateVector& s : states) {
    std::complex<double> ov = 0;
    for (int64_t i = 0; i < dim; ++i) ov += std::conj(s.amp[i]) * in[i];
    for (int64_t i = 0; i < dim; ++i) out[i] += ov * s.amp[i];
  }
}

double subspace_leakage(const SparseOperator& h,
                        const std::vector<StateVector>& states) {
  if (gram_deviation(states) > 1e-10)
    throw std::runtime_error("subspace_leakage requires orthonormal states");
  double worst = 0;
  std::vector<std::complex<double>> proj(states[0].dimension());
  for (const StateVector& s : states) {
    StateVector hs = h.apply(s);
    project_onto_span(states, hs.amp.data(), proj.data());
    double r2 = 0;
    for (int64_t i = 0; i < hs.dimension(); ++i)
      r2 += std::norm(hs.amp[i] - proj[i]);
    worst = std::max(worst, std::sqrt(r2));
  }
  return worst;
}

DenseMatrix projected_hamiltonian(const SparseOperator& h,
                                  const std::vector<StateVector>& states) {
  const int64_t m = int64_t(states.size());
  DenseMatrix b(m);
  for (int64_t j = 0; j < m; ++j) {
    StateVector hs = h.apply(states[j]);
    for (int64_t i = 0; i < m; ++i) {
      std::complex<double> v = inner(states[i], hs);
      if (std::abs(v.imag()) > 1e-12)
        throw std::runtime_error("projected Hamiltonian is not real");
      b.at(i, j) = v.real();
    }
  }
  return b;
}

DenseMatrix effective_scar_hamiltonian(int L, const CouplingConfig& cfg,
                                       int vx) {
  if (L < 3 || L % 2 == 0)
    throw std::invalid_argument("effective Hamiltonian defined for odd L >= 3");
  const int n = 4 * L;
  DenseMatrix h(n);
  auto idx = [](int k, int a) { return (k - 1) * 4 + (a - 1); };

  for (int k = 1; k <= L; ++k)
    for (int a = 1; a <= 4; ++a) {
      ScarLabel label;
      label.alpha = a;
      label.k = k;
      double diag = 0;
      for (int p = 1; p <= L; ++p) {
        double gt = 2 * cfg.g + (p == cfg.epsilon_plaquette ? cfg.epsilon : 0.0);
        diag -= gt * scar_zz_sign(label, L, p);
      }
      h.at(idx(k, a), idx(k, a)) = diag;
    }

  // Defect-preserving rung flips pair (1,4) and (2,3) at fixed k.
  for (int k = 1; k <= L; ++k) {
    h.at(idx(k, 1), idx(k, 4)) = h.at(idx(k, 4), idx(k, 1)) = -2.0;
    h.at(idx(k, 2), idx(k, 3)) = h.at(idx(k, 3), idx(k, 2)) = -2.0;
  }

  // Defect hopping k -> k-1 through the bond between rungs k-1 and k; the
  // wrap-around bond carries the vx sign.
  for (int k = 1; k <= L; ++k) {
    int km = k == 1 ? L : k - 1;
    double gb = (k == 1 ? vx : 1) * cfg.g;
    h.at(idx(km, 3), idx(k, 1)) = h.at(idx(k, 1), idx(km, 3)) = -2.0 * gb;
    h.at(idx(km, 4), idx(k, 2)) = h.at(idx(k, 2), idx(km, 4)) = -2.0 * gb;
  }
  return h;
}

}  // namespace scarlab
