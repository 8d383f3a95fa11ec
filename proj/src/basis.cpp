#include "scarlab/basis.hpp"

#include <algorithm>
#include <cmath>

#include "scarlab/gf2.hpp"

namespace scarlab {

std::string side_name(Side s) { return s == Side::lgt ? "lgt" : "ising"; }

Side side_from_name(const std::string& name) {
  if (name == "lgt") return Side::lgt;
  if (name == "ising") return Side::ising;
  throw std::invalid_argument("unknown side: " + name);
}

std::string SectorSpec::label() const {
  if (side == Side::lgt)
    return "lgt:L=" + std::to_string(L) + ",k=" + std::to_string(k) +
           ",vx=" + std::string(vx > 0 ? "+1" : "-1") +
           ",vy=" + std::string(vy > 0 ? "+1" : "-1");
  std::string p = parity == 0 ? "full" : (parity > 0 ? "+1" : "-1");
  return "ising:L=" + std::to_string(L) + ",parity=" + p;
}

SectorBasis SectorBasis::full_space(SectorSpec spec, int n_qubits) {
  SectorBasis b;
  b.spec = spec;
  b.n_qubits = n_qubits;
  b.full_space_ = true;
  return b;
}

SectorBasis SectorBasis::from_states(SectorSpec spec, int n_qubits,
                                     std::vector<uint64_t> states) {
  SectorBasis b;
  b.spec = spec;
  b.n_qubits = n_qubits;
  std::sort(states.begin(), states.end());
  b.states_ = std::move(states);
  b.index_.reserve(b.states_.size() * 2);
  for (int64_t i = 0; i < int64_t(b.states_.size()); ++i)
    b.index_.emplace(b.states_[i], i);
  return b;
}

std::vector<Bitset> lgt_constraint_rows(const LadderGeometry& geom) {
  std::vector<Bitset> rows;
  rows.reserve(geom.n_sites + 2);
  for (int c = 0; c < geom.L; ++c)
    for (int r = 0; r < geom.k; ++r)
      rows.push_back(Bitset::from_u64(geom.n_links, geom.site_mask(c, r)));
  rows.push_back(Bitset::from_u64(geom.n_links, geom.x_ribbon_mask()));
  rows.push_back(Bitset::from_u64(geom.n_links, geom.y_ribbon_mask()));
  return rows;
}

SectorBasis enumerate_lgt_sector(const LadderGeometry& geom, int vx, int vy) {
  if (std::abs(vx) != 1 || std::abs(vy) != 1)
    throw std::invalid_argument("ribbon eigenvalues must be +-1");

  Gf2System sys(geom.n_links);
  for (int c = 0; c < geom.L; ++c)
    for (int r = 0; r < geom.k; ++r) sys.add_row_u64(geom.site_mask(c, r), false);
  sys.add_row_u64(geom.x_ribbon_mask(), vx < 0);
  sys.add_row_u64(geom.y_ribbon_mask(), vy < 0);

  auto sol = sys.solve();
  if (!sol) throw std::runtime_error("gauge sector is empty");

  const int d = int(sol->nullspace.size());
  std::vector<uint64_t> gens(d);
  for (int j = 0; j < d; ++j) gens[j] = sol->nullspace[j].to_u64();

  std::vector<uint64_t> states;
  states.reserve(uint64_t(1) << d);
  uint64_t cur = sol->particular.to_u64();
  // Gray-code walk: one generator XOR per enumerated state.
  states.push_back(cur);
  for (uint64_t i = 1; i < (uint64_t(1) << d); ++i) {
    cur ^= gens[__builtin_ctzll(i)];
    states.push_back(cur);
  }

  SectorSpec spec;
  spec.side = Side::lgt;
  spec.L = geom.L;
  spec.k = geom.k;
  spec.vx = vx;
  spec.vy = vy;
  return SectorBasis::from_states(spec, geom.n_links, std::move(states));
}

SectorBasis enumerate_ising_basis(int L, int parity) {
  if (L < 2) throw std::invalid_argument("Ising chain requires L >= 2");
  if (2 * L > 40) throw std::invalid_argument("Ising chain limited to 2L <= 40");
  SectorSpec spec;
  spec.side = Side::ising;
  spec.L = L;
  spec.k = 2;
  spec.parity = parity;
  return SectorBasis::full_space(spec, 2 * L);
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  double n = norm();
  if (n == 0) throw std::runtime_error("cannot normalize zero vector");
  for (auto& a : amp) a /= n;
}

void StateVector::fix_phase() {
  for (const auto& a : amp) {
    if (std::abs(a) > 1e-14) {
      if (a.real() < 0)
        for (auto& x : amp) x = -x;
      return;
    }
  }
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  std::complex<double> s = 0;
  for (int64_t i = 0; i < a.dimension(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

StateVector basis_state(const SectorBasis& b, uint64_t config) {
  int64_t i = b.index_of(config);
  if (i < 0) throw std::domain_error("configuration not in sector");
  StateVector v(b);
  v.amp[i] = 1.0;
  return v;
}

StateVector apply_pauli(const StateVector& psi, const PauliString& p) {
  const SectorBasis& b = *psi.basis;
  StateVector out(b);
  for (int64_t i = 0; i < psi.dimension(); ++i) {
    if (psi.amp[i] == 0.0) continue;
    auto [cfg, coeff] = p.apply_to_basis(b.state_at(i));
    int64_t j = b.index_of(cfg);
    if (j < 0) throw std::domain_error("Pauli string leaves the sector");
    out.amp[j] += coeff * psi.amp[i];
  }
  return out;
}

double diagonal_z_expectation(const StateVector& psi, uint64_t mask) {
  const SectorBasis& b = *psi.basis;
  double s = 0;
  for (int64_t i = 0; i < psi.dimension(); ++i) {
    double w = std::norm(psi.amp[i]);
    if (w == 0) continue;
    s += __builtin_parityll(b.state_at(i) & mask) ? -w : w;
  }
  return s;
}

}  // namespace scarlab
