#include "scarlab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scarlab/linalg.hpp"

namespace scarlab {

PauliSum lgt_hamiltonian_terms(const LadderGeometry& geom,
                               const CouplingConfig& cfg) {
  PauliSum h;
  h.n = geom.n_links;
  for (int r = 0; r < geom.k; ++r)
    for (int c = 0; c < geom.L; ++c)
      h.add(-1.0, PauliString::x_mask_u64(geom.n_links,
                                          geom.plaquette_mask(c, r)));
  const int eps_link =
      cfg.epsilon != 0.0 ? geom.h_link(cfg.epsilon_plaquette - 1, 0) : -1;
  for (int l = 0; l < geom.n_links; ++l) {
    double g = cfg.g + (l == eps_link ? cfg.epsilon : 0.0);
    h.add(-g, PauliString::z_mask_u64(geom.n_links, uint64_t(1) << l));
  }
  return h;
}

PauliSum ising_hamiltonian_terms(int L, const CouplingConfig& cfg, int vx,
                                 int vy) {
  if (std::abs(vx) != 1 || std::abs(vy) != 1)
    throw std::invalid_argument("ribbon eigenvalues must be +-1");
  const int n = 2 * L;
  PauliSum h;
  h.n = n;
  for (int q = 0; q < n; ++q)
    h.add(-1.0, PauliString::single(n, 'X', q));
  const double gt = cfg.g * (1 + vy);
  for (int p = 1; p <= L; ++p) {
    double c = gt + (p == cfg.epsilon_plaquette ? cfg.epsilon : 0.0);
    Bitset m(n);
    m.set(p - 1);
    m.set(p - 1 + L);
    h.add(-c, PauliString::z_mask(n, m));
  }
  for (int row = 0; row < 2; ++row)
    for (int p = 1; p <= L; ++p) {
      double c = (p == L ? vx * cfg.g : cfg.g);
      int q0 = row * L + (p - 1);
      int q1 = row * L + (p % L);
      Bitset m(n);
      m.set(q0);
      m.set(q1);
      h.add(-c, PauliString::z_mask(n, m));
    }
  return h;
}

SparseOperator build_lgt_hamiltonian(const SectorBasis& basis,
                                     const CouplingConfig& cfg) {
  LadderGeometry geom(basis.spec.L, basis.spec.k);
  return SparseOperator::build(basis, lgt_hamiltonian_terms(geom, cfg));
}

SparseOperator build_ising_hamiltonian(const SectorBasis& basis,
                                       const CouplingConfig& cfg) {
  return SparseOperator::build(
      basis, ising_hamiltonian_terms(basis.spec.L, cfg, basis.spec.vx,
                                     basis.spec.vy));
}

SparseOperator build_hamiltonian(const SectorBasis& basis,
                                 const CouplingConfig& cfg) {
  return basis.spec.side == Side::lgt ? build_lgt_hamiltonian(basis, cfg)
                                      : build_ising_hamiltonian(basis, cfg);
}

CheckResult make_check(const std::string& name, double residual,
                       double tolerance) {
  return {name, residual, tolerance, residual <= tolerance};
}

SpectrumResult spectrum_dense(const SparseOperator& op, bool vectors,
                              int64_t max_dim) {
  if (op.dimension() > max_dim)
    throw std::runtime_error("dense spectrum refused: dimension " +
                             std::to_string(op.dimension()) + " exceeds cap " +
                             std::to_string(max_dim));
  // Refuse before materializing the dense matrix: an overcommitting kernel
  // would grant the allocation and kill the process on first touch.
  const int64_t matrix_bytes = op.dimension() * op.dimension() * 8;
  if (available_memory_bytes() < matrix_bytes + matrix_bytes / 8)
    throw std::runtime_error(
        "insufficient memory: dense spectrum of dimension " +
        std::to_string(op.dimension()) + " needs " +
        std::to_string(matrix_bytes / (1 << 20)) +
        " MiB for the matrix alone plus eigensolver workspace");
  return sym_eigen(op.to_dense(), vectors);
}

ParityResolvedSpectrum ising_parity_spectrum(int L, const CouplingConfig& cfg,
                                             int vx, int vy) {
  SectorBasis basis = enumerate_ising_basis(L);
  SparseOperator h = SparseOperator::build(
      basis, ising_hamiltonian_terms(L, cfg, vx, vy));
  SpectrumResult spec = spectrum_dense(h, true);

  // Global spin flip is the permutation b -> ~b on 2L bits.
  const int64_t dim = basis.dimension();
  const uint64_t all = (uint64_t(1) << (2 * L)) - 1;
  auto apply_parity = [&](const double* in, double* out) {
    for (int64_t i = 0; i < dim; ++i) out[uint64_t(i) ^ all] = in[i];
  };
  std::vector<double> parity = resolve_degenerate(spec, apply_parity);

  ParityResolvedSpectrum out;
  out.evals = spec.evals;
  out.parity.resize(dim);
  for (int64_t i = 0; i < dim; ++i) {
    if (std::abs(std::abs(parity[i]) - 1.0) > 1e-8)
      throw std::runtime_error("parity resolution failed");
    out.parity[i] = parity[i] > 0 ? 1 : -1;
  }
  return out;
}

std::vector<CheckResult> verify_duality(int L, const CouplingConfig& cfg,
                                        int vx, int vy, double tol) {
  std::vector<CheckResult> checks;

  LadderGeometry geom(L, 2);
  SectorBasis lgt = enumerate_lgt_sector(geom, vx, vy);
  SparseOperator h_lgt = build_lgt_hamiltonian(lgt, cfg);
  SpectrumResult lgt_spec = spectrum_dense(h_lgt, false);

  ParityResolvedSpectrum ising = ising_parity_spectrum(L, cfg, vx, vy);
  std::vector<double> even;
  for (size_t i = 0; i < ising.evals.size(); ++i)
    if (ising.parity[i] > 0) even.push_back(ising.evals[i]);
  std::sort(even.begin(), even.end());

  checks.push_back(make_check(
      "duality dimension match",
      std::abs(double(even.size()) - double(lgt_spec.evals.size())), 0.0));
  double worst = even.size() == lgt_spec.evals.size()
                     ? 0.0
                     : std::numeric_limits<double>::infinity();
  if (even.size() == lgt_spec.evals.size())
    for (size_t i = 0; i < even.size(); ++i)
      worst = std::max(worst, std::abs(even[i] - lgt_spec.evals[i]));
  checks.push_back(make_check("duality sorted spectrum", worst, tol));
  return checks;
}

std::vector<CheckResult> verify_lgt_symmetries(const LadderGeometry& geom,
                                               const CouplingConfig& cfg,
                                               double tol) {
  if (geom.n_links > 24)
    throw std::runtime_error("symmetry check limited to 24 links");
  // Work on the unconstrained link space so the commutators are nontrivial.
  SectorSpec spec;
  spec.side = Side::lgt;
  spec.L = geom.L;
  spec.k = geom.k;
  SectorBasis full = SectorBasis::full_space(spec, geom.n_links);
  SparseOperator h =
      SparseOperator::build(full, lgt_hamiltonian_terms(geom, cfg));

  const int64_t dim = full.dimension();
  std::vector<std::pair<std::string, uint64_t>> sym;
  for (int c = 0; c < geom.L; ++c)
    for (int r = 0; r < geom.k; ++r)
      sym.emplace_back("[H, G(" + std::to_string(c) + "," + std::to_string(r) +
                           ")]",
                       geom.site_mask(c, r));
  sym.emplace_back("[H, Vx]", geom.x_ribbon_mask());
  sym.emplace_back("[H, Vy]", geom.y_ribbon_mask());

  std::vector<CheckResult> checks;
  std::vector<std::complex<double>> x(dim), hx(dim), shx(dim), sx(dim), hsx(dim);
  // Deterministic pseudo-random probe vector.
  uint64_t s = 0x9e3779b97f4a7c15ull;
  auto next = [&s]() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return double(s % 10007) / 10007.0 - 0.5;
  };
  for (int64_t i = 0; i < dim; ++i) x[i] = {next(), next()};

  h.apply(x.data(), hx.data());
  for (auto& [name, mask] : sym) {
    for (int64_t i = 0; i < dim; ++i) {
      double sign = __builtin_parityll(uint64_t(i) & mask) ? -1.0 : 1.0;
      shx[i] = sign * hx[i];
      sx[i] = sign * x[i];
    }
    h.apply(sx.data(), hsx.data());
    double num = 0, den = 0;
    for (int64_t i = 0; i < dim; ++i) {
      num += std::norm(shx[i] - hsx[i]);
      den += std::norm(x[i]);
    }
    checks.push_back(make_check(name, std::sqrt(num / den), tol));
  }
  return checks;
}

}  // namespace scarlab
