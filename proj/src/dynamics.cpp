#include "scarlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "scarlab/geometry.hpp"

namespace scarlab {

namespace {

using cplx = std::complex<double>;

double l2norm(const std::vector<cplx>& v) {
  double s = 0;
  for (const cplx& a : v) s += std::norm(a);
  return std::sqrt(s);
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void axpy(std::vector<cplx>& y, cplx alpha, const std::vector<cplx>& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void check_time_grid(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  if (times.front() < 0)
    throw std::invalid_argument("time grid must start at t >= 0");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw std::invalid_argument("time grid must be non-decreasing");
}

}  // namespace

double EchoSeries::late_time_average(double window) const {
  if (values.empty()) throw std::invalid_argument("empty echo series");
  if (window <= 0 || window > 1)
    throw std::invalid_argument("window fraction must be in (0, 1]");
  int64_t n = int64_t(values.size());
  int64_t count = std::max<int64_t>(1, std::llround(window * double(n)));
  double s = 0;
  for (int64_t i = n - count; i < n; ++i) s += std::abs(values[i]);
  return s / double(count);
}

Propagator::Propagator(const SparseOperator& h)
    : Propagator(h, Options{}) {}

Propagator::Propagator(const SparseOperator& h, Options opt)
    : h_(&h), opt_(opt) {
  if (opt_.krylov_dim < 2)
    throw std::invalid_argument("Krylov dimension must be at least 2");
  if (h.dimension() <= opt_.dense_cap)
    eig_ = sym_eigen(h.to_dense(), true);
}

void Propagator::advance(std::vector<cplx>& amp, double dt) const {
  const int64_t n = h_->dimension();
  if (int64_t(amp.size()) != n)
    throw std::invalid_argument("state dimension does not match propagator");
  if (dt == 0) return;

  if (dense()) {
    std::vector<cplx> c(n, 0.0);
    for (int64_t j = 0; j < n; ++j) {
      const double* v = eig_.vec(j);
      cplx acc = 0;
      for (int64_t i = 0; i < n; ++i) acc += v[i] * amp[i];
      c[j] = acc * std::polar(1.0, -eig_.evals[j] * dt);
    }
    std::fill(amp.begin(), amp.end(), cplx(0));
    for (int64_t j = 0; j < n; ++j) {
      const double* v = eig_.vec(j);
      const cplx cj = c[j];
      for (int64_t i = 0; i < n; ++i) amp[i] += v[i] * cj;
    }
    return;
  }

  // Restarted Lanczos exponential with adaptive substeps.
  const double sign = dt < 0 ? -1.0 : 1.0;
  double remaining = std::abs(dt);
  const int m = opt_.krylov_dim;
  const double hscale = std::max(h_->inf_norm(), 1e-300);
  double step = std::min(remaining, double(m) / hscale);

  std::vector<std::vector<cplx>> V;
  std::vector<cplx> w(n);
  std::vector<double> alpha, beta, evals, vecs;

  while (remaining > 0) {
    const double beta0 = l2norm(amp);
    if (beta0 == 0) throw std::invalid_argument("cannot evolve zero vector");
    V.clear();
    V.emplace_back(amp);
    for (cplx& a : V[0]) a /= beta0;
    alpha.clear();
    beta.clear();

    bool breakdown = false;
    int mm = 0;
    for (int k = 0; k < m; ++k) {
      h_->apply(V[k].data(), w.data());
      if (k) axpy(w, -beta[k - 1], V[k - 1]);
      double a = std::real(dot(V[k], w));
      axpy(w, -a, V[k]);
      // Full reorthogonalization keeps the tridiagonal honest over long
      // trajectories at the price of O(k n) per step.
      for (int j = 0; j <= k; ++j) axpy(w, -dot(V[j], w), V[j]);
      alpha.push_back(a);
      mm = k + 1;
      double b = l2norm(w);
      if (b <= 1e-12 * hscale) {
        breakdown = true;  // invariant subspace: T is exact from here on
        break;
      }
      beta.push_back(b);
      if (k + 1 < m) {
        V.emplace_back(w);
        for (cplx& x : V.back()) x /= b;
      }
    }

    std::vector<double> off(beta.begin(),
                            beta.begin() + std::max(0, mm - 1));
    tridiag_eigen(alpha, off, evals, vecs);

    int halvings = 0;
    for (;;) {
      const double s_dt = std::min(step, remaining);
      std::vector<cplx> y(mm, 0.0);
      for (int l = 0; l < mm; ++l) {
        const double* q = &vecs[size_t(l) * mm];
        const cplx ph = std::polar(1.0, -sign * evals[l] * s_dt) * q[0];
        for (int j = 0; j < mm; ++j) y[j] += q[j] * ph;
      }
      const double err =
          breakdown ? 0.0 : beta[mm - 1] * std::abs(y[mm - 1]);
      if (breakdown || err <= opt_.tol) {
        std::fill(amp.begin(), amp.end(), cplx(0));
        for (int j = 0; j < mm; ++j) axpy(amp, beta0 * y[j], V[j]);
        remaining -= s_dt;
        if (!breakdown && err < opt_.tol / 20) step *= 2;
        break;
      }
      step /= 2;
      if (++halvings > opt_.max_halvings)
        throw std::runtime_error(fmt::format(
            "Krylov propagator did not converge: local error {:.3e} "
            "(target {:.3e}) after {} step halvings",
            err, opt_.tol, halvings));
    }
  }
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
  StateVector out = psi0;
  advance(out.amp, t);
  return out;
}

StateVector evolve(const SparseOperator& h, const StateVector& psi0, double t,
                   Propagator::Options opt) {
  return Propagator(h, opt).evolve(psi0, t);
}

EchoSeries loschmidt_echo(const SparseOperator& h, const StateVector& psi0,
                          const std::vector<double>& times,
                          Propagator::Options opt) {
  check_time_grid(times);
  Propagator prop(h, opt);
  EchoSeries series;
  series.times = times;
  series.kind = "hamiltonian";
  series.L = psi0.basis ? psi0.basis->spec.L : 0;
  std::vector<cplx> amp = psi0.amp;
  double prev = 0;
  for (double t : times) {
    prop.advance(amp, t - prev);
    prev = t;
    cplx v = 0;
    for (size_t i = 0; i < amp.size(); ++i)
      v += std::conj(psi0.amp[i]) * amp[i];
    series.values.push_back(v);
  }
  return series;
}

EchoSeries scar_subspace_echo(int L, const CouplingConfig& cfg,
                              const ScarLabel& label,
                              const std::vector<double>& times) {
  check_time_grid(times);
  SpectrumResult eig = sym_eigen(effective_scar_hamiltonian(L, cfg), true);
  const int idx = scar_index(L, label);
  std::vector<double> weight(eig.n);
  for (int64_t j = 0; j < eig.n; ++j) {
    double w = eig.vec(j)[idx];
    weight[j] = w * w;
  }
  EchoSeries series;
  series.times = times;
  series.kind = "scar-subspace";
  series.initial_label = label.name();
  series.g = cfg.g;
  series.L = L;
  for (double t : times) {
    cplx v = 0;
    for (int64_t j = 0; j < eig.n; ++j)
      v += weight[j] * std::polar(1.0, -eig.evals[j] * t);
    series.values.push_back(v);
  }
  return series;
}

double electric_expectation(const StateVector& psi, int link) {
  if (!psi.basis || psi.basis->spec.side != Side::lgt)
    throw std::invalid_argument("electric expectations live on the gauge side");
  if (link < 0 || link >= psi.basis->n_qubits)
    throw std::invalid_argument("link index out of range");
  return diagonal_z_expectation(psi, uint64_t(1) << link);
}

double echo_loglog_slope(const EchoSeries& series, double t_lo, double t_hi) {
  if (series.g <= 0)
    throw std::invalid_argument("slope fit needs the series coupling g > 0");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int64_t n = 0;
  for (size_t i = 0; i < series.times.size(); ++i) {
    double t = series.times[i];
    double a = std::abs(series.values[i]);
    if (t < t_lo || t >= t_hi || t <= 0 || a <= 0) continue;
    double x = std::log(series.g * t), y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2)
    throw std::invalid_argument("slope fit window holds fewer than 2 samples");
  double denom = double(n) * sxx - sx * sx;
  return (double(n) * sxy - sx * sy) / denom;
}

StateVector nonscar_product_state(const SectorBasis& basis) {
  if (basis.spec.side != Side::lgt || basis.spec.k != 2)
    throw std::invalid_argument(
        "non-scar product states are built on two-row gauge sectors");
  const int L = basis.spec.L;
  LadderGeometry geom(L, 2);
  // Every scar rung pattern has exactly one aligned cyclic bond for odd L and
  // none for even L, so any sector configuration whose pattern breaks that
  // count is exactly orthogonal to the whole scar tower (the horizontal links
  // are scar stabilizers).  Among those, prefer the most balanced total
  // magnetization so the state sits mid-spectrum, then the smallest word.
  const int forbidden = L % 2 ? 1 : 0;
  int64_t best = -1;
  int best_absz = std::numeric_limits<int>::max();
  for (int64_t i = 0; i < basis.dimension(); ++i) {
    uint64_t s = basis.state_at(i);
    int equal_bonds = 0;
    for (int p = 0; p < L; ++p) {
      int zp = (s >> geom.h_link(p, 0)) & 1;
      int zq = (s >> geom.h_link((p + 1) % L, 0)) & 1;
      if (zp == zq) ++equal_bonds;
    }
    if (equal_bonds == forbidden) continue;
    int absz = std::abs(geom.n_links - 2 * __builtin_popcountll(s));
    if (absz < best_absz) {
      best_absz = absz;
      best = i;
    }
  }
  if (best < 0)
    throw std::logic_error("sector holds no scar-orthogonal product state");
  uint64_t config = basis.state_at(best);
  for (const ScarLabel& label : scar_labels(L)) {
    bool match = true;
    for (int p = 1; p <= L && match; ++p) {
      int z = ((config >> geom.h_link(p - 1, 0)) & 1) ? -1 : 1;
      match = scar_zz_sign(label, L, p) == z;
    }
    if (match)
      throw std::logic_error("chosen configuration matches a scar pattern");
  }
  return basis_state(basis, config);
}

RandomCircuitAngles RandomCircuitAngles::sample(int s, uint64_t seed) {
  if (s < 0) throw std::invalid_argument("layer count must be non-negative");
  RandomCircuitAngles out;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  out.layers.resize(s);
  for (auto& layer : out.layers)
    for (double& angle : layer) angle = uni(rng);
  return out;
}

RandomCircuitEngine::RandomCircuitEngine(const SectorBasis& basis)
    : basis_(&basis) {
  const int L = basis.spec.L;
  const int vx = basis.spec.vx;
  const int64_t dim = basis.dimension();
  diag_alpha_.resize(dim);
  diag_gamma_.resize(dim);

  auto zbit = [](uint64_t s, int q) { return ((s >> q) & 1) ? -1 : 1; };

  if (basis.spec.side == Side::lgt) {
    if (basis.spec.k != 2)
      throw std::invalid_argument("random circuits need a two-row ladder");
    LadderGeometry geom(L, 2);
    for (int64_t i = 0; i < dim; ++i) {
      uint64_t s = basis.state_at(i);
      int da = 0, dg = 0;
      for (int p = 0; p < L; ++p) da += zbit(s, geom.h_link(p, 0));
      for (int c = 1; c < L; ++c)
        dg += zbit(s, geom.v_link(c, 0)) + zbit(s, geom.v_link(c, 1));
      dg += vx * (zbit(s, geom.v_link(0, 0)) + zbit(s, geom.v_link(0, 1)));
      diag_alpha_[i] = da;
      diag_gamma_[i] = dg;
    }
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < L; ++c) {
        uint64_t mask = geom.plaquette_mask(c, r);
        std::vector<int32_t> perm(dim);
        for (int64_t i = 0; i < dim; ++i) {
          int64_t j = basis.index_of(basis.state_at(i) ^ mask);
          if (j < 0)
            throw std::domain_error("plaquette flip leaves the sector");
          perm[i] = int32_t(j);
        }
        flip_perms_.push_back(std::move(perm));
      }
  } else {
    for (int64_t i = 0; i < dim; ++i) {
      uint64_t s = basis.state_at(i);
      int da = 0, dg = 0;
      for (int p = 0; p < L; ++p)
        da += zbit(s, p) * zbit(s, p + L);
      for (int p = 0; p + 1 < L; ++p)
        dg += zbit(s, p) * zbit(s, p + 1) + zbit(s, p + L) * zbit(s, p + L + 1);
      dg += vx * (zbit(s, L - 1) * zbit(s, 0) +
                  zbit(s, 2 * L - 1) * zbit(s, L));
      diag_alpha_[i] = da;
      diag_gamma_[i] = dg;
    }
    for (int q = 0; q < 2 * L; ++q) {
      uint64_t mask = uint64_t(1) << q;
      std::vector<int32_t> perm(dim);
      for (int64_t i = 0; i < dim; ++i) {
        int64_t j = basis.index_of(basis.state_at(i) ^ mask);
        if (j < 0)
          throw std::domain_error("spin flip leaves the basis");
        perm[i] = int32_t(j);
      }
      flip_perms_.push_back(std::move(perm));
    }
  }
}

void RandomCircuitEngine::apply_layer(std::vector<cplx>& amp, double alpha,
                                      double beta, double gamma) const {
  const int64_t dim = basis_->dimension();
  if (int64_t(amp.size()) != dim)
    throw std::invalid_argument("state dimension does not match engine");
  for (int64_t i = 0; i < dim; ++i)
    amp[i] *= std::polar(1.0, -alpha * diag_alpha_[i]);
  const cplx c(std::cos(beta), 0.0), s(0.0, -std::sin(beta));
  for (const auto& perm : flip_perms_)
    for (int64_t i = 0; i < dim; ++i) {
      int64_t j = perm[i];
      if (j <= i) continue;
      cplx ai = amp[i], aj = amp[j];
      amp[i] = c * ai + s * aj;
      amp[j] = c * aj + s * ai;
    }
  for (int64_t i = 0; i < dim; ++i)
    amp[i] *= std::polar(1.0, -gamma * diag_gamma_[i]);
}

std::vector<StateVector> random_circuit_evolve(const RandomCircuitEngine& eng,
                                               const StateVector& psi0,
                                               const RandomCircuitAngles& angles,
                                               int s) {
  if (int(angles.layers.size()) < s)
    throw std::invalid_argument("not enough angle layers for the depth");
  std::vector<StateVector> traj;
  traj.reserve(s + 1);
  traj.push_back(psi0);
  StateVector cur = psi0;
  for (int i = 0; i < s; ++i) {
    const auto& l = angles.layers[i];
    eng.apply_layer(cur.amp, l[0], l[1], l[2]);
    traj.push_back(cur);
  }
  return traj;
}

EchoSeries random_circuit_echo(const RandomCircuitEngine& eng,
                               const StateVector& psi0,
                               const RandomCircuitAngles& angles, int s) {
  if (int(angles.layers.size()) < s)
    throw std::invalid_argument("not enough angle layers for the depth");
  EchoSeries series;
  series.kind = "random-circuit";
  series.L = eng.basis().spec.L;
  std::vector<cplx> amp = psi0.amp;
  for (int i = 0; i <= s; ++i) {
    if (i) {
      const auto& l = angles.layers[i - 1];
      eng.apply_layer(amp, l[0], l[1], l[2]);
    }
    cplx v = 0;
    for (size_t q = 0; q < amp.size(); ++q)
      v += std::conj(psi0.amp[q]) * amp[q];
    series.times.push_back(double(i));
    series.values.push_back(v);
  }
  return series;
}

EntanglementSeries entanglement_trajectory(const Propagator& prop,
                                           const StateVector& psi0,
                                           const Cut& cut,
                                           const std::vector<double>& times) {
  check_time_grid(times);
  EntanglementSeries out;
  out.times = times;
  StateVector cur = psi0;
  double prev = 0;
  for (double t : times) {
    prop.advance(cur.amp, t - prev);
    prev = t;
    auto dec = entanglement_split(cur, cut);
    out.s_dist.push_back(dec.s_dist);
    out.s_symm.push_back(dec.s_symm);
  }
  return out;
}

EntanglementSeries circuit_entanglement_trajectory(
    const RandomCircuitEngine& eng, const StateVector& psi0,
    const RandomCircuitAngles& angles, int s, const Cut& cut) {
  if (int(angles.layers.size()) < s)
    throw std::invalid_argument("not enough angle layers for the depth");
  EntanglementSeries out;
  StateVector cur = psi0;
  for (int i = 0; i <= s; ++i) {
    if (i) {
      const auto& l = angles.layers[i - 1];
      eng.apply_layer(cur.amp, l[0], l[1], l[2]);
    }
    auto dec = entanglement_split(cur, cut);
    out.times.push_back(double(i));
    out.s_dist.push_back(dec.s_dist);
    out.s_symm.push_back(dec.s_symm);
  }
  return out;
}

}  // namespace scarlab
