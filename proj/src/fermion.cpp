#include "scarlab/fermion.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>


#include "scarlab/basis.hpp"
#include "scarlab/scars.hpp"

namespace scarlab {

namespace {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

constexpr cplx kI{0.0, 1.0};

// Pauli strings act on basis states as a signed permutation, so applying one
// to a vector is O(dim) -- no dense matrix needed.
Vec string_apply(const PauliString& p, const Vec& v) {
  Vec out(v.size(), cplx{0.0, 0.0});
  for (uint64_t b = 0; b < v.size(); ++b) {
    if (v[b] == cplx{0.0, 0.0}) continue;
    auto [b2, c] = p.apply_to_basis(b);
    out[b2] += c * v[b];
  }
  return out;
}

double vec_norm(const Vec& v) {
  double s = 0.0;
  for (const cplx& a : v) s += std::norm(a);
  return std::sqrt(s);
}

Vec axpy(const Vec& x, cplx alpha, const Vec& y) {  // x + alpha * y
  Vec out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i] += alpha * y[i];
  return out;
}

cplx dot(const Vec& a, const Vec& b) {
  cplx s{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Complex-mode ladder operators as pairs of string applications:
// c_p = (gamma_p - i gamma_{p+L})/2 and daggered/barred variants.
struct ModeOps {
  int L;
  std::vector<PauliString> gam;   // gam[a-1] = gamma_a, a = 1..2L
  std::vector<PauliString> gbar;  // gbar[a-1] = gammabar_a

  explicit ModeOps(int L_) : L(L_) {
    for (int a = 1; a <= 2 * L; ++a) {
      gam.push_back(jw_gamma(L, a));
      gbar.push_back(jw_gamma_bar(L, a));
    }
  }

  Vec apply_mode(int p, bool bar, bool dagger, const Vec& v) const {
    const auto& fam = bar ? gbar : gam;
    Vec a = string_apply(fam[p - 1], v);
    Vec b = string_apply(fam[p - 1 + L], v);
    cplx s = dagger ? kI : -kI;
    Vec out = axpy(a, s, b);
    for (cplx& c : out) c *= 0.5;
    return out;
  }

  // n_p v (bar selects the second species), with n = (1 - i gamma gamma')/2.
  Vec apply_number(int p, bool bar, const Vec& v) const {
    const auto& fam = bar ? gbar : gam;
    PauliString par = fam[p - 1] * fam[p - 1 + L];
    par.phase = uint8_t((par.phase + 1) & 3);  // i gamma_p gamma_{p+L}
    Vec w = string_apply(par, v);
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = 0.5 * (v[i] - w[i]);
    return out;
  }

  Vec apply_total_number(const Vec& v) const {
    Vec out(v.size(), cplx{0.0, 0.0});
    for (int p = 1; p <= L; ++p) {
      for (bool bar : {false, true}) {
        Vec t = apply_number(p, bar, v);
        for (size_t i = 0; i < v.size(); ++i) out[i] += t[i];
      }
    }
    return out;
  }
};

// Builds the Fock vacuum |0> (all modes empty) by projecting a generic vector
// with prod_p (1 - n_p)(1 - nbar_p).
Vec fock_vacuum(const ModeOps& ops, int64_t dim) {
  std::mt19937_64 rng(0x5eedf0c5u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec v(dim);
    for (cplx& a : v) a = cplx{u(rng), u(rng)};
    for (int p = 1; p <= ops.L; ++p) {
      for (bool bar : {false, true}) {
        Vec n_v = ops.apply_number(p, bar, v);
        for (int64_t i = 0; i < dim; ++i) v[i] -= n_v[i];
      }
    }
    double nrm = vec_norm(v);
    if (nrm > 1e-8) {
      for (cplx& a : v) a /= nrm;
      return v;
    }
  }
  throw std::runtime_error("fock vacuum projection degenerated");
}

double string_mismatch(const PauliString& a, const PauliString& b) {
  return (a.x == b.x && a.z == b.z && a.phase == b.phase) ? 0.0 : 1.0;
}

PauliString times_i(PauliString p, int quarter_turns = 1) {
  p.phase = uint8_t((p.phase + quarter_turns) & 3);
  return p;
}

PauliString zz_string(int n, int q1, int q2) {
  Bitset m(n);
  m.set(q1, true);
  m.set(q2, true);
  return PauliString::z_mask(n, m);
}

}  // namespace

PauliString jw_gamma(int L, int a) {
  if (L < 1 || a < 1 || a > 2 * L)
    throw std::invalid_argument("jw_gamma: site index out of range");
  const int n = 2 * L;
  PauliString g(n);
  for (int q = 0; q + 1 < a; ++q) g.x.set(q, true);
  g.z.set(a - 1, true);
  // Every (-X_q) factor of the string carries i^2.
  g.phase = uint8_t((2 * (a - 1)) & 3);
  return g;
}

PauliString jw_gamma_bar(int L, int a) {
  PauliString s = PauliString::single(2 * L, 'X', a - 1) * jw_gamma(L, a);
  return times_i(s, 3);  // -i X_a gamma_a
}

CMatrix dense_pauli_matrix(const PauliString& p) {
  const int64_t dim = int64_t(1) << p.n;
  CMatrix m(dim);
  for (int64_t b = 0; b < dim; ++b) {
    auto [b2, c] = p.apply_to_basis(uint64_t(b));
    m.at(int64_t(b2), b) = c;
  }
  return m;
}

CMatrix jw_number_operator(int L) {
  const int64_t dim = int64_t(1) << (2 * L);
  CMatrix n_op(dim);
  ModeOps ops(L);
  for (int p = 1; p <= L; ++p) {
    for (bool bar : {false, true}) {
      const auto& fam = bar ? ops.gbar : ops.gam;
      PauliString par = times_i(fam[p - 1] * fam[p - 1 + L]);
      CMatrix m = dense_pauli_matrix(par);
      for (int64_t j = 0; j < dim; ++j) {
        for (int64_t i = 0; i < dim; ++i) {
          cplx delta = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
          n_op.at(i, j) += 0.5 * (delta - m.at(i, j));
        }
      }
    }
  }
  return n_op;
}

std::vector<CheckResult> run_fermion_checks(int L) {
  if (L < 2 || L > 5)
    throw std::invalid_argument(
        "run_fermion_checks: dense verification is limited to 2 <= L <= 5");
  const int n = 2 * L;
  const int64_t dim = int64_t(1) << n;
  const double tol = 1e-12;
  std::vector<CheckResult> out;

  ModeOps ops(L);

  // --- Majorana algebra at the string level (exact, any L). ---------------
  {
    std::vector<PauliString> maj;
    for (int a = 1; a <= n; ++a) maj.push_back(ops.gam[a - 1]);
    for (int a = 1; a <= n; ++a) maj.push_back(ops.gbar[a - 1]);
    double bad = 0.0;
    for (size_t i = 0; i < maj.size(); ++i) {
      if (!maj[i].is_hermitian()) bad = 1.0;
      PauliString sq = maj[i] * maj[i];
      if (!sq.is_identity()) bad = 1.0;
      for (size_t j = i + 1; j < maj.size(); ++j)
        if (maj[i].commutes_with(maj[j])) bad = 1.0;
    }
    out.push_back(make_check("majorana pairs square to one and anticommute", bad, 0.5));
  }

  // --- Operator dictionary, checked as exact string identities. -----------
  {
    double worst = 0.0;
    for (int p = 1; p <= n; ++p) {
      PauliString rhs = times_i(ops.gam[p - 1] * ops.gbar[p - 1], 3);
      worst = std::max(worst,
                       string_mismatch(PauliString::single(n, 'X', p - 1), rhs));
    }
    out.push_back(make_check("x equals -i gamma gammabar", worst, 0.5));
  }
  {
    double worst = 0.0;
    for (int p = 1; p <= n; ++p) {
      PauliString acc = PauliString::identity(n);
      for (int q = 1; q < p; ++q) acc = acc * times_i(ops.gam[q - 1] * ops.gbar[q - 1]);
      acc = acc * ops.gam[p - 1];
      worst = std::max(worst,
                       string_mismatch(PauliString::single(n, 'Z', p - 1), acc));
    }
    out.push_back(make_check("z equals jw string times gamma", worst, 0.5));
  }
  {
    // Rung-ZZ terms keep a Jordan-Wigner string of parities.
    double worst = 0.0;
    for (int p = 1; p <= L; ++p) {
      PauliString acc = times_i(PauliString::identity(n));
      for (int q = 0; q < L; ++q)
        acc = acc * times_i(ops.gam[p + q - 1] * ops.gbar[p + q - 1]);
      acc = acc * times_i(ops.gam[p - 1] * ops.gam[p - 1 + L]);
      worst = std::max(worst, string_mismatch(zz_string(n, p - 1, p - 1 + L), acc));
    }
    out.push_back(make_check("rung zz string identity", worst, 0.5));
  }
  {
    // prod_p X_p X_{p+L} = (-1)^L prod_p (-1)^{n_p + nbar_p}.
    PauliString acc = PauliString::identity(n);
    acc.phase = uint8_t((2 * L) & 3);
    for (int p = 1; p <= L; ++p) {
      acc = acc * times_i(ops.gam[p - 1] * ops.gam[p - 1 + L]);
      acc = acc * times_i(ops.gbar[p - 1] * ops.gbar[p - 1 + L]);
    }
    Bitset all(n);
    for (int q = 0; q < n; ++q) all.set(q, true);
    out.push_back(make_check("global x parity equals signed fermion parity",
                             string_mismatch(PauliString::x_mask(n, all), acc), 0.5));
  }
  {
    // X_p X_{p+L} = -(-1)^{n_p + nbar_p} marks the combined-species parity.
    double worst = 0.0;
    for (int p = 1; p <= L; ++p) {
      PauliString acc = PauliString::identity(n);
      acc.phase = 2;
      acc = acc * times_i(ops.gam[p - 1] * ops.gam[p - 1 + L]);
      acc = acc * times_i(ops.gbar[p - 1] * ops.gbar[p - 1 + L]);
      Bitset m(n);
      m.set(p - 1, true);
      m.set(p - 1 + L, true);
      worst = std::max(worst, string_mismatch(PauliString::x_mask(n, m), acc));
    }
    out.push_back(make_check("rung xx equals negative combined parity", worst, 0.5));
  }
  {
    // gammabar_p gamma_{p+1} gammabar_{p+L} gamma_{p+L+1} = -Z Z Z Z.
    double worst = 0.0;
    for (int p = 1; p + 1 <= L; ++p) {
      PauliString lhs = ops.gbar[p - 1] * ops.gam[p] * ops.gbar[p - 1 + L] * ops.gam[p + L];
      Bitset m(n);
      m.set(p - 1, true);
      m.set(p, true);
      m.set(p - 1 + L, true);
      m.set(p + L, true);
      PauliString rhs = PauliString::z_mask(n, m);
      rhs.phase = 2;
      worst = std::max(worst, string_mismatch(lhs, rhs));
    }
    out.push_back(make_check("bond parity product identity", worst, 0.5));
  }

  // --- Dense dictionary between spin terms and fermion bilinears. ---------
  if (L <= 3) {
    std::vector<CMatrix> g_mat, gb_mat;
    for (int a = 1; a <= n; ++a) {
      g_mat.push_back(dense_pauli_matrix(ops.gam[a - 1]));
      gb_mat.push_back(dense_pauli_matrix(ops.gbar[a - 1]));
    }
    auto mode = [&](int p, bool bar, bool dagger) {
      const auto& fam = bar ? gb_mat : g_mat;
      CMatrix m = fam[p - 1 + L];
      m *= dagger ? kI : -kI;
      return fam[p - 1] + m;
    };
    auto half = [](CMatrix m) {
      m *= cplx{0.5, 0.0};
      return m;
    };

    {
      double worst = 0.0;
      const CMatrix id = CMatrix::identity(dim);
      std::vector<CMatrix> modes;  // c_1..c_L, cbar_1..cbar_L
      for (bool bar : {false, true})
        for (int p = 1; p <= L; ++p) modes.push_back(half(mode(p, bar, false)));
      for (size_t i = 0; i < modes.size(); ++i) {
        for (size_t j = 0; j < modes.size(); ++j) {
          CMatrix anti = modes[i] * modes[j] + modes[j] * modes[i];
          worst = std::max(worst, anti.max_abs());
          CMatrix daggered = modes[j].dagger();
          CMatrix anti2 = modes[i] * daggered + daggered * modes[i];
          double target = (i == j) ? 1.0 : 0.0;
          CMatrix expect = id;
          expect *= cplx{target, 0.0};
          worst = std::max(worst, anti2.max_abs_diff(expect));
        }
      }
      out.push_back(make_check("complex modes obey canonical anticommutators", worst, tol));
    }

    {
      double worst = 0.0;
      for (int p = 1; p <= L; ++p) {
        CMatrix lhs = dense_pauli_matrix(PauliString::single(n, 'X', p - 1)) +
                      dense_pauli_matrix(PauliString::single(n, 'X', p - 1 + L));
        CMatrix rhs = half(mode(p, true, false)) * half(mode(p, false, true)) +
                      half(mode(p, true, true)) * half(mode(p, false, false));
        rhs *= 2.0 * kI;  // 2i (cbar c^dag + cbar^dag c)
        worst = std::max(worst, lhs.max_abs_diff(rhs));
      }
      out.push_back(make_check("rung transverse pair is a number-conserving bilinear",
                               worst, tol));
    }

    {
      double worst = 0.0;
      for (int p = 1; p + 1 <= L; ++p) {
        CMatrix lhs = dense_pauli_matrix(zz_string(n, p - 1, p)) +
                      dense_pauli_matrix(zz_string(n, p - 1 + L, p + L));
        CMatrix rhs = half(mode(p, true, false)) * half(mode(p + 1, false, true)) +
                      half(mode(p, true, true)) * half(mode(p + 1, false, false));
        rhs *= 2.0 * kI;  // 2i (cbar_p c_{p+1}^dag + cbar_p^dag c_{p+1})
        worst = std::max(worst, lhs.max_abs_diff(rhs));
      }
      out.push_back(make_check("in-row bond pair is a number-conserving bilinear",
                               worst, tol));
    }

    {
      // Boundary bonds keep a row parity string.  As full-space operators
      // each row carries its own string; on the physical sector
      // prod_p X_p = +1 the two strings coincide, which is the compact
      // combined form the commutant argument uses.
      PauliString s_top = PauliString::identity(n);
      PauliString s_bot = PauliString::identity(n);
      for (int q = 1; q <= L; ++q)
        s_top = s_top * times_i(ops.gam[q - 1] * ops.gbar[q - 1]);
      for (int q = L + 1; q <= 2 * L; ++q)
        s_bot = s_bot * times_i(ops.gam[q - 1] * ops.gbar[q - 1]);
      CMatrix hop_top = dense_pauli_matrix(times_i(ops.gam[0] * ops.gbar[L - 1]));
      CMatrix hop_bot = dense_pauli_matrix(times_i(ops.gam[L] * ops.gbar[2 * L - 1]));
      double worst = dense_pauli_matrix(zz_string(n, 0, L - 1))
                         .max_abs_diff(dense_pauli_matrix(s_top) * hop_top);
      worst = std::max(worst,
                       dense_pauli_matrix(zz_string(n, L, 2 * L - 1))
                           .max_abs_diff(dense_pauli_matrix(s_bot) * hop_bot));
      out.push_back(make_check("boundary bonds equal row string times hopping",
                               worst, tol));

      Bitset all(n);
      for (int q = 0; q < n; ++q) all.set(q, true);
      CMatrix proj = CMatrix::identity(dim) +
                     dense_pauli_matrix(PauliString::x_mask(n, all));
      proj *= 0.5;
      CMatrix lhs = dense_pauli_matrix(zz_string(n, 0, L - 1)) +
                    dense_pauli_matrix(zz_string(n, L, 2 * L - 1));
      CMatrix rhs = dense_pauli_matrix(s_top) * (hop_top + hop_bot);
      out.push_back(make_check(
          "combined boundary string form holds on the x-parity sector",
          ((lhs - rhs) * proj).max_abs(), tol));

      CMatrix hop_fock = half(mode(1, false, true)) * half(mode(L, true, false)) +
                         half(mode(1, false, false)) * half(mode(L, true, true));
      hop_fock *= 2.0 * kI;  // 2i (c_1^dag cbar_L + c_1 cbar_L^dag)
      out.push_back(make_check("boundary hopping written in complex modes",
                               (hop_top + hop_bot).max_abs_diff(hop_fock), tol));
    }
  }

  // --- Conserved charge (N - L)^2 against every term family. --------------
  if (L <= 4) {
    CMatrix n_op = jw_number_operator(L);

    {
      CMatrix a = n_op;
      std::vector<double> evals;
      herm_eigen_inplace(a, evals);
      double worst = std::abs(evals.front()) + std::abs(evals.back() - 2.0 * L);
      for (double e : evals) worst = std::max(worst, std::abs(e - std::round(e)));
      out.push_back(make_check("number operator has integer spectrum 0..2L", worst, 1e-10));
    }

    CMatrix shifted = n_op;
    for (int64_t i = 0; i < dim; ++i) shifted.at(i, i) -= double(L);
    CMatrix charge = shifted * shifted;

    std::vector<CMatrix> families;
    for (int p = 1; p <= L; ++p) {
      families.push_back(dense_pauli_matrix(PauliString::single(n, 'X', p - 1)) +
                         dense_pauli_matrix(PauliString::single(n, 'X', p - 1 + L)));
      families.push_back(dense_pauli_matrix(zz_string(n, p - 1, p - 1 + L)));
    }
    for (int p = 1; p + 1 <= L; ++p)
      families.push_back(dense_pauli_matrix(zz_string(n, p - 1, p)) +
                         dense_pauli_matrix(zz_string(n, p - 1 + L, p + L)));

    double worst = 0.0;
    for (const CMatrix& term : families)
      worst = std::max(worst, charge.commutator(term).max_abs());
    out.push_back(make_check("squared charge commutes with bulk term families", worst, tol));

    // The boundary bond pair mixes the two row strings, so its commutation
    // with the charge is a statement about the x-parity sector only.
    Bitset all(n);
    for (int q = 0; q < n; ++q) all.set(q, true);
    CMatrix proj = CMatrix::identity(dim) +
                   dense_pauli_matrix(PauliString::x_mask(n, all));
    proj *= 0.5;
    CMatrix boundary = dense_pauli_matrix(zz_string(n, 0, L - 1)) +
                       dense_pauli_matrix(zz_string(n, L, 2 * L - 1));
    out.push_back(make_check(
        "squared charge commutes with the boundary pair on the sector",
        (charge.commutator(boundary) * proj).max_abs(), tol));

    // The number operator alone is NOT conserved by the string terms.  This
    // is a negative control: the commutator is expected to be O(1), so it is
    // reported as the shortfall below 1 to keep the uniform convention that
    // passing means residual <= tolerance.
    double string_breaking = 0.0;
    for (int p = 1; p <= L; ++p)
      string_breaking = std::max(
          string_breaking,
          n_op.commutator(dense_pauli_matrix(zz_string(n, p - 1, p - 1 + L))).max_abs());
    out.push_back(make_check("rung zz breaks plain number conservation",
                             std::max(0.0, 1.0 - string_breaking), 1e-6));
  }

  // --- Fock construction of the scar subspace (string applies, any L). ----
  {
    Vec vac = fock_vacuum(ops, dim);
    out.push_back(make_check("fock vacuum is annihilated by the number operator",
                             vec_norm(ops.apply_total_number(vac)), 1e-10));

    Vec lam = vac;
    for (int p = L; p >= 1; --p) {
      lam = ops.apply_mode(p, true, true, lam);   // cbar_p^dag
      lam = ops.apply_mode(p, false, true, lam);  // c_p^dag
    }
    out.push_back(make_check("filled state has unit norm under ordered creation",
                             std::abs(vec_norm(lam) - 1.0), 1e-10));
    {
      Vec n_lam = ops.apply_total_number(lam);
      Vec resid = axpy(n_lam, cplx{-2.0 * L, 0.0}, lam);
      out.push_back(make_check("filled state carries charge 2L", vec_norm(resid), 1e-10));
    }

    SectorBasis basis = enumerate_ising_basis(L);
    std::vector<StateVector> scars = scar_states(basis);
    std::vector<Vec> scar_vecs;
    for (const auto& s : scars) scar_vecs.push_back(s.amp);

    auto project_span = [](const std::vector<Vec>& span, const Vec& v) {
      Vec out_v(v.size(), cplx{0.0, 0.0});
      for (const Vec& s : span) {
        cplx c = dot(s, v);
        for (size_t i = 0; i < v.size(); ++i) out_v[i] += c * s[i];
      }
      return out_v;
    };
    auto leak = [&](const std::vector<Vec>& span, const Vec& v) {
      Vec pv = project_span(span, v);
      return vec_norm(axpy(v, cplx{-1.0, 0.0}, pv));
    };

    if (L % 2 == 0) {
      double worst = std::max(leak(scar_vecs, vac), leak(scar_vecs, lam));
      out.push_back(make_check("empty and filled states span the even scar pair",
                               worst, 1e-10));
      // The scar pair diagonalizes N with eigenvalues {0, 2L}.
      CMatrix m2(2);
      std::vector<Vec> n_scars;
      for (const Vec& s : scar_vecs) n_scars.push_back(ops.apply_total_number(s));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m2.at(i, j) = dot(scar_vecs[i], n_scars[j]);
      std::vector<double> evals;
      herm_eigen_inplace(m2, evals);
      out.push_back(make_check("scar pair carries charges {0, 2L}",
                               std::abs(evals[0]) + std::abs(evals[1] - 2.0 * L),
                               1e-10));
    } else {
      std::vector<Vec> fock;
      for (int p = 1; p <= L; ++p) fock.push_back(ops.apply_mode(p, false, true, vac));
      for (int p = 1; p <= L; ++p) fock.push_back(ops.apply_mode(p, true, true, vac));
      for (int p = 1; p <= L; ++p) fock.push_back(ops.apply_mode(p, false, false, lam));
      for (int p = 1; p <= L; ++p) {
        Vec v = ops.apply_mode(p, true, false, lam);
        for (cplx& c : v) c = -c;
        fock.push_back(v);
      }

      double norm_dev = 0.0;
      for (const Vec& f : fock) norm_dev = std::max(norm_dev, std::abs(vec_norm(f) - 1.0));
      out.push_back(make_check("single particle and hole states are normalized",
                               norm_dev, 1e-10));

      double gram_dev = 0.0;
      for (size_t i = 0; i < fock.size(); ++i)
        for (size_t j = i + 1; j < fock.size(); ++j)
          gram_dev = std::max(gram_dev, std::abs(dot(fock[i], fock[j])));
      out.push_back(make_check("fock tower is orthogonal", gram_dev, 1e-10));

      double span_dev = 0.0;
      for (const Vec& f : fock) span_dev = std::max(span_dev, leak(scar_vecs, f));
      for (const Vec& s : scar_vecs) span_dev = std::max(span_dev, leak(fock, s));
      out.push_back(make_check("fock tower and scar tower span the same subspace",
                               span_dev, 1e-10));

      double charge_dev = 0.0;
      const double target = double((L - 1) * (L - 1));
      for (const Vec& f : fock) {
        Vec nf = ops.apply_total_number(f);
        Vec nnf = ops.apply_total_number(nf);
        Vec q = nnf;
        q = axpy(q, cplx{-2.0 * L, 0.0}, nf);
        q = axpy(q, cplx{double(L) * L, 0.0}, f);
        q = axpy(q, cplx{-target, 0.0}, f);
        charge_dev = std::max(charge_dev, vec_norm(q));
      }
      out.push_back(make_check("tower sits in the (N-L)^2 = (L-1)^2 eigenspace",
                               charge_dev, 1e-10));
    }
  }

  return out;
}

}  // namespace scarlab
