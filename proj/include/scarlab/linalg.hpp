#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace scarlab {

// Column-major real dense matrix.
struct DenseMatrix {
  int64_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int64_t n_) : n(n_), a(size_t(n_) * n_, 0.0) {}

  double& at(int64_t i, int64_t j) { return a[size_t(j) * n + i]; }
  double at(int64_t i, int64_t j) const { return a[size_t(j) * n + i]; }

  double max_abs() const;
  double max_abs_diff(const DenseMatrix& o) const;
};

// Column-major complex dense matrix (used by the fermion checks and for
// density-matrix blocks).
struct CMatrix {
  int64_t n = 0;
  std::vector<std::complex<double>> a;

  CMatrix() = default;
  explicit CMatrix(int64_t n_) : n(n_), a(size_t(n_) * n_, 0.0) {}

  std::complex<double>& at(int64_t i, int64_t j) { return a[size_t(j) * n + i]; }
  const std::complex<double>& at(int64_t i, int64_t j) const {
    return a[size_t(j) * n + i];
  }

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix& operator*=(std::complex<double> s);
  CMatrix dagger() const;
  static CMatrix identity(int64_t n);
  CMatrix commutator(const CMatrix& o) const;  // [this, o]
  double max_abs() const;
  double max_abs_diff(const CMatrix& o) const;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Eigendecomposition result; eigenvalues ascending.  `vectors` is column-major
// n x n when computed, empty otherwise.
struct SpectrumResult {
  int64_t n = 0;
  std::vector<double> evals;
  std::vector<double> vectors;

  const double* vec(int64_t j) const { return vectors.data() + size_t(j) * n; }
  double* vec(int64_t j) { return vectors.data() + size_t(j) * n; }
};

// Bytes of physical memory the process can still claim (MemAvailable minus a
// safety margin).  Linux overcommits, so allocation success alone proves
// nothing; large solvers must consult this up front.
int64_t available_memory_bytes();

// Symmetric eigensolver.  Destroys `a`.  With vectors it prefers the RRR
// driver (needs a second n x n buffer) and falls back to in-place QR when
// memory is tight; throws std::runtime_error("insufficient memory: ...")
// when not even the fallback fits.
SpectrumResult sym_eigen(DenseMatrix a, bool vectors);

// Hermitian eigensolver for small complex matrices.  Destroys `a`; fills
// `evals` ascending and leaves eigenvectors in the columns of `a`.
void herm_eigen_inplace(CMatrix& a, std::vector<double>& evals);

// Eigenvalues of a real symmetric tridiagonal matrix plus eigenvectors
// (used by the Krylov propagator).  diag/off sizes m and m-1.
void tridiag_eigen(std::vector<double> diag, std::vector<double> off,
                   std::vector<double>& evals, std::vector<double>& vecs);

// Rotates eigenvectors inside each degenerate eigenvalue cluster into the
// eigenbasis of a commuting Hermitian observable and returns the per-vector
// observable eigenvalue.  `apply` must compute y = O x for real vectors.
std::vector<double> resolve_degenerate(
    SpectrumResult& spec,
    const std::function<void(const double*, double*)>& apply,
    double degeneracy_tol = 1e-9);

}  // namespace scarlab
