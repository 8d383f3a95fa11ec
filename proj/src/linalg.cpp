#define LAPACK_COMPLEX_CPP
#include "scarlab/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>

namespace scarlab {

double DenseMatrix::max_abs() const {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& o) const {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  CMatrix r(n);
  for (int64_t j = 0; j < n; ++j)
    for (int64_t l = 0; l < n; ++l) {
      std::complex<double> b = o.at(l, j);
      if (b == 0.0) continue;
      const std::complex<double>* col = a.data() + size_t(l) * n;
      std::complex<double>* out = r.a.data() + size_t(j) * n;
      for (int64_t i = 0; i < n; ++i) out[i] += col[i] * b;
    }
  return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

CMatrix& CMatrix::operator*=(std::complex<double> s) {
  for (auto& v : a) v *= s;
  return *this;
}

CMatrix CMatrix::dagger() const {
  CMatrix r(n);
  for (int64_t j = 0; j < n; ++j)
    for (int64_t i = 0; i < n; ++i) r.at(j, i) = std::conj(at(i, j));
  return r;
}

CMatrix CMatrix::identity(int64_t n) {
  CMatrix r(n);
  for (int64_t i = 0; i < n; ++i) r.at(i, i) = 1.0;
  return r;
}

CMatrix CMatrix::commutator(const CMatrix& o) const {
  return (*this) * o - o * (*this);
}

double CMatrix::max_abs() const {
  double m = 0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

double CMatrix::max_abs_diff(const CMatrix& o) const {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.n * b.n);
  for (int64_t ja = 0; ja < a.n; ++ja)
    for (int64_t ia = 0; ia < a.n; ++ia) {
      std::complex<double> v = a.at(ia, ja);
      if (v == 0.0) continue;
      for (int64_t jb = 0; jb < b.n; ++jb)
        for (int64_t ib = 0; ib < b.n; ++ib)
          r.at(ia * b.n + ib, ja * b.n + jb) = v * b.at(ib, jb);
    }
  return r;
}

int64_t available_memory_bytes() {
  FILE* f = std::fopen("/proc/meminfo", "r");
  if (!f) return int64_t(2) << 30;
  char line[256];
  int64_t kb = -1;
  while (std::fgets(line, sizeof line, f)) {
    if (std::strncmp(line, "MemAvailable:", 13) == 0) {
      kb = std::atoll(line + 13);
      break;
    }
  }
  std::fclose(f);
  if (kb < 0) return int64_t(2) << 30;
  const int64_t margin = int64_t(400) << 20;
  return std::max<int64_t>(0, kb * 1024 - margin);
}

SpectrumResult sym_eigen(DenseMatrix a, bool vectors) {
  SpectrumResult res;
  res.n = a.n;
  res.evals.resize(a.n);
  const lapack_int n = lapack_int(a.n);
  if (!vectors) {
    lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', n, a.a.data(),
                                    n, res.evals.data());
    if (info != 0) throw std::runtime_error("dsyev failed: " + std::to_string(info));
    return res;
  }

  const int64_t matrix_bytes = int64_t(a.n) * a.n * 8;
  if (available_memory_bytes() >= matrix_bytes + (matrix_bytes / 4)) {
    res.vectors.resize(size_t(a.n) * a.n);
    std::vector<lapack_int> isuppz(size_t(2) * std::max<int64_t>(1, a.n));
    lapack_int m = 0;
    lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', 'A', 'U', n, a.a.data(), n, 0, 0, 0, 0,
        LAPACKE_dlamch('S'), &m, res.evals.data(), res.vectors.data(), n,
        isuppz.data());
    if (info != 0)
      throw std::runtime_error("dsyevr failed: " + std::to_string(info));
    if (m != n) throw std::runtime_error("dsyevr returned too few eigenpairs");
    return res;
  }
  if (available_memory_bytes() >= matrix_bytes / 8) {
    // Tight on memory: in-place QR driver, no second n x n buffer.
    lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'U', n, a.a.data(),
                                    n, res.evals.data());
    if (info != 0) throw std::runtime_error("dsyev failed: " + std::to_string(info));
    res.vectors = std::move(a.a);
    return res;
  }
  throw std::runtime_error(
      "insufficient memory: dense eigensolve of dimension " +
      std::to_string(a.n) + " needs more RAM than is available");
}

void herm_eigen_inplace(CMatrix& a, std::vector<double>& evals) {
  evals.resize(a.n);
  if (a.n == 0) return;
  lapack_int info =
      LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', lapack_int(a.n),
                    reinterpret_cast<lapack_complex_double*>(a.a.data()),
                    lapack_int(a.n), evals.data());
  if (info != 0) throw std::runtime_error("zheev failed: " + std::to_string(info));
}

void tridiag_eigen(std::vector<double> diag, std::vector<double> off,
                   std::vector<double>& evals, std::vector<double>& vecs) {
  const lapack_int m = lapack_int(diag.size());
  vecs.assign(size_t(m) * m, 0.0);
  lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, diag.data(),
                                  off.data(), vecs.data(), m);
  if (info != 0) throw std::runtime_error("dstev failed: " + std::to_string(info));
  evals = std::move(diag);
}

std::vector<double> resolve_degenerate(
    SpectrumResult& spec,
    const std::function<void(const double*, double*)>& apply,
    double degeneracy_tol) {
  const int64_t n = spec.n;
  std::vector<double> obs(n, 0.0);
  std::vector<double> work(n);
  int64_t start = 0;
  while (start < n) {
    int64_t end = start + 1;
    while (end < n && spec.evals[end] - spec.evals[end - 1] <= degeneracy_tol)
      ++end;
    const int64_t m = end - start;
    if (m == 1) {
      apply(spec.vec(start), work.data());
      double v = 0;
      for (int64_t i = 0; i < n; ++i) v += spec.vec(start)[i] * work[i];
      obs[start] = v;
    } else {
      // Diagonalize the observable restricted to the degenerate cluster and
      // rotate the eigenvector columns accordingly.
      std::vector<double> images(size_t(m) * n);
      for (int64_t c = 0; c < m; ++c)
        apply(spec.vec(start + c), images.data() + size_t(c) * n);
      DenseMatrix b(m);
      for (int64_t c = 0; c < m; ++c)
        for (int64_t r = 0; r < m; ++r) {
          double v = 0;
          const double* vc = images.data() + size_t(c) * n;
          const double* vr = spec.vec(start + r);
          for (int64_t i = 0; i < n; ++i) v += vr[i] * vc[i];
          b.at(r, c) = v;
        }
      SpectrumResult small = sym_eigen(std::move(b), true);
      std::vector<double> rotated(size_t(m) * n, 0.0);
      for (int64_t c = 0; c < m; ++c) {
        double* out = rotated.data() + size_t(c) * n;
        for (int64_t r = 0; r < m; ++r) {
          double w = small.vec(c)[r];
          if (w == 0) continue;
          const double* src = spec.vec(start + r);
          for (int64_t i = 0; i < n; ++i) out[i] += w * src[i];
        }
        obs[start + c] = small.evals[c];
      }
      std::memcpy(spec.vec(start), rotated.data(), rotated.size() * 8);
    }
    start = end;
  }
  return obs;
}

}  // namespace scarlab
