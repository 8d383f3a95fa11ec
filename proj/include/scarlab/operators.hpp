#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/linalg.hpp"
#include "scarlab/pauli.hpp"

namespace scarlab {

struct PauliTerm {
  double coeff = 0.0;
  PauliString op;
};

struct PauliSum {
  int n = 0;
  std::vector<PauliTerm> terms;

  void add(double coeff, PauliString op) {
    terms.push_back({coeff, std::move(op)});
  }
};

// Hermitian operator projected onto a sector basis, stored CSR.  All
// operators built here are real in the computational basis (pure sigma^x
// permutation terms and diagonal sigma^z terms), so values are stored as
// doubles; `apply` accepts complex vectors.
class SparseOperator {
 public:
  // Throws std::domain_error if a term maps a sector state outside the
  // sector, std::runtime_error if any matrix element has an imaginary part.
  static SparseOperator build(const SectorBasis& basis, const PauliSum& sum);

  int64_t dimension() const { return dim_; }
  int64_t nnz() const { return int64_t(val_.size()); }

  void apply(const std::complex<double>* in, std::complex<double>* out) const;
  void apply_real(const double* in, double* out) const;

  StateVector apply(const StateVector& psi) const;

  DenseMatrix to_dense() const;
  double max_symmetry_violation() const;  // max |A_ij - A_ji|
  double inf_norm() const;                // max row sum of |values|

 private:
  int64_t dim_ = 0;
  std::vector<int64_t> row_ptr_;
  std::vector<int32_t> col_;
  std::vector<double> val_;
};

// Number of worker threads: min(SCARLAB_THREADS, hardware), at least 1.
int thread_count();

// Static range split across thread_count() workers; fn(begin, end) must only
// touch its own slice so results are deterministic.
void parallel_for(int64_t n,
                  const std::function<void(int64_t, int64_t)>& fn);

}  // namespace scarlab
