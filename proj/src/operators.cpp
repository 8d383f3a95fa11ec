#include "scarlab/operators.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace scarlab {

int thread_count() {
  static int cached = [] {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SCARLAB_THREADS")) {
      int req = std::atoi(env);
      if (req >= 1) return std::min(req, hw);
    }
    return hw;
  }();
  return cached;
}

void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
  const int nt = std::min<int64_t>(thread_count(), std::max<int64_t>(1, n));
  if (nt <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const int64_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int64_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

SparseOperator SparseOperator::build(const SectorBasis& basis,
                                     const PauliSum& sum) {
  SparseOperator op;
  op.dim_ = basis.dimension();
  const int64_t dim = op.dim_;
  const int nterms = int(sum.terms.size());

  // Pass 1: count entries per row after merging duplicate columns.
  // Pass 2: fill.  Both passes walk rows independently, so they parallelize.
  std::vector<int64_t> counts(dim, 0);
  auto row_entries = [&](int64_t i, std::vector<std::pair<int64_t, double>>& e) {
    e.clear();
    const uint64_t b = basis.state_at(i);
    for (int t = 0; t < nterms; ++t) {
      const PauliTerm& term = sum.terms[t];
      auto [cfg, coeff] = term.op.apply_to_basis(b);
      int64_t j = basis.index_of(cfg);
      if (j < 0) throw std::domain_error("operator term leaves the sector");
      if (coeff.imag() != 0.0)
        throw std::runtime_error("operator is not real in this basis");
      e.emplace_back(j, term.coeff * coeff.real());
    }
    std::sort(e.begin(), e.end());
    size_t w = 0;
    for (size_t r = 0; r < e.size(); ++r) {
      if (w > 0 && e[w - 1].first == e[r].first)
        e[w - 1].second += e[r].second;
      else
        e[w++] = e[r];
    }
    e.resize(w);
  };

  parallel_for(dim, [&](int64_t lo, int64_t hi) {
    std::vector<std::pair<int64_t, double>> e;
    for (int64_t i = lo; i < hi; ++i) {
      row_entries(i, e);
      counts[i] = int64_t(e.size());
    }
  });

  op.row_ptr_.resize(dim + 1);
  op.row_ptr_[0] = 0;
  for (int64_t i = 0; i < dim; ++i) op.row_ptr_[i + 1] = op.row_ptr_[i] + counts[i];
  op.col_.resize(op.row_ptr_[dim]);
  op.val_.resize(op.row_ptr_[dim]);

  parallel_for(dim, [&](int64_t lo, int64_t hi) {
    std::vector<std::pair<int64_t, double>> e;
    for (int64_t i = lo; i < hi; ++i) {
      row_entries(i, e);
      int64_t at = op.row_ptr_[i];
      for (auto& [j, v] : e) {
        op.col_[at] = int32_t(j);
        op.val_[at] = v;
        ++at;
      }
    }
  });
  return op;
}

void SparseOperator::apply(const std::complex<double>* in,
                           std::complex<double>* out) const {
  parallel_for(dim_, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      std::complex<double> acc = 0;
      for (int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
        acc += val_[p] * in[col_[p]];
      out[i] = acc;
    }
  });
}

void SparseOperator::apply_real(const double* in, double* out) const {
  parallel_for(dim_, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      double acc = 0;
      for (int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
        acc += val_[p] * in[col_[p]];
      out[i] = acc;
    }
  });
}

StateVector SparseOperator::apply(const StateVector& psi) const {
  StateVector out(*psi.basis);
  apply(psi.amp.data(), out.amp.data());
  return out;
}

DenseMatrix SparseOperator::to_dense() const {
  DenseMatrix m(dim_);
  for (int64_t i = 0; i < dim_; ++i)
    for (int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      m.at(i, col_[p]) = val_[p];
  return m;
}

double SparseOperator::max_symmetry_violation() const {
  double worst = 0;
  for (int64_t i = 0; i < dim_; ++i)
    for (int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      int64_t j = col_[p];
      // Binary search for (j, i).
      int64_t lo = row_ptr_[j], hi = row_ptr_[j + 1];
      double vt = 0;
      while (lo < hi) {
        int64_t mid = (lo + hi) / 2;
        if (col_[mid] < i)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (lo < row_ptr_[j + 1] && col_[lo] == i) vt = val_[lo];
      worst = std::max(worst, std::abs(val_[p] - vt));
    }
  return worst;
}

double SparseOperator::inf_norm() const {
  double worst = 0;
  for (int64_t i = 0; i < dim_; ++i) {
    double s = 0;
    for (int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += std::abs(val_[p]);
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace scarlab
