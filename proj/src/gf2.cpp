#include "scarlab/gf2.hpp"

#include <stdexcept>

namespace scarlab {

void Gf2System::add_row(const Bitset& coeffs, bool rhs) {
  if (coeffs.size() != n_) throw std::invalid_argument("Gf2System: row width");
  rows_.push_back(coeffs);
  rhs_.push_back(rhs ? 1 : 0);
}

std::optional<Gf2Solution> Gf2System::solve() const {
  std::vector<Bitset> rows = rows_;
  std::vector<uint8_t> rhs = rhs_;
  const int m = int(rows.size());

  std::vector<int> pivot_row_of_col(n_, -1);
  int rank = 0;
  for (int col = 0; col < n_ && rank < m; ++col) {
    int sel = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r].test(col)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[sel], rows[rank]);
    std::swap(rhs[sel], rhs[rank]);
    for (int r = 0; r < m; ++r)
      if (r != rank && rows[r].test(col)) {
        rows[r] ^= rows[rank];
        rhs[r] ^= rhs[rank];
      }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  for (int r = rank; r < m; ++r)
    if (rhs[r]) return std::nullopt;  // 0 = 1 row: inconsistent

  Gf2Solution sol;
  sol.particular = Bitset(n_);
  for (int col = 0; col < n_; ++col)
    if (pivot_row_of_col[col] >= 0 && rhs[pivot_row_of_col[col]])
      sol.particular.set(col);

  for (int col = 0; col < n_; ++col) {
    if (pivot_row_of_col[col] >= 0) continue;  // pivot column -> bound var
    Bitset v(n_);
    v.set(col);
    for (int pc = 0; pc < n_; ++pc)
      if (pivot_row_of_col[pc] >= 0 && rows[pivot_row_of_col[pc]].test(col))
        v.set(pc);
    sol.nullspace.push_back(v);
  }
  return sol;
}

std::vector<Bitset> Gf2System::row_space_basis() const { return gf2_rref(rows_); }

std::vector<Bitset> gf2_rref(std::vector<Bitset> rows) {
  const int m = int(rows.size());
  if (m == 0) return {};
  const int n = rows[0].size();
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int sel = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r].test(col)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[sel], rows[rank]);
    for (int r = 0; r < m; ++r)
      if (r != rank && rows[r].test(col)) rows[r] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

std::vector<Bitset> gf2_project_row_space(const std::vector<Bitset>& rows,
                                          const Bitset& region) {
  std::vector<Bitset> projected;
  projected.reserve(rows.size());
  for (const Bitset& r : rows) projected.push_back(r & region);
  return gf2_rref(std::move(projected));
}

}  // namespace scarlab
