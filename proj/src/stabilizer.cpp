#include "scarlab/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scarlab {

namespace {

using cplx = std::complex<double>;

// Exponent of i picked up when (X^{x1} Z^{z1}) multiplies (X^{x2} Z^{z2})
// from the left, per qubit (the Aaronson-Gottesman g function).
int phase_g(int x1, int z1, int x2, int z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return z2 - x2;
  if (x1) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

}  // namespace

Tableau::Tableau(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("tableau needs at least one qubit");
  x_.assign(2 * n + 1, Bitset(n));
  z_.assign(2 * n + 1, Bitset(n));
  r_.assign(2 * n + 1, 0);
  for (int i = 0; i < n; ++i) {
    x_[i].set(i, true);      // destabilizer X_i
    z_[n + i].set(i, true);  // stabilizer Z_i
  }
}

void Tableau::rowsum(int h, int i) {
  int sum = 2 * (r_[h] + r_[i]);
  for (int j = 0; j < n_; ++j)
    sum += phase_g(x_[i].test(j), z_[i].test(j), x_[h].test(j), z_[h].test(j));
  sum = ((sum % 4) + 4) % 4;
  // Stabilizer and scratch rows only ever absorb commuting rows, so their
  // phase stays Hermitian.  Destabilizer rows may absorb an anticommuting
  // row during a measurement update; their sign bit carries no meaning and
  // is only kept well-defined.
  if ((sum & 1) && h >= n_)
    throw std::logic_error("rowsum produced a non-Hermitian phase");
  r_[h] = sum == 2;
  x_[h] ^= x_[i];
  z_[h] ^= z_[i];
}

void Tableau::h(int q) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  for (int i = 0; i < 2 * n_; ++i) {
    bool xb = x_[i].test(q), zb = z_[i].test(q);
    r_[i] ^= xb && zb;
    x_[i].set(q, zb);
    z_[i].set(q, xb);
  }
}

void Tableau::s(int q) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  for (int i = 0; i < 2 * n_; ++i) {
    bool xb = x_[i].test(q), zb = z_[i].test(q);
    r_[i] ^= xb && zb;
    if (xb) z_[i].flip(q);
  }
}

void Tableau::x(int q) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= z_[i].test(q);
}

void Tableau::z(int q) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  for (int i = 0; i < 2 * n_; ++i) r_[i] ^= x_[i].test(q);
}

void Tableau::cnot(int control, int target) {
  if (control < 0 || control >= n_ || target < 0 || target >= n_)
    throw std::out_of_range("qubit index out of range");
  if (control == target)
    throw std::invalid_argument("cnot needs two distinct qubits");
  for (int i = 0; i < 2 * n_; ++i) {
    bool xc = x_[i].test(control), zc = z_[i].test(control);
    bool xt = x_[i].test(target), zt = z_[i].test(target);
    r_[i] ^= xc && zt && !(xt ^ zc);
    x_[i].set(target, xt ^ xc);
    z_[i].set(control, zc ^ zt);
  }
}

void Tableau::cz(int a, int b) {
  if (a == b) throw std::invalid_argument("cz needs two distinct qubits");
  h(b);
  cnot(a, b);
  h(b);
}

bool Tableau::z_deterministic(int q) const {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  for (int i = n_; i < 2 * n_; ++i)
    if (x_[i].test(q)) return false;
  return true;
}

int Tableau::measure_z(int q, int forced, std::mt19937_64* rng) {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  if (forced != 0 && forced != 1 && forced != -1)
    throw std::invalid_argument("forced outcome must be +1, -1, or 0");
  int p = -1;
  for (int i = n_; i < 2 * n_; ++i)
    if (x_[i].test(q)) {
      p = i;
      break;
    }

  if (p < 0) {  // deterministic outcome, state untouched
    const int scratch = 2 * n_;
    x_[scratch] = Bitset(n_);
    z_[scratch] = Bitset(n_);
    r_[scratch] = 0;
    for (int i = 0; i < n_; ++i)
      if (x_[i].test(q)) rowsum(scratch, i + n_);
    int outcome = r_[scratch] ? -1 : +1;
    if (forced != 0 && forced != outcome)
      throw std::runtime_error(
          "forced outcome contradicts a deterministic measurement");
    return outcome;
  }

  int bit;
  if (forced != 0) {
    bit = forced < 0;
  } else {
    if (!rng)
      throw std::invalid_argument(
          "random measurement needs a generator or a forced outcome");
    bit = int((*rng)() & 1);
  }
  for (int i = 0; i < 2 * n_; ++i)
    if (i != p && x_[i].test(q)) rowsum(i, p);
  x_[p - n_] = x_[p];
  z_[p - n_] = z_[p];
  r_[p - n_] = r_[p];
  x_[p] = Bitset(n_);
  z_[p] = Bitset(n_);
  z_[p].set(q, true);
  r_[p] = uint8_t(bit);
  return bit ? -1 : +1;
}

int Tableau::expectation(const PauliString& p) const {
  if (p.n != n_) throw std::invalid_argument("Pauli width does not match");
  if (!p.is_hermitian())
    throw std::invalid_argument("expectation needs a Hermitian Pauli");
  auto anticommutes = [&](int row) {
    return (x_[row].parity_and(p.z) ^ z_[row].parity_and(p.x)) != 0;
  };
  for (int i = n_; i < 2 * n_; ++i)
    if (anticommutes(i)) return 0;

  // P commutes with the group, so it is +-(product of the stabilizers whose
  // destabilizer partners anticommute with it).
  Tableau t = *this;
  const int scratch = 2 * n_;
  t.x_[scratch] = Bitset(n_);
  t.z_[scratch] = Bitset(n_);
  t.r_[scratch] = 0;
  for (int i = 0; i < n_; ++i)
    if (anticommutes(i)) t.rowsum(scratch, i + n_);
  if (!(t.x_[scratch] == p.x) || !(t.z_[scratch] == p.z))
    throw std::logic_error("destabilizer decomposition failed");
  int c = int((p.x & p.z).count() % 4);
  int d = ((int(p.phase) - c) % 4 + 4) % 4;  // 0 or 2 for Hermitian P
  int sign = (d == 2) ^ (t.r_[scratch] != 0) ? -1 : +1;
  return sign;
}

Tableau Tableau::canonical() const {
  Tableau t = *this;
  auto swap_rows = [&](int a, int b) {
    std::swap(t.x_[a], t.x_[b]);
    std::swap(t.z_[a], t.z_[b]);
    std::swap(t.r_[a], t.r_[b]);
  };
  int row = n_;
  for (int q = 0; q < n_ && row < 2 * n_; ++q) {
    int piv = -1;
    for (int i = row; i < 2 * n_; ++i)
      if (t.x_[i].test(q)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    swap_rows(piv, row);
    for (int i = n_; i < 2 * n_; ++i)
      if (i != row && t.x_[i].test(q)) t.rowsum(i, row);
    ++row;
  }
  for (int q = 0; q < n_ && row < 2 * n_; ++q) {
    int piv = -1;
    for (int i = row; i < 2 * n_; ++i)
      if (t.z_[i].test(q)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    swap_rows(piv, row);
    // Pure-Z pivots are eliminated from every other stabilizer row (X-block
    // rows included — multiplying by a pure-Z row never disturbs x bits),
    // which makes the reduced form unique.
    for (int i = n_; i < 2 * n_; ++i)
      if (i != row && t.z_[i].test(q)) t.rowsum(i, row);
    ++row;
  }
  return t;
}

bool Tableau::same_state(const Tableau& other) const {
  if (n_ != other.n_) return false;
  Tableau a = canonical(), b = other.canonical();
  for (int i = n_; i < 2 * n_; ++i)
    if (!(a.x_[i] == b.x_[i]) || !(a.z_[i] == b.z_[i]) || a.r_[i] != b.r_[i])
      return false;
  return true;
}

std::vector<cplx> Tableau::to_statevector() const {
  if (n_ > 14)
    throw std::invalid_argument("dense conversion capped at 14 qubits");
  Tableau t = canonical();

  // Pure-Z canonical rows force parities z.v = r; their pivots sit in no
  // other row, so setting every free bit to zero solves the system directly.
  uint64_t v0 = 0;
  std::vector<PauliString> x_rows;
  for (int i = n_; i < 2 * n_; ++i) {
    PauliString p(n_);
    p.x = t.x_[i];
    p.z = t.z_[i];
    p.phase = uint8_t(((p.x & p.z).count() + 2 * t.r_[i]) % 4);
    if (p.x.any()) {
      x_rows.push_back(std::move(p));
      continue;
    }
    if (t.r_[i] && !p.z.any())
      throw std::logic_error("canonical tableau stabilizes -identity");
    if (p.z.parity_and_u64(v0) != t.r_[i]) v0 ^= uint64_t(1) << p.z.lowest_set();
  }

  std::vector<cplx> psi(size_t(1) << n_, cplx(0));
  psi[v0] = 1.0;
  std::vector<cplx> next(psi.size());
  for (const PauliString& g : x_rows) {
    std::fill(next.begin(), next.end(), cplx(0));
    for (uint64_t v = 0; v < psi.size(); ++v) {
      if (psi[v] == cplx(0)) continue;
      next[v] += 0.5 * psi[v];
      auto [w, coeff] = g.apply_to_basis(v);
      next[w] += 0.5 * coeff * psi[v];
    }
    std::swap(psi, next);
  }
  double norm = 0;
  for (const cplx& a : psi) norm += std::norm(a);
  norm = std::sqrt(norm);
  if (norm < 1e-9)
    throw std::logic_error("stabilizer support construction collapsed");
  // Fix the global phase: lowest-index support amplitude real positive.
  cplx ref = 0;
  for (const cplx& a : psi)
    if (std::abs(a) > 1e-9) {
      ref = a / std::abs(a);
      break;
    }
  for (cplx& a : psi) a /= norm * ref;
  return psi;
}

double stabilizer_renyi_entropy_2(const std::vector<cplx>& amp) {
  size_t dim = amp.size();
  int n = 0;
  while ((size_t(1) << n) < dim) ++n;
  if ((size_t(1) << n) != dim || dim < 2)
    throw std::invalid_argument("amplitude count must be a power of two");
  if (n > 10) throw std::invalid_argument("Renyi entropy capped at 10 qubits");
  static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  double sum = 0;
  for (uint64_t x = 0; x < dim; ++x)
    for (uint64_t z = 0; z < dim; ++z) {
      cplx c = iphase[__builtin_popcountll(x & z) & 3];
      cplx e = 0;
      for (uint64_t v = 0; v < dim; ++v) {
        cplx term = std::conj(amp[v ^ x]) * amp[v];
        e += __builtin_parityll(z & v) ? -term : term;
      }
      double ev = (c * e).real();
      sum += ev * ev * ev * ev;
    }
  return -std::log(sum / double(dim));
}

double stabilizer_renyi_entropy_2(const StateVector& psi) {
  if (!psi.basis) throw std::invalid_argument("state carries no basis");
  const SectorBasis& basis = *psi.basis;
  size_t dim = size_t(1) << basis.n_qubits;
  if (size_t(basis.dimension()) != dim)
    throw std::invalid_argument(
        "Renyi entropy needs a state on the full qubit space");
  std::vector<cplx> amp(dim, cplx(0));
  for (int64_t i = 0; i < basis.dimension(); ++i)
    amp[basis.state_at(i)] = psi.amp[i];
  return stabilizer_renyi_entropy_2(amp);
}

}  // namespace scarlab
