#include "scarlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "scarlab/gf2.hpp"

namespace scarlab {

namespace {

using cplx = std::complex<double>;

// Spectrum handling shared by every entropy routine.
constexpr double kDropEigenvalue = 1e-14;   // treat as exact zero below this
constexpr double kNegativeFloor = -1e-10;   // reject spectra below this
constexpr double kRankThreshold = 1e-10;    // on the normalized block spectrum
constexpr double kOffBlockTol = 1e-10;      // allowed parity-sector leakage
constexpr int64_t kMaxRdmDim = 4096;        // dense reduced-matrix cap

uint64_t gather_bits(uint64_t s, const std::vector<int>& pos) {
  uint64_t out = 0;
  for (size_t i = 0; i < pos.size(); ++i) out |= ((s >> pos[i]) & 1ull) << i;
  return out;
}

uint64_t scatter_bits(uint64_t packed, const std::vector<int>& pos) {
  uint64_t out = 0;
  for (size_t i = 0; i < pos.size(); ++i) out |= ((packed >> i) & 1ull) << pos[i];
  return out;
}

std::vector<int> complement_positions(const std::vector<int>& region,
                                      int n_qubits) {
  std::vector<char> in(n_qubits, 0);
  for (int q : region) in[q] = 1;
  std::vector<int> out;
  out.reserve(n_qubits - int(region.size()));
  for (int q = 0; q < n_qubits; ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

int cut_qubits(const Cut& cut) {
  return cut.side == Side::lgt ? 2 * cut.k * cut.L : 2 * cut.L;
}

void validate_cut(const Cut& cut) {
  int n = cut_qubits(cut);
  if (cut.region.empty() || int(cut.region.size()) >= n)
    throw std::invalid_argument("cut region must be a proper nonempty subset");
  for (size_t i = 0; i < cut.region.size(); ++i) {
    if (cut.region[i] < 0 || cut.region[i] >= n)
      throw std::invalid_argument("cut region position out of range");
    if (i && cut.region[i] <= cut.region[i - 1])
      throw std::invalid_argument("cut region must be strictly ascending");
  }
}

// Eigenvalues of a Hermitian block, validated and pruned: negative values
// beyond roundoff are an input error, values below the drop threshold are
// discarded as exact zeros.
std::vector<double> pruned_spectrum(CMatrix block, const std::string& what) {
  std::vector<double> evals;
  herm_eigen_inplace(block, evals);
  std::vector<double> kept;
  kept.reserve(evals.size());
  for (double v : evals) {
    if (v < kNegativeFloor)
      throw std::domain_error(
          fmt::format("{}: eigenvalue {} below the negativity floor", what, v));
    if (v >= kDropEigenvalue) kept.push_back(v);
  }
  return kept;
}

double spectrum_entropy(const std::vector<double>& evals, double weight) {
  double s = 0.0;
  for (double v : evals) {
    double p = v / weight;
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

struct LabeledBlock {
  std::string label;
  std::vector<int64_t> members;  // indices into rdm.configs
};

// Groups configurations by their superselection label and verifies that the
// matrix is exactly block diagonal in that grouping.  Elements between labels
// are never touched during assembly for a sector state, so anything nonzero
// there means the state did not carry definite sector quantum numbers.
std::vector<LabeledBlock> split_by_labels(
    const ReducedDensityMatrix& rdm,
    const std::vector<std::string>& labels) {
  std::map<std::string, std::vector<int64_t>> groups;
  for (size_t i = 0; i < labels.size(); ++i)
    groups[labels[i]].push_back(int64_t(i));
  const int64_t m = int64_t(rdm.configs.size());
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < m; ++j) {
      if (labels[i] == labels[j]) continue;
      cplx v = rdm.rho.at(i, j);
      if (v != cplx(0.0, 0.0))
        throw std::domain_error(
            "superselection labels mixed: the state does not carry definite "
            "sector quantum numbers on this region");
    }
  std::vector<LabeledBlock> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, members] : groups)
    blocks.push_back({label, std::move(members)});
  return blocks;
}

EntropyDecomposition decompose_blocks(const ReducedDensityMatrix& rdm,
                                      const std::vector<LabeledBlock>& parts) {
  EntropyDecomposition dec;
  for (const auto& part : parts) {
    const int64_t d = int64_t(part.members.size());
    CMatrix block(d);
    for (int64_t u = 0; u < d; ++u)
      for (int64_t v = 0; v < d; ++v)
        block.at(u, v) = rdm.rho.at(part.members[u], part.members[v]);
    auto evals = pruned_spectrum(std::move(block), "sector block " + part.label);
    double weight = 0.0;
    for (double v : evals) weight += v;
    if (weight <= kDropEigenvalue) continue;  // unoccupied sector
    EntropyBlock out;
    out.label = part.label;
    out.weight = weight;
    out.entropy = spectrum_entropy(evals, weight);
    out.dim = d;
    out.rank = 0;
    for (double v : evals)
      if (v / weight >= kRankThreshold) ++out.rank;
    dec.s_dist += weight * out.entropy;
    dec.s_symm -= weight * std::log(weight);
    dec.weight_sum += weight;
    dec.blocks.push_back(std::move(out));
  }
  dec.s_total = dec.s_dist + dec.s_symm;
  return dec;
}

// Projects each region configuration back into the full link space and reads
// off its parity under every projected constraint string.
std::vector<std::string> lgt_labels(const ReducedDensityMatrix& rdm) {
  LadderGeometry geom(rdm.cut.L, rdm.cut.k);
  auto masks = lgt_superselection_masks(geom, rdm.cut);
  std::vector<std::string> labels(rdm.configs.size());
  for (size_t i = 0; i < rdm.configs.size(); ++i) {
    uint64_t full = scatter_bits(rdm.configs[i], rdm.cut.region);
    std::string label(masks.size(), '+');
    for (size_t m = 0; m < masks.size(); ++m)
      if (masks[m].parity_and_u64(full)) label[m] = '-';
    labels[i] = label;
  }
  return labels;
}

// Two blocks on the Ising side: the eigenspaces of the region spin-flip.  The
// flip acts on region configurations as a fixed-point-free involution, so the
// plus/minus combinations of partner configurations diagonalize it.
EntropyDecomposition ising_decomposition(const ReducedDensityMatrix& rdm) {
  const int64_t m = int64_t(rdm.configs.size());
  const int na = int(rdm.cut.region.size());
  const uint64_t flip =
      na == 64 ? ~uint64_t(0) : ((uint64_t(1) << na) - 1);
  std::vector<int64_t> partner(m, -1);
  for (int64_t i = 0; i < m; ++i) {
    uint64_t p = rdm.configs[i] ^ flip;
    auto it = std::lower_bound(rdm.configs.begin(), rdm.configs.end(), p);
    if (it == rdm.configs.end() || *it != p)
      throw std::domain_error(
          "region configurations are not closed under the spin flip; the "
          "reduced matrix does not come from a parity-symmetric basis");
    partner[i] = it - rdm.configs.begin();
  }
  std::vector<std::pair<int64_t, int64_t>> orbits;
  orbits.reserve(m / 2);
  for (int64_t i = 0; i < m; ++i)
    if (partner[i] > i) orbits.emplace_back(i, partner[i]);
  const int64_t d = int64_t(orbits.size());
  if (2 * d != m)
    throw std::domain_error("region spin flip has a fixed configuration");

  CMatrix plus(d), minus(d);
  double off_block = 0.0;
  for (int64_t u = 0; u < d; ++u)
    for (int64_t v = 0; v < d; ++v) {
      auto [iu, ju] = orbits[u];
      auto [iv, jv] = orbits[v];
      cplx aa = rdm.rho.at(iu, iv), ab = rdm.rho.at(iu, jv);
      cplx ba = rdm.rho.at(ju, iv), bb = rdm.rho.at(ju, jv);
      plus.at(u, v) = 0.5 * (aa + ab + ba + bb);
      minus.at(u, v) = 0.5 * (aa - ab - ba + bb);
      off_block = std::max(off_block, std::abs(0.5 * (aa - ab + ba - bb)));
    }
  if (off_block > kOffBlockTol)
    throw std::domain_error(fmt::format(
        "flip-parity blocks leak into each other (|cross| = {:.3e}); the "
        "state has no definite global flip parity",
        off_block));

  EntropyDecomposition dec;
  const char* names[2] = {"P=+1", "P=-1"};
  CMatrix* mats[2] = {&plus, &minus};
  for (int s = 0; s < 2; ++s) {
    auto evals = pruned_spectrum(std::move(*mats[s]),
                                 std::string("parity block ") + names[s]);
    double weight = 0.0;
    for (double v : evals) weight += v;
    if (weight <= kDropEigenvalue) continue;
    EntropyBlock out;
    out.label = names[s];
    out.weight = weight;
    out.entropy = spectrum_entropy(evals, weight);
    out.dim = d;
    out.rank = 0;
    for (double v : evals)
      if (v / weight >= kRankThreshold) ++out.rank;
    dec.s_dist += weight * out.entropy;
    dec.s_symm -= weight * std::log(weight);
    dec.weight_sum += weight;
    dec.blocks.push_back(std::move(out));
  }
  dec.s_total = dec.s_dist + dec.s_symm;
  return dec;
}

int64_t distinct_projection_count(const SectorBasis& basis,
                                  const std::vector<int>& pos) {
  std::vector<uint64_t> proj(basis.dimension());
  for (int64_t i = 0; i < basis.dimension(); ++i)
    proj[i] = gather_bits(basis.state_at(i), pos);
  std::sort(proj.begin(), proj.end());
  return std::unique(proj.begin(), proj.end()) - proj.begin();
}

}  // namespace

Cut lgt_cut(const LadderGeometry& geom, int a, int b) {
  if (a < 1 || b <= a || b > geom.L)
    throw std::invalid_argument(
        fmt::format("lgt cut requires 1 <= a < b <= L, got ({}, {})", a, b));
  Cut cut;
  cut.side = Side::lgt;
  cut.L = geom.L;
  cut.k = geom.k;
  cut.a = a;
  cut.b = b;
  cut.name = fmt::format("lgt-cut({},{})", a, b);
  for (int c = a; c <= b - 2; ++c)
    for (int r = 0; r < geom.k; ++r) cut.region.push_back(geom.h_link(c, r));
  for (int c = a; c <= b - 1; ++c)
    for (int r = 0; r < geom.k; ++r) cut.region.push_back(geom.v_link(c, r));
  std::sort(cut.region.begin(), cut.region.end());
  validate_cut(cut);
  return cut;
}

Cut ising_cut(int L, int a, int b) {
  if (a < 1 || b < a || b > L || b - a + 1 >= L)
    throw std::invalid_argument(fmt::format(
        "ising cut requires 1 <= a <= b <= L with a proper complement, "
        "got ({}, {})",
        a, b));
  Cut cut;
  cut.side = Side::ising;
  cut.L = L;
  cut.k = 2;
  cut.a = a;
  cut.b = b;
  cut.name = fmt::format("ising-cut({},{})", a, b);
  for (int p = a; p <= b; ++p) {
    cut.region.push_back(p - 1);
    cut.region.push_back(p - 1 + L);
  }
  std::sort(cut.region.begin(), cut.region.end());
  validate_cut(cut);
  return cut;
}

Cut complement_cut(const Cut& cut) {
  validate_cut(cut);
  Cut out = cut;
  out.region = complement_positions(cut.region, cut_qubits(cut));
  out.name = cut.name + "-complement";
  return out;
}

std::vector<Cut> lgt_long_direction_cuts(const LadderGeometry& geom) {
  std::vector<Cut> cuts;
  for (int a = 1; a <= geom.L; ++a)
    for (int b = a + 1; b <= geom.L; ++b) cuts.push_back(lgt_cut(geom, a, b));
  return cuts;
}

ReducedDensityMatrix reduced_density_matrix(const StateVector& psi,
                                            const Cut& cut) {
  if (!psi.basis) throw std::invalid_argument("state has no basis");
  const SectorBasis& basis = *psi.basis;
  validate_cut(cut);
  if (basis.spec.side != cut.side)
    throw std::invalid_argument("cut and state live on different models");
  if (basis.n_qubits != cut_qubits(cut))
    throw std::invalid_argument("cut and state disagree on system size");
  if (basis.n_qubits > 64)
    throw std::invalid_argument("dense reductions need at most 64 qubits");

  auto comp = complement_positions(cut.region, basis.n_qubits);
  const int64_t dim = basis.dimension();

  struct Triple {
    uint64_t c, a;
    cplx amp;
  };
  std::vector<Triple> triples(dim);
  double nrm2 = 0.0;
  for (int64_t i = 0; i < dim; ++i) {
    uint64_t s = basis.state_at(i);
    triples[i] = {gather_bits(s, comp), gather_bits(s, cut.region), psi.amp[i]};
    nrm2 += std::norm(psi.amp[i]);
  }
  if (nrm2 <= 0.0) throw std::invalid_argument("cannot reduce the zero vector");
  std::sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) {
    return x.c != y.c ? x.c < y.c : x.a < y.a;
  });

  // The configuration list is a property of the basis and the cut alone, so
  // repeated reductions of different states line up index for index.
  ReducedDensityMatrix rdm;
  rdm.cut = cut;
  rdm.configs.reserve(dim);
  for (const auto& t : triples) rdm.configs.push_back(t.a);
  std::sort(rdm.configs.begin(), rdm.configs.end());
  rdm.configs.erase(std::unique(rdm.configs.begin(), rdm.configs.end()),
                    rdm.configs.end());
  const int64_t m = int64_t(rdm.configs.size());
  if (m > kMaxRdmDim)
    throw std::invalid_argument(fmt::format(
        "region has {} configurations (cap {}); reduce the complement instead",
        m, kMaxRdmDim));

  auto config_index = [&](uint64_t a) {
    return int64_t(std::lower_bound(rdm.configs.begin(), rdm.configs.end(), a) -
                   rdm.configs.begin());
  };

  // rho[a,a'] = sum_c psi(a,c) conj(psi(a',c)): accumulate one environment
  // group at a time.  Elements between configurations that never share an
  // environment stay exactly zero.
  rdm.rho = CMatrix(m);
  const double scale = 1.0 / nrm2;
  int64_t lo = 0;
  while (lo < dim) {
    int64_t hi = lo;
    while (hi < dim && triples[hi].c == triples[lo].c) ++hi;
    for (int64_t u = lo; u < hi; ++u) {
      int64_t iu = config_index(triples[u].a);
      for (int64_t v = lo; v < hi; ++v)
        rdm.rho.at(iu, config_index(triples[v].a)) +=
            scale * triples[u].amp * std::conj(triples[v].amp);
    }
    lo = hi;
  }
  return rdm;
}

std::vector<Bitset> lgt_superselection_masks(const LadderGeometry& geom,
                                             const Cut& cut) {
  validate_cut(cut);
  Bitset region(geom.n_links);
  for (int q : cut.region) region.set(q);
  return gf2_project_row_space(lgt_constraint_rows(geom), region);
}

EntropyDecomposition entropy_decomposition(const ReducedDensityMatrix& rdm) {
  if (rdm.cut.side == Side::ising) return ising_decomposition(rdm);
  auto labels = lgt_labels(rdm);
  auto parts = split_by_labels(rdm, labels);
  return decompose_blocks(rdm, parts);
}

double entanglement_entropy(const ReducedDensityMatrix& rdm) {
  auto evals = pruned_spectrum(rdm.rho, "reduced density matrix");
  double s = 0.0;
  for (double v : evals)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

EntropyDecomposition entanglement_split(const StateVector& psi,
                                        const Cut& cut) {
  if (!psi.basis) throw std::invalid_argument("state has no basis");
  validate_cut(cut);
  // For a pure state the block weights, spectra, and ranks agree between a
  // region and its complement (occupied labels pair up one to one), so the
  // reduction happens on whichever side stays smaller.  Labels in the result
  // refer to the side that was reduced.
  auto comp = complement_positions(cut.region, psi.basis->n_qubits);
  int64_t na = distinct_projection_count(*psi.basis, cut.region);
  int64_t nc = distinct_projection_count(*psi.basis, comp);
  ReducedDensityMatrix rdm = reduced_density_matrix(
      psi, na <= nc ? cut : complement_cut(cut));
  return entropy_decomposition(rdm);
}

}  // namespace scarlab
