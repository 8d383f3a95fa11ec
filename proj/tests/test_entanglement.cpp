#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "scarlab/entanglement.hpp"
#include "scarlab/scars.hpp"

using namespace scarlab;

namespace {

constexpr double kLn2 = 0.6931471805599453;

StateVector random_basis_superposition(const SectorBasis& basis,
                                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector psi(basis);
  for (auto& a : psi.amp) a = {gauss(rng), gauss(rng)};
  psi.normalize();
  return psi;
}

StateVector random_scar_superposition(const SectorBasis& basis,
                                      uint64_t seed) {
  auto scars = scar_states(basis);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector psi(basis);
  for (const auto& s : scars) {
    std::complex<double> c(gauss(rng), gauss(rng));
    for (int64_t i = 0; i < psi.dimension(); ++i) psi.amp[i] += c * s.amp[i];
  }
  psi.normalize();
  return psi;
}

std::vector<Cut> all_ising_cuts(int L) {
  std::vector<Cut> cuts;
  for (int a = 1; a <= L; ++a)
    for (int b = a; b <= L && b - a + 1 < L; ++b)
      cuts.push_back(ising_cut(L, a, b));
  return cuts;
}

}  // namespace

TEST_CASE("product and GHZ toys reproduce textbook entropies") {
  SectorBasis basis = enumerate_ising_basis(2);
  Cut rung = ising_cut(2, 1, 1);

  StateVector prod = basis_state(basis, 0);
  CHECK(entanglement_entropy(reduced_density_matrix(prod, rung)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // |0000> has no definite global flip parity, so the symmetry split must
  // refuse rather than fabricate blocks.
  CHECK_THROWS_AS((void)entanglement_split(prod, rung), std::domain_error);

  StateVector ghz(basis);
  ghz.amp[0] = 1.0 / std::sqrt(2.0);
  ghz.amp[15] = 1.0 / std::sqrt(2.0);
  auto dec = entanglement_split(ghz, rung);
  CHECK(dec.s_dist == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dec.s_symm == doctest::Approx(kLn2));
  CHECK(dec.s_total == doctest::Approx(kLn2));
  REQUIRE(dec.blocks.size() == 2);
  for (const auto& b : dec.blocks) {
    CHECK(b.weight == doctest::Approx(0.5));
    CHECK(b.rank == 1);
  }

  // Bell pairs on (q0,q1) and (q2,q3); the rung {q0,q2} cuts both pairs.
  StateVector bells(basis);
  for (uint64_t s : {0ull, 3ull, 12ull, 15ull}) bells.amp[s] = 0.5;
  auto rdm = reduced_density_matrix(bells, rung);
  CHECK(entanglement_entropy(rdm) == doctest::Approx(2 * kLn2));
  auto dec2 = entropy_decomposition(rdm);
  CHECK(dec2.s_dist == doctest::Approx(kLn2));
  CHECK(dec2.s_symm == doctest::Approx(kLn2));
  REQUIRE(dec2.blocks.size() == 2);
  for (const auto& b : dec2.blocks) CHECK(b.rank == 2);
}

TEST_CASE("a region and its complement carry the same spectrum") {
  LadderGeometry geom(4, 2);
  SectorBasis basis = enumerate_lgt_sector(geom, 1, 1);
  StateVector psi = random_basis_superposition(basis, 11);
  for (auto [a, b] : {std::pair{1, 3}, {2, 4}, {1, 4}}) {
    Cut cut = lgt_cut(geom, a, b);
    auto rdm_a = reduced_density_matrix(psi, cut);
    auto rdm_c = reduced_density_matrix(psi, complement_cut(cut));
    CHECK(entanglement_entropy(rdm_a) ==
          doctest::Approx(entanglement_entropy(rdm_c)).epsilon(1e-10));
    auto dec_a = entropy_decomposition(rdm_a);
    auto dec_c = entropy_decomposition(rdm_c);
    CHECK(dec_a.s_dist == doctest::Approx(dec_c.s_dist).epsilon(1e-9));
    CHECK(dec_a.s_symm == doctest::Approx(dec_c.s_symm).epsilon(1e-9));
    CHECK(dec_a.weight_sum == doctest::Approx(1.0));
    REQUIRE(dec_a.blocks.size() == dec_c.blocks.size());
    auto weights = [](const EntropyDecomposition& d) {
      std::vector<double> w;
      for (const auto& b : d.blocks) w.push_back(b.weight);
      std::sort(w.begin(), w.end());
      return w;
    };
    auto wa = weights(dec_a), wc = weights(dec_c);
    for (size_t i = 0; i < wa.size(); ++i)
      CHECK(wa[i] == doctest::Approx(wc[i]).epsilon(1e-9));
    // The smart split must agree with the direct reduction of the region.
    auto split = entanglement_split(psi, cut);
    CHECK(split.s_dist == doctest::Approx(dec_a.s_dist).epsilon(1e-9));
    CHECK(split.s_symm == doctest::Approx(dec_a.s_symm).epsilon(1e-9));
  }
}

TEST_CASE("superselection labels are region strings with bounded blocks") {
  LadderGeometry geom(5, 2);
  SectorBasis basis = enumerate_lgt_sector(geom, 1, 1);
  Cut cut = lgt_cut(geom, 2, 4);
  Bitset region(geom.n_links);
  for (int q : cut.region) region.set(q);
  auto masks = lgt_superselection_masks(geom, cut);
  CHECK(masks.size() >= 3);
  for (const auto& m : masks) CHECK((m & region) == m);

  StateVector psi = random_basis_superposition(basis, 23);
  auto dec = entropy_decomposition(reduced_density_matrix(psi, cut));
  CHECK(dec.blocks.size() <= 8);
  CHECK(dec.s_symm <= 3 * kLn2 + 1e-12);
  CHECK(dec.weight_sum == doctest::Approx(1.0));

  StateVector even = random_basis_superposition(enumerate_ising_basis(5), 29);
  // Symmetrize to the even flip sector: psi + flip(psi).
  {
    SectorBasis full = enumerate_ising_basis(5);
    StateVector sym(full);
    uint64_t all = (1ull << 10) - 1;
    for (uint64_t s = 0; s <= all; ++s)
      sym.amp[s] = even.amp[s] + even.amp[s ^ all];
    sym.normalize();
    auto di = entanglement_split(sym, ising_cut(5, 2, 4));
    CHECK(di.blocks.size() <= 2);
    CHECK(di.s_symm <= kLn2 + 1e-12);
  }
}

TEST_CASE("even-ladder scars have zero distillable entanglement") {
  const int L = 4;
  LadderGeometry geom(L, 2);
  SectorBasis lgt = enumerate_lgt_sector(geom, 1, 1);
  SectorBasis ising = enumerate_ising_basis(L);
  for (int which : {1, 2}) {
    ScarLabel label{true, which, 1, 1};
    StateVector psi = scar_state(lgt, label);
    for (const Cut& cut : lgt_long_direction_cuts(geom)) {
      auto dec = entanglement_split(psi, cut);
      INFO(cut.name);
      CHECK(dec.s_dist <= 1e-12);
    }
    // The dual scar is a product of rung stabilizer pairs: no entanglement
    // at all across any rung grouping.
    StateVector dual = scar_state(ising, label);
    for (const Cut& cut : all_ising_cuts(L)) {
      auto dec = entanglement_split(dual, cut);
      INFO(cut.name);
      CHECK(dec.s_total <= 1e-12);
    }
  }
}

TEST_CASE("odd-ladder scar superpositions distill nothing on the gauge side") {
  const int L = 5;
  LadderGeometry geom(L, 2);
  SectorBasis lgt = enumerate_lgt_sector(geom, 1, 1);
  SectorBasis ising = enumerate_ising_basis(L);
  double ising_max = 0.0;
  for (uint64_t seed : {101, 102, 103}) {
    StateVector psi = random_scar_superposition(lgt, seed);
    for (const Cut& cut : lgt_long_direction_cuts(geom)) {
      auto dec = entanglement_split(psi, cut);
      INFO(cut.name << " seed " << seed);
      CHECK(dec.s_dist <= 1e-10);
    }
    StateVector dual = random_scar_superposition(ising, seed);
    for (const Cut& cut : all_ising_cuts(L))
      ising_max = std::max(ising_max, entanglement_split(dual, cut).s_dist);
  }
  // The same superpositions carry genuine distillable entanglement in the
  // dual spin model: superselection protects only the gauge theory.
  CHECK(ising_max > 1e-3);
}

TEST_CASE("boundary-pinned superpositions have rank-two sector blocks") {
  const int L = 5;
  LadderGeometry geom(L, 2);
  SectorBasis basis = enumerate_lgt_sector(geom, 1, 1);
  const int a = 2, b = 4;
  for (uint64_t seed : {1, 2, 3}) {
    StateVector psi = boundary_pinned_superposition(basis, a, b, seed);
    // Boundary rungs are pinned: +1 at column a, -1 at column b, both rows.
    for (int r = 0; r < 2; ++r) {
      CHECK(diagonal_z_expectation(psi, 1ull << geom.h_link(a - 1, r)) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(diagonal_z_expectation(psi, 1ull << geom.h_link(b - 1, r)) ==
            doctest::Approx(-1.0).epsilon(1e-12));
    }
    Cut cut = lgt_cut(geom, a, b);
    for (const Cut& side : {cut, complement_cut(cut)}) {
      auto dec = entropy_decomposition(reduced_density_matrix(psi, side));
      INFO(side.name << " seed " << seed);
      for (const auto& blk : dec.blocks) CHECK(blk.rank <= 2);
      CHECK(dec.s_dist <= 1e-10);
    }
  }
}

TEST_CASE("cut builders and decompositions reject malformed input") {
  LadderGeometry geom(5, 2);
  CHECK_THROWS_AS((void)lgt_cut(geom, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)lgt_cut(geom, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)lgt_cut(geom, 1, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)ising_cut(5, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)ising_cut(5, 0, 2), std::invalid_argument);

  SectorBasis lgt = enumerate_lgt_sector(geom, 1, 1);
  StateVector psi = random_basis_superposition(lgt, 7);
  CHECK_THROWS_AS((void)reduced_density_matrix(psi, ising_cut(5, 1, 2)),
                  std::invalid_argument);

  // A superposition of different Gauss sectors has no definite labels.
  SectorSpec spec;
  spec.side = Side::lgt;
  spec.L = 3;
  LadderGeometry g3(3, 2);
  SectorBasis full = SectorBasis::full_space(spec, g3.n_links);
  StateVector mixed(full);
  mixed.amp[0] = 1.0 / std::sqrt(2.0);
  mixed.amp[1ull << g3.v_link(1, 0)] = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(
      (void)entropy_decomposition(reduced_density_matrix(mixed, lgt_cut(g3, 1, 3))),
      std::domain_error);

  CHECK_THROWS_AS((void)boundary_pinned_superposition(lgt, 1, 4, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)boundary_pinned_superposition(lgt, 2, 5, 0),
                  std::invalid_argument);
}

TEST_CASE("three-row ladders reduce consistently") {
  LadderGeometry geom(4, 3);
  SectorBasis basis = enumerate_lgt_sector(geom, 1, 1);
  StateVector psi = random_basis_superposition(basis, 31);
  Cut cut = lgt_cut(geom, 1, 3);
  auto rdm_a = reduced_density_matrix(psi, cut);
  auto rdm_c = reduced_density_matrix(psi, complement_cut(cut));
  CHECK(entanglement_entropy(rdm_a) ==
        doctest::Approx(entanglement_entropy(rdm_c)).epsilon(1e-10));
  auto dec = entropy_decomposition(rdm_a);
  CHECK(dec.s_total ==
        doctest::Approx(entanglement_entropy(rdm_a)).epsilon(1e-9));
  CHECK(dec.weight_sum == doctest::Approx(1.0));
}
