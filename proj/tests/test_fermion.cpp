#include <doctest.h>

#include <complex>

#include "scarlab/basis.hpp"
#include "scarlab/fermion.hpp"
#include "scarlab/hamiltonian.hpp"
#include "scarlab/linalg.hpp"
#include "scarlab/pauli.hpp"

using namespace scarlab;

namespace {

// Independent 2x2 kron oracle for the dense string converter.
CMatrix kron_oracle(const PauliString& p) {
  auto base = [](char op) {
    CMatrix m(2);
    switch (op) {
      case 'I': m.at(0, 0) = 1; m.at(1, 1) = 1; break;
      case 'X': m.at(0, 1) = 1; m.at(1, 0) = 1; break;
      case 'Y': m.at(0, 1) = {0, -1}; m.at(1, 0) = {0, 1}; break;
      case 'Z': m.at(0, 0) = 1; m.at(1, 1) = -1; break;
    }
    return m;
  };
  // Qubit 0 is the least significant bit, so it sits rightmost in the kron.
  CMatrix acc(1);
  acc.at(0, 0) = 1;
  for (int q = p.n - 1; q >= 0; --q) {
    char op = 'I';
    bool hx = p.x.test(q), hz = p.z.test(q);
    if (hx && hz) op = 'Y';
    else if (hx) op = 'X';
    else if (hz) op = 'Z';
    acc = kron(acc, base(op));
  }
  // Stored form is i^phase prod X^x Z^z and per qubit XZ = -i Y, so switching
  // to literal Y matrices costs one factor -i per Y.
  std::complex<double> ph = p.phase_value();
  int ny = (p.x & p.z).count();
  for (int t = 0; t < (ny & 3); ++t) ph *= std::complex<double>{0, -1};
  acc *= ph;
  return acc;
}

}  // namespace

TEST_CASE("dense pauli matrices match a kron-built oracle") {
  for (const char* label : {"+XIZ", "-YZX", "iZZY", "+IIX", "-iYYI"}) {
    PauliString p = PauliString::from_label(label);
    CHECK(dense_pauli_matrix(p).max_abs_diff(kron_oracle(p)) == doctest::Approx(0.0));
  }
}

TEST_CASE("majorana strings carry the expected small-system forms") {
  // L=1 (two spins): gamma_1 = Z_1, gammabar_1 = -Y_1, gamma_2 = -X_1 Z_2.
  CHECK(jw_gamma(1, 1).label() == "+ZI");
  CHECK(jw_gamma_bar(1, 1).label() == "-YI");
  CHECK(jw_gamma(1, 2).label() == "-XZ");
  // All Majoranas are Hermitian and square to the identity.
  for (int a = 1; a <= 6; ++a) {
    CHECK(jw_gamma(3, a).is_hermitian());
    CHECK(jw_gamma_bar(3, a).is_hermitian());
    CHECK((jw_gamma(3, a) * jw_gamma(3, a)).is_identity());
  }
}

TEST_CASE("number operator counts rung fermions") {
  const int L = 2;
  CMatrix n_op = jw_number_operator(L);
  // Hermitian with integer spectrum 0..2L, each filling with binomial(2L, m)
  // degeneracy.
  CHECK(n_op.max_abs_diff(n_op.dagger()) == doctest::Approx(0.0).epsilon(1e-14));
  std::vector<double> evals;
  CMatrix a = n_op;
  herm_eigen_inplace(a, evals);
  std::vector<int> histogram(2 * L + 1, 0);
  for (double e : evals) {
    CHECK(std::abs(e - std::round(e)) < 1e-10);
    histogram[int(std::round(e))]++;
  }
  CHECK(histogram == std::vector<int>{1, 4, 6, 4, 1});
}

TEST_CASE("full fermionization battery passes at L=2 and L=3") {
  for (int L : {2, 3}) {
    CAPTURE(L);
    for (const CheckResult& c : run_fermion_checks(L)) {
      CAPTURE(c.name);
      CAPTURE(c.residual);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("scar-charge characterization extends to L=4 and L=5") {
  for (int L : {4, 5}) {
    CAPTURE(L);
    for (const CheckResult& c : run_fermion_checks(L)) {
      CAPTURE(c.name);
      CAPTURE(c.residual);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("fermion checks reject out-of-range sizes") {
  CHECK_THROWS_AS(run_fermion_checks(1), std::invalid_argument);
  CHECK_THROWS_AS(run_fermion_checks(6), std::invalid_argument);
  CHECK_THROWS_AS(jw_gamma(2, 5), std::invalid_argument);
}
