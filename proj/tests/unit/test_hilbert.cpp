// Copyright 2026 The qvars Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "hilbert.hpp"
#include "test_support.hpp"

using namespace qvars;
using qvars::testing::Engine;
using qvars::testing::max_abs;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

Matrix real2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Eigenvalues from Eigen's own solver, ascending.
std::vector<double> oracle_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const auto v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

std::vector<double> expanded_spectrum(const SpectralDecomposition& sd) {
  std::vector<double> out;
  for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
    out.insert(out.end(), sd.multiplicities[k], sd.eigenvalues[k]);
  }
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST_CASE("HermitianOperator validation") {
  CHECK_NOTHROW(HermitianOperator::make(real2(1, 2, 2, 3)));
  try {
    HermitianOperator::make(real2(1, 2, 0, 3));
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  Matrix m = real2(1, 0, 0, 1);
  m(0, 1) = {0, 1};
  m(1, 0) = {0, -1};
  CHECK_NOTHROW(HermitianOperator::make(m));
  CHECK_THROWS_AS(HermitianOperator::make(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("StateVector phase convention and normalization") {
  Vector v(2);
  v << Complex(0, kInvSqrt2), Complex(kInvSqrt2, 0);
  const auto s = StateVector::make(v);
  CHECK(s[0].imag() == doctest::Approx(0.0));
  CHECK(s[0].real() > 0);
  CHECK(std::abs(s[1] - Complex(0, -kInvSqrt2)) < 1e-15);
  Vector bad(2);
  bad << 1.0, 1.0;
  try {
    StateVector::make(bad);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
  CHECK(std::abs(StateVector::normalized(bad)[1] - kInvSqrt2) < 1e-15);
  CHECK_THROWS_AS(StateVector::normalized(Vector::Zero(3)), Error);
  const auto e1 = StateVector::basis(3, 1);
  CHECK(e1[1] == Complex(1.0));
}

TEST_CASE("DensityOperator validation") {
  CHECK_NOTHROW(DensityOperator::make(diag({0.25, 0.75})));
  CHECK_THROWS_AS(DensityOperator::make(diag({0.5, 0.75})), Error);
  CHECK_THROWS_AS(DensityOperator::make(diag({1.5, -0.5})), Error);
  const auto mm = DensityOperator::maximally_mixed(4);
  CHECK(max_abs(mm.matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-15);
}

TEST_CASE("operator_from_variable") {
  const std::vector<double> pm = {1.0, -1.0};
  const std::vector<StateVector> standard = {StateVector::basis(2, 0), StateVector::basis(2, 1)};
  CHECK(max_abs(operator_from_variable(pm, standard).matrix() - diag({1, -1})) < 1e-15);

  Vector plus(2), minus(2);
  plus << kInvSqrt2, kInvSqrt2;
  minus << kInvSqrt2, -kInvSqrt2;
  const std::vector<StateVector> hadamard = {StateVector::make(plus), StateVector::make(minus)};
  CHECK(max_abs(operator_from_variable(pm, hadamard).matrix() - real2(0, 1, 1, 0)) < 1e-15);

  try {
    operator_from_variable(std::vector<double>{1.0, 1.0}, standard);
    FAIL("expected DuplicateValues");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateValues);
  }
  try {
    operator_from_variable(pm, std::vector<StateVector>{StateVector::basis(2, 0), StateVector::make(plus)});
    FAIL("expected NotOrthonormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOrthonormal);
  }

  Engine rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + rng() % 6;
    const Matrix u = testing::random_unitary(rng, dim);
    std::vector<StateVector> basis;
    std::vector<double> values;
    for (std::size_t i = 0; i < dim; ++i) {
      basis.push_back(StateVector::normalized(u.col(static_cast<Eigen::Index>(i))));
      values.push_back(static_cast<double>(i) * 1.5 - 2.0);
    }
    const auto sd = spectral_decompose(operator_from_variable(values, basis));
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    CHECK(max_diff(sd.eigenvalues, sorted) < 1e-10);
    for (const auto& p : sd.projections) CHECK(std::abs(p.trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("conjugate") {
  const auto z = HermitianOperator::make(diag({1, -1}));
  CHECK(max_abs(conjugate(z, Matrix::Identity(2, 2)).matrix() - z.matrix()) < 1e-15);
  const Matrix h = real2(1, 1, 1, -1) * kInvSqrt2;
  CHECK(max_abs(conjugate(z, h).matrix() - real2(0, 1, 1, 0)) < 1e-15);
  try {
    conjugate(z, real2(1, 1, 0, 1));
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitary);
  }

  Engine rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + rng() % 8;
    const auto op = testing::random_hermitian(rng, dim);
    const Matrix w = testing::random_unitary(rng, dim);
    REQUIRE(is_unitary(w));
    const auto before = oracle_eigenvalues(op.matrix());
    const auto after = expanded_spectrum(spectral_decompose(conjugate(op, w)));
    CHECK(max_diff(before, after) < 1e-10);
  }
}

TEST_CASE("spectral_decompose examples") {
  const auto z = spectral_decompose(HermitianOperator::make(diag({1, -1})));
  CHECK(z.eigenvalues == std::vector<double>{-1.0, 1.0});
  CHECK(max_abs(z.projections[0].matrix() - diag({0, 1})) < 1e-15);
  CHECK(max_abs(z.projections[1].matrix() - diag({1, 0})) < 1e-15);

  const auto id = spectral_decompose(HermitianOperator::identity(3));
  REQUIRE(id.eigenvalues.size() == 1);
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.multiplicities[0] == 3);
  CHECK(max_abs(id.projections[0].matrix() - Matrix::Identity(3, 3)) < 1e-15);

  const auto xi = spectral_decompose(dot_product_operator());
  REQUIRE(xi.eigenvalues.size() == 2);
  CHECK(std::abs(xi.eigenvalues[0] + 3.0) < 1e-10);
  CHECK(std::abs(xi.eigenvalues[1] - 1.0) < 1e-10);
  CHECK(xi.multiplicities == std::vector<std::size_t>{1, 3});
  CHECK(xi.find(-3.0) == std::optional<std::size_t>(0));
  CHECK_FALSE(xi.find(0.0));
}

TEST_CASE("spectral_decompose on random Hermitian matrices") {
  Engine rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + rng() % 16;
    const auto op = testing::random_hermitian(rng, dim);
    const auto sd = spectral_decompose(op);
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < sd.projections.size(); ++j) {
      const Matrix& pj = sd.projections[j].matrix();
      CHECK(max_abs(pj * pj - pj) < 1e-10);
      for (std::size_t k = j + 1; k < sd.projections.size(); ++k) {
        CHECK(max_abs(pj * sd.projections[k].matrix()) < 1e-10);
      }
      sum += pj;
    }
    CHECK(max_abs(sum - Matrix::Identity(n, n)) < 1e-10);
    CHECK(max_abs(sd.reconstruct() - op.matrix()) < 1e-10);
    CHECK(max_diff(expanded_spectrum(sd), oracle_eigenvalues(op.matrix())) < 1e-10);
    CHECK(is_maximal_operator(op) ==
          std::all_of(sd.projections.begin(), sd.projections.end(),
                      [](const HermitianOperator& p) { return std::abs(p.trace().real() - 1.0) < 1e-10; }));
  }
}

TEST_CASE("degenerate spectra group correctly") {
  Engine rng(77);
  const std::vector<std::vector<double>> spectra = {
      {2, 2, 2, -1}, {0, 0, 0, 0, 5}, {1, 1, 2, 2, 3, 3}, {-4, -4, -4, -4, -4, -4, -4, 1}};
  for (const auto& s : spectra) {
    const auto sd = spectral_decompose(testing::random_degenerate(rng, s));
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    CHECK(max_diff(expanded_spectrum(sd), sorted) < 1e-10);
    CHECK_FALSE(is_maximal_operator(testing::random_degenerate(rng, s)));
    for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
      CHECK(std::abs(sd.projections[k].trace().real() - static_cast<double>(sd.multiplicities[k])) < 1e-10);
      for (const auto& v : sd.eigenvectors[k]) {
        // First significant amplitude is real and positive.
        for (Eigen::Index i = 0; i < v.amplitudes().size(); ++i) {
          if (std::abs(v.amplitudes()(i)) > 1e-12) {
            CHECK(v.amplitudes()(i).imag() == 0.0);
            CHECK(v.amplitudes()(i).real() > 0.0);
            break;
          }
        }
      }
    }
  }
}

TEST_CASE("jacobi convergence budget") {
  Engine rng(1);
  const auto m = testing::random_hermitian_matrix(rng, 12);
  const auto es = jacobi_eigen(m);
  CHECK(es.sweeps <= 100);
  CHECK(max_abs(es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint() - m) < 1e-10);
  try {
    jacobi_eigen(m, 1);
    FAIL("expected NotConverged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConverged);
  }
}

TEST_CASE("is_maximal_operator") {
  CHECK(is_maximal_operator(HermitianOperator::make(diag({1, 2, 3}))));
  CHECK_FALSE(is_maximal_operator(HermitianOperator::make(diag({1, 1, 2}))));
  CHECK_FALSE(is_maximal_operator(dot_product_operator()));
}

TEST_CASE("tensor products") {
  CHECK(max_abs(tensor(HermitianOperator::identity(2), HermitianOperator::identity(3)).matrix() -
                Matrix::Identity(6, 6)) < 1e-15);
  Engine rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_hermitian(rng, 1 + rng() % 4);
    const auto b = testing::random_hermitian(rng, 1 + rng() % 4);
    const auto ab = tensor(a, b);
    CHECK(ab.dim() == a.dim() * b.dim());
    CHECK(std::abs(ab.trace() - a.trace() * b.trace()) < 1e-10);
    const auto s = tensor(testing::random_state(rng, 3), testing::random_state(rng, 2));
    CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);
    const auto rho = tensor(testing::random_density(rng, 2), testing::random_density(rng, 3));
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("Pauli and spin operators") {
  const Matrix& x = pauli_x().matrix();
  const Matrix& y = pauli_y().matrix();
  const Matrix& z = pauli_z().matrix();
  const Complex i(0, 1);
  CHECK(max_abs(x * y - i * z) < 1e-15);
  CHECK(max_abs(y * z - i * x) < 1e-15);
  CHECK(max_abs(spin_operator(0, 0, 1).matrix() - z) < 1e-15);
  CHECK(max_abs(spin_operator_in_plane(std::numbers::pi / 2).matrix() - x) < 1e-15);
  CHECK_THROWS_AS(spin_operator(1, 1, 0), Error);
}

TEST_CASE("dot product operator and singlet") {
  const auto xi = dot_product_operator();
  CHECK(std::abs(xi.trace()) < 1e-15);
  CHECK(max_abs(xi.matrix() - xi.matrix().adjoint()) == 0.0);
  // Explicit matrix: diag(1,-1,-1,1) plus 2 on the (+-, -+) off-diagonal.
  Matrix expected = diag({1, -1, -1, 1});
  expected(1, 2) = 2.0;
  expected(2, 1) = 2.0;
  CHECK(max_abs(xi.matrix() - expected) < 1e-15);

  const auto s = singlet_state();
  CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-15);
  CHECK(std::abs(s[0]) == 0.0);
  CHECK(std::abs(s[3]) == 0.0);
  CHECK(max_abs(xi.matrix() * s.amplitudes() + 3.0 * s.amplitudes()) < 1e-10);

  const auto sd = spectral_decompose(xi);
  const auto& v = sd.eigenvectors[0].front();
  CHECK(max_abs(v.amplitudes() - s.amplitudes()) < 1e-10);
}

TEST_CASE("eigenvalue grouping tolerance") {
  CHECK(eigenvalue_group_tolerance(0.0) == 1e-12);
  CHECK(eigenvalue_group_tolerance(3.0) == doctest::Approx(3e-8));
  const auto near = spectral_decompose(HermitianOperator::make(diag({1.0, 1.0 + 1e-9, 2.0})));
  CHECK(near.multiplicities == std::vector<std::size_t>{2, 1});
  const auto apart = spectral_decompose(HermitianOperator::make(diag({1.0, 1.0 + 1e-6, 2.0})));
  CHECK(apart.multiplicities == std::vector<std::size_t>{1, 1, 1});
}
