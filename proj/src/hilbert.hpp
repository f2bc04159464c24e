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

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qvars {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositive = 1e-10;
inline constexpr double kProjection = 1e-10;
inline constexpr double kEigenGroupRelative = 1e-8;
inline constexpr double kEigenGroupFloor = 1e-12;
}  // namespace tol

class HermitianOperator {
 public:
  /// Throws Error(NotHermitian) if the input deviates from its adjoint by
  /// more than 1e-12 (relative to its largest entry, floor 1). The stored
  /// matrix is the exact Hermitian part.
  static HermitianOperator make(const Matrix& m);
  static HermitianOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex trace() const { return m_.trace(); }

  HermitianOperator operator*(double s) const;
  HermitianOperator operator+(const HermitianOperator& o) const;

 private:
  explicit HermitianOperator(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Unit vector; the first amplitude with modulus above 1e-12 is real and
/// positive.
class StateVector {
 public:
  /// Throws Error(NotNormalized) if |norm - 1| > 1e-12.
  static StateVector make(const Vector& v);
  /// Normalizes first; throws on the zero vector.
  static StateVector normalized(const Vector& v);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const noexcept { return v_; }
  Complex operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }

 private:
  explicit StateVector(Vector v) : v_(std::move(v)) {}
  Vector v_;
};

class DensityOperator {
 public:
  /// Hermitian within 1e-12, trace 1 within 1e-10, smallest eigenvalue at
  /// least -1e-10.
  static DensityOperator make(const Matrix& m);
  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  explicit DensityOperator(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Raw output of the Jacobi eigensolver, eigenvalues ascending and
/// eigenvectors as matching columns.
struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a Hermitian matrix. Converged once the
/// off-diagonal Frobenius norm drops below 1e-12 times max(1, ||A||_F);
/// throws Error(NotConverged) after `max_sweeps` sweeps.
EigenSystem jacobi_eigen(const Matrix& a, int max_sweeps = 100);

struct SpectralDecomposition {
  std::size_t dim = 0;
  /// Distinct eigenvalues, ascending.
  std::vector<double> eigenvalues;
  std::vector<std::size_t> multiplicities;
  std::vector<HermitianOperator> projections;
  /// Orthonormal eigenvectors spanning each eigenspace, phase-normalized.
  std::vector<std::vector<StateVector>> eigenvectors;

  /// Index of the eigenvalue within the grouping tolerance of `value`.
  std::optional<std::size_t> find(double value) const;
  Matrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& op);

/// Grouping tolerance used by spectral_decompose for an operator whose
/// largest |eigenvalue| is `spectral_radius`.
double eigenvalue_group_tolerance(double spectral_radius);

/// sum_i values[i] |basis_i><basis_i|. Throws Error(NotOrthonormal) or
/// Error(DuplicateValues).
HermitianOperator operator_from_variable(std::span<const double> values,
                                         std::span<const StateVector> basis);

/// W^-1 op W. Throws Error(NotUnitary) if W^H W deviates from I by more
/// than 1e-10.
HermitianOperator conjugate(const HermitianOperator& op, const Matrix& w);

bool is_unitary(const Matrix& w, double tolerance = tol::kUnitary);

/// Every grouped eigenvalue is simple.
bool is_maximal_operator(const HermitianOperator& op);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

HermitianOperator projector(const StateVector& psi);

const HermitianOperator& pauli_x();
const HermitianOperator& pauli_y();
const HermitianOperator& pauli_z();

/// n·sigma for a unit 3-vector n.
HermitianOperator spin_operator(double nx, double ny, double nz);

/// Spin component along a direction at `angle_rad` from z in the x-z plane:
/// cos(angle) sigma_z + sin(angle) sigma_x.
HermitianOperator spin_operator_in_plane(double angle_rad);

/// sum over c in {x,y,z} of sigma_c ⊗ sigma_c, spectrum {-3, 1, 1, 1}.
HermitianOperator dot_product_operator();

/// (|+-> - |-+>)/sqrt(2) in the product basis |++>, |+->, |-+>, |-->.
StateVector singlet_state();

}  // namespace qvars
