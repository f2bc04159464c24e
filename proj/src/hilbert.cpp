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

#include "hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "error.hpp"

namespace qvars {

namespace {

constexpr std::size_t kMaxSpectralDim = 64;

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a nonempty square matrix");
  }
}

Vector apply_phase_convention(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > tol::kUnitNorm) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(std::abs(v(i)), 0.0);
      break;
    }
  }
  return v;
}

}  // namespace

// --- HermitianOperator -------------------------------------------------------

HermitianOperator HermitianOperator::make(const Matrix& m) {
  require_square(m, "operator");
  const double scale = std::max(1.0, max_abs(m));
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol::kHermitian * scale) {
    throw Error(ErrorCode::NotHermitian,
                "matrix is not conjugate-symmetric (deviation " + std::to_string(asym) + ")");
  }
  Matrix h = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(h));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(m_ * s);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operator dimensions differ");
  return HermitianOperator(m_ + o.m_);
}

// --- StateVector -------------------------------------------------------------

StateVector StateVector::make(const Vector& v) {
  if (v.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty state vector");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol::kUnitNorm) {
    throw Error(ErrorCode::NotNormalized,
                "state vector has norm " + std::to_string(norm) + ", expected 1");
  }
  return StateVector(apply_phase_convention(v));
}

StateVector StateVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (v.size() == 0 || norm == 0.0) {
    throw Error(ErrorCode::NotNormalized, "cannot normalize a zero vector");
  }
  return StateVector(apply_phase_convention(v / norm));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

// --- DensityOperator ---------------------------------------------------------

DensityOperator DensityOperator::make(const Matrix& m) {
  const HermitianOperator h = HermitianOperator::make(m);
  const Complex tr = h.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw Error(ErrorCode::InvalidArgument,
                "density operator trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const EigenSystem es = jacobi_eigen(h.matrix());
  if (es.values(0) < -tol::kPositive) {
    throw Error(ErrorCode::InvalidArgument,
                "density operator has negative eigenvalue " + std::to_string(es.values(0)));
  }
  return DensityOperator(h.matrix());
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(dim));
}

// --- Jacobi eigensolver ------------------------------------------------------

EigenSystem jacobi_eigen(const Matrix& input, int max_sweeps) {
  require_square(input, "operator");
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.adjoint());
  Matrix v = Matrix::Identity(n, n);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };

  const double threshold = 1e-12 * std::max(1.0, a.norm());
  int sweep = 0;
  for (; off_norm() >= threshold; ++sweep) {
    if (sweep >= max_sweeps) {
      throw Error(ErrorCode::NotConverged,
                  "Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) +
                      " sweeps");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const Complex phase = g / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
        const Complex j00 = c;
        const Complex j01 = s;
        const Complex j10 = -s * std::conj(phase);
        const Complex j11 = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

// --- Spectral decomposition --------------------------------------------------

double eigenvalue_group_tolerance(double spectral_radius) {
  return std::max(tol::kEigenGroupRelative * spectral_radius, tol::kEigenGroupFloor);
}

std::optional<std::size_t> SpectralDecomposition::find(double value) const {
  double radius = 0.0;
  for (double e : eigenvalues) radius = std::max(radius, std::abs(e));
  const double t = eigenvalue_group_tolerance(radius);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (std::abs(eigenvalues[k] - value) <= t) return k;
  }
  return std::nullopt;
}

Matrix SpectralDecomposition::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    out += eigenvalues[k] * projections[k].matrix();
  }
  return out;
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op) {
  if (op.dim() > kMaxSpectralDim) {
    throw Error(ErrorCode::InvalidArgument, "spectral decomposition is limited to dim <= 64");
  }
  const EigenSystem es = jacobi_eigen(op.matrix());
  const Eigen::Index n = es.values.size();
  const double radius = std::max(std::abs(es.values(0)), std::abs(es.values(n - 1)));
  const double group_tol = eigenvalue_group_tolerance(radius);

  SpectralDecomposition sd;
  sd.dim = op.dim();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && es.values(end) - es.values(end - 1) <= group_tol) ++end;

    double mean = 0.0;
    for (Eigen::Index k = start; k < end; ++k) mean += es.values(k);
    mean /= static_cast<double>(end - start);

    // Modified Gram-Schmidt inside the eigenspace.
    std::vector<Vector> basis;
    for (Eigen::Index k = start; k < end; ++k) {
      Vector x = es.vectors.col(k);
      for (const auto& b : basis) x -= b.dot(x) * b;
      basis.push_back(x / x.norm());
    }
    Matrix proj = Matrix::Zero(n, n);
    std::vector<StateVector> vectors;
    for (const auto& b : basis) {
      proj += b * b.adjoint();
      vectors.push_back(StateVector::normalized(b));
    }
    sd.eigenvalues.push_back(mean);
    sd.multiplicities.push_back(static_cast<std::size_t>(end - start));
    sd.projections.push_back(HermitianOperator::make(0.5 * (proj + proj.adjoint())));
    sd.eigenvectors.push_back(std::move(vectors));
    start = end;
  }
  return sd;
}

// --- Constructions -----------------------------------------------------------

HermitianOperator operator_from_variable(std::span<const double> values,
                                         std::span<const StateVector> basis) {
  if (values.empty() || values.size() != basis.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need exactly one basis vector per value");
  }
  const std::size_t r = values.size();
  for (const auto& b : basis) {
    if (b.dim() != r) {
      throw Error(ErrorCode::DimensionMismatch,
                  "basis vectors must have dimension " + std::to_string(r));
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (std::abs(values[i] - values[j]) <= tol::kEigenGroupFloor) {
        throw Error(ErrorCode::DuplicateValues,
                    "value " + std::to_string(values[i]) +
                        " repeats; encode degeneracy through projections");
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(r);
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      gram(i, j) = basis[static_cast<std::size_t>(i)].amplitudes().dot(
          basis[static_cast<std::size_t>(j)].amplitudes());
    }
  }
  if (max_abs(gram - Matrix::Identity(n, n)) > tol::kOrthonormal) {
    throw Error(ErrorCode::NotOrthonormal, "basis is not orthonormal");
  }
  Matrix a = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    const Vector& v = basis[i].amplitudes();
    a += values[i] * (v * v.adjoint());
  }
  return HermitianOperator::make(0.5 * (a + a.adjoint()));
}

bool is_unitary(const Matrix& w, double tolerance) {
  if (w.rows() != w.cols()) return false;
  return max_abs(w.adjoint() * w - Matrix::Identity(w.rows(), w.cols())) <= tolerance;
}

HermitianOperator conjugate(const HermitianOperator& op, const Matrix& w) {
  if (static_cast<std::size_t>(w.rows()) != op.dim() || w.rows() != w.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary and operator dimensions differ");
  }
  if (!is_unitary(w)) throw Error(ErrorCode::NotUnitary, "W is not unitary within 1e-10");
  const Matrix out = w.adjoint() * op.matrix() * w;
  return HermitianOperator::make(0.5 * (out + out.adjoint()));
}

bool is_maximal_operator(const HermitianOperator& op) {
  const SpectralDecomposition sd = spectral_decompose(op);
  return std::all_of(sd.multiplicities.begin(), sd.multiplicities.end(),
                     [](std::size_t m) { return m == 1; });
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::make(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return StateVector::normalized(v);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::make(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

HermitianOperator projector(const StateVector& psi) {
  return HermitianOperator::make(psi.amplitudes() * psi.amplitudes().adjoint());
}

const HermitianOperator& pauli_x() {
  static const HermitianOperator m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return HermitianOperator::make(x);
  }();
  return m;
}

const HermitianOperator& pauli_y() {
  static const HermitianOperator m = [] {
    Matrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    return HermitianOperator::make(y);
  }();
  return m;
}

const HermitianOperator& pauli_z() {
  static const HermitianOperator m = [] {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return HermitianOperator::make(z);
  }();
  return m;
}

HermitianOperator spin_operator(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (std::abs(norm - 1.0) > tol::kUnitNorm) {
    throw Error(ErrorCode::NotNormalized, "spin direction must be a unit vector");
  }
  return HermitianOperator::make(nx * pauli_x().matrix() + ny * pauli_y().matrix() +
                                 nz * pauli_z().matrix());
}

HermitianOperator spin_operator_in_plane(double angle_rad) {
  return HermitianOperator::make(std::cos(angle_rad) * pauli_z().matrix() +
                                 std::sin(angle_rad) * pauli_x().matrix());
}

HermitianOperator dot_product_operator() {
  return tensor(pauli_x(), pauli_x()) + tensor(pauli_y(), pauli_y()) +
         tensor(pauli_z(), pauli_z());
}

StateVector singlet_state() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return StateVector::make(v);
}

}  // namespace qvars
