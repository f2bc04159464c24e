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

#include "born.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace qvars {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kClampTolerance = 1e-10;
constexpr double kValueMatch = 1e-12;

// Maps every support value onto a distinct eigenvalue index and requires the
// map to be onto.
std::vector<std::size_t> match_support(std::span<const double> support,
                                       const SpectralDecomposition& sd) {
  if (support.size() != sd.eigenvalues.size()) {
    throw Error(ErrorCode::SupportMismatch,
                std::to_string(support.size()) + " values given for " +
                    std::to_string(sd.eigenvalues.size()) + " distinct eigenvalues");
  }
  std::vector<std::size_t> out;
  std::vector<bool> used(sd.eigenvalues.size(), false);
  for (double u : support) {
    const auto k = sd.find(u);
    if (!k || used[*k]) {
      throw Error(ErrorCode::SupportMismatch,
                  "value " + std::to_string(u) + " does not match a distinct eigenvalue");
    }
    used[*k] = true;
    out.push_back(*k);
  }
  return out;
}

void require_dims(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

DiscreteDistribution DiscreteDistribution::make(std::vector<double> support,
                                                std::vector<double> probabilities) {
  if (support.empty() || support.size() != probabilities.size()) {
    throw Error(ErrorCode::InvalidArgument, "support and probabilities must match in length");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw Error(ErrorCode::ProbabilityOutOfRange, "negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::ProbabilityOutOfRange,
                "probabilities sum to " + std::to_string(sum));
  }
  DiscreteDistribution d;
  d.support_ = std::move(support);
  d.probabilities_ = std::move(probabilities);
  return d;
}

LikelihoodModel LikelihoodModel::make(std::vector<double> data_values,
                                      std::vector<double> variable_values,
                                      std::vector<std::vector<double>> table) {
  if (data_values.empty() || variable_values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "likelihood model needs data and variable values");
  }
  if (table.size() != data_values.size()) {
    throw Error(ErrorCode::InvalidArgument, "likelihood table needs one row per data value");
  }
  for (const auto& row : table) {
    if (row.size() != variable_values.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "likelihood table needs one column per variable value");
    }
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::ProbabilityOutOfRange, "likelihood entry outside [0, 1]");
      }
    }
  }
  for (std::size_t j = 0; j < variable_values.size(); ++j) {
    double sum = 0.0;
    for (const auto& row : table) sum += row[j];
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw Error(ErrorCode::ProbabilityOutOfRange,
                  "p(z | u = " + std::to_string(variable_values[j]) + ") sums to " +
                      std::to_string(sum));
    }
  }
  LikelihoodModel m;
  m.data_values_ = std::move(data_values);
  m.variable_values_ = std::move(variable_values);
  m.table_ = std::move(table);
  return m;
}

LikelihoodModel LikelihoodModel::perfect(std::vector<double> variable_values) {
  const std::size_t r = variable_values.size();
  std::vector<std::vector<double>> table(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i) table[i][i] = 1.0;
  auto data = variable_values;
  return make(std::move(data), std::move(variable_values), std::move(table));
}

LikelihoodModel LikelihoodModel::bit_flip(double plus, double minus, double epsilon) {
  return make({plus, minus}, {plus, minus},
              {{1.0 - epsilon, epsilon}, {epsilon, 1.0 - epsilon}});
}

double LikelihoodModel::conditional_mean(std::size_t u) const {
  double mean = 0.0;
  for (std::size_t z = 0; z < data_values_.size(); ++z) {
    mean += data_values_[z] * table_[z].at(u);
  }
  return mean;
}

bool LikelihoodModel::separates_values() const {
  for (const auto& row : table_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      for (std::size_t k = j + 1; k < row.size(); ++k) {
        if (row[j] == row[k]) return false;
      }
    }
  }
  return true;
}

double clamp_probability(double p) {
  if (!(p >= -kClampTolerance && p <= 1.0 + kClampTolerance)) {
    throw Error(ErrorCode::ProbabilityOutOfRange,
                "probability " + std::to_string(p) + " is outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

double born_simple(const StateVector& prepared, const StateVector& outcome) {
  require_dims(prepared.dim(), outcome.dim());
  return clamp_probability(std::norm(prepared.amplitudes().dot(outcome.amplitudes())));
}

DensityOperator mixed_state(const DiscreteDistribution& dist,
                            const SpectralDecomposition& decomposition) {
  const auto index = match_support(dist.support(), decomposition);
  const auto n = static_cast<Eigen::Index>(decomposition.dim);
  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < index.size(); ++j) {
    const HermitianOperator& proj = decomposition.projections[index[j]];
    rho += (dist.probabilities()[j] / proj.trace().real()) * proj.matrix();
  }
  return DensityOperator::make(rho);
}

double born_trace(const DensityOperator& rho, const HermitianOperator& projection) {
  require_dims(rho.dim(), projection.dim());
  const Matrix& pm = projection.matrix();
  if ((pm * pm - pm).cwiseAbs().maxCoeff() > tol::kProjection) {
    throw Error(ErrorCode::NotAProjection, "operator is not idempotent within 1e-10");
  }
  return clamp_probability((rho.matrix() * pm).trace().real());
}

double expectation(const DensityOperator& rho, const HermitianOperator& op) {
  require_dims(rho.dim(), op.dim());
  const Complex value = (rho.matrix() * op.matrix()).trace();
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
    throw Error(ErrorCode::NotHermitian, "expectation has an imaginary part");
  }
  return value.real();
}

double prob_event(const DensityOperator& rho, const SpectralDecomposition& decomposition,
                  std::span<const double> event) {
  require_dims(rho.dim(), decomposition.dim);
  std::vector<bool> chosen(decomposition.eigenvalues.size(), false);
  for (double v : event) {
    const auto k = decomposition.find(v);
    if (!k) {
      throw Error(ErrorCode::SupportMismatch,
                  "value " + std::to_string(v) + " is not in the spectrum");
    }
    chosen[*k] = true;
  }
  const auto n = static_cast<Eigen::Index>(decomposition.dim);
  Matrix proj = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    if (chosen[k]) proj += decomposition.projections[k].matrix();
  }
  return clamp_probability((rho.matrix() * proj).trace().real());
}

HermitianOperator data_operator(const LikelihoodModel& model,
                                const SpectralDecomposition& decomposition) {
  const auto index = match_support(model.variable_values(), decomposition);
  const auto n = static_cast<Eigen::Index>(decomposition.dim);
  Matrix a = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < index.size(); ++j) {
    a += model.conditional_mean(j) * decomposition.projections[index[j]].matrix();
  }
  return HermitianOperator::make(a);
}

double data_expectation(const DensityOperator& rho, const LikelihoodModel& model,
                        const SpectralDecomposition& decomposition) {
  return expectation(rho, data_operator(model, decomposition));
}

HermitianOperator likelihood_effect(const LikelihoodModel& model, double z,
                                    std::span<const StateVector> basis) {
  if (basis.size() != model.variable_values().size()) {
    throw Error(ErrorCode::SupportMismatch, "need one basis vector per variable value");
  }
  const auto& zs = model.data_values();
  const auto it = std::find_if(zs.begin(), zs.end(),
                               [z](double d) { return std::abs(d - z) <= kValueMatch; });
  if (it == zs.end()) {
    throw Error(ErrorCode::SupportMismatch,
                "data value " + std::to_string(z) + " is not in the model");
  }
  const std::size_t row = static_cast<std::size_t>(it - zs.begin());
  // The weights are the likelihood row; operator_from_variable would reject
  // repeated weights, so build the sum directly after checking the basis.
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix f = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != basis.size()) {
      throw Error(ErrorCode::DimensionMismatch, "basis vector dimension mismatch");
    }
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex overlap = basis[i].amplitudes().dot(basis[j].amplitudes());
      if (std::abs(overlap - (i == j ? 1.0 : 0.0)) > tol::kOrthonormal) {
        throw Error(ErrorCode::NotOrthonormal, "basis is not orthonormal");
      }
    }
    const Vector& v = basis[i].amplitudes();
    f += model.probability(row, i) * (v * v.adjoint());
  }
  return HermitianOperator::make(f);
}

Complex compose_independent(Complex z1, Complex z2) {
  constexpr double kModulusSlack = 1e-12;
  if (std::abs(z1) > 1.0 + kModulusSlack || std::abs(z2) > 1.0 + kModulusSlack) {
    throw Error(ErrorCode::InvalidArgument, "probability amplitudes must have modulus <= 1");
  }
  return z1 * z2;
}

}  // namespace qvars
