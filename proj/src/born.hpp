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

#include <cstddef>
#include <span>
#include <vector>

#include "hilbert.hpp"

namespace qvars {

/// Probability distribution over real variable values.
class DiscreteDistribution {
 public:
  /// Throws unless probabilities are nonnegative and sum to 1 within 1e-12.
  static DiscreteDistribution make(std::vector<double> support,
                                   std::vector<double> probabilities);

  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }

 private:
  DiscreteDistribution() = default;
  std::vector<double> support_;
  std::vector<double> probabilities_;
};

/// p(z | theta = u_j) as a rectangular table: one row per data value z, one
/// column per variable value u_j.
class LikelihoodModel {
 public:
  /// Throws unless every entry lies in [0, 1] and every column sums to 1
  /// within 1e-12.
  static LikelihoodModel make(std::vector<double> data_values,
                              std::vector<double> variable_values,
                              std::vector<std::vector<double>> table);

  /// Noiseless measurement: z takes the value of theta.
  static LikelihoodModel perfect(std::vector<double> variable_values);

  /// Two-valued variable with outcomes flipped with probability epsilon.
  static LikelihoodModel bit_flip(double plus, double minus, double epsilon);

  const std::vector<double>& data_values() const noexcept { return data_values_; }
  const std::vector<double>& variable_values() const noexcept { return variable_values_; }
  const std::vector<std::vector<double>>& table() const noexcept { return table_; }

  double probability(std::size_t z, std::size_t u) const { return table_.at(z).at(u); }
  /// The likelihood L(u_j; z) = p(z | u_j) as a function of j.
  std::vector<double> likelihood(std::size_t z) const { return table_.at(z); }
  /// sum_z z p(z | u_j).
  double conditional_mean(std::size_t u) const;

  /// Distinct variable values give distinct likelihoods at every z.
  /// Exposed for inspection only; nothing in the library requires it.
  bool separates_values() const;

 private:
  LikelihoodModel() = default;
  std::vector<double> data_values_;
  std::vector<double> variable_values_;
  std::vector<std::vector<double>> table_;
};

/// Values within 1e-10 of [0, 1] are clamped; anything further out throws
/// Error(ProbabilityOutOfRange).
double clamp_probability(double p);

/// |<prepared|outcome>|^2.
double born_simple(const StateVector& prepared, const StateVector& outcome);

/// sum_j P(u_j) Pi_j / trace(Pi_j): unit trace even for degenerate
/// eigenspaces.
DensityOperator mixed_state(const DiscreteDistribution& dist,
                            const SpectralDecomposition& decomposition);

/// trace(rho Pi). Throws Error(NotAProjection) unless Pi^2 = Pi within 1e-10.
double born_trace(const DensityOperator& rho, const HermitianOperator& projection);

/// trace(rho A), which must be real within 1e-10.
double expectation(const DensityOperator& rho, const HermitianOperator& op);

/// trace(rho sum_{v in event} Pi_v). Throws Error(SupportMismatch) for
/// values outside the spectrum.
double prob_event(const DensityOperator& rho, const SpectralDecomposition& decomposition,
                  std::span<const double> event);

/// sum_j E(z | u_j) Pi_j.
HermitianOperator data_operator(const LikelihoodModel& model,
                                const SpectralDecomposition& decomposition);

double data_expectation(const DensityOperator& rho, const LikelihoodModel& model,
                        const SpectralDecomposition& decomposition);

/// sum_i p(z | u_i) |i><i| for the basis vector |i> attached to u_i.
HermitianOperator likelihood_effect(const LikelihoodModel& model, double z,
                                    std::span<const StateVector> basis);

/// Amplitude of the intersection of independent events.
Complex compose_independent(Complex z1, Complex z2);

}  // namespace qvars
