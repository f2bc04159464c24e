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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "phispace.hpp"
#include "rng.hpp"
#include "varlattice.hpp"

namespace qvars {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& checks);

// --- spin model --------------------------------------------------------------

double deg_to_rad(double degrees);

/// Unit vector at `degrees` from the x axis in the plane.
Direction plane_direction(double degrees);
/// Unit vector with the given polar angle (from z) and azimuth, in degrees.
Direction sphere_direction(double polar_degrees, double azimuth_degrees);

/// Angle between two unit vectors, in [0, pi].
double angle_between(const Direction& a, const Direction& b);

class SpinModel {
 public:
  /// dimension is 2 (phi on the circle) or 3 (phi on the sphere); every
  /// direction must match it and be unit norm within 1e-12.
  static SpinModel make(int dimension, std::vector<Direction> directions);

  int dimension() const noexcept { return dimension_; }
  const std::vector<Direction>& directions() const noexcept { return directions_; }

 private:
  SpinModel() = default;
  int dimension_ = 2;
  std::vector<Direction> directions_;
};

/// sign(cos(direction, phi)), with an exact zero mapped to +1.
int spin_outcome(const Direction& direction, const Direction& phi);

/// Uniform point on the circle (dimension 2) or sphere (dimension 3) drawn
/// from the counters starting at `counter`.
Direction sample_phi(int dimension, const RngStream& rng, std::uint64_t counter);
int draws_per_phi(int dimension);

/// Draws phi from the stream's cursor and returns the spin component along
/// the chosen direction.
int spin_sample(const SpinModel& model, std::size_t direction_index, RngStream& rng);

/// Correlation of sign(cos(a, phi)) and sign(cos(b, phi)) for uniform phi
/// on the circle or sphere, with gamma the angle between a and b.
double lhv_correlation(double gamma_rad);

struct SpinMonteCarloResult {
  std::uint64_t samples = 0;
  /// Count of +1 outcomes per direction.
  std::vector<std::uint64_t> plus_counts;
  /// Sum of products over trials for each pair (i, j), i < j, in
  /// lexicographic order; all outcomes in a trial share one phi.
  std::vector<std::int64_t> pair_product_sums;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  double plus_frequency(std::size_t direction) const;
  double correlation(std::size_t pair) const;
};

/// Trial t reads counters [t * draws_per_phi, (t + 1) * draws_per_phi).
/// Results are identical for every worker count.
SpinMonteCarloResult spin_monte_carlo(const SpinModel& model, std::uint64_t samples,
                                      const RngStream& rng, unsigned workers = 1);

// --- EPR / Bohm --------------------------------------------------------------

struct EprBohmReport {
  std::vector<double> eigenvalues;
  std::vector<std::size_t> multiplicities;
  /// max |component| of (minus-three eigenvector - singlet), phases fixed.
  double singlet_deviation = 0.0;
  std::vector<double> directions_deg;
  /// P(A = s, B = s) summed over s, per direction.
  std::vector<double> equal_outcome_probability;
  /// P(A = s, B = -s) summed over s, per direction.
  std::vector<double> opposite_outcome_probability;
  std::vector<CheckResult> checks;

  bool passed() const { return all_passed(checks); }
};

EprBohmReport epr_bohm_report();

// --- CHSH --------------------------------------------------------------------

/// Measurement directions in degrees within the x-z plane.
struct ChshSetting {
  double a = 0.0;
  double a_prime = 90.0;
  double b = 45.0;
  double b_prime = 135.0;

  /// Throws Error(InvalidArgument) unless every angle is in [0, 360).
  void validate() const;
};

inline constexpr std::array<const char*, 4> kChshTerms = {"AB", "A'B", "AB'", "A'B'"};
inline constexpr std::array<int, 4> kChshSigns = {1, 1, 1, -1};

/// Pairs of (Alice angle, Bob angle) for the four CHSH terms, in degrees.
std::array<std::pair<double, double>, 4> chsh_pairs(const ChshSetting& setting);

/// S = E(AB) + E(A'B) + E(AB') - E(A'B').
double chsh_combine(const std::array<double, 4>& terms);

struct ChshQuantumResult {
  std::array<double, 4> terms{};
  double s = 0.0;
};

/// Every term is trace(rho_singlet (sigma.a ⊗ sigma.b)).
ChshQuantumResult chsh_quantum(const ChshSetting& setting);

struct ChshLhvResult {
  std::uint64_t samples = 0;
  std::array<std::int64_t, 4> product_sums{};
  std::array<double, 4> terms{};
  std::array<double, 4> term_stderr{};
  /// 1 - 2 gamma / pi per term.
  std::array<double, 4> oracle_terms{};
  double s = 0.0;
  double s_stderr = 0.0;
  double oracle_s = 0.0;
};

/// Local hidden variable simulation: one phi per trial determines all four
/// outcomes sign(cos(direction - phi)). Requires samples >= 1000.
ChshLhvResult chsh_lhv(const ChshSetting& setting, std::uint64_t samples,
                       const RngStream& rng, unsigned workers = 1);

// --- Theorem 3 demo ----------------------------------------------------------

struct Theorem3Demo {
  VariableSystem system;
  Variable theta;
  Variable eta;
  Variable lambda;
  Theorem3Report report;

  /// Element index of the declared group relating theta to eta, and its
  /// permutation.
  std::optional<Permutation> theta_eta_witness;

  /// With Alice's swap added to the group, lambda becomes related to theta,
  /// and then necessarily to eta as well.
  std::optional<Permutation> extended_lambda_theta_witness;
  std::optional<Permutation> extended_lambda_eta_witness;

  /// Exhaustive scan over subgroups of the coordinate-swap group and
  /// generator sets drawn from the coordinate-pair variables.
  std::size_t systems_examined = 0;
  std::size_t systems_satisfying_hypotheses = 0;
  std::size_t counterexamples = 0;

  std::vector<CheckResult> checks;
  bool passed() const { return all_passed(checks); }
};

/// phi-space of sign tuples (A, A', B, B'), theta = (A, B), eta = (A, B'),
/// lambda = (A', B); theta and eta are the accessible generators and the
/// declared group is generated by the swap B <-> B'.
Theorem3Demo theorem3_demo();

}  // namespace qvars
