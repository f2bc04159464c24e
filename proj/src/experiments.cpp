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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "born.hpp"
#include "error.hpp"

namespace qvars {

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Splits [0, n) into `workers` contiguous ranges, runs `body(begin, end)`
// for each on its own thread, and returns the per-range results in order.
template <typename Body>
auto run_partitioned(std::uint64_t n, unsigned workers, Body body) {
  using Result = decltype(body(std::uint64_t{0}, std::uint64_t{0}));
  workers = std::max(1u, workers);
  std::vector<Result> results(workers);
  auto range = [&](unsigned w) {
    return std::pair{n * w / workers, n * (w + 1) / workers};
  };
  if (workers == 1) {
    results[0] = body(0, n);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const auto [begin, end] = range(w);
      results[w] = body(begin, end);
    });
  }
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace

// --- spin model --------------------------------------------------------------

double deg_to_rad(double degrees) { return degrees * std::numbers::pi / 180.0; }

Direction plane_direction(double degrees) {
  const double r = deg_to_rad(degrees);
  return {std::cos(r), std::sin(r)};
}

Direction sphere_direction(double polar_degrees, double azimuth_degrees) {
  const double t = deg_to_rad(polar_degrees);
  const double p = deg_to_rad(azimuth_degrees);
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

double angle_between(const Direction& a, const Direction& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "direction dimensions differ");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

SpinModel SpinModel::make(int dimension, std::vector<Direction> directions) {
  if (dimension != 2 && dimension != 3) {
    throw Error(ErrorCode::InvalidArgument, "spin model dimension must be 2 or 3");
  }
  if (directions.empty()) throw Error(ErrorCode::InvalidArgument, "spin model needs directions");
  for (const auto& d : directions) {
    if (static_cast<int>(d.size()) != dimension) {
      throw Error(ErrorCode::DimensionMismatch, "direction does not match model dimension");
    }
    double n2 = 0.0;
    for (double x : d) n2 += x * x;
    if (std::abs(std::sqrt(n2) - 1.0) > tol::kUnitNorm) {
      throw Error(ErrorCode::NotNormalized, "spin model direction is not unit norm");
    }
  }
  SpinModel m;
  m.dimension_ = dimension;
  m.directions_ = std::move(directions);
  return m;
}

int spin_outcome(const Direction& direction, const Direction& phi) {
  double dot = 0.0;
  for (std::size_t i = 0; i < direction.size(); ++i) dot += direction[i] * phi[i];
  return dot >= 0.0 ? 1 : -1;
}

int draws_per_phi(int dimension) { return dimension == 2 ? 1 : 2; }

Direction sample_phi(int dimension, const RngStream& rng, std::uint64_t counter) {
  if (dimension == 2) {
    const double t = 2.0 * std::numbers::pi * rng.uniform(counter);
    return {std::cos(t), std::sin(t)};
  }
  // Archimedes: z uniform on [-1, 1] gives a uniform point on the sphere.
  const double z = 2.0 * rng.uniform(counter) - 1.0;
  const double t = 2.0 * std::numbers::pi * rng.uniform(counter + 1);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(t), r * std::sin(t), z};
}

int spin_sample(const SpinModel& model, std::size_t direction_index, RngStream& rng) {
  const Direction phi = sample_phi(model.dimension(), rng, rng.position());
  rng.seek(rng.position() + static_cast<std::uint64_t>(draws_per_phi(model.dimension())));
  return spin_outcome(model.directions().at(direction_index), phi);
}

double lhv_correlation(double gamma_rad) { return 1.0 - 2.0 * gamma_rad / std::numbers::pi; }

double SpinMonteCarloResult::plus_frequency(std::size_t direction) const {
  return static_cast<double>(plus_counts.at(direction)) / static_cast<double>(samples);
}

double SpinMonteCarloResult::correlation(std::size_t pair) const {
  return static_cast<double>(pair_product_sums.at(pair)) / static_cast<double>(samples);
}

SpinMonteCarloResult spin_monte_carlo(const SpinModel& model, std::uint64_t samples,
                                      const RngStream& rng, unsigned workers) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  const std::size_t m = model.directions().size();
  SpinMonteCarloResult out;
  out.samples = samples;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out.pairs.emplace_back(i, j);
  }
  const auto stride = static_cast<std::uint64_t>(draws_per_phi(model.dimension()));

  struct Partial {
    std::vector<std::uint64_t> plus;
    std::vector<std::int64_t> products;
  };
  const auto partials = run_partitioned(samples, workers, [&](std::uint64_t begin,
                                                              std::uint64_t end) {
    Partial p{std::vector<std::uint64_t>(m, 0), std::vector<std::int64_t>(out.pairs.size(), 0)};
    std::vector<int> outcome(m);
    for (std::uint64_t t = begin; t < end; ++t) {
      const Direction phi = sample_phi(model.dimension(), rng, t * stride);
      for (std::size_t i = 0; i < m; ++i) {
        outcome[i] = spin_outcome(model.directions()[i], phi);
        if (outcome[i] > 0) ++p.plus[i];
      }
      for (std::size_t k = 0; k < out.pairs.size(); ++k) {
        p.products[k] += outcome[out.pairs[k].first] * outcome[out.pairs[k].second];
      }
    }
    return p;
  });
  out.plus_counts.assign(m, 0);
  out.pair_product_sums.assign(out.pairs.size(), 0);
  for (const auto& p : partials) {
    for (std::size_t i = 0; i < m; ++i) out.plus_counts[i] += p.plus[i];
    for (std::size_t k = 0; k < out.pairs.size(); ++k) out.pair_product_sums[k] += p.products[k];
  }
  return out;
}

// --- EPR / Bohm --------------------------------------------------------------

namespace {

// (I + s sigma(angle)) / 2: projector onto outcome s of the spin component.
HermitianOperator outcome_projector(double angle_rad, int s) {
  const HermitianOperator sigma = spin_operator_in_plane(angle_rad);
  return HermitianOperator::make(0.5 * (Matrix::Identity(2, 2) + s * sigma.matrix()));
}

}  // namespace

EprBohmReport epr_bohm_report() {
  constexpr double kTol = 1e-10;
  EprBohmReport r;
  const HermitianOperator xi = dot_product_operator();
  const SpectralDecomposition sd = spectral_decompose(xi);
  r.eigenvalues = sd.eigenvalues;
  r.multiplicities = sd.multiplicities;

  const bool spectrum_ok = sd.eigenvalues.size() == 2 &&
                           std::abs(sd.eigenvalues[0] + 3.0) <= kTol &&
                           std::abs(sd.eigenvalues[1] - 1.0) <= kTol &&
                           sd.multiplicities[0] == 1 && sd.multiplicities[1] == 3;
  {
    std::ostringstream os;
    for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
      os << (k ? ", " : "") << fmt_double(sd.eigenvalues[k]) << " (x" << sd.multiplicities[k]
         << ")";
    }
    r.checks.push_back({"xi_spectrum", spectrum_ok, os.str()});
  }

  r.singlet_deviation = std::numeric_limits<double>::infinity();
  if (spectrum_ok) {
    const Vector diff = sd.eigenvectors[0][0].amplitudes() - singlet_state().amplitudes();
    r.singlet_deviation = diff.cwiseAbs().maxCoeff();
  }
  r.checks.push_back({"minus_three_eigenvector_is_singlet", r.singlet_deviation <= kTol,
                      "max deviation " + fmt_double(r.singlet_deviation)});

  const DensityOperator rho = DensityOperator::pure(singlet_state());
  double worst_equal = 0.0;
  double worst_opposite = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double deg = 45.0 * k;
    const double angle = deg_to_rad(deg);
    double equal = 0.0;
    double opposite = 0.0;
    for (int s : {1, -1}) {
      equal += born_trace(rho, tensor(outcome_projector(angle, s), outcome_projector(angle, s)));
      opposite +=
          born_trace(rho, tensor(outcome_projector(angle, s), outcome_projector(angle, -s)));
    }
    r.directions_deg.push_back(deg);
    r.equal_outcome_probability.push_back(equal);
    r.opposite_outcome_probability.push_back(opposite);
    worst_equal = std::max(worst_equal, std::abs(equal));
    worst_opposite = std::max(worst_opposite, std::abs(opposite - 1.0));
  }
  r.checks.push_back({"same_direction_equal_outcomes_zero", worst_equal <= kTol,
                      "max probability " + fmt_double(worst_equal)});
  r.checks.push_back({"same_direction_opposite_outcomes_one", worst_opposite <= kTol,
                      "max deviation from 1 " + fmt_double(worst_opposite)});
  return r;
}

// --- CHSH --------------------------------------------------------------------

void ChshSetting::validate() const {
  for (double angle : {a, a_prime, b, b_prime}) {
    if (!(angle >= 0.0 && angle < 360.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "CHSH angle " + fmt_double(angle) + " is outside [0, 360)");
    }
  }
}

std::array<std::pair<double, double>, 4> chsh_pairs(const ChshSetting& s) {
  return {{{s.a, s.b}, {s.a_prime, s.b}, {s.a, s.b_prime}, {s.a_prime, s.b_prime}}};
}

double chsh_combine(const std::array<double, 4>& terms) {
  double s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) s += kChshSigns[k] * terms[k];
  return s;
}

ChshQuantumResult chsh_quantum(const ChshSetting& setting) {
  setting.validate();
  const DensityOperator rho = DensityOperator::pure(singlet_state());
  ChshQuantumResult out;
  const auto pairs = chsh_pairs(setting);
  for (std::size_t k = 0; k < 4; ++k) {
    const HermitianOperator op = tensor(spin_operator_in_plane(deg_to_rad(pairs[k].first)),
                                        spin_operator_in_plane(deg_to_rad(pairs[k].second)));
    out.terms[k] = expectation(rho, op);
  }
  out.s = chsh_combine(out.terms);
  return out;
}

ChshLhvResult chsh_lhv(const ChshSetting& setting, std::uint64_t samples, const RngStream& rng,
                       unsigned workers) {
  setting.validate();
  if (samples < 1000) throw Error(ErrorCode::InvalidArgument, "CHSH simulation needs n >= 1000");
  const auto pairs = chsh_pairs(setting);
  const double a = deg_to_rad(setting.a);
  const double ap = deg_to_rad(setting.a_prime);
  const double b = deg_to_rad(setting.b);
  const double bp = deg_to_rad(setting.b_prime);

  struct Partial {
    std::array<std::int64_t, 4> sums{};
    std::int64_t s_sum = 0;
    std::int64_t s_sq_sum = 0;
  };
  const auto partials = run_partitioned(samples, workers, [&](std::uint64_t begin,
                                                              std::uint64_t end) {
    Partial p;
    auto sign_cos = [](double x) { return std::cos(x) >= 0.0 ? 1 : -1; };
    for (std::uint64_t t = begin; t < end; ++t) {
      const double phi = 2.0 * std::numbers::pi * rng.uniform(t);
      const int A = sign_cos(a - phi);
      const int Ap = sign_cos(ap - phi);
      const int B = sign_cos(b - phi);
      const int Bp = sign_cos(bp - phi);
      const std::array<int, 4> prod = {A * B, Ap * B, A * Bp, Ap * Bp};
      int s = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        p.sums[k] += prod[k];
        s += kChshSigns[k] * prod[k];
      }
      p.s_sum += s;
      p.s_sq_sum += s * s;
    }
    return p;
  });

  ChshLhvResult out;
  out.samples = samples;
  std::int64_t s_sum = 0;
  std::int64_t s_sq_sum = 0;
  for (const auto& p : partials) {
    for (std::size_t k = 0; k < 4; ++k) out.product_sums[k] += p.sums[k];
    s_sum += p.s_sum;
    s_sq_sum += p.s_sq_sum;
  }
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < 4; ++k) {
    out.terms[k] = static_cast<double>(out.product_sums[k]) / n;
    out.term_stderr[k] = std::sqrt(std::max(0.0, 1.0 - out.terms[k] * out.terms[k]) / n);
    const double gamma = angle_between(plane_direction(pairs[k].first),
                                       plane_direction(pairs[k].second));
    out.oracle_terms[k] = lhv_correlation(gamma);
  }
  out.s = chsh_combine(out.terms);
  const double mean = static_cast<double>(s_sum) / n;
  const double var = (static_cast<double>(s_sq_sum) / n - mean * mean) * n / (n - 1.0);
  out.s_stderr = std::sqrt(std::max(0.0, var) / n);
  out.oracle_s = chsh_combine(out.oracle_terms);
  return out;
}

// --- Theorem 3 demo ----------------------------------------------------------

namespace {

// Coordinates of the 16 sign tuples, in the order A, A', B, B'.
enum Coord { kA = 0, kAp = 1, kB = 2, kBp = 3 };

char sign_of(std::size_t point, Coord c) { return ((point >> (3 - c)) & 1u) ? '-' : '+'; }

Permutation swap_coords(Coord x, Coord y) {
  Permutation p(16);
  for (std::size_t i = 0; i < 16; ++i) {
    const std::size_t bx = (i >> (3 - x)) & 1u;
    const std::size_t by = (i >> (3 - y)) & 1u;
    std::size_t j = i & ~((std::size_t{1} << (3 - x)) | (std::size_t{1} << (3 - y)));
    j |= (by << (3 - x)) | (bx << (3 - y));
    p[i] = j;
  }
  return p;
}

Variable pair_variable(const PhiSpacePtr& space, std::string name, Coord x, Coord y,
                       bool accessible) {
  return Variable::from_function(
      std::move(name), space,
      [x, y](std::size_t p) { return std::string{sign_of(p, x), sign_of(p, y)}; }, accessible);
}

}  // namespace

Theorem3Demo theorem3_demo() {
  std::vector<std::string> points;
  for (std::size_t i = 0; i < 16; ++i) {
    points.push_back(std::string{sign_of(i, kA), sign_of(i, kAp), sign_of(i, kB), sign_of(i, kBp)});
  }
  const PhiSpacePtr space = PhiSpace::make(points);
  Variable theta = pair_variable(space, "theta=(A,B)", kA, kB, true);
  Variable eta = pair_variable(space, "eta=(A,B')", kA, kBp, true);
  Variable lambda = pair_variable(space, "lambda=(A',B)", kAp, kB, false);

  const Permutation swap_b = swap_coords(kB, kBp);
  const Permutation swap_a = swap_coords(kA, kAp);
  GroupAction declared = GroupAction::generate({swap_b}, 16);

  VariableSystem system(space, {theta, eta}, declared, {lambda});
  Theorem3Report report = check_theorem3(system, theta, eta, lambda);

  Theorem3Demo demo{system, theta, eta, lambda, report, std::nullopt, std::nullopt,
                    std::nullopt, 0, 0, 0, {}};
  if (report.theta_eta_witness) demo.theta_eta_witness = declared.element(*report.theta_eta_witness);

  const GroupAction extended = GroupAction::generate({swap_a, swap_b}, 16);
  if (auto k = is_related(theta, lambda, extended)) {
    demo.extended_lambda_theta_witness = extended.element(*k);
  }
  if (auto k = is_related(eta, lambda, extended)) {
    demo.extended_lambda_eta_witness = extended.element(*k);
  }

  // Exhaustive scan: every subgroup of <swap_a, swap_b> and every generator
  // set drawn from the coordinate-pair variables and phi itself.
  const Permutation both = compose(swap_a, swap_b);
  const std::vector<std::vector<Permutation>> subgroups = {
      {}, {swap_a}, {swap_b}, {both}, {swap_a, swap_b}};
  std::vector<Variable> pool = {
      pair_variable(space, "(A,A')", kA, kAp, true), theta, eta, lambda.with_accessible(true),
      pair_variable(space, "(A',B')", kAp, kBp, true),
      pair_variable(space, "(B,B')", kB, kBp, true), Variable::identity(space, "phi", true)};
  for (const auto& gens : subgroups) {
    const GroupAction g = GroupAction::generate(gens, 16);
    for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
      std::vector<Variable> generators;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (mask & (std::size_t{1} << i)) generators.push_back(pool[i]);
      }
      const VariableSystem candidate(space, generators, g);
      const Theorem3Report r = check_theorem3(candidate, theta, eta, lambda);
      ++demo.systems_examined;
      if (r.status != Theorem3Report::Status::PreconditionFailed) ++demo.systems_satisfying_hypotheses;
      if (r.status == Theorem3Report::Status::Counterexample) ++demo.counterexamples;
    }
  }

  auto& checks = demo.checks;
  checks.push_back({"theta_maximal", report.theta_maximal, ""});
  checks.push_back({"eta_maximal", report.eta_maximal, ""});
  checks.push_back({"theta_eta_related_by_b_swap",
                    demo.theta_eta_witness.has_value() && *demo.theta_eta_witness == swap_b, ""});
  checks.push_back({"lambda_unrelated_to_eta", !report.lambda_eta_witness.has_value(), ""});
  checks.push_back({"lambda_not_maximal", !report.lambda_maximal,
                    report.lambda_accessible ? "accessible but strictly refined by " +
                                                   report.lambda_refinement.value_or("?")
                                             : "not accessible in the declared system"});
  checks.push_back({"no_counterexample_in_exhaustive_scan", demo.counterexamples == 0,
                    std::to_string(demo.systems_examined) + " systems examined, " +
                        std::to_string(demo.systems_satisfying_hypotheses) +
                        " satisfy the hypotheses"});
  return demo;
}

}  // namespace qvars
