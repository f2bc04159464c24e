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

#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "born.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "system_io.hpp"

namespace qvars {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kKinds = {"spin_monte_carlo", "epr_bohm", "chsh", "born_table",
                                      "variable_system_check"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string kind_of(const json& config) { return config.at("kind").get<std::string>(); }

const json& params_of(const json& config) {
  static const json empty = json::object();
  return config.contains("parameters") ? config["parameters"] : empty;
}

bool is_nonneg_int(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

bool is_number_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_number(); });
}

// --- validation --------------------------------------------------------------

class Violations {
 public:
  void add(std::string v) { list_.push_back(std::move(v)); }
  std::vector<std::string> take() { return std::move(list_); }

  void require_count(const json& params, const std::string& key, const std::string& kind,
                     std::uint64_t minimum) {
    if (!params.contains(key)) {
      add("parameters." + key + ": required for " + kind);
    } else if (!is_nonneg_int(params[key]) || params[key].get<std::uint64_t>() < minimum) {
      add("parameters." + key + ": must be an integer >= " + std::to_string(minimum));
    }
  }

  void optional_count(const json& params, const std::string& key, std::uint64_t minimum) {
    if (params.contains(key) &&
        (!is_nonneg_int(params[key]) || params[key].get<std::uint64_t>() < minimum)) {
      add("parameters." + key + ": must be an integer >= " + std::to_string(minimum));
    }
  }

 private:
  std::vector<std::string> list_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void validate_spin(const json& params, Violations& v) {
  v.require_count(params, "samples", "spin_monte_carlo", 1);
  v.optional_count(params, "stream", 0);
  v.optional_count(params, "workers", 1);
  int dim = 2;
  if (params.contains("dimension")) {
    if (!params["dimension"].is_number_integer() ||
        (params["dimension"].get<int>() != 2 && params["dimension"].get<int>() != 3)) {
      v.add("parameters.dimension: must be 2 or 3");
      return;
    }
    dim = params["dimension"].get<int>();
  }
  if (!params.contains("directions_deg") || !params["directions_deg"].is_array() ||
      params["directions_deg"].empty()) {
    v.add("parameters.directions_deg: required non-empty array");
    return;
  }
  for (const auto& d : params["directions_deg"]) {
    const bool ok = dim == 2 ? d.is_number() : (is_number_array(d) && d.size() == 2);
    if (!ok) {
      v.add(dim == 2 ? "parameters.directions_deg: entries must be angles in degrees"
                     : "parameters.directions_deg: entries must be [polar, azimuth] pairs");
      return;
    }
  }
}

void validate_chsh(const json& params, Violations& v) {
  v.require_count(params, "samples", "chsh", 1000);
  v.optional_count(params, "stream", 0);
  v.optional_count(params, "workers", 1);
  for (const char* key : {"a", "a_prime", "b", "b_prime"}) {
    if (!params.contains(key)) continue;
    const json& x = params[key];
    if (!x.is_number() || x.get<double>() < 0.0 || x.get<double>() >= 360.0) {
      v.add(std::string("parameters.") + key + ": must be an angle in [0, 360)");
    }
  }
}

void validate_born(const json& params, Violations& v) {
  for (const char* key : {"prepared_deg", "outcome_deg"}) {
    if (!params.contains(key) || !is_number_array(params[key]) || params[key].empty()) {
      v.add(std::string("parameters.") + key + ": required non-empty array of angles");
    }
  }
  if (!params.contains("likelihood")) return;
  const json& l = params["likelihood"];
  if (!l.is_object()) {
    v.add("parameters.likelihood: must be an object");
    return;
  }
  for (const char* key : {"data_values", "variable_values"}) {
    if (!l.contains(key) || !is_number_array(l[key]) || l[key].empty()) {
      v.add(std::string("parameters.likelihood.") + key + ": required non-empty array of numbers");
    }
  }
  for (const char* key : {"state_deg", "measure_deg"}) {
    if (!l.contains(key) || !l[key].is_number()) {
      v.add(std::string("parameters.likelihood.") + key + ": required angle");
    }
  }
  if (l.contains("variable_values") && l["variable_values"].size() != 2) {
    v.add("parameters.likelihood.variable_values: a spin component has exactly two values");
  }
  if (!l.contains("table") || !l["table"].is_array()) {
    v.add("parameters.likelihood.table: required array of rows (one per data value)");
    return;
  }
  try {
    std::vector<std::vector<double>> table;
    for (const auto& row : l["table"]) table.push_back(row.get<std::vector<double>>());
    LikelihoodModel::make(l.at("data_values").get<std::vector<double>>(),
                          l.at("variable_values").get<std::vector<double>>(), std::move(table));
  } catch (const Error& e) {
    v.add(std::string("parameters.likelihood.table: ") + e.what());
  } catch (const json::exception&) {
    v.add("parameters.likelihood.table: rows must be arrays of probabilities");
  }
}

void validate_system(const json& params, const fs::path& base, Violations& v) {
  const bool has_system = params.contains("system");
  const bool has_builtin = params.contains("builtin");
  if (has_system == has_builtin) {
    v.add("parameters: exactly one of 'system' or 'builtin' is required for variable_system_check");
    return;
  }
  if (has_builtin) {
    if (params["builtin"] != "theorem3_demo") {
      v.add("parameters.builtin: unknown builtin (expected 'theorem3_demo')");
    }
    return;
  }
  try {
    const json& s = params["system"];
    if (s.is_string()) {
      const fs::path path = resolve(base, s.get<std::string>());
      if (!fs::exists(path)) {
        v.add("parameters.system: file '" + path.string() + "' does not exist");
        return;
      }
      load_system(path);
    } else if (s.is_object()) {
      parse_system(s);
    } else {
      v.add("parameters.system: must be a file path or an inline document");
    }
  } catch (const Error& e) {
    v.add(std::string("parameters.system: ") + e.what());
  }
}

// --- experiments -------------------------------------------------------------

std::uint64_t seed_of(const json& config) { return config.value("seed", std::uint64_t{0}); }

unsigned workers_of(const json& params) { return params.value("workers", 1u); }

Report run_spin(const json& config) {
  const json& p = params_of(config);
  const int dim = p.value("dimension", 2);
  const std::uint64_t n = p.at("samples").get<std::uint64_t>();
  const std::uint64_t stream = p.value("stream", std::uint64_t{0});
  std::vector<Direction> dirs;
  for (const auto& d : p.at("directions_deg")) {
    dirs.push_back(dim == 2 ? plane_direction(d.get<double>())
                            : sphere_direction(d[0].get<double>(), d[1].get<double>()));
  }
  const SpinModel model = SpinModel::make(dim, dirs);
  const RngStream rng(seed_of(config), stream);
  const SpinMonteCarloResult mc = spin_monte_carlo(model, n, rng, workers_of(p));

  Report r;
  r.experiment = "spin_monte_carlo";
  r.inputs = {{"dimension", dim}, {"directions_deg", p.at("directions_deg")}, {"samples", n}};
  r.seeds = {{"seed", seed_of(config)}, {"stream", stream}};
  const double nd = static_cast<double>(n);
  const double sigma_marginal = 0.5 / std::sqrt(nd);

  Json marginals = Json::array();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double f = mc.plus_frequency(i);
    marginals.push_back({{"direction", i}, {"plus_frequency", f}, {"sigma", sigma_marginal}});
    r.checks.push_back({"marginal_" + std::to_string(i),
                        std::abs(f - 0.5) <= 3.0 * sigma_marginal,
                        "frequency " + fmt(f) + ", 3 sigma " + fmt(3.0 * sigma_marginal)});
    r.rows.push_back({"direction_" + std::to_string(i), "plus_frequency", f});
  }
  Json correlations = Json::array();
  for (std::size_t k = 0; k < mc.pairs.size(); ++k) {
    const auto [i, j] = mc.pairs[k];
    const double gamma = angle_between(dirs[i], dirs[j]);
    const double oracle = lhv_correlation(gamma);
    const double e = mc.correlation(k);
    const double sigma = std::sqrt(std::max(0.0, 1.0 - oracle * oracle) / nd);
    const bool ok = sigma > 0.0 ? std::abs(e - oracle) <= 3.0 * sigma : std::abs(e - oracle) <= 1e-12;
    const std::string tag = std::to_string(i) + "_" + std::to_string(j);
    correlations.push_back({{"pair", {i, j}},
                            {"angle_deg", gamma * 180.0 / std::numbers::pi},
                            {"correlation", e},
                            {"oracle", oracle},
                            {"sigma", sigma}});
    r.checks.push_back({"correlation_" + tag, ok,
                        "estimate " + fmt(e) + ", oracle " + fmt(oracle) + ", sigma " + fmt(sigma)});
    r.rows.push_back({"pair_" + tag, "correlation", e});
    r.rows.push_back({"pair_" + tag, "oracle", oracle});
  }
  r.results = {{"marginals", marginals}, {"correlations", correlations}};
  return r;
}

Report run_epr() {
  const EprBohmReport e = epr_bohm_report();
  Report r;
  r.experiment = "epr_bohm";
  r.checks = e.checks;
  Json probs = Json::array();
  for (std::size_t k = 0; k < e.directions_deg.size(); ++k) {
    probs.push_back({{"direction_deg", e.directions_deg[k]},
                     {"equal_outcomes", e.equal_outcome_probability[k]},
                     {"opposite_outcomes", e.opposite_outcome_probability[k]}});
    const std::string setting = "direction_" + fmt(e.directions_deg[k]);
    r.rows.push_back({setting, "equal_outcomes", e.equal_outcome_probability[k]});
    r.rows.push_back({setting, "opposite_outcomes", e.opposite_outcome_probability[k]});
  }
  r.results = {{"xi_operator", matrix_to_json(dot_product_operator().matrix())},
               {"eigenvalues", e.eigenvalues},
               {"multiplicities", e.multiplicities},
               {"singlet_state", vector_to_json(singlet_state().amplitudes())},
               {"singlet_deviation", e.singlet_deviation},
               {"same_direction_probabilities", probs}};
  for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
    r.rows.push_back({"xi", "eigenvalue_" + std::to_string(k), e.eigenvalues[k]});
  }
  return r;
}

Json terms_json(const std::array<double, 4>& t) {
  Json out;
  for (std::size_t k = 0; k < 4; ++k) out[kChshTerms[k]] = t[k];
  return out;
}

Report run_chsh(const json& config) {
  const json& p = params_of(config);
  ChshSetting s;
  s.a = p.value("a", s.a);
  s.a_prime = p.value("a_prime", s.a_prime);
  s.b = p.value("b", s.b);
  s.b_prime = p.value("b_prime", s.b_prime);
  const std::uint64_t n = p.at("samples").get<std::uint64_t>();
  const std::uint64_t stream = p.value("stream", std::uint64_t{0});

  const ChshQuantumResult q = chsh_quantum(s);
  const ChshLhvResult l = chsh_lhv(s, n, RngStream(seed_of(config), stream), workers_of(p));

  Report r;
  r.experiment = "chsh";
  r.inputs = {{"a_deg", s.a}, {"a_prime_deg", s.a_prime}, {"b_deg", s.b},
              {"b_prime_deg", s.b_prime}, {"samples", n}};
  r.seeds = {{"seed", seed_of(config)}, {"stream", stream}};

  const double worst = std::max_element(q.terms.begin(), q.terms.end(), [](double x, double y) {
                         return std::abs(x) < std::abs(y);
                       })[0];
  r.checks.push_back({"quantum_correlations_in_range", std::abs(worst) <= 1.0 + 1e-10,
                      "largest |E| " + fmt(std::abs(worst))});
  r.checks.push_back({"quantum_within_tsirelson_bound",
                      std::abs(q.s) <= 2.0 * std::numbers::sqrt2 + 1e-9, "S = " + fmt(q.s)});
  r.checks.push_back({"quantum_exceeds_classical_bound", std::abs(q.s) > 2.0,
                      "|S| = " + fmt(std::abs(q.s)) + ", classical bound 2"});
  r.checks.push_back({"lhv_within_classical_bound", std::abs(l.s) <= 2.0 + 5.0 * l.s_stderr,
                      "S = " + fmt(l.s) + ", stderr " + fmt(l.s_stderr)});
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < 4; ++k) {
    const double sigma = std::sqrt(std::max(0.0, 1.0 - l.oracle_terms[k] * l.oracle_terms[k]) / nd);
    const double diff = std::abs(l.terms[k] - l.oracle_terms[k]);
    const bool ok = sigma > 0.0 ? diff <= 3.0 * sigma : diff <= 1e-12;
    r.checks.push_back({std::string("lhv_term_") + kChshTerms[k] + "_matches_oracle", ok,
                        "estimate " + fmt(l.terms[k]) + ", oracle " + fmt(l.oracle_terms[k]) +
                            ", sigma " + fmt(sigma)});
  }

  r.results = {
      {"quantum", {{"terms", terms_json(q.terms)},
                   {"S", q.s},
                   {"exceeds_classical_bound", std::abs(q.s) > 2.0}}},
      {"lhv", {{"terms", terms_json(l.terms)},
               {"term_stderr", terms_json(l.term_stderr)},
               {"S", l.s},
               {"S_stderr", l.s_stderr},
               {"oracle_terms", terms_json(l.oracle_terms)},
               {"oracle_S", l.oracle_s}}}};
  for (std::size_t k = 0; k < 4; ++k) r.rows.push_back({"quantum", kChshTerms[k], q.terms[k]});
  r.rows.push_back({"quantum", "S", q.s});
  for (std::size_t k = 0; k < 4; ++k) r.rows.push_back({"lhv", kChshTerms[k], l.terms[k]});
  r.rows.push_back({"lhv", "S", l.s});
  for (std::size_t k = 0; k < 4; ++k) r.rows.push_back({"lhv_oracle", kChshTerms[k], l.oracle_terms[k]});
  r.rows.push_back({"lhv_oracle", "S", l.oracle_s});
  return r;
}

// +1 eigenvector of the spin component at `deg` in the x-z plane.
StateVector spin_up(double deg) {
  return spectral_decompose(spin_operator_in_plane(deg_to_rad(deg))).eigenvectors.back().front();
}

StateVector spin_down(double deg) {
  return spectral_decompose(spin_operator_in_plane(deg_to_rad(deg))).eigenvectors.front().front();
}

Report run_born(const json& config) {
  const json& p = params_of(config);
  const auto prepared = p.at("prepared_deg").get<std::vector<double>>();
  const auto outcomes = p.at("outcome_deg").get<std::vector<double>>();

  Report r;
  r.experiment = "born_table";
  r.inputs = {{"prepared_deg", prepared}, {"outcome_deg", outcomes}};

  Json table = Json::array();
  double worst_law = 0.0;
  double worst_completeness = 0.0;
  for (double a : prepared) {
    const StateVector s = spin_up(a);
    Json row = Json::array();
    for (double b : outcomes) {
      const double up = born_simple(s, spin_up(b));
      const double down = born_simple(s, spin_down(b));
      const double law = std::pow(std::cos(deg_to_rad(a - b) / 2.0), 2);
      worst_law = std::max(worst_law, std::abs(up - law));
      worst_completeness = std::max(worst_completeness, std::abs(up + down - 1.0));
      row.push_back(up);
      r.rows.push_back({"prepared_" + fmt(a), "outcome_" + fmt(b), up});
    }
    table.push_back(std::move(row));
  }
  r.results["probabilities"] = std::move(table);
  r.checks.push_back({"cos2_half_angle_law", worst_law <= 1e-10, "max deviation " + fmt(worst_law)});
  r.checks.push_back({"outcome_basis_completeness", worst_completeness <= 1e-10,
                      "max deviation " + fmt(worst_completeness)});

  if (p.contains("likelihood")) {
    const json& l = p["likelihood"];
    std::vector<std::vector<double>> rows;
    for (const auto& row : l.at("table")) rows.push_back(row.get<std::vector<double>>());
    const LikelihoodModel model =
        LikelihoodModel::make(l.at("data_values").get<std::vector<double>>(),
                              l.at("variable_values").get<std::vector<double>>(), rows);
    const double measure = l.at("measure_deg").get<double>();
    const double state = l.at("state_deg").get<double>();
    // The measured variable takes variable_values[0] on spin up and
    // variable_values[1] on spin down.
    const std::array<StateVector, 2> basis = {spin_up(measure), spin_down(measure)};
    const std::array<double, 2> values = {model.variable_values()[0], model.variable_values()[1]};
    const SpectralDecomposition sd = spectral_decompose(operator_from_variable(values, basis));
    const DensityOperator rho = DensityOperator::pure(spin_up(state));

    const double via_operator = data_expectation(rho, model, sd);
    double via_sum = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      const auto k = sd.find(values[j]).value();
      for (std::size_t z = 0; z < model.data_values().size(); ++z) {
        via_sum += model.data_values()[z] * model.probability(z, j) *
                   born_trace(rho, sd.projections[k]);
      }
    }
    r.inputs["likelihood"] = l;
    r.results["data_operator"] = matrix_to_json(data_operator(model, sd).matrix());
    r.results["data_expectation"] = via_operator;
    r.results["data_expectation_double_sum"] = via_sum;
    r.checks.push_back({"data_expectation_matches_double_sum",
                        std::abs(via_operator - via_sum) <= 1e-10,
                        "trace " + fmt(via_operator) + ", sum " + fmt(via_sum)});
    r.rows.push_back({"likelihood", "data_expectation", via_operator});
  }
  return r;
}

Json witness_json(const std::optional<std::size_t>& w) {
  return w ? Json(*w) : Json(nullptr);
}

Json theorem3_json(const Theorem3Report& t) {
  return {{"status", to_string(t.status)},
          {"failed_preconditions", t.failed_preconditions},
          {"theta_maximal", t.theta_maximal},
          {"eta_maximal", t.eta_maximal},
          {"theta_eta_witness", witness_json(t.theta_eta_witness)},
          {"lambda_theta_witness", witness_json(t.lambda_theta_witness)},
          {"lambda_eta_witness", witness_json(t.lambda_eta_witness)},
          {"lambda_accessible", t.lambda_accessible},
          {"lambda_maximal", t.lambda_maximal},
          {"lambda_refinement", t.lambda_refinement ? Json(*t.lambda_refinement) : Json(nullptr)}};
}

Json permutation_json(const std::optional<Permutation>& p) { return p ? Json(*p) : Json(nullptr); }

Report run_theorem3_demo() {
  const Theorem3Demo d = theorem3_demo();
  Report r;
  r.experiment = "variable_system_check";
  r.inputs = {{"builtin", "theorem3_demo"}};
  r.checks = d.checks;
  r.results = {{"points", d.system.phi()->points()},
               {"theta", d.theta.name()},
               {"eta", d.eta.name()},
               {"lambda", d.lambda.name()},
               {"theorem3", theorem3_json(d.report)},
               {"theta_eta_witness", permutation_json(d.theta_eta_witness)},
               {"extended_group_lambda_theta_witness", permutation_json(d.extended_lambda_theta_witness)},
               {"extended_group_lambda_eta_witness", permutation_json(d.extended_lambda_eta_witness)},
               {"systems_examined", d.systems_examined},
               {"systems_satisfying_hypotheses", d.systems_satisfying_hypotheses},
               {"counterexamples", d.counterexamples}};
  r.rows.push_back({"theorem3_demo", "systems_examined", static_cast<double>(d.systems_examined)});
  r.rows.push_back({"theorem3_demo", "counterexamples", static_cast<double>(d.counterexamples)});
  return r;
}

Report run_system(const json& config, const fs::path& base) {
  const json& p = params_of(config);
  if (p.contains("builtin")) return run_theorem3_demo();

  const json& s = p.at("system");
  const SystemDocument doc =
      s.is_string() ? load_system(resolve(base, s.get<std::string>())) : parse_system(s);
  const VariableSystem& sys = doc.system;

  Report r;
  r.experiment = "variable_system_check";
  r.inputs = {{"system", serialize_system(doc)}};

  const bool scan = sys.phi()->size() <= 12;
  std::vector<Partition> closure;
  if (scan) closure = enumerate_accessible(sys);

  Json vars = Json::array();
  bool closure_agrees = true;
  const auto all = sys.variables();
  for (const auto& v : all) {
    Json entry = {{"name", v.name()},
                  {"declared_accessible", v.accessible()},
                  {"accessible", sys.is_accessible(v)},
                  {"blocks", v.block_count()}};
    if (sys.is_accessible(v)) {
      const bool maximal = is_maximal(v, sys);
      entry["maximal"] = maximal;
      if (scan) {
        const bool brute = std::none_of(closure.begin(), closure.end(), [&](const Partition& q) {
          return less_or_equal(v.partition(), q) && q != v.partition();
        });
        closure_agrees = closure_agrees && brute == maximal;
      }
    }
    vars.push_back(std::move(entry));
    r.rows.push_back({v.name(), "blocks", static_cast<double>(v.block_count())});
  }
  r.results["variables"] = std::move(vars);
  if (scan) {
    r.results["accessible_partitions"] = closure.size();
    r.checks.push_back({"maximality_matches_closure_scan", closure_agrees,
                        std::to_string(closure.size()) + " accessible partitions"});
  }

  if (sys.group()) {
    const GroupAction& g = *sys.group();
    const InvariantMeasure mu = counting_measure(*sys.phi());
    Json rel = Json::array();
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        rel.push_back({{"theta", all[i].name()},
                       {"eta", all[j].name()},
                       {"witness", witness_json(is_related(all[i], all[j], g))}});
      }
    }
    const bool invariant = is_invariant(mu, g);
    r.results["group"] = {{"order", g.order()},
                          {"transitive", is_transitive(g)},
                          {"trivial_isotropy", has_trivial_isotropy(g)},
                          {"orbits", orbits(g)},
                          {"counting_measure_total", mu.total()}};
    r.results["relatedness"] = std::move(rel);
    r.checks.push_back({"counting_measure_invariant", invariant, ""});
  }

  if (doc.theorem3) {
    const auto& q = *doc.theorem3;
    const Theorem3Report t =
        check_theorem3(sys, *sys.find(q.theta), *sys.find(q.eta), *sys.find(q.lambda), q.mode);
    r.results["theorem3"] = theorem3_json(t);
    r.checks.push_back({"theorem3_no_counterexample",
                        t.status != Theorem3Report::Status::Counterexample, to_string(t.status)});
  }
  return r;
}

std::optional<json> read_json(const fs::path& path, std::vector<std::string>& errors) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    errors.push_back("cannot read config '" + path.string() + "'");
    return std::nullopt;
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    errors.push_back("config '" + path.string() + "' is not valid JSON: " + e.what());
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::string> config_violations(const json& config, const fs::path& base_dir) {
  Violations v;
  if (!config.is_object()) {
    v.add("config: must be an object");
    return v.take();
  }
  if (!config.contains("kind") || !config["kind"].is_string()) {
    v.add("kind: required string");
    return v.take();
  }
  const std::string kind = kind_of(config);
  if (!kKinds.count(kind)) {
    v.add("kind: unknown experiment kind '" + kind + "'");
    return v.take();
  }
  if (config.contains("seed")) {
    if (!is_nonneg_int(config["seed"])) v.add("seed: must be a non-negative integer");
  } else if (kind == "spin_monte_carlo" || kind == "chsh") {
    v.add("seed: required for " + kind);
  }
  if (config.contains("parameters") && !config["parameters"].is_object()) {
    v.add("parameters: must be an object");
    return v.take();
  }
  if (config.contains("output")) {
    const json& o = config["output"];
    if (!o.is_object()) {
      v.add("output: must be an object");
    } else {
      if (o.contains("dir") && !o["dir"].is_string()) v.add("output.dir: must be a string");
      if (o.contains("format") && o["format"] != "structured" && o["format"] != "csv") {
        v.add("output.format: must be 'structured' or 'csv'");
      }
    }
  }
  const json& p = params_of(config);
  if (kind == "spin_monte_carlo") validate_spin(p, v);
  else if (kind == "chsh") validate_chsh(p, v);
  else if (kind == "born_table") validate_born(p, v);
  else if (kind == "variable_system_check") validate_system(p, base_dir, v);
  return v.take();
}

json apply_overrides(json config, const RunOverrides& o) {
  if (!config.is_object()) return config;
  if (o.seed) config["seed"] = *o.seed;
  if (o.samples) config["parameters"]["samples"] = *o.samples;
  if (o.workers) config["parameters"]["workers"] = *o.workers;
  if (o.output_dir) config["output"]["dir"] = *o.output_dir;
  if (o.format) config["output"]["format"] = *o.format;
  return config;
}

ValidationOutcome validate_config_file(const fs::path& path, const RunOverrides& overrides) {
  ValidationOutcome out;
  std::vector<std::string> errors;
  const auto doc = read_json(path, errors);
  if (!doc) {
    out.exit_code = kExitConfigError;
    out.violations = std::move(errors);
    return out;
  }
  out.violations = config_violations(apply_overrides(*doc, overrides), path.parent_path());
  out.exit_code = out.violations.empty() ? kExitOk : kExitConfigError;
  return out;
}

Report run_experiment(const json& config, const fs::path& base_dir) {
  const auto violations = config_violations(config, base_dir);
  if (!violations.empty()) throw Error(ErrorCode::Config, violations.front());
  const std::string kind = kind_of(config);
  if (kind == "spin_monte_carlo") return run_spin(config);
  if (kind == "epr_bohm") return run_epr();
  if (kind == "chsh") return run_chsh(config);
  if (kind == "born_table") return run_born(config);
  return run_system(config, base_dir);
}

RunOutcome run_config_file(const fs::path& path, const RunOverrides& overrides) {
  RunOutcome out;
  const auto doc = read_json(path, out.diagnostics);
  if (!doc) {
    out.exit_code = kExitConfigError;
    return out;
  }
  const json config = apply_overrides(*doc, overrides);
  const fs::path base = path.parent_path();
  out.diagnostics = config_violations(config, base);
  if (!out.diagnostics.empty()) {
    out.exit_code = kExitConfigError;
    return out;
  }

  Report report;
  try {
    report = run_experiment(config, base);
  } catch (const Error& e) {
    out.exit_code = e.code() == ErrorCode::Config || e.code() == ErrorCode::Io ? kExitConfigError
                                                                                : kExitCheckFailed;
    out.diagnostics.push_back(std::string(to_string(e.code())) + ": " + e.what());
    return out;
  }

  const json output = config.value("output", json::object());
  const fs::path dir = output.value("dir", std::string("reports"));
  const std::string format = output.value("format", std::string("structured"));
  const bool csv = format == "csv";
  const fs::path file = dir / (report.experiment + (csv ? ".csv" : ".json"));
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) {
    out.exit_code = kExitConfigError;
    out.diagnostics.push_back("cannot write report '" + file.string() + "'");
    return out;
  }
  os << (csv ? to_csv(report) : to_structured(report));
  os.close();
  out.written.push_back(file);

  for (const auto& c : report.checks) {
    if (!c.passed) {
      out.diagnostics.push_back("check failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }
  out.exit_code = report.passed() ? kExitOk : kExitCheckFailed;
  return out;
}

}  // namespace qvars
