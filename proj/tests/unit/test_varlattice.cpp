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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "error.hpp"
#include "experiments.hpp"
#include "test_support.hpp"
#include "varlattice.hpp"

using namespace qvars;
using qvars::testing::Engine;

namespace {

std::vector<std::string> to_labels(const std::vector<std::size_t>& blocks) {
  std::vector<std::string> out;
  for (auto b : blocks) out.push_back(std::to_string(b));
  return out;
}

Variable var(const std::string& name, const PhiSpacePtr& phi, std::vector<std::string> labels,
             bool accessible = true) {
  return Variable(name, phi, std::move(labels), accessible);
}

// beta(p1) == beta(p2) implies alpha(p1) == alpha(p2), checked pairwise.
bool pairwise_refines(const std::vector<std::string>& alpha, const std::vector<std::string>& beta) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (beta[i] == beta[j] && alpha[i] != alpha[j]) return false;
    }
  }
  return true;
}

// Searches every map from beta's value set into alpha's value set for one
// with alpha = f(beta).
bool function_exists(const Variable& alpha, const Variable& beta) {
  const auto from = beta.value_set();
  const auto to = alpha.value_set();
  std::vector<std::size_t> choice(from.size(), 0);
  while (true) {
    std::map<std::string, std::string> f;
    for (std::size_t i = 0; i < from.size(); ++i) f[from[i]] = to[choice[i]];
    bool ok = true;
    for (std::size_t p = 0; p < alpha.labels().size() && ok; ++p) {
      ok = f[beta.label(p)] == alpha.label(p);
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == to.size()) choice[k++] = 0;
    if (k == choice.size()) return false;
  }
}

// Does some k in the group give eta(p) == theta(k p) for all p?
bool brute_related(const Variable& theta, const Variable& eta, const GroupAction& g) {
  for (const auto& k : g.elements()) {
    bool ok = true;
    for (std::size_t p = 0; p < k.size() && ok; ++p) ok = eta.label(p) == theta.label(k[p]);
    if (ok) return true;
  }
  return false;
}

const std::size_t kBell[] = {1, 1, 2, 5, 15, 52, 203, 877};

}  // namespace

TEST_CASE("canonical partitions number blocks by first occurrence") {
  CHECK(canonical_partition({7, 7, 3, 7, 1}) == Partition{0, 0, 1, 0, 2});
  const auto phi = PhiSpace::anonymous(4);
  const auto v = var("v", phi, {"x", "y", "x", "z"});
  CHECK(v.partition() == Partition{0, 1, 0, 2});
  CHECK(v.block_count() == 3);
  CHECK(v.value_set() == std::vector<std::string>{"x", "y", "z"});
  CHECK_THROWS_AS(var("short", phi, {"a", "b"}), Error);
}

TEST_CASE("less_or_equal examples") {
  const auto phi = PhiSpace::make({"a", "b", "c", "d"});
  const auto alpha = var("alpha", phi, {"0", "0", "1", "1"});
  const auto beta = var("beta", phi, {"x", "y", "z", "z"});
  CHECK(less_or_equal(alpha, beta));
  CHECK_FALSE(less_or_equal(beta, alpha));
  CHECK(function_exists(alpha, beta));
  CHECK_FALSE(function_exists(beta, alpha));

  const auto c = Variable::constant(phi);
  const auto id = Variable::identity(phi);
  for (const auto& v : {alpha, beta, c, id}) {
    CHECK(less_or_equal(c, v));
    CHECK(less_or_equal(v, id));
  }
  CHECK_FALSE(id.accessible());
}

TEST_CASE("domain mismatch") {
  const auto a = Variable::constant(PhiSpace::anonymous(3));
  const auto b = Variable::constant(PhiSpace::anonymous(4));
  try {
    less_or_equal(a, b);
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainMismatch);
  }
  CHECK_THROWS_AS(equivalent(a, b), Error);
  // Same points but different objects share a domain.
  CHECK(equivalent(Variable::constant(PhiSpace::anonymous(3)), a));
}

TEST_CASE("equivalent examples") {
  const auto phi = PhiSpace::make({"a", "b", "c", "d"});
  const auto alpha = var("alpha", phi, {"0", "0", "1", "1"});
  CHECK(equivalent(alpha, alpha.coarsen("relabeled", {{"0", "one"}, {"1", "zero"}})));
  CHECK_FALSE(equivalent(alpha, var("beta", phi, {"0", "1", "2", "3"})));
  CHECK_FALSE(equivalent(alpha, var("gamma", phi, {"0", "1", "0", "1"})));
}

TEST_CASE("partial-order axioms exhaustively on up to six points") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto parts = testing::all_partitions(n);
    REQUIRE(parts.size() == kBell[n]);
    std::vector<std::vector<std::string>> labels;
    for (const auto& p : parts) labels.push_back(to_labels(p));
    const std::size_t m = parts.size();
    std::vector<char> le(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        le[i * m + j] = less_or_equal(parts[i], parts[j]);
        if (n <= 5) REQUIRE(static_cast<bool>(le[i * m + j]) == pairwise_refines(labels[i], labels[j]));
      }
    }
    std::size_t violations = 0;
    for (std::size_t i = 0; i < m; ++i) {
      violations += !le[i * m + i];
      for (std::size_t j = 0; j < m; ++j) {
        // Canonical partitions are equal iff equivalent.
        if (le[i * m + j] && le[j * m + i] && i != j) ++violations;
        if (!le[i * m + j]) continue;
        for (std::size_t k = 0; k < m; ++k) {
          if (le[j * m + k] && !le[i * m + k]) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("coarsening stays accessible and below its source") {
  const auto phi = PhiSpace::anonymous(6);
  const auto beta = var("beta", phi, {"a", "b", "c", "d", "a", "c"});
  const VariableSystem sys(phi, {beta});
  const auto values = beta.value_set();
  // Every surjection from the four values onto {0..k-1}.
  for (const auto& target : testing::all_partitions(values.size())) {
    std::map<std::string, std::string> g;
    for (std::size_t i = 0; i < values.size(); ++i) g[values[i]] = std::to_string(target[i]);
    const auto coarse = beta.coarsen("g_beta", g);
    CHECK(less_or_equal(coarse, beta));
    CHECK(sys.is_accessible(coarse));
    CHECK(coarse.accessible());
  }
  CHECK_THROWS_AS(beta.coarsen("partial", {{"a", "x"}}), Error);
  CHECK_FALSE(sys.is_accessible(Variable::identity(phi)));
  CHECK(sys.is_accessible(Variable::constant(phi)));
}

TEST_CASE("is_maximal examples") {
  const auto phi = PhiSpace::anonymous(4);
  const auto theta = var("theta", phi, {"0", "0", "1", "2"});
  const auto lambda = var("lambda", phi, {"0", "1", "2", "3"});
  const auto coarse = theta.coarsen("coarse", {{"0", "a"}, {"1", "a"}, {"2", "b"}});

  CHECK(is_maximal(theta, VariableSystem(phi, {theta})));
  const VariableSystem two(phi, {theta, lambda});
  CHECK_FALSE(is_maximal(theta, two));
  CHECK(refinement_witness(theta, two)->name() == "lambda");
  CHECK(is_maximal(lambda, two));
  CHECK_FALSE(is_maximal(coarse, VariableSystem(phi, {theta})));

  const auto c = Variable::constant(phi);
  CHECK_FALSE(is_maximal(c, VariableSystem(phi, {theta})));
  CHECK(is_maximal(c, VariableSystem(phi, {c})));

  const auto other = var("other", phi, {"0", "1", "0", "1"});
  try {
    is_maximal(other, VariableSystem(phi, {theta}));
    FAIL("expected NotAccessible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAccessible);
  }
}

TEST_CASE("closure enumeration counts") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto phi = PhiSpace::anonymous(n);
    const VariableSystem sys(phi, {Variable::identity(phi, "phi", true)});
    CHECK(enumerate_accessible(sys).size() == kBell[n]);
  }
  // Two 2-block generators on 4 points: {constant, g1, g2}.
  const auto phi = PhiSpace::anonymous(4);
  const VariableSystem sys(phi, {var("g1", phi, {"0", "0", "1", "1"}),
                                 var("g2", phi, {"0", "1", "0", "1"})});
  CHECK(enumerate_accessible(sys).size() == 3);
  CHECK_THROWS_AS(enumerate_accessible(VariableSystem(PhiSpace::anonymous(13), {})), Error);
}

TEST_CASE("maximal iff finest in the enumerated closure") {
  Engine rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto parts = testing::all_partitions(n);
    const auto phi = PhiSpace::anonymous(n);
    std::vector<Variable> gens;
    const std::size_t count = 1 + rng() % 3;
    for (std::size_t k = 0; k < count; ++k) {
      gens.push_back(var("g" + std::to_string(k), phi, to_labels(parts[rng() % parts.size()])));
    }
    const VariableSystem sys(phi, gens);
    const auto closure = enumerate_accessible(sys);
    for (const auto& q : closure) {
      const Variable v("q", phi, to_labels(q));
      REQUIRE(sys.is_accessible(v));
      bool finest = true;
      for (const auto& r : closure) {
        if (r != q && pairwise_refines(to_labels(q), to_labels(r))) finest = false;
      }
      CHECK(is_maximal(v, sys) == finest);
    }
    // Nothing outside the closure is accessible.
    for (const auto& p : parts) {
      const bool inside = std::find(closure.begin(), closure.end(), p) != closure.end();
      CHECK(sys.is_accessible(Variable("p", phi, to_labels(p))) == inside);
    }
  }
}

TEST_CASE("is_related examples") {
  const auto phi = PhiSpace::make(
      {"p45", "p135", "p225", "p315"},
      std::vector<Direction>{plane_direction(45), plane_direction(135), plane_direction(225),
                             plane_direction(315)});
  auto sign_cos = [&](double dir_deg) {
    return [&, dir_deg](std::size_t p) {
      const double c = phi->embedding()[p][0] * std::cos(deg_to_rad(dir_deg)) +
                       phi->embedding()[p][1] * std::sin(deg_to_rad(dir_deg));
      return std::string(c >= 0 ? "+" : "-");
    };
  };
  const auto theta = Variable::from_function("theta", phi, sign_cos(0));
  const auto eta = Variable::from_function("eta", phi, sign_cos(90));
  // angle -> 90 - angle: 45->45, 135->315, 225->225, 315->135.
  const Permutation reflection = {0, 3, 2, 1};
  const auto g = GroupAction::generate({reflection}, 4);

  const auto id = is_related(theta, theta, g);
  REQUIRE(id);
  CHECK(*id == g.identity_index());
  const auto k = is_related(theta, eta, g);
  REQUIRE(k);
  CHECK(g.element(*k) == reflection);
  CHECK(brute_related(theta, eta, g));

  const auto lopsided = var("lopsided", phi, {"+", "+", "+", "-"});
  CHECK_FALSE(is_related(theta, lopsided, GroupAction::generate({{1, 2, 3, 0}, {1, 0, 2, 3}}, 4)));
}

TEST_CASE("relatedness modes") {
  const auto phi = PhiSpace::anonymous(4);
  const auto theta = var("theta", phi, {"+", "+", "-", "-"});
  const auto flipped = var("flipped", phi, {"-", "-", "+", "+"});
  const auto g = GroupAction::trivial(4);
  CHECK_FALSE(is_related(theta, flipped, g, RelatednessMode::Strict));
  CHECK(is_related(theta, flipped, g, RelatednessMode::UpToRelabeling));
  const auto c2 = GroupAction::generate({{2, 3, 0, 1}}, 4);
  CHECK(is_related(theta, flipped, c2, RelatednessMode::Strict));
}

TEST_CASE("relatedness agrees with brute force and is symmetric") {
  Engine rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto phi = PhiSpace::anonymous(n);
    const auto g = testing::random_group(rng, n, 1 + rng() % 2);
    std::vector<std::string> a(n), b(n);
    for (std::size_t p = 0; p < n; ++p) {
      a[p] = std::to_string(rng() % 2);
      b[p] = std::to_string(rng() % 2);
    }
    const Variable theta("theta", phi, a);
    const Variable eta("eta", phi, b);
    const auto fwd = is_related(theta, eta, g);
    CHECK(fwd.has_value() == brute_related(theta, eta, g));
    CHECK(fwd.has_value() == is_related(eta, theta, g).has_value());
    if (fwd) {
      const auto inv = g.inverse(*fwd);
      for (std::size_t p = 0; p < n; ++p) CHECK(theta.label(p) == eta.label(g.act(inv, p)));
    }
  }
}

TEST_CASE("check_theorem3 precondition reporting") {
  const auto phi = PhiSpace::anonymous(4);
  const auto theta = var("theta", phi, {"0", "0", "1", "1"});
  const auto eta = var("eta", phi, {"0", "1", "0", "1"});
  const auto g = GroupAction::generate({{0, 2, 1, 3}}, 4);
  const VariableSystem sys(phi, {theta, eta}, g);

  const auto same = check_theorem3(sys, theta, eta, theta);
  CHECK(same.status == Theorem3Report::Status::PreconditionFailed);
  CHECK(same.theta_eta_witness.has_value());
  CHECK(same.lambda_eta_witness.has_value());
  CHECK_FALSE(same.failed_preconditions.empty());
  CHECK(std::string(to_string(same.status)) == "precondition_failed");

  // lambda strictly below an accessible generator: the refinement is named.
  const auto lambda = Variable::constant(phi, "0", "lambda");
  const auto below = check_theorem3(sys, theta, eta, lambda);
  CHECK(below.lambda_accessible);
  CHECK_FALSE(below.lambda_maximal);
  CHECK(below.lambda_refinement == std::optional<std::string>("theta"));
  CHECK(below.status != Theorem3Report::Status::Counterexample);

  const VariableSystem no_group(phi, {theta, eta});
  CHECK(check_theorem3(no_group, theta, eta, lambda).status ==
        Theorem3Report::Status::PreconditionFailed);
}

TEST_CASE("check_theorem3 never finds a counterexample on small systems") {
  std::size_t examined = 0;
  std::size_t counterexamples = 0;
  // Four points: every cyclic subgroup of S4, every pair of generators,
  // theta/eta among the generators and lambda over all partitions.
  const std::size_t n = 4;
  const auto phi = PhiSpace::anonymous(n);
  const auto parts = testing::all_partitions(n);
  Permutation perm = identity_permutation(n);
  std::vector<GroupAction> groups;
  do {
    groups.push_back(GroupAction::generate({perm}, n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        const Variable a("a", phi, to_labels(parts[i]));
        const Variable b("b", phi, to_labels(parts[j]));
        const VariableSystem sys(phi, {a, b}, g);
        for (const auto& lp : parts) {
          const Variable lambda("lambda", phi, to_labels(lp));
          for (const auto& [t, e] : {std::pair{a, b}, std::pair{b, a}}) {
            const auto r = check_theorem3(sys, t, e, lambda);
            ++examined;
            counterexamples += r.status == Theorem3Report::Status::Counterexample;
          }
        }
      }
    }
  }
  // Six points, random groups and random two-valued variables.
  Engine rng(3);
  const auto phi6 = PhiSpace::anonymous(6);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto g = testing::random_group(rng, 6, 1 + rng() % 2);
    auto rand_var = [&](const std::string& name) {
      std::vector<std::string> l(6);
      for (auto& x : l) x = std::to_string(rng() % 3);
      return Variable(name, phi6, l);
    };
    const auto t = rand_var("theta");
    const auto e = rand_var("eta");
    const auto lambda = rand_var("lambda");
    const VariableSystem sys(phi6, {t, e, lambda}, g);
    const auto r = check_theorem3(sys, t, e, lambda);
    ++examined;
    counterexamples += r.status == Theorem3Report::Status::Counterexample;
  }
  CHECK(examined > 50000);
  CHECK(counterexamples == 0);
}
