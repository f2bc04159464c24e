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

#include "varlattice.hpp"

#include <set>
#include <unordered_map>

#include "error.hpp"

namespace qvars {

Partition canonical_partition(const std::vector<std::size_t>& blocks) {
  std::unordered_map<std::size_t, std::size_t> renumber;
  Partition out;
  out.reserve(blocks.size());
  for (std::size_t b : blocks) {
    const auto [it, inserted] = renumber.emplace(b, renumber.size());
    out.push_back(it->second);
  }
  return out;
}

Variable::Variable(std::string name, PhiSpacePtr space, std::vector<std::string> labels,
                   bool accessible)
    : name_(std::move(name)),
      space_(std::move(space)),
      labels_(std::move(labels)),
      accessible_(accessible) {
  if (!space_) throw Error(ErrorCode::InvalidArgument, "variable without a phi-space");
  if (labels_.size() != space_->size()) {
    throw Error(ErrorCode::InvalidArgument,
                "variable '" + name_ + "' has " + std::to_string(labels_.size()) +
                    " values for " + std::to_string(space_->size()) + " points");
  }
  std::unordered_map<std::string, std::size_t> ids;
  partition_.reserve(labels_.size());
  for (const auto& l : labels_) {
    const auto [it, inserted] = ids.emplace(l, ids.size());
    partition_.push_back(it->second);
  }
  block_count_ = ids.size();
}

Variable Variable::from_function(std::string name, PhiSpacePtr space,
                                 const std::function<std::string(std::size_t)>& f,
                                 bool accessible) {
  std::vector<std::string> labels;
  labels.reserve(space->size());
  for (std::size_t p = 0; p < space->size(); ++p) labels.push_back(f(p));
  return Variable(std::move(name), std::move(space), std::move(labels), accessible);
}

Variable Variable::identity(PhiSpacePtr space, std::string name, bool accessible) {
  auto labels = space->points();
  return Variable(std::move(name), std::move(space), std::move(labels), accessible);
}

Variable Variable::constant(PhiSpacePtr space, std::string label, std::string name) {
  const std::size_t n = space->size();
  return Variable(std::move(name), std::move(space), std::vector<std::string>(n, label));
}

std::vector<std::string> Variable::value_set() const {
  std::vector<std::string> out(block_count_);
  for (std::size_t p = 0; p < labels_.size(); ++p) out[partition_[p]] = labels_[p];
  return out;
}

Variable Variable::coarsen(std::string name,
                           const std::map<std::string, std::string>& g) const {
  std::vector<std::string> labels;
  labels.reserve(labels_.size());
  for (const auto& l : labels_) {
    const auto it = g.find(l);
    if (it == g.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "coarsening map is undefined on value '" + l + "' of '" + name_ + "'");
    }
    labels.push_back(it->second);
  }
  return Variable(std::move(name), space_, std::move(labels), accessible_);
}

Variable Variable::with_accessible(bool accessible) const {
  Variable copy = *this;
  copy.accessible_ = accessible;
  return copy;
}

void require_same_domain(const Variable& a, const Variable& b) {
  if (a.space() != b.space() && !a.space()->same_domain(*b.space())) {
    throw Error(ErrorCode::DomainMismatch, "variables '" + a.name() + "' and '" +
                                               b.name() +
                                               "' are defined on different phi-spaces");
  }
}

bool less_or_equal(const Partition& alpha, const Partition& beta) {
  if (alpha.size() != beta.size()) {
    throw Error(ErrorCode::DomainMismatch, "partitions of different sizes");
  }
  // f(beta block) must be single-valued.
  std::unordered_map<std::size_t, std::size_t> f;
  for (std::size_t p = 0; p < beta.size(); ++p) {
    const auto [it, inserted] = f.emplace(beta[p], alpha[p]);
    if (!inserted && it->second != alpha[p]) return false;
  }
  return true;
}

bool less_or_equal(const Variable& alpha, const Variable& beta) {
  require_same_domain(alpha, beta);
  return less_or_equal(alpha.partition(), beta.partition());
}

bool equivalent(const Variable& alpha, const Variable& beta) {
  require_same_domain(alpha, beta);
  return alpha.partition() == beta.partition();
}

bool strictly_refines(const Variable& fine, const Variable& coarse) {
  return less_or_equal(coarse, fine) && fine.block_count() > coarse.block_count();
}

VariableSystem::VariableSystem(PhiSpacePtr phi, std::vector<Variable> generators,
                               std::optional<GroupAction> group,
                               std::vector<Variable> others)
    : phi_(std::move(phi)), others_(std::move(others)), group_(std::move(group)) {
  if (!phi_) throw Error(ErrorCode::InvalidArgument, "variable system without a phi-space");
  const Variable probe = Variable::constant(phi_);
  generators_.reserve(generators.size());
  for (auto& g : generators) {
    require_same_domain(probe, g);
    generators_.push_back(g.with_accessible(true));
  }
  for (const auto& o : others_) require_same_domain(probe, o);
  if (group_ && group_->degree() != phi_->size()) {
    throw Error(ErrorCode::DomainMismatch, "group acts on " +
                                               std::to_string(group_->degree()) +
                                               " points, phi-space has " +
                                               std::to_string(phi_->size()));
  }
}

std::vector<Variable> VariableSystem::variables() const {
  std::vector<Variable> out = generators_;
  out.insert(out.end(), others_.begin(), others_.end());
  return out;
}

std::optional<Variable> VariableSystem::find(const std::string& name) const {
  for (const auto& v : generators_) {
    if (v.name() == name) return v;
  }
  for (const auto& v : others_) {
    if (v.name() == name) return is_accessible(v) ? v.with_accessible(true) : v;
  }
  return std::nullopt;
}

Variable VariableSystem::phi_variable() const {
  Variable phi = Variable::identity(phi_);
  return phi.with_accessible(is_accessible(phi));
}

bool VariableSystem::is_accessible(const Variable& theta) const {
  if (theta.space() != phi_ && !theta.space()->same_domain(*phi_)) {
    throw Error(ErrorCode::DomainMismatch,
                "variable '" + theta.name() + "' is not defined on this system's phi-space");
  }
  if (theta.block_count() == 1) return true;
  for (const auto& g : generators_) {
    if (less_or_equal(theta.partition(), g.partition())) return true;
  }
  return false;
}

bool is_maximal(const Variable& theta, const VariableSystem& system) {
  if (!system.is_accessible(theta)) {
    throw Error(ErrorCode::NotAccessible,
                "variable '" + theta.name() + "' is not accessible in this system");
  }
  return !refinement_witness(theta, system).has_value();
}

std::optional<Variable> refinement_witness(const Variable& theta,
                                           const VariableSystem& system) {
  // Any coarsening of a generator that strictly refines theta implies the
  // generator itself does, so scanning generators covers the closure.
  for (const auto& g : system.generators()) {
    if (strictly_refines(g, theta)) return g;
  }
  return std::nullopt;
}

namespace {

// Visits every set partition of {0..n-1} as a restricted growth string.
template <typename Visit>
void for_each_set_partition(std::size_t n, Visit&& visit) {
  if (n == 0) return;
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> max_prefix(n, 0);
  while (true) {
    visit(rgs);
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) return;
    ++rgs[i];
    max_prefix[i] = std::max(max_prefix[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      max_prefix[j] = max_prefix[i];
    }
  }
}

}  // namespace

std::vector<Partition> enumerate_accessible(const VariableSystem& system,
                                            std::size_t max_points) {
  const std::size_t n = system.phi()->size();
  if (n > max_points) {
    throw Error(ErrorCode::InvalidArgument,
                "closure enumeration is capped at " + std::to_string(max_points) +
                    " points; use the refinement criterion instead");
  }
  std::set<Partition> seen;
  seen.insert(Partition(n, 0));
  for (const auto& g : system.generators()) {
    const Partition& base = g.partition();
    for_each_set_partition(g.block_count(), [&](const std::vector<std::size_t>& rgs) {
      std::vector<std::size_t> blocks(n);
      for (std::size_t p = 0; p < n; ++p) blocks[p] = rgs[base[p]];
      seen.insert(canonical_partition(blocks));
    });
  }
  return {seen.begin(), seen.end()};
}

std::optional<std::size_t> is_related(const Variable& theta, const Variable& eta,
                                      const GroupAction& group, RelatednessMode mode) {
  require_same_domain(theta, eta);
  const std::size_t n = theta.space()->size();
  if (group.degree() != n) {
    throw Error(ErrorCode::DomainMismatch, "group does not act on the variables' phi-space");
  }
  // Cheap rejection: relatedness preserves the block count.
  if (theta.block_count() != eta.block_count()) return std::nullopt;

  for (std::size_t k = 0; k < group.order(); ++k) {
    const Permutation& perm = group.element(k);
    bool match = true;
    if (mode == RelatednessMode::Strict) {
      for (std::size_t p = 0; p < n && match; ++p) {
        match = eta.label(p) == theta.label(perm[p]);
      }
    } else {
      std::vector<std::size_t> moved(n);
      for (std::size_t p = 0; p < n; ++p) moved[p] = theta.partition()[perm[p]];
      match = canonical_partition(moved) == eta.partition();
    }
    if (match) return k;
  }
  return std::nullopt;
}

const char* to_string(Theorem3Report::Status status) noexcept {
  switch (status) {
    case Theorem3Report::Status::Confirmed:
      return "confirmed";
    case Theorem3Report::Status::PreconditionFailed:
      return "precondition_failed";
    case Theorem3Report::Status::Counterexample:
      return "counterexample";
  }
  return "unknown";
}

Theorem3Report check_theorem3(const VariableSystem& system, const Variable& theta,
                              const Variable& eta, const Variable& lambda,
                              RelatednessMode mode) {
  require_same_domain(theta, eta);
  require_same_domain(theta, lambda);
  Theorem3Report r;
  auto fail = [&r](std::string why) { r.failed_preconditions.push_back(std::move(why)); };

  const bool theta_acc = system.is_accessible(theta);
  const bool eta_acc = system.is_accessible(eta);
  r.theta_maximal = theta_acc && is_maximal(theta, system);
  r.eta_maximal = eta_acc && is_maximal(eta, system);
  if (!theta_acc) fail("theta is not accessible");
  else if (!r.theta_maximal) fail("theta is not maximal");
  if (!eta_acc) fail("eta is not accessible");
  else if (!r.eta_maximal) fail("eta is not maximal");

  if (equivalent(lambda, theta) || equivalent(lambda, eta)) {
    fail("lambda is not different from theta and eta");
  }

  if (!system.group()) {
    fail("no group declared, relatedness cannot hold");
  } else {
    const GroupAction& g = *system.group();
    r.theta_eta_witness = is_related(theta, eta, g, mode);
    r.lambda_theta_witness = is_related(theta, lambda, g, mode);
    r.lambda_eta_witness = is_related(eta, lambda, g, mode);
    if (!r.theta_eta_witness) fail("theta and eta are not related");
    if (!r.lambda_theta_witness) fail("lambda is not related to theta");
    if (r.lambda_eta_witness) fail("lambda is related to eta");
  }

  r.lambda_accessible = system.is_accessible(lambda);
  if (r.lambda_accessible) {
    const auto witness = refinement_witness(lambda, system);
    r.lambda_maximal = !witness.has_value();
    if (witness) r.lambda_refinement = witness->name();
  }

  if (!r.failed_preconditions.empty()) {
    r.status = Theorem3Report::Status::PreconditionFailed;
  } else {
    r.status = r.lambda_maximal ? Theorem3Report::Status::Counterexample
                                : Theorem3Report::Status::Confirmed;
  }
  return r;
}

}  // namespace qvars
