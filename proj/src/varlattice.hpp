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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groupaction.hpp"
#include "phispace.hpp"

namespace qvars {

/// Canonical block numbering of a partition of point indices: block ids are
/// assigned in order of first occurrence, so two variables induce the same
/// partition iff their canonical vectors are equal.
using Partition = std::vector<std::size_t>;

/// A theoretical variable: a total map from phi-points to value labels.
class Variable {
 public:
  Variable(std::string name, PhiSpacePtr space, std::vector<std::string> labels,
           bool accessible = true);

  static Variable from_function(std::string name, PhiSpacePtr space,
                                const std::function<std::string(std::size_t)>& f,
                                bool accessible = true);

  /// The identity partition (phi itself); inaccessible by default.
  static Variable identity(PhiSpacePtr space, std::string name = "phi",
                           bool accessible = false);

  static Variable constant(PhiSpacePtr space, std::string label = "0",
                           std::string name = "const");

  const std::string& name() const noexcept { return name_; }
  const PhiSpacePtr& space() const noexcept { return space_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t point) const { return labels_.at(point); }
  bool accessible() const noexcept { return accessible_; }

  const Partition& partition() const noexcept { return partition_; }
  std::size_t block_count() const noexcept { return block_count_; }
  /// Distinct labels in first-occurrence order.
  std::vector<std::string> value_set() const;

  /// g∘this for a relabeling map g defined on every value of this variable.
  /// The result inherits accessibility.
  Variable coarsen(std::string name, const std::map<std::string, std::string>& g) const;

  Variable with_accessible(bool accessible) const;

 private:
  std::string name_;
  PhiSpacePtr space_;
  std::vector<std::string> labels_;
  bool accessible_;
  Partition partition_;
  std::size_t block_count_ = 0;
};

Partition canonical_partition(const std::vector<std::size_t>& blocks);

/// Throws Error(DomainMismatch) when the variables live on different spaces.
void require_same_domain(const Variable& a, const Variable& b);

/// alpha ≤ beta: alpha = f(beta) for some f, i.e. beta's partition refines
/// alpha's.
bool less_or_equal(const Variable& alpha, const Variable& beta);
bool less_or_equal(const Partition& alpha, const Partition& beta);

/// Same partition; labels are ignored.
bool equivalent(const Variable& alpha, const Variable& beta);

/// beta ≤ ... strictly: `fine` refines `coarse` and they are not equivalent.
bool strictly_refines(const Variable& fine, const Variable& coarse);

/// Generators (accessible), an optional group acting on phi, and any further
/// declared variables. The accessible family is the closure of the
/// generators under coarsening; it is never materialized unless asked for.
class VariableSystem {
 public:
  VariableSystem(PhiSpacePtr phi, std::vector<Variable> generators,
                 std::optional<GroupAction> group = std::nullopt,
                 std::vector<Variable> others = {});

  const PhiSpacePtr& phi() const noexcept { return phi_; }
  const std::vector<Variable>& generators() const noexcept { return generators_; }
  const std::vector<Variable>& others() const noexcept { return others_; }
  const std::optional<GroupAction>& group() const noexcept { return group_; }

  /// Generators first, then the other declared variables.
  std::vector<Variable> variables() const;
  std::optional<Variable> find(const std::string& name) const;

  /// The identity partition, accessible iff some generator is equivalent to it.
  Variable phi_variable() const;

  /// Constants are accessible in every system; otherwise theta must be a
  /// function of some generator.
  bool is_accessible(const Variable& theta) const;

 private:
  PhiSpacePtr phi_;
  std::vector<Variable> generators_;
  std::vector<Variable> others_;
  std::optional<GroupAction> group_;
};

/// Throws Error(NotAccessible) if theta is outside the accessible closure.
bool is_maximal(const Variable& theta, const VariableSystem& system);

/// A generator whose partition strictly refines theta, if any.
std::optional<Variable> refinement_witness(const Variable& theta,
                                           const VariableSystem& system);

/// Explicit closure of the generators under coarsening, as distinct
/// canonical partitions. Refuses phi-spaces above `max_points` points.
std::vector<Partition> enumerate_accessible(const VariableSystem& system,
                                            std::size_t max_points = 12);

enum class RelatednessMode {
  /// eta(p) == theta(k·p) with identical labels.
  Strict,
  /// eta and theta∘k induce the same partition (labels up to bijection).
  UpToRelabeling,
};

/// Index of the first group element k (in element order) relating the
/// two variables, or nullopt.
std::optional<std::size_t> is_related(const Variable& theta, const Variable& eta,
                                      const GroupAction& group,
                                      RelatednessMode mode = RelatednessMode::Strict);

struct Theorem3Report {
  enum class Status {
    /// Hypotheses hold and lambda is not maximal.
    Confirmed,
    /// At least one hypothesis is not met; nothing is asserted about lambda.
    PreconditionFailed,
    /// Hypotheses hold and lambda is maximal.
    Counterexample,
  };

  Status status = Status::PreconditionFailed;
  std::vector<std::string> failed_preconditions;

  bool theta_maximal = false;
  bool eta_maximal = false;
  std::optional<std::size_t> theta_eta_witness;
  std::optional<std::size_t> lambda_theta_witness;
  std::optional<std::size_t> lambda_eta_witness;

  bool lambda_accessible = false;
  bool lambda_maximal = false;
  /// Name of a generator strictly refining lambda.
  std::optional<std::string> lambda_refinement;
};

const char* to_string(Theorem3Report::Status status) noexcept;

Theorem3Report check_theorem3(const VariableSystem& system, const Variable& theta,
                              const Variable& eta, const Variable& lambda,
                              RelatednessMode mode = RelatednessMode::Strict);

}  // namespace qvars
