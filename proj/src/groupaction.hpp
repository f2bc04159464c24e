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
#include <map>
#include <optional>
#include <vector>

#include "phispace.hpp"

namespace qvars {

/// A permutation of point indices: the point `p` is sent to `perm[p]`.
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t degree);

/// (a ∘ b)[p] = a[b[p]], i.e. b acts first.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
bool is_bijection(const Permutation& a, std::size_t degree);

/// A finite permutation group given by its full element list. Instances only
/// exist after validation, so closure, identity and inverses are guaranteed.
class GroupAction {
 public:
  /// Validates an explicit element list. Duplicates are dropped.
  /// Throws Error(NotABijection | MissingIdentity | NotClosed) naming the
  /// first violation found.
  static GroupAction verify(const std::vector<Permutation>& elements);

  /// Closes a generator set under composition. Throws Error(GroupTooLarge)
  /// once more than `cap` elements have been produced.
  static GroupAction generate(const std::vector<Permutation>& generators,
                              std::size_t degree, std::size_t cap = 10000);

  static GroupAction trivial(std::size_t degree);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t identity_index() const noexcept { return identity_; }
  const Permutation& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  std::size_t act(std::size_t element, std::size_t point) const {
    return elements_.at(element).at(point);
  }

  /// Index of element(i) ∘ element(j).
  std::size_t compose(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const { return inverse_.at(i); }
  std::optional<std::size_t> find(const Permutation& p) const;

 private:
  GroupAction() = default;

  std::size_t degree_ = 0;
  std::size_t identity_ = 0;
  std::vector<Permutation> elements_;
  std::vector<std::size_t> inverse_;
  std::map<Permutation, std::size_t> index_;
};

/// Orbits as sorted point-index lists, ordered by their smallest point.
std::vector<std::vector<std::size_t>> orbits(const GroupAction& group);

bool is_transitive(const GroupAction& group);

/// For a transitive action: only the identity fixes `base_point`.
/// Returns false for intransitive groups.
bool has_trivial_isotropy(const GroupAction& group, std::size_t base_point = 0);

struct InvariantMeasure {
  std::vector<double> weights;

  double total() const;
};

/// Uniform unit weight per point.
InvariantMeasure counting_measure(const PhiSpace& phi);

/// weight(k·p) == weight(p) exactly, for every element k and point p.
bool is_invariant(const InvariantMeasure& measure, const GroupAction& group);

}  // namespace qvars
