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
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qvars {

using Direction = std::vector<double>;

/// Finite labeled set of points on which theoretical variables are defined.
/// An optional embedding attaches a unit direction (2D or 3D) to every point.
class PhiSpace {
 public:
  /// Throws Error(InvalidArgument) on duplicate or empty point lists, and on
  /// embeddings that are ragged, not 2D/3D, or not unit-norm within 1e-12.
  static std::shared_ptr<const PhiSpace> make(
      std::vector<std::string> points,
      std::optional<std::vector<Direction>> embedding = std::nullopt);

  /// Points "0".."n-1" with no embedding.
  static std::shared_ptr<const PhiSpace> anonymous(std::size_t n);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& point(std::size_t i) const { return points_.at(i); }
  std::optional<std::size_t> index_of(const std::string& id) const;

  bool has_embedding() const noexcept { return embedding_.has_value(); }
  const std::vector<Direction>& embedding() const { return embedding_.value(); }

  /// Same points in the same order. Embeddings do not participate.
  bool same_domain(const PhiSpace& other) const noexcept {
    return points_ == other.points_;
  }

 private:
  PhiSpace() = default;

  std::vector<std::string> points_;
  std::optional<std::vector<Direction>> embedding_;
};

using PhiSpacePtr = std::shared_ptr<const PhiSpace>;

}  // namespace qvars
