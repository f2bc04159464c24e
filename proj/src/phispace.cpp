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

#include "phispace.hpp"

#include <cmath>
#include <set>

#include "error.hpp"

namespace qvars {

namespace {
constexpr double kUnitNormTolerance = 1e-12;
}

std::shared_ptr<const PhiSpace> PhiSpace::make(
    std::vector<std::string> points,
    std::optional<std::vector<Direction>> embedding) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "phi-space must contain at least one point");
  }
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate phi-space point '" + p + "'");
    }
  }
  if (embedding) {
    if (embedding->size() != points.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "embedding has " + std::to_string(embedding->size()) +
                      " vectors for " + std::to_string(points.size()) + " points");
    }
    const std::size_t dim = embedding->front().size();
    if (dim != 2 && dim != 3) {
      throw Error(ErrorCode::InvalidArgument, "embedding vectors must be 2D or 3D");
    }
    for (std::size_t i = 0; i < embedding->size(); ++i) {
      const auto& v = (*embedding)[i];
      if (v.size() != dim) {
        throw Error(ErrorCode::InvalidArgument, "embedding vectors have mixed dimensions");
      }
      double norm2 = 0.0;
      for (double x : v) norm2 += x * x;
      if (std::abs(std::sqrt(norm2) - 1.0) > kUnitNormTolerance) {
        throw Error(ErrorCode::InvalidArgument,
                    "embedding vector of point '" + points[i] + "' is not unit norm");
      }
    }
  }
  auto space = std::shared_ptr<PhiSpace>(new PhiSpace());
  space->points_ = std::move(points);
  space->embedding_ = std::move(embedding);
  return space;
}

std::shared_ptr<const PhiSpace> PhiSpace::anonymous(std::size_t n) {
  std::vector<std::string> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(std::to_string(i));
  return make(std::move(points));
}

std::optional<std::size_t> PhiSpace::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == id) return i;
  }
  return std::nullopt;
}

}  // namespace qvars
