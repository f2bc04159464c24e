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

#include "groupaction.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "error.hpp"

namespace qvars {

namespace {

std::string describe(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

}  // namespace

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t p = 0; p < b.size(); ++p) out[p] = a[b[p]];
  return out;
}

Permutation inverse(const Permutation& a) {
  Permutation out(a.size());
  for (std::size_t p = 0; p < a.size(); ++p) out[a[p]] = p;
  return out;
}

bool is_bijection(const Permutation& a, std::size_t degree) {
  if (a.size() != degree) return false;
  std::vector<bool> hit(degree, false);
  for (std::size_t image : a) {
    if (image >= degree || hit[image]) return false;
    hit[image] = true;
  }
  return true;
}

GroupAction GroupAction::verify(const std::vector<Permutation>& elements) {
  if (elements.empty()) {
    throw Error(ErrorCode::MissingIdentity, "empty element list has no identity");
  }
  GroupAction g;
  g.degree_ = elements.front().size();
  for (const auto& e : elements) {
    if (!is_bijection(e, g.degree_)) {
      throw Error(ErrorCode::NotABijection,
                  "element " + describe(e) + " is not a bijection on " +
                      std::to_string(g.degree_) + " points");
    }
    if (g.index_.emplace(e, g.elements_.size()).second) g.elements_.push_back(e);
  }
  const auto id = g.find(identity_permutation(g.degree_));
  if (!id) throw Error(ErrorCode::MissingIdentity, "element list lacks the identity");
  g.identity_ = *id;

  for (const auto& a : g.elements_) {
    for (const auto& b : g.elements_) {
      const Permutation ab = qvars::compose(a, b);
      if (!g.find(ab)) {
        throw Error(ErrorCode::NotClosed, "composition " + describe(a) + " o " +
                                              describe(b) + " = " + describe(ab) +
                                              " is missing");
      }
    }
  }
  // Closure of a finite set of bijections already implies inverses exist.
  g.inverse_.resize(g.elements_.size());
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    g.inverse_[i] = *g.find(qvars::inverse(g.elements_[i]));
  }
  return g;
}

GroupAction GroupAction::generate(const std::vector<Permutation>& generators,
                                  std::size_t degree, std::size_t cap) {
  for (const auto& s : generators) {
    if (!is_bijection(s, degree)) {
      throw Error(ErrorCode::NotABijection,
                  "generator " + describe(s) + " is not a bijection on " +
                      std::to_string(degree) + " points");
    }
  }
  GroupAction g;
  g.degree_ = degree;
  std::deque<std::size_t> frontier;
  auto add = [&](Permutation p) {
    if (g.index_.emplace(p, g.elements_.size()).second) {
      if (g.elements_.size() >= cap) {
        throw Error(ErrorCode::GroupTooLarge,
                    "generated group exceeds " + std::to_string(cap) + " elements");
      }
      g.elements_.push_back(std::move(p));
      frontier.push_back(g.elements_.size() - 1);
    }
  };
  add(identity_permutation(degree));
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop_front();
    for (const auto& s : generators) add(qvars::compose(s, g.elements_[i]));
  }
  g.identity_ = 0;
  g.inverse_.resize(g.elements_.size());
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    g.inverse_[i] = *g.find(qvars::inverse(g.elements_[i]));
  }
  return g;
}

GroupAction GroupAction::trivial(std::size_t degree) {
  return verify({identity_permutation(degree)});
}

std::size_t GroupAction::compose(std::size_t i, std::size_t j) const {
  return *find(qvars::compose(elements_.at(i), elements_.at(j)));
}

std::optional<std::size_t> GroupAction::find(const Permutation& p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> orbits(const GroupAction& group) {
  const std::size_t n = group.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit{start};
    seen[start] = true;
    for (std::size_t cursor = 0; cursor < orbit.size(); ++cursor) {
      for (const auto& e : group.elements()) {
        const std::size_t q = e[orbit[cursor]];
        if (!seen[q]) {
          seen[q] = true;
          orbit.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const GroupAction& group) { return orbits(group).size() == 1; }

bool has_trivial_isotropy(const GroupAction& group, std::size_t base_point) {
  if (base_point >= group.degree()) {
    throw Error(ErrorCode::InvalidArgument, "base point out of range");
  }
  if (!is_transitive(group)) return false;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (i != group.identity_index() && group.act(i, base_point) == base_point) {
      return false;
    }
  }
  return true;
}

double InvariantMeasure::total() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

InvariantMeasure counting_measure(const PhiSpace& phi) {
  return InvariantMeasure{std::vector<double>(phi.size(), 1.0)};
}

bool is_invariant(const InvariantMeasure& measure, const GroupAction& group) {
  if (measure.weights.size() != group.degree()) {
    throw Error(ErrorCode::DomainMismatch, "measure and group act on different spaces");
  }
  for (const auto& e : group.elements()) {
    for (std::size_t p = 0; p < e.size(); ++p) {
      if (measure.weights[e[p]] != measure.weights[p]) return false;
    }
  }
  return true;
}

}  // namespace qvars
