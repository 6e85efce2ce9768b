// Copyright 2026 The mqsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mq/core.hpp"

#include <algorithm>
#include <iterator>

namespace mq {

Position::Position(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end());
}

Position Position::plus(const Position& other) const {
  Position out;
  out.parts_.reserve(parts_.size() + other.parts_.size());
  std::merge(parts_.begin(), parts_.end(), other.parts_.begin(),
             other.parts_.end(), std::back_inserter(out.parts_));
  return out;
}

Position Position::plus(std::uint32_t g) const {
  Position out = *this;
  out.parts_.insert(std::upper_bound(out.parts_.begin(), out.parts_.end(), g), g);
  return out;
}

Position Position::minus(std::uint32_t g) const {
  Position out = *this;
  auto it = std::lower_bound(out.parts_.begin(), out.parts_.end(), g);
  if (it == out.parts_.end() || *it != g) {
    throw std::invalid_argument("Position::minus: component not present");
  }
  out.parts_.erase(it);
  return out;
}

Position Position::replace(std::uint32_t g, const Position& replacement) const {
  return minus(g).plus(replacement);
}

std::size_t Position::count(std::uint32_t g) const {
  auto r = std::equal_range(parts_.begin(), parts_.end(), g);
  return static_cast<std::size_t>(r.second - r.first);
}

std::size_t PositionHash::operator()(const Position& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto g : p.parts()) {
    h ^= g;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void GeneratorSystem::add(std::string label, std::vector<Position> opts) {
  std::sort(opts.begin(), opts.end());
  opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
  labels.push_back(std::move(label));
  options.push_back(std::move(opts));
}

void GeneratorSystem::validate() const {
  if (labels.size() != options.size()) {
    throw std::invalid_argument("generator system: label/option count mismatch");
  }
  for (std::size_t g = 0; g < options.size(); ++g) {
    for (const auto& o : options[g]) {
      for (auto c : o.parts()) {
        if (c >= g) {
          throw std::invalid_argument("generator " + std::to_string(g) +
                                      " has an option using generator " +
                                      std::to_string(c));
        }
      }
    }
  }
}

}  // namespace mq
