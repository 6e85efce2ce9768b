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

// Shared vocabulary: outcomes, positions over a generator system, error types.

#ifndef MQ_CORE_HPP_
#define MQ_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mq {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Outcome : std::uint8_t { P, N };

inline char to_char(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

/// Thrown on malformed textual input. `where` is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t where)
      : std::runtime_error(what + " at offset " + std::to_string(where)),
        where_(where) {}
  std::size_t where() const noexcept { return where_; }

 private:
  std::size_t where_;
};

/// Thrown when a configured search budget runs out.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite multiset of generator indices, kept sorted. The empty position is
/// the ended game 0.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<std::uint32_t> parts);

  static Position single(std::uint32_t g) { return Position({g}); }

  std::span<const std::uint32_t> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  Position plus(const Position& other) const;
  Position plus(std::uint32_t g) const;
  /// Removes one copy of `g`; `g` must be present.
  Position minus(std::uint32_t g) const;
  /// Replaces one copy of `g` by the components of `replacement`.
  Position replace(std::uint32_t g, const Position& replacement) const;
  std::size_t count(std::uint32_t g) const;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<std::uint32_t> parts_;
};

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept;
};

/// A hereditarily closed family of games given by generators. Every option of
/// generator g is a position over generators with index strictly below g, so
/// the index order is well-founded.
struct GeneratorSystem {
  std::vector<std::string> labels;
  std::vector<std::vector<Position>> options;

  std::size_t size() const { return options.size(); }
  void add(std::string label, std::vector<Position> opts);
  /// Throws std::invalid_argument if some option mentions a generator that is
  /// not strictly earlier.
  void validate() const;
};

}  // namespace mq

#endif  // MQ_CORE_HPP_
