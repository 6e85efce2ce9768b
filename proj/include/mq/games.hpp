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

// Explicit impartial game trees.
//
// Trees are hash-consed into a process-wide, append-only table: a tree is a
// sorted, duplicate-free list of option ids, and two trees with the same option
// list share one id. Id 0 is always the game 0. Ids are never serialized.
//
// Star notation (Conway): "0" is the empty game; "*" is *1; "*X" where X is a
// single item is the game that item denotes; "*X1X2..." with two or more items
// is the game whose options are the games the items denote. Items are
//     item := atom ["#"]      atom := digit | "(" item+ ")"
// A digit n denotes the Nim-heap *n, "G#" is the game whose only option is G,
// and a parenthesised list follows the same one-item/many-item rule as "*".

#ifndef MQ_GAMES_HPP_
#define MQ_GAMES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mq/core.hpp"

namespace mq::games {

using GameId = std::uint32_t;

inline constexpr GameId kZero = 0;

/// Interns the game whose options are `options` (any order, duplicates ok).
GameId make_game(std::vector<GameId> options);

/// Options of g in canonical order (birthday, then id).
std::vector<GameId> options_of(GameId g);

std::uint32_t birthday(GameId g);

/// The Nim-heap *n, with options *0 ... *(n-1).
GameId nim_heap(std::uint32_t n);

/// Returns n when g is (structurally) the Nim-heap *n.
std::optional<std::uint32_t> as_nim_heap(GameId g);

/// Number of distinct trees interned so far.
std::size_t interned_count();

GameId parse_star_notation(std::string_view text);
std::string print_star_notation(GameId g);

/// mex of the option Grundy values.
std::uint32_t grundy_value(GameId g);

/// Misère outcome of the sum of the given components.
Outcome misere_outcome(std::span<const GameId> components);
/// Normal-play outcome of the sum: P iff the Grundy values XOR to zero.
Outcome normal_outcome(std::span<const GameId> components);

/// The hereditary closure of `roots` as a generator system: one generator per
/// distinct nonzero subgame, ordered by (birthday, id). Also returns the
/// game id behind every generator.
struct TreeSystem {
  GeneratorSystem system;
  std::vector<GameId> games;
};
TreeSystem closure_system(std::span<const GameId> roots);

}  // namespace mq::games

#endif  // MQ_GAMES_HPP_
