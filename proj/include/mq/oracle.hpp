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

// Independent brute-force referee: exact misère outcomes by recursion, bounded
// indistinguishability quotients, and the coin-sliding game on five boxes.

#ifndef MQ_ORACLE_HPP_
#define MQ_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mq/core.hpp"
#include "mq/monoid.hpp"

namespace mq::oracle {

/// Memoized misère outcomes over one generator system. Positions are keyed by
/// their packed count vectors. Safe to share between threads.
class OutcomeOracle {
 public:
  explicit OutcomeOracle(const GeneratorSystem& sys);

  Outcome outcome(const Position& pos);
  std::size_t memo_size() const;

 private:
  using Counts = std::vector<std::uint16_t>;
  struct CountsHash {
    std::size_t operator()(const Counts& c) const noexcept;
  };

  bool is_p(Counts& c);

  const GeneratorSystem& sys_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Counts, bool, CountsHash> memo_;
};

/// One-shot wrapper: no options means N, otherwise P iff every option is N.
Outcome brute_misere_outcome(const GeneratorSystem& sys, const Position& pos);

/// All positions with at most `bound` components, ordered by size and then
/// lexicographically. The first is the empty position.
std::vector<Position> positions_up_to(std::size_t generators, std::size_t bound);

/// Classes of the positions of size <= B, two positions being identified when
/// no witness of size <= B tells them apart.
struct BruteQuotient {
  std::vector<Position> positions;  // as from positions_up_to
  std::vector<Elem> class_of;       // per position
  std::vector<Position> representatives;  // first position of each class
  std::vector<Elem> phi;            // class of each single generator
  /// Present when sums of representatives land in known classes and the
  /// resulting table is a commutative monoid.
  std::optional<BipartiteMonoid> monoid;

  std::size_t classes() const { return representatives.size(); }
};
BruteQuotient brute_quotient(const GeneratorSystem& sys, std::size_t bound);

// Coin sliding on boxes A B C D E, coins moving one box left; coins on A, B, D
// and E may also drop off. A single coin on each box is
//   A = *, B = *2, C = *2#, D = *2#0, E = *(2#0)0.
struct CoinTuple {
  int i = 0, j = 0, k = 0, l = 0, m = 0;
  std::string str() const;
};

/// Dense outcome table for every tuple whose options stay inside the box
/// spanned by `max`.
class CoinSlide {
 public:
  explicit CoinSlide(CoinTuple max);

  Outcome outcome(const CoinTuple& t) const;
  const CoinTuple& max() const { return max_; }

 private:
  std::size_t index(int i, int j, int k, int l, int m) const;

  CoinTuple max_;
  int di_, dj_, dk_, dl_, dm_;
  std::vector<std::uint8_t> cell_;  // 0 unknown, 1 P, 2 N
};

Outcome coinslide_outcome(int i, int j, int k, int l, int m);

struct CoinRanges {
  int i = 1, j = 3, k = 4, l = 16, m = 20;
};

/// Outcome grids for k <= 2, l < 14, m < 18, one per (i, j parity, k).
/// Cell glyphs: '#' P for both j and j+2, 'x' P only for the larger j,
/// 'o' P only for the smaller j, '.' never P.
std::string coinslide_grid(const CoinSlide& table);

/// The grid frozen into the library.
const std::string& frozen_coinslide_grid();

struct ClaimCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

struct CoinSlideReport {
  std::vector<ClaimCheck> checks;
  bool all_passed() const;
};

CoinSlideReport verify_coinslide_claims(const CoinRanges& ranges = {});

}  // namespace mq::oracle

#endif  // MQ_ORACLE_HPP_
