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

// Octal heap games: code strings, heap moves, Grundy sequences, periodicity.

#ifndef MQ_OCTAL_HPP_
#define MQ_OCTAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mq/core.hpp"

namespace mq::octal {

/// Code d0.d1d2...dk. Digit d_k says what may be done after removing k
/// tokens from a heap: bit 1 leave nothing, bit 2 leave one heap, bit 4 leave
/// two heaps. d0 is 0 or 4 (split a heap without removing anything).
struct OctalCode {
  std::uint8_t d0 = 0;
  std::vector<std::uint8_t> digits;  // digits[0] is d1

  /// Index of the last nonzero digit (d0 counts as index 0).
  std::size_t last_nonzero_index() const;
  std::uint8_t digit(std::size_t k) const {
    return k == 0 ? d0 : (k <= digits.size() ? digits[k - 1] : 0);
  }
  std::string str() const;

  friend bool operator==(const OctalCode&, const OctalCode&) = default;
};

/// Accepts "0.75", "4.7", and ".75" (short for "0.75").
OctalCode parse_octal_code(std::string_view text);

/// Multiset of positive heap sizes, ascending.
using HeapPosition = std::vector<std::uint32_t>;

/// All positions reachable in one move from a single heap of size n >= 1,
/// deduplicated and sorted.
std::vector<HeapPosition> heap_options(const OctalCode& code, std::uint32_t n);

/// Grundy values of heaps 1..n_max (entry i is heap i+1).
std::vector<std::uint32_t> grundy_sequence(const OctalCode& code,
                                           std::uint32_t n_max);

struct Periodicity {
  std::uint32_t preperiod = 0;
  std::uint32_t period = 0;
  friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

/// Smallest period p (then smallest preperiod n0) such that
/// seq[n+p] == seq[n] for all n0 <= n < 2*n0 + p + d, using only indices that
/// exist in seq. seq[0] is the value of the empty heap.
template <typename T>
std::optional<Periodicity> find_periodicity(const std::vector<T>& seq,
                                            std::size_t d) {
  const std::size_t len = seq.size();
  std::vector<std::size_t> bad_prefix;
  for (std::size_t p = 1; p < len; ++p) {
    // bad_prefix[n] = number of mismatches seq[i+p] != seq[i] with i < n.
    bad_prefix.assign(len - p + 1, 0);
    for (std::size_t i = 0; i + p < len; ++i) {
      bad_prefix[i + 1] = bad_prefix[i] + (seq[i + p] == seq[i] ? 0 : 1);
    }
    for (std::size_t n0 = 0;; ++n0) {
      std::size_t end = 2 * n0 + p + d;  // exclusive bound on n
      if (end - 1 + p >= len) break;
      if (bad_prefix[end] == bad_prefix[n0]) {
        return Periodicity{static_cast<std::uint32_t>(n0),
                           static_cast<std::uint32_t>(p)};
      }
    }
  }
  return std::nullopt;
}

/// Normal-play periodicity of `values` (heaps 1..N as from grundy_sequence).
std::optional<Periodicity> normal_periodicity(
    const OctalCode& code, const std::vector<std::uint32_t>& values);

/// Heaps 1..n_max as a generator system; heap n is generator n-1.
GeneratorSystem heap_system(const OctalCode& code, std::uint32_t n_max);

/// Appends heap `n` (which must equal sys.size()+1) to a heap system.
void append_heap(GeneratorSystem& sys, const OctalCode& code, std::uint32_t n);

}  // namespace mq::octal

#endif  // MQ_OCTAL_HPP_
