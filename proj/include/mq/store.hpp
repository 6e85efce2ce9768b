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

// Solution records (.mqsol files), the atlas of published results, and
// regression comparison.

#ifndef MQ_STORE_HPP_
#define MQ_STORE_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mq/monoid.hpp"
#include "mq/quotient.hpp"

namespace mq::store {

inline constexpr int kSchemaVersion = 1;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Provenance { kComputed, kPublished };

struct SolutionRecord {
  std::string source;  // octal code or game notation
  /// Set for partial quotients: heaps 1..n only.
  std::optional<std::uint32_t> partial_n;
  std::optional<std::uint32_t> period;
  std::optional<std::uint32_t> preperiod;
  std::optional<std::size_t> order;
  std::optional<std::size_t> p_order;
  std::optional<BipartiteMonoid> monoid;
  std::vector<Elem> generators;
  std::vector<Elem> phi_sequence;  // entry 0 is heap 0 for octal solutions
  std::optional<Classification> classification;
  Provenance provenance = Provenance::kComputed;
  std::string engine_version = kEngineVersion;
};

SolutionRecord record_from(const QuotientSolution& sol);

/// Deterministic text: sorted keys, two-space indent, integers only.
std::string to_text(const SolutionRecord& rec);
/// Throws SchemaError. A different schema_version adds a warning and the read
/// is attempted anyway.
SolutionRecord from_text(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Writes through a temporary file and a rename.
void save_solution(const SolutionRecord& rec, const std::filesystem::path& path);
SolutionRecord load_solution(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);

struct ComparisonReport {
  bool match = true;
  std::vector<std::string> differences;
  /// computed element -> fixture element, when both carry monoids.
  std::optional<std::vector<Elem>> isomorphism;
};

/// Numbers compare exactly, monoids up to isomorphism, and Φ-sequences through
/// that isomorphism over their common length.
ComparisonReport compare_with_fixture(const SolutionRecord& computed,
                                      const SolutionRecord& fixture);

/// Published rows: solved two- and three-digit octals (one representative
/// code per schema row), solved four-digit quaternary games, and partial
/// quotient orders of unsolved games.
const std::vector<SolutionRecord>& atlas();
std::optional<SolutionRecord> atlas_lookup(std::string_view source);

/// Full monoid fixtures.
SolutionRecord r8_fixture();
SolutionRecord tame_fixture(unsigned n);

/// A presentation over single-letter generators, checked element-wise.
/// Words look like "ab3" (a times b cubed); "1" is the identity.
struct PresentationFixture {
  std::string source;
  std::string letters;
  std::vector<std::pair<std::string, std::string>> relations;
  std::vector<std::string> p_words;
  std::vector<std::string> phi_words;  // heaps 1, 2, ...
};

const PresentationFixture& guiles_fixture();

/// Checks every relation, that P is exactly the listed words, and the listed
/// Φ-words, in m with generators[i] standing for letters[i].
ComparisonReport check_presentation(const BipartiteMonoid& m,
                                    const std::vector<Elem>& generators,
                                    const std::vector<Elem>& phi_from_heap1,
                                    const PresentationFixture& fx);

/// Evaluates a word such as "ab3"; throws ParseError on unknown letters.
Elem evaluate_word(const BipartiteMonoid& m, const std::vector<Elem>& generators,
                   std::string_view letters, std::string_view word);

}  // namespace mq::store

#endif  // MQ_STORE_HPP_
