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

#include "mq/octal.hpp"

#include <algorithm>

namespace mq::octal {

std::size_t OctalCode::last_nonzero_index() const {
  for (std::size_t k = digits.size(); k > 0; --k) {
    if (digits[k - 1] != 0) return k;
  }
  return 0;
}

std::string OctalCode::str() const {
  std::string s;
  s += static_cast<char>('0' + d0);
  s += '.';
  for (auto d : digits) s += static_cast<char>('0' + d);
  return s;
}

OctalCode parse_octal_code(std::string_view text) {
  OctalCode code;
  std::size_t i = 0;
  if (!text.empty() && text[0] == '.') {
    i = 1;
  } else {
    if (text.size() < 2 || text[1] != '.') {
      throw ParseError("octal code must look like D.DDD", 0);
    }
    char w = text[0];
    if (w != '0' && w != '4') {
      throw ParseError("whole-part digit must be 0 or 4", 0);
    }
    code.d0 = static_cast<std::uint8_t>(w - '0');
    i = 2;
  }
  if (i >= text.size()) throw ParseError("missing code digits", i);
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '7') throw ParseError("code digits must be 0-7", i);
    code.digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (code.d0 == 0 && code.last_nonzero_index() == 0) {
    throw ParseError("code has no nonzero digit", 0);
  }
  return code;
}

std::vector<HeapPosition> heap_options(const OctalCode& code, std::uint32_t n) {
  std::vector<HeapPosition> out;
  auto splits = [&](std::uint32_t rest) {
    for (std::uint32_t a = 1; 2 * a <= rest; ++a) out.push_back({a, rest - a});
  };
  if (code.d0 == 4) splits(n);
  const std::size_t top = std::min<std::size_t>(n, code.digits.size());
  for (std::size_t k = 1; k <= top; ++k) {
    std::uint8_t d = code.digits[k - 1];
    auto rest = static_cast<std::uint32_t>(n - k);
    if ((d & 1) && rest == 0) out.push_back({});
    if ((d & 2) && rest >= 1) out.push_back({rest});
    if ((d & 4) && rest >= 2) splits(rest);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> grundy_sequence(const OctalCode& code,
                                           std::uint32_t n_max) {
  std::vector<std::uint32_t> g(n_max + 1, 0);
  std::vector<char> seen;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    seen.assign(2 * n + 2, 0);
    auto mark = [&](std::uint32_t v) {
      if (v >= seen.size()) seen.resize(v + 1, 0);
      seen[v] = 1;
    };
    auto mark_splits = [&](std::uint32_t rest) {
      for (std::uint32_t a = 1; 2 * a <= rest; ++a) mark(g[a] ^ g[rest - a]);
    };
    if (code.d0 == 4) mark_splits(n);
    const std::size_t top = std::min<std::size_t>(n, code.digits.size());
    for (std::size_t k = 1; k <= top; ++k) {
      std::uint8_t d = code.digits[k - 1];
      auto rest = static_cast<std::uint32_t>(n - k);
      if ((d & 1) && rest == 0) mark(0);
      if ((d & 2) && rest >= 1) mark(g[rest]);
      if ((d & 4) && rest >= 2) mark_splits(rest);
    }
    std::uint32_t m = 0;
    while (m < seen.size() && seen[m]) ++m;
    g[n] = m;
  }
  return {g.begin() + 1, g.end()};
}

std::optional<Periodicity> normal_periodicity(
    const OctalCode& code, const std::vector<std::uint32_t>& values) {
  std::vector<std::uint32_t> seq;
  seq.reserve(values.size() + 1);
  seq.push_back(0);
  seq.insert(seq.end(), values.begin(), values.end());
  return find_periodicity(seq, code.last_nonzero_index());
}

void append_heap(GeneratorSystem& sys, const OctalCode& code, std::uint32_t n) {
  if (n != sys.size() + 1) throw std::invalid_argument("heaps must be appended in order");
  std::vector<Position> opts;
  for (const auto& hp : heap_options(code, n)) {
    std::vector<std::uint32_t> parts;
    for (auto h : hp) parts.push_back(h - 1);
    opts.emplace_back(std::move(parts));
  }
  sys.add(std::to_string(n), std::move(opts));
}

GeneratorSystem heap_system(const OctalCode& code, std::uint32_t n_max) {
  GeneratorSystem sys;
  for (std::uint32_t n = 1; n <= n_max; ++n) append_heap(sys, code, n);
  return sys;
}

}  // namespace mq::octal
