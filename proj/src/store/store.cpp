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

#include "mq/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

namespace mq::store {

using nlohmann::json;

SolutionRecord record_from(const QuotientSolution& sol) {
  SolutionRecord r;
  r.source = sol.source;
  r.period = sol.period;
  r.preperiod = sol.preperiod;
  r.order = sol.monoid.size();
  r.p_order = sol.monoid.p_set().count();
  r.monoid = sol.monoid;
  r.generators = sol.generators;
  r.phi_sequence = sol.phi;
  return r;
}

namespace {

json monoid_json(const BipartiteMonoid& m) {
  json j;
  j["size"] = m.size();
  j["identity"] = m.identity();
  j["mul"] = m.table();
  std::vector<Elem> p;
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.in_p(x)) p.push_back(x);
  }
  j["p_set"] = p;
  j["names"] = m.names();
  return j;
}

json classification_json(const Classification& c) {
  json j;
  j["tame_index"] = c.tame_index ? json(*c.tame_index) : json(nullptr);
  j["regular"] = c.regular;
  j["normal"] = c.normal;
  j["kernel_order"] = c.kernel_order;
  j["p_order"] = c.p_order;
  j["faithful"] = c.faithful;
  j["faithful_checked_to"] = {{"max_parts", c.faithful_checked_to.max_parts},
                              {"max_heap", c.faithful_checked_to.max_heap}};
  j["positions_checked"] = c.positions_checked;
  j["correspondence"] = c.correspondence;
  if (c.normal_periodicity) {
    j["normal_periodicity"] = {{"period", c.normal_periodicity->period},
                               {"preperiod", c.normal_periodicity->preperiod}};
  } else {
    j["normal_periodicity"] = nullptr;
  }
  j["normal_period_divides"] = c.normal_period_divides;
  j["notes"] = c.notes;
  return j;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key);
}

BipartiteMonoid monoid_from(const json& j) {
  const auto n = field<std::size_t>(j, "size");
  auto mul = field<std::vector<Elem>>(j, "mul");
  const auto id = field<Elem>(j, "identity");
  auto p = field<std::vector<Elem>>(j, "p_set");
  auto names = optional_field<std::vector<std::string>>(j, "names").value_or(
      std::vector<std::string>{});
  if (n == 0 || mul.size() != n * n || id >= n) throw SchemaError("monoid table has wrong shape");
  ElementSet ps(n);
  for (Elem x : p) {
    if (x >= n) throw SchemaError("p_set element out of range");
    ps.set(x);
  }
  for (Elem x : mul) {
    if (x >= n) throw SchemaError("table entry out of range");
  }
  if (!names.empty() && names.size() != n) throw SchemaError("names has wrong length");
  try {
    BipartiteMonoid m(n, std::move(mul), id, std::move(ps), std::move(names));
    m.validate();
    return m;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("invalid monoid: ") + e.what());
  }
}

Classification classification_from(const json& j) {
  Classification c;
  c.tame_index = optional_field<unsigned>(j, "tame_index");
  c.regular = field<bool>(j, "regular");
  c.normal = field<bool>(j, "normal");
  c.kernel_order = field<std::size_t>(j, "kernel_order");
  c.p_order = field<std::size_t>(j, "p_order");
  c.faithful = field<bool>(j, "faithful");
  const json& b = j.at("faithful_checked_to");
  c.faithful_checked_to = {field<std::uint32_t>(b, "max_parts"),
                           field<std::uint32_t>(b, "max_heap")};
  c.positions_checked = field<std::size_t>(j, "positions_checked");
  c.correspondence = field<bool>(j, "correspondence");
  if (j.contains("normal_periodicity") && !j.at("normal_periodicity").is_null()) {
    const json& np = j.at("normal_periodicity");
    c.normal_periodicity = octal::Periodicity{field<std::uint32_t>(np, "preperiod"),
                                              field<std::uint32_t>(np, "period")};
  }
  c.normal_period_divides = field<bool>(j, "normal_period_divides");
  c.notes = field<std::vector<std::string>>(j, "notes");
  return c;
}

}  // namespace

std::string to_text(const SolutionRecord& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["engine_version"] = r.engine_version;
  j["source"] = r.source;
  j["provenance"] = r.provenance == Provenance::kComputed ? "computed" : "published";
  auto put = [&](const char* key, const auto& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put("partial_n", r.partial_n);
  put("period", r.period);
  put("preperiod", r.preperiod);
  put("order", r.order);
  put("p_order", r.p_order);
  j["monoid"] = r.monoid ? monoid_json(*r.monoid) : json(nullptr);
  j["generators"] = r.generators;
  j["phi_sequence"] = r.phi_sequence;
  j["classification"] = r.classification ? classification_json(*r.classification) : json(nullptr);
  return j.dump(2) + "\n";
}

SolutionRecord from_text(std::string_view text, std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not a solution document: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("not a solution document: top level is not an object");
  const int version = field<int>(j, "schema_version");
  if (version != kSchemaVersion && warnings) {
    warnings->push_back("schema_version " + std::to_string(version) + " differs from " +
                        std::to_string(kSchemaVersion) + "; reading anyway");
  }
  SolutionRecord r;
  r.engine_version = field<std::string>(j, "engine_version");
  r.source = field<std::string>(j, "source");
  const auto prov = field<std::string>(j, "provenance");
  if (prov == "computed") {
    r.provenance = Provenance::kComputed;
  } else if (prov == "published") {
    r.provenance = Provenance::kPublished;
  } else {
    throw SchemaError("unknown provenance '" + prov + "'");
  }
  r.partial_n = optional_field<std::uint32_t>(j, "partial_n");
  r.period = optional_field<std::uint32_t>(j, "period");
  r.preperiod = optional_field<std::uint32_t>(j, "preperiod");
  r.order = optional_field<std::size_t>(j, "order");
  r.p_order = optional_field<std::size_t>(j, "p_order");
  if (j.contains("monoid") && !j.at("monoid").is_null()) r.monoid = monoid_from(j.at("monoid"));
  r.generators = field<std::vector<Elem>>(j, "generators");
  r.phi_sequence = field<std::vector<Elem>>(j, "phi_sequence");
  if (j.contains("classification") && !j.at("classification").is_null()) {
    try {
      r.classification = classification_from(j.at("classification"));
    } catch (const json::exception& e) {
      throw SchemaError(std::string("bad classification: ") + e.what());
    }
  }
  if (r.monoid) {
    const std::size_t n = r.monoid->size();
    auto in_range = [n](Elem x) { return x < n; };
    if (!std::all_of(r.phi_sequence.begin(), r.phi_sequence.end(), in_range) ||
        !std::all_of(r.generators.begin(), r.generators.end(), in_range)) {
      throw SchemaError("element index out of range");
    }
    if (r.order && *r.order != n) throw SchemaError("order disagrees with the monoid");
  } else if (!r.phi_sequence.empty() || !r.generators.empty()) {
    throw SchemaError("element indices without a monoid");
  }
  return r;
}

void save_solution(const SolutionRecord& rec, const std::filesystem::path& path) {
  const std::string text = to_text(rec);
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
  }
}

SolutionRecord load_solution(const std::filesystem::path& path,
                             std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), warnings);
}

namespace {

// The map sending products of c's Phi values to the matching products of f's.
struct PhiMap {
  enum Status { kIsomorphism, kConflict, kUndetermined } status = kUndetermined;
  std::vector<Elem> map;
};

PhiMap map_along_phi(const BipartiteMonoid& c, const BipartiteMonoid& f,
                     const std::vector<Elem>& pc, const std::vector<Elem>& pf,
                     std::size_t len) {
  constexpr Elem kUnset = ~Elem{0};
  PhiMap out;
  out.map.assign(c.size(), kUnset);
  out.map[c.identity()] = f.identity();
  std::vector<Elem> queue{c.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t n = 0; n < len; ++n) {
      const Elem cx = c.mul(x, pc[n]), fx = f.mul(out.map[x], pf[n]);
      if (out.map[cx] == kUnset) {
        out.map[cx] = fx;
        queue.push_back(cx);
      } else if (out.map[cx] != fx) {
        out.status = PhiMap::kConflict;
        return out;
      }
    }
  }
  if (queue.size() != c.size()) return out;  // Phi does not generate c
  std::vector<bool> hit(f.size(), false);
  for (Elem y : out.map) hit[y] = true;
  const bool onto = c.size() == f.size() && std::find(hit.begin(), hit.end(), false) == hit.end();
  out.status = onto && is_homomorphism(c, f, out.map) ? PhiMap::kIsomorphism : PhiMap::kConflict;
  return out;
}

}  // namespace

ComparisonReport compare_with_fixture(const SolutionRecord& c, const SolutionRecord& f) {
  ComparisonReport rep;
  auto differ = [&](std::string what) {
    rep.match = false;
    rep.differences.push_back(std::move(what));
  };
  if (c.source != f.source) differ("source " + c.source + " vs " + f.source);
  auto cmp = [&](const char* name, const auto& a, const auto& b) {
    if (a && b && *a != *b) {
      differ(std::string(name) + " " + std::to_string(*a) + " vs " + std::to_string(*b));
    }
  };
  cmp("partial_n", c.partial_n, f.partial_n);
  cmp("period", c.period, f.period);
  cmp("preperiod", c.preperiod, f.preperiod);
  cmp("order", c.order, f.order);
  cmp("p_order", c.p_order, f.p_order);
  if (c.monoid && f.monoid) {
    const std::size_t len = std::min(c.phi_sequence.size(), f.phi_sequence.size());
    const PhiMap pm = map_along_phi(*c.monoid, *f.monoid, c.phi_sequence, f.phi_sequence, len);
    if (pm.status == PhiMap::kIsomorphism) {
      rep.isomorphism = pm.map;
    } else if (pm.status == PhiMap::kConflict) {
      differ("phi sequences induce no isomorphism");
    } else {
      rep.isomorphism = is_isomorphic(*c.monoid, *f.monoid);
      if (!rep.isomorphism) {
        differ("monoids are not isomorphic");
      } else {
        for (std::size_t n = 0; n < len; ++n) {
          if ((*rep.isomorphism)[c.phi_sequence[n]] != f.phi_sequence[n]) {
            differ("phi differs at heap " + std::to_string(n));
            break;
          }
        }
      }
    }
  }
  return rep;
}

namespace {

SolutionRecord row(std::string code, std::uint32_t pd, std::uint32_t ppd, std::size_t order) {
  SolutionRecord r;
  r.source = std::move(code);
  r.period = pd;
  r.preperiod = ppd;
  r.order = order;
  r.provenance = Provenance::kPublished;
  return r;
}

SolutionRecord partial_row(std::string code, std::uint32_t n, std::size_t order) {
  SolutionRecord r;
  r.source = std::move(code);
  r.partial_n = n;
  r.order = order;
  r.provenance = Provenance::kPublished;
  return r;
}

}  // namespace

const std::vector<SolutionRecord>& atlas() {
  static const std::vector<SolutionRecord> rows = [] {
    std::vector<SolutionRecord> v = {
        // Wild two- and three-digit octals.
        row("0.15", 10, 66, 42), row("0.34", 8, 7, 12), row("0.44", 24, 143, 40),
        row("0.53", 9, 21, 16), row("0.71", 6, 3, 36), row("0.72", 4, 16, 24),
        row("0.75", 2, 8, 8), row("0.77", 12, 71, 40), row("4.4", 12, 71, 40),
        row("0.044", 24, 142, 40), row("0.074", 24, 142, 40), row("0.115", 14, 92, 42),
        row("0.123", 5, 5, 20), row("0.144", 10, 12, 30), row("0.152", 48, 25, 34),
        row("0.153", 14, 32, 16), row("0.241", 10, 4, 36), row("0.315", 10, 4, 36),
        row("0.351", 8, 4, 22), row("0.512", 6, 16, 8), row("0.644", 442, 3255, 172),
        row("0.712", 6, 3, 14), row("0.716", 2, 22, 14), row("4.56", 4, 11, 8),
        row("4.74", 2, 8, 8),
        // Wild four-digit quaternary games.
        row("0.0122", 7, 8, 20), row("0.1023", 7, 6, 20), row("0.1032", 7, 8, 20),
        row("0.1033", 7, 7, 20), row("0.1231", 5, 5, 20), row("0.1232", 6, 6, 46),
        row("0.1321", 5, 6, 20), row("0.1323", 6, 7, 46), row("0.1331", 5, 5, 20),
        row("0.2012", 5, 4, 20), row("0.3101", 2, 5, 14), row("0.3103", 5, 3, 20),
        row("0.3112", 5, 6, 20), row("0.3131", 2, 7, 12),
        partial_row("0.3102", 11, 74), partial_row("0.3122", 6, 52),
        partial_row("0.3123", 11, 328), partial_row("0.3312", 13, 264),
        // Unsolved two-digit octals.
        partial_row("0.04", 44, 864), partial_row("0.06", 15, 48), partial_row("0.07", 33, 638),
        partial_row("0.14", 20, 96), partial_row("0.16", 17, 434), partial_row("0.35", 35, 3182),
        partial_row("0.36", 20, 304), partial_row("0.37", 15, 304), partial_row("0.4", 34, 638),
        partial_row("0.45", 26, 550), partial_row("0.6", 16, 304), partial_row("0.64", 13, 346),
        partial_row("0.74", 14, 74), partial_row("0.76", 11, 34),
    };
    v[0].p_order = 12;
    return v;
  }();
  return rows;
}

std::optional<SolutionRecord> atlas_lookup(std::string_view source) {
  for (const auto& r : atlas()) {
    if (r.source == source) return r;
  }
  return std::nullopt;
}

namespace {

SolutionRecord monoid_fixture(std::string source, BipartiteMonoid m) {
  SolutionRecord r;
  r.source = std::move(source);
  r.order = m.size();
  r.p_order = m.p_set().count();
  r.monoid = std::move(m);
  r.provenance = Provenance::kPublished;
  return r;
}

}  // namespace

SolutionRecord r8_fixture() { return monoid_fixture("R8", make_r8()); }

SolutionRecord tame_fixture(unsigned n) {
  return monoid_fixture("T" + std::to_string(n), make_tame(n));
}

const PresentationFixture& guiles_fixture() {
  static const PresentationFixture fx = [] {
    PresentationFixture f;
    f.source = "0.15";
    f.letters = "abcdefghi";
    const char* rels =
        "a2=1,b4=b2,bc=ab3,c2=b2,b2d=d,cd=ad,d3=ad2,b2e=b3,de=bd,be2=ace,ce2=abe,"
        "e4=e2,bf=b3,df=d,ef=ace,cf2=cf,f3=f2,b2g=b3,cg=ab3,dg=bd,eg=be,fg=b3,g2=bg,"
        "bh=bg,ch=ab3,dh=bd,eh=bg,fh=b3,gh=bg,h2=b2,bi=bg,ci=ab3,di=bd,ei=be,fi=b3,"
        "gi=bg,hi=b2,i2=b2";
    std::stringstream rs(rels);
    for (std::string item; std::getline(rs, item, ',');) {
      const auto eq = item.find('=');
      f.relations.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    f.p_words = {"a", "b2", "bd", "d2", "ae", "ae2", "ae3", "af", "af2", "ag", "ah", "ai"};
    std::stringstream ps(
        "a a 1 a a b b a b b a a 1 c c b b d b e c c f c c b g d h i ab2 abg f abg abe b3 h d "
        "h h ab2 abe f2 abg abg b3 h d h h ab2 abg f2 abg abg b3 b3 d b3 b3 ab2 abg f2 abg abg "
        "b3 b3 d b3 b3 ab2 ab2 f2 ab2 ab2 b3 b3 d b3 b3 ab2 ab2 f2 ab2 ab2");
    for (std::string w; ps >> w;) f.phi_words.push_back(w);
    return f;
  }();
  return fx;
}

Elem evaluate_word(const BipartiteMonoid& m, const std::vector<Elem>& generators,
                   std::string_view letters, std::string_view word) {
  Elem x = m.identity();
  if (word == "1") return x;
  std::size_t i = 0;
  while (i < word.size()) {
    const auto pos = letters.find(word[i]);
    if (pos == std::string_view::npos || pos >= generators.size()) {
      throw ParseError(std::string("unknown letter '") + word[i] + "'", i);
    }
    std::size_t j = i + 1;
    std::size_t e = 0;
    while (j < word.size() && std::isdigit(static_cast<unsigned char>(word[j]))) {
      e = e * 10 + static_cast<std::size_t>(word[j] - '0');
      ++j;
    }
    if (j == i + 1) e = 1;
    x = m.mul(x, m.pow(generators[pos], e));
    i = j;
  }
  return x;
}

ComparisonReport check_presentation(const BipartiteMonoid& m,
                                    const std::vector<Elem>& generators,
                                    const std::vector<Elem>& phi_from_heap1,
                                    const PresentationFixture& fx) {
  ComparisonReport rep;
  auto differ = [&](std::string what) {
    rep.match = false;
    rep.differences.push_back(std::move(what));
  };
  if (generators.size() != fx.letters.size()) {
    differ("expected " + std::to_string(fx.letters.size()) + " generators, got " +
           std::to_string(generators.size()));
    return rep;
  }
  auto eval = [&](const std::string& w) { return evaluate_word(m, generators, fx.letters, w); };
  for (const auto& [lhs, rhs] : fx.relations) {
    if (eval(lhs) != eval(rhs)) differ("relation " + lhs + "=" + rhs + " fails");
  }
  ElementSet listed(m.size());
  for (const auto& w : fx.p_words) listed.set(eval(w));
  if (listed != m.p_set()) differ("P-portion differs from the listed words");
  const std::size_t len = std::min(fx.phi_words.size(), phi_from_heap1.size());
  for (std::size_t n = 0; n < len; ++n) {
    if (eval(fx.phi_words[n]) != phi_from_heap1[n]) {
      differ("phi of heap " + std::to_string(n + 1) + " is not " + fx.phi_words[n]);
    }
  }
  return rep;
}

}  // namespace mq::store
