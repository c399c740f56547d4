// SPDX-License-Identifier: Apache-2.0
//
// ncgcp - complementary sequences for non-contiguous OFDM interlaces
// Copyright (C) 2026 The ncgcp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ncgcp/errors.hpp"
#include "ncgcp/golay.hpp"
#include "ncgcp/setsearch.hpp"
#include "ncgcp/spectrum.hpp"

namespace ncgcp::io {

using json = nlohmann::ordered_json;

/// Fixed-point text with `sig` significant digits; "-0" prints as "0".
inline std::string format_fixed(double v, int sig = 9) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0.0) return "0";
  const int mag = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const int decimals = std::max(0, sig - 1 - mag);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

/// v rounded to `sig` significant digits, for byte-stable JSON numbers.
inline double round_sig(double v, int sig = 9) { return std::isfinite(v) ? std::stod(format_fixed(v, sig)) : v; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot write file");
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Line on which each value starts, keyed by JSON pointer. Assumes the text
/// has already been accepted by the JSON parser.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

  std::size_t line(const std::string& pointer) const {
    const auto it = lines_.find(pointer);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::string_view(" \t\r\n").find(text_[pos_]) != std::string_view::npos) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') out += text_[pos_++];
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& ptr) {
    lines_[ptr] = line_;
    const char c = text_[pos_];
    if (c == '{' || c == '[') {
      ++pos_;
      std::size_t index = 0;
      for (;;) {
        skip_ws();
        if (text_[pos_] == '}' || text_[pos_] == ']') {
          ++pos_;
          return;
        }
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        std::string child;
        if (c == '{') {
          child = ptr + "/" + escape(string_token());
          skip_ws();
          ++pos_;  // ':'
          skip_ws();
        } else {
          child = ptr + "/" + std::to_string(index++);
        }
        value(child);
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

inline json to_json(const cplx& v) { return json::array({round_sig(v.real()), round_sig(v.imag())}); }

inline json to_json(const ComplexSequence& s) {
  json out = json::array();
  for (const auto& v : s) out.push_back(to_json(v));
  return out;
}

inline json to_json(const SparseSpectrum& s) {
  json entries = json::array();
  for (const auto& t : s.entries()) entries.push_back(json::array({t.index, to_json(t.value)}));
  return json{{"grid_size", s.grid_size()}, {"entries", std::move(entries)}};
}

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("expected a number or a [re, im] pair");
}

inline SparseSpectrum spectrum_from_json(const json& j) {
  try {
    std::vector<Tone> entries;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("spectrum entry must be [index, [re, im]]");
      entries.push_back({e[0].get<std::size_t>(), complex_from_json(e[1])});
    }
    return SparseSpectrum(j.at("grid_size").get<std::size_t>(), std::move(entries));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("spectrum: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(std::string("spectrum: ") + e.what());
  }
}

inline SparseSpectrum load_spectrum(const std::string& path) {
  const auto text = read_text(path);
  try {
    const auto j = json::parse(text);
    return spectrum_from_json(j.contains("spectrum") ? j.at("spectrum") : j);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

/// One imported sequence with its provenance inside the file.
struct ImportedSequence {
  std::string set;
  std::size_t index;
  std::size_t line;
  ComplexSequence values;
  std::optional<QuaternarySequence> symbols;
};

struct SequenceLibrary {
  std::string name;
  std::vector<std::string> set_names;
  std::vector<ImportedSequence> sequences;

  std::vector<const ImportedSequence*> set(const std::string& name) const {
    std::vector<const ImportedSequence*> out;
    for (const auto& s : sequences) {
      if (s.set == name) out.push_back(&s);
    }
    return out;
  }

  std::vector<ComplexSequence> values(const std::string& name) const {
    std::vector<ComplexSequence> out;
    for (const auto* s : set(name)) out.push_back(s->values);
    return out;
  }
};

inline constexpr double kUnimodularTolerance = 1e-6;

/// Reads symbol strings or [re, im] arrays from either a top-level array or
/// the array-valued members of a top-level object. Every entry must be
/// unimodular and all entries of a set must share one length.
inline SequenceLibrary parse_sequences(std::string_view text, const std::string& origin) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ValidationError(origin + ": empty file");
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  const LineIndex lines(text);
  const auto fail = [&](const std::string& ptr, const std::string& msg) {
    throw ValidationError(origin + ":" + std::to_string(lines.line(ptr)) + ": " + msg);
  };

  SequenceLibrary lib;
  std::vector<std::pair<std::string, const json*>> sets;
  if (doc.is_array()) {
    sets.emplace_back("sequences", &doc);
  } else if (doc.is_object()) {
    if (doc.contains("name") && doc["name"].is_string()) lib.name = doc["name"].get<std::string>();
    for (const auto& [key, val] : doc.items()) {
      if (val.is_array()) sets.emplace_back(key, &val);
    }
  } else {
    fail("", "expected an array or an object of arrays");
  }
  if (sets.empty()) fail("", "no sequence arrays found");

  for (const auto& [name, arr] : sets) {
    const std::string base = doc.is_array() ? "" : "/" + name;
    if (arr->empty()) fail(base, "set '" + name + "' is empty");
    lib.set_names.push_back(name);
    std::size_t length = 0;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ptr = base + "/" + std::to_string(i);
      const json& e = (*arr)[i];
      ImportedSequence seq{name, i, lines.line(ptr), {}, std::nullopt};
      if (e.is_string()) {
        try {
          seq.symbols = QuaternarySequence::parse(e.get<std::string>());
        } catch (const DomainError& err) {
          fail(ptr, err.what());
        }
        seq.values = seq.symbols->complex();
      } else if (e.is_array()) {
        if (e.empty()) fail(ptr, "empty sequence");
        std::vector<cplx> v;
        for (std::size_t k = 0; k < e.size(); ++k) {
          cplx x;
          try {
            x = complex_from_json(e[k]);
          } catch (const ValidationError& err) {
            fail(ptr + "/" + std::to_string(k), "element " + std::to_string(k) + ": " + err.what());
          }
          if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || std::abs(std::abs(x) - 1.0) > kUnimodularTolerance) {
            fail(ptr + "/" + std::to_string(k), "element " + std::to_string(k) + " is not unimodular (|x| = " +
                                                     format_fixed(std::abs(x)) + ")");
          }
          v.push_back(x);
        }
        seq.values = ComplexSequence(std::move(v));
      } else {
        fail(ptr, "entry must be a symbol string or an array of [re, im] pairs");
      }
      if (i == 0) length = seq.values.size();
      if (seq.values.size() != length) {
        fail(ptr, "length " + std::to_string(seq.values.size()) + " differs from the set's length " + std::to_string(length));
      }
      lib.sequences.push_back(std::move(seq));
    }
  }
  return lib;
}

inline SequenceLibrary load_sequences(const std::string& path) { return parse_sequences(read_text(path), path); }

inline json to_json(const SetSearchResult& r, const SetReport& report) {
  json c = json::array(), d = json::array(), log = json::array(), violations = json::array();
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    c.push_back(r.sets.c[i].str());
    d.push_back(r.sets.d[i].str());
  }
  for (const auto& a : r.log) {
    log.push_back({{"position", a.position}, {"seed_index", a.seed_index}, {"orbit", a.label.str()}});
  }
  for (const auto& v : report.violations) violations.push_back(v.str());
  return json{{"beta", r.sets.beta},
              {"u", r.sets.u},
              {"count", r.sets.size()},
              {"candidates_tested", r.candidates_tested},
              {"c", std::move(c)},
              {"d", std::move(d)},
              {"admission_log", std::move(log)},
              {"certificate",
               {{"max_c", round_sig(report.max_c)}, {"max_d", round_sig(report.max_d)}, {"violations", std::move(violations)}}}};
}

/// C and D sets from any file with "c" and "d" symbol-string arrays.
inline SequenceSetPair load_sets(const std::string& path, double beta, long u) {
  const auto lib = load_sequences(path);
  SequenceSetPair s;
  s.beta = beta;
  s.u = u;
  for (const auto* e : lib.set("c")) {
    if (!e->symbols) throw ValidationError(path + ":" + std::to_string(e->line) + ": set members must be symbol strings");
    s.c.push_back(*e->symbols);
  }
  for (const auto* e : lib.set("d")) {
    if (!e->symbols) throw ValidationError(path + ":" + std::to_string(e->line) + ": set members must be symbol strings");
    s.d.push_back(*e->symbols);
  }
  if (s.c.empty()) throw ValidationError(path + ": no 'c' set");
  return s;
}

/// GCP list as [[a, b], ...]; every pair is re-certified on load.
inline json pairs_to_json(const std::vector<QuaternaryPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back(json::array({p.a().str(), p.b().str()}));
  return out;
}

inline std::vector<QuaternaryPair> pairs_from_json(const json& arr, const std::string& origin) {
  std::vector<QuaternaryPair> out;
  try {
    for (const auto& e : arr) out.push_back(QuaternaryPair::parse(e.at(0).get<std::string>(), e.at(1).get<std::string>()));
  } catch (const json::exception& e) {
    throw ValidationError(origin + ": " + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return out;
}

/// Seed library file: {"pairs": [[a, b], ...]} or a sets file with "c"/"d".
inline std::vector<QuaternaryPair> load_seed_pairs(const std::string& path) {
  const auto text = read_text(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("pairs")) return pairs_from_json(doc["pairs"], path);
  const auto sets = load_sets(path, 1.0, 1);
  if (sets.c.size() != sets.d.size()) throw ValidationError(path + ": 'c' and 'd' differ in size");
  std::vector<QuaternaryPair> out;
  for (std::size_t i = 0; i < sets.c.size(); ++i) {
    auto p = QuaternaryPair::try_certify(sets.c[i], sets.d[i]);
    if (!p) throw ValidationError(path + ": pair " + std::to_string(i) + " is not complementary");
    out.push_back(*p);
  }
  return out;
}

/// Enumerated library cached on disk as <dir>/gcp-<length>.json.
inline std::vector<QuaternaryPair> cached_enumeration(std::size_t length, const std::string& dir, unsigned workers) {
  const std::string path = dir + "/gcp-" + std::to_string(length) + ".json";
  if (std::ifstream probe(path); probe) {
    const auto doc = json::parse(read_text(path));
    if (doc.value("length", std::size_t{0}) == length) {
      auto pairs = pairs_from_json(doc.at("pairs"), path);
      if (pairs.size() == doc.value("count", std::size_t{0})) return pairs;
    }
  }
  auto pairs = enumerate_gcps(length, workers);
  write_text(path, dump(json{{"length", length}, {"count", pairs.size()}, {"pairs", pairs_to_json(pairs)}}));
  return pairs;
}

}  // namespace ncgcp::io
