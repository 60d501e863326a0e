// Copyright 2026 The ZECS Toolkit Authors
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

// File formats. All JSON output is canonical: keys sorted, floats in their
// shortest round-trip form, one trailing newline. Parsing a canonical file
// and writing it back reproduces it byte for byte.

#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zecs/diagnostics.hpp"
#include "zecs/error.hpp"
#include "zecs/layout.hpp"
#include "zecs/perturbation.hpp"
#include "zecs/routing.hpp"
#include "zecs/simulator.hpp"

namespace zecs::io {

using Json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + path);
  out << text;
}

inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

namespace detail {

template <class T>
T get(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, what + ": bad \"" + key + "\": " + e.what());
  }
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) return std::nullopt;
  return get<T>(j, key, what);
}

inline void require_format(const Json& j, const std::string& format, const std::string& what) {
  if (get<std::string>(j, "format", what) != format) {
    throw Error(ErrorCode::ParseError, what + ": expected format \"" + format + "\"");
  }
  if (get<int>(j, "version", what) != 1) throw Error(ErrorCode::ParseError, what + ": unsupported version");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Snapshot records (JSON lines)

enum class Endianness { Q0Leftmost, Q0Rightmost };

inline std::string to_string(Endianness e) { return e == Endianness::Q0Leftmost ? "q0-leftmost" : "q0-rightmost"; }

inline Endianness endianness_from_string(const std::string& s) {
  if (s == "q0-leftmost") return Endianness::Q0Leftmost;
  if (s == "q0-rightmost") return Endianness::Q0Rightmost;
  throw Error(ErrorCode::BadConfig, "unknown endianness '" + s + "'");
}

struct SnapshotHeader {
  int n_qubits = 0;
  Endianness endianness = Endianness::Q0Leftmost;
};

/// Records are held with qubit 0 leftmost whatever the file convention.
struct SnapshotFile {
  std::optional<SnapshotHeader> header;
  std::vector<SnapshotRecord> records;
};

/// `fallback` applies to files without a header line.
inline SnapshotFile parse_snapshots(const std::string& text, Endianness fallback = Endianness::Q0Leftmost,
                                    const std::string& source = "snapshots") {
  SnapshotFile file;
  Endianness order = fallback;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> width;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(ErrorCode::ParseError, where + ": empty line");
    }
    const Json j = parse_json(line, where);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object");
    if (j.contains("format")) {
      if (line_no != 1) throw Error(ErrorCode::ParseError, where + ": header must be the first line");
      detail::require_format(j, "zecs-snapshots", where);
      SnapshotHeader h;
      h.n_qubits = detail::get<int>(j, "n_qubits", where);
      if (h.n_qubits < 1) throw Error(ErrorCode::ParseError, where + ": n_qubits must be >= 1");
      try {
        h.endianness = endianness_from_string(detail::get<std::string>(j, "endianness", where));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
      }
      order = h.endianness;
      width = static_cast<std::size_t>(h.n_qubits);
      file.header = h;
      continue;
    }
    SnapshotRecord r{detail::get<std::string>(j, "bases", where), detail::get<std::string>(j, "bits", where),
                     detail::get<std::string>(j, "circuit_id", where)};
    if (r.bases.size() != r.bits.size()) throw Error(ErrorCode::ParseError, where + ": bases/bits length mismatch");
    if (!width) width = r.bases.size();
    if (r.bases.size() != *width) {
      throw Error(ErrorCode::ParseError, where + ": expected " + std::to_string(*width) + " qubits, got " +
                                             std::to_string(r.bases.size()));
    }
    if (r.bases.find_first_not_of("XYZ") != std::string::npos) {
      throw Error(ErrorCode::ParseError, where + ": basis characters must be X, Y or Z");
    }
    if (r.bits.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::ParseError, where + ": bit characters must be 0 or 1");
    }
    if (order == Endianness::Q0Rightmost) {
      std::reverse(r.bases.begin(), r.bases.end());
      std::reverse(r.bits.begin(), r.bits.end());
    }
    file.records.push_back(std::move(r));
  }
  return file;
}

inline std::string write_snapshots(const SnapshotFile& file) {
  std::string out;
  const Endianness order = file.header ? file.header->endianness : Endianness::Q0Leftmost;
  if (file.header) {
    out += Json{{"format", "zecs-snapshots"},
                {"version", 1},
                {"n_qubits", file.header->n_qubits},
                {"endianness", to_string(order)}}
               .dump();
    out += '\n';
  }
  for (const auto& r : file.records) {
    SnapshotRecord w = r;
    if (order == Endianness::Q0Rightmost) {
      std::reverse(w.bases.begin(), w.bases.end());
      std::reverse(w.bits.begin(), w.bits.end());
    }
    out += Json{{"bases", w.bases}, {"bits", w.bits}, {"circuit_id", w.circuit_id}}.dump();
    out += '\n';
  }
  return out;
}

inline SnapshotFile make_snapshot_file(std::vector<SnapshotRecord> records, int n_qubits,
                                       Endianness order = Endianness::Q0Leftmost) {
  return {SnapshotHeader{n_qubits, order}, std::move(records)};
}

// ---------------------------------------------------------------------------
// Diagnostic reports

inline Json to_json(const ReportEntry& e) {
  Json j{{"kind", to_string(e.kind)},
         {"qubits", e.qubits},
         {"infidelity_cs", e.infidelity_cs},
         {"infidelity_zecs", e.infidelity_zecs}};
  if (e.trace_distance) j["trace_distance"] = *e.trace_distance;
  if (e.trace_distance_cs) j["trace_distance_cs"] = *e.trace_distance_cs;
  if (e.s_ab) j["s_ab"] = *e.s_ab;
  if (e.s_ab_normalized) j["s_ab_normalized"] = *e.s_ab_normalized;
  if (e.degenerate_flag) j["degenerate_flag"] = *e.degenerate_flag;
  if (e.clamp_magnitude) j["clamp_magnitude"] = *e.clamp_magnitude;
  if (e.spectrum) j["spectrum"] = *e.spectrum;
  return j;
}

inline Json to_json(const DiagnosticReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"format", "zecs-report"}, {"version", 1}, {"entropy_norm", to_string(r.entropy_norm)}, {"entries", entries}};
}

inline DiagnosticReport report_from_json(const Json& j, const std::string& what = "report") {
  detail::require_format(j, "zecs-report", what);
  DiagnosticReport r;
  try {
    r.entropy_norm = entropy_norm_from_string(detail::get<std::string>(j, "entropy_norm", what));
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
  const Json entries = detail::get<Json>(j, "entries", what);
  if (!entries.is_array()) throw Error(ErrorCode::ParseError, what + ": entries must be an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& x = entries[i];
    const std::string where = what + " entry " + std::to_string(i);
    ReportEntry e;
    try {
      e.kind = subsystem_kind_from_string(detail::get<std::string>(x, "kind", where));
    } catch (const Error& err) {
      throw Error(ErrorCode::ParseError, where + ": " + err.what());
    }
    e.qubits = detail::get<std::vector<int>>(x, "qubits", where);
    if (e.qubits.size() != expected_size(e.kind)) throw Error(ErrorCode::ParseError, where + ": wrong qubit count");
    e.infidelity_cs = detail::get<double>(x, "infidelity_cs", where);
    e.infidelity_zecs = detail::get<double>(x, "infidelity_zecs", where);
    e.trace_distance = detail::get_optional<double>(x, "trace_distance", where);
    e.trace_distance_cs = detail::get_optional<double>(x, "trace_distance_cs", where);
    e.s_ab = detail::get_optional<double>(x, "s_ab", where);
    e.s_ab_normalized = detail::get_optional<double>(x, "s_ab_normalized", where);
    e.degenerate_flag = detail::get_optional<bool>(x, "degenerate_flag", where);
    e.clamp_magnitude = detail::get_optional<double>(x, "clamp_magnitude", where);
    e.spectrum = detail::get_optional<std::vector<double>>(x, "spectrum", where);
    r.entries.push_back(std::move(e));
  }
  return r;
}

inline DiagnosticReport parse_report(const std::string& text, const std::string& what = "report") {
  return report_from_json(parse_json(text, what), what);
}

inline std::string write_report(const DiagnosticReport& r) { return canonical(to_json(r)); }

// ---------------------------------------------------------------------------
// Layouts

inline Json to_json(const DeviceLayout& layout) {
  Json edges = Json::array();
  for (const auto& [a, b] : layout.edges()) edges.push_back({a, b});
  return {{"num_qubits", layout.num_qubits()}, {"edges", edges}};
}

inline DeviceLayout layout_from_json(const Json& j, const std::string& what = "layout") {
  const int n = detail::get<int>(j, "num_qubits", what);
  const auto raw = detail::get<std::vector<std::vector<int>>>(j, "edges", what);
  std::vector<QubitPair> edges;
  for (const auto& e : raw) {
    if (e.size() != 2) throw Error(ErrorCode::ParseError, what + ": each edge needs two qubits");
    edges.emplace_back(e[0], e[1]);
  }
  return DeviceLayout(n, std::move(edges));
}

inline DeviceLayout parse_layout(const std::string& text, const std::string& what = "layout") {
  return layout_from_json(parse_json(text, what), what);
}

// ---------------------------------------------------------------------------
// Circuit specifications
//
// {"n_qubits": N, "blocks": [
//    {"qubits": [..], "reps": r, "params": [..]}           EfficientSU2
//    {"qubits": [..], "reps": r, "param_seed": s}          EfficientSU2, random params
//    {"qubits": [..], "gates": [{"kind": "RY", "target": 0, "angle": 1.2},
//                               {"kind": "CNOT", "control": 0, "target": 1}]}]}
// Gate and parameter qubit indices are local to the block. Qubits outside
// every block idle in |0>.

inline Gate gate_from_json(const Json& g, const std::string& where) {
  const auto kind = detail::get<std::string>(g, "kind", where);
  const int target = detail::get<int>(g, "target", where);
  if (kind == "RY") return Gate::ry(target, detail::get<double>(g, "angle", where));
  if (kind == "RZ") return Gate::rz(target, detail::get<double>(g, "angle", where));
  if (kind == "CNOT") return Gate::cnot(detail::get<int>(g, "control", where), target);
  throw Error(ErrorCode::BadConfig, where + ": unknown gate kind '" + kind + "'");
}

inline ProductState circuit_spec_from_json(const Json& j, const std::string& what = "circuit") {
  const int n = detail::get<int>(j, "n_qubits", what);
  if (n < 1) throw Error(ErrorCode::BadConfig, what + ": n_qubits must be >= 1");
  ProductState device(n);
  const Json blocks = detail::get<Json>(j, "blocks", what);
  if (!blocks.is_array()) throw Error(ErrorCode::BadConfig, what + ": blocks must be an array");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Json& x = blocks[b];
    const std::string where = what + " block " + std::to_string(b);
    const auto qubits = detail::get<std::vector<int>>(x, "qubits", where);
    const int k = static_cast<int>(qubits.size());
    if (k < 1 || k > 12) throw Error(ErrorCode::BadConfig, where + ": blocks hold 1 to 12 qubits");
    Circuit c(k);
    if (x.contains("gates")) {
      for (const auto& g : detail::get<Json>(x, "gates", where)) c.add(gate_from_json(g, where));
    } else {
      const int reps = detail::get<int>(x, "reps", where);
      std::vector<double> params;
      if (x.contains("params")) {
        params = detail::get<std::vector<double>>(x, "params", where);
      } else {
        Rng rng(detail::get<std::uint64_t>(x, "param_seed", where));
        params = random_efficient_su2_params(k, reps, rng);
      }
      c = build_efficient_su2(k, reps, params);
    }
    device.add_block(qubits, run(c));
  }
  return device;
}

inline ProductState parse_circuit_spec(const std::string& text, const std::string& what = "circuit") {
  return circuit_spec_from_json(parse_json(text, what), what);
}

/// {"subsystems": [{"kind": "pair", "qubits": [0, 1]}, ...]}
inline std::vector<SubsystemSpec> subsystems_from_json(const Json& j, const std::string& what = "subsystems") {
  const Json list = detail::get<Json>(j, "subsystems", what);
  std::vector<SubsystemSpec> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = what + " entry " + std::to_string(i);
    SubsystemSpec s;
    s.kind = subsystem_kind_from_string(detail::get<std::string>(list[i], "kind", where));
    s.qubits = detail::get<std::vector<int>>(list[i], "qubits", where);
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Results

inline Json to_json(const ChainSolution& s) {
  return {{"format", "zecs-chain"},
          {"version", 1},
          {"qubits", s.qubits},
          {"cost", s.cost},
          {"mean_fidelity", s.mean_fidelity},
          {"mean_entropy", s.mean_entropy},
          {"approximate", s.approximate}};
}

inline Json pair_json(const QubitPair& p) { return Json::array({p.first, p.second}); }

inline Json to_json(std::span<const NonlocalHit> hits) {
  Json list = Json::array();
  for (const auto& h : hits) {
    list.push_back({{"target", pair_json(h.target)},
                    {"candidate", pair_json(h.candidate)},
                    {"s_ij", h.s_ij},
                    {"zscore", h.zscore},
                    {"flagged", h.flagged},
                    {"strongest", h.strongest}});
  }
  return {{"format", "zecs-nonlocal"}, {"version", 1}, {"hits", list}};
}

inline Json to_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

inline Json to_json(std::span<const PerturbationPoint> points) {
  Json list = Json::array();
  for (const auto& p : points) {
    list.push_back({{"sigma", p.sigma},
                    {"trials", p.trials},
                    {"infidelity_raw", to_json(p.infidelity_raw)},
                    {"infidelity_ze", to_json(p.infidelity_ze)},
                    {"trace_distance_raw", to_json(p.trace_distance_raw)},
                    {"trace_distance_ze", to_json(p.trace_distance_ze)},
                    {"concurrence_raw", to_json(p.concurrence_raw)},
                    {"concurrence_ze", to_json(p.concurrence_ze)},
                    {"aligned_eigenvalue", to_json(p.aligned_eigenvalue)},
                    {"largest_other_eigenvalue", to_json(p.largest_other_eigenvalue)},
                    {"dominance_swaps", p.dominance_swaps}});
  }
  return {{"format", "zecs-perturbation-study"}, {"version", 1}, {"points", list}};
}

// ---------------------------------------------------------------------------
// Archived non-local summaries

struct NonlocalSummary {
  QubitPair target;
  QubitPair candidate;
  double s_ij = 0.0;
  double mean = 0.0;
  double std = 0.0;
};

inline std::vector<NonlocalSummary> parse_nonlocal_summary(const std::string& text,
                                                           const std::string& what = "nonlocal summary") {
  const Json j = parse_json(text, what);
  detail::require_format(j, "zecs-nonlocal-summary", what);
  std::vector<NonlocalSummary> out;
  for (const auto& x : detail::get<Json>(j, "entries", what)) {
    const auto t = detail::get<std::vector<int>>(x, "target", what);
    const auto c = detail::get<std::vector<int>>(x, "candidate", what);
    if (t.size() != 2 || c.size() != 2) throw Error(ErrorCode::ParseError, what + ": pairs need two qubits");
    out.push_back({{t[0], t[1]}, {c[0], c[1]}, detail::get<double>(x, "s_ij", what),
                   detail::get<double>(x, "mean", what), detail::get<double>(x, "std", what)});
  }
  return out;
}

}  // namespace zecs::io
