// Copyright 2026 The qinfo Authors
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

// JSON encoding of states, ensembles, measurements, channels and codes.
//
// Complex numbers are [re, im] (a bare number is read as real). Matrices are
// row-major nested arrays. Requires nlohmann/json on the include path.

#pragma once

#include "qinfo/coding.hpp"
#include "qinfo/distinguishability.hpp"
#include "qinfo/dynamics.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/probability.hpp"
#include "qinfo/state.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace qinfo::json_io {

using json = nlohmann::json;

/// Rounds to 12 significant digits so dumps are short and stable.
inline double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

inline json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return sig12(x);
}

/// Serialises with the shortest round-trip form of each double, so values
/// rounded by `sig12` print with at most 12 significant digits. A negative
/// indent gives a single line.
inline void dump_to(std::string& out, const json& j, int indent, int depth = 0) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(std::size_t(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, x);
      std::string s(buf, res.ptr);
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_to(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

inline std::string dump(const json& j, int indent = -1) {
  std::string out;
  dump_to(out, j, indent);
  return out;
}

inline json to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

inline json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

inline json to_json(const Distribution& p) { return to_json(std::span<const double>(p.probs())); }

inline json to_json(const StateVector& s) { return json{{"amps", to_json(s.amps())}, {"dims", s.dims()}}; }

inline json to_json(const DensityOperator& r) { return json{{"matrix", to_json(r.matrix())}, {"dims", r.dims()}}; }

inline json to_json(const std::vector<Matrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

inline json to_json(const Axis3& v) { return json::array({number(v.x()), number(v.y()), number(v.z())}); }

// ---------------------------------------------------------------------------
// Parsing

inline cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  detail::require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                  "complex numbers are encoded as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Vector vector_from(const json& j) {
  detail::require(j.is_array() && !j.empty(), "expected a non-empty amplitude array");
  Vector v{Eigen::Index(j.size())};
  for (std::size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = complex_from(j[i]);
  return v;
}

inline Matrix matrix_from(const json& j) {
  detail::require(j.is_array() && !j.empty() && j[0].is_array(), "expected a matrix as nested rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  Matrix m{Eigen::Index(rows), Eigen::Index(cols)};
  for (std::size_t r = 0; r < rows; ++r) {
    detail::require(j[r].is_array() && j[r].size() == cols, "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(Eigen::Index(r), Eigen::Index(c)) = complex_from(j[r][c]);
  }
  return m;
}

inline std::vector<std::size_t> dims_from(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return {};
  return j.at(key).get<std::vector<std::size_t>>();
}

/// An amplitude array, or {"amps": [...], "dims": [...]}.
inline StateVector state_from(const json& j) {
  if (j.is_object()) return StateVector(vector_from(j.at("amps")), dims_from(j, "dims"));
  return StateVector(vector_from(j));
}

/// A nested matrix, {"matrix": ..., "dims": ...}, or {"amps": ...} for a pure state.
inline DensityOperator density_from(const json& j) {
  if (j.is_object() && j.contains("matrix")) return DensityOperator(matrix_from(j.at("matrix")), dims_from(j, "dims"));
  if (j.is_object() && j.contains("amps")) return DensityOperator(state_from(j));
  return DensityOperator(matrix_from(j));
}

inline Distribution distribution_from(const json& j) {
  detail::require(j.is_array(), "distributions are numeric arrays");
  return Distribution(j.get<std::vector<double>>());
}

/// {"probs": [...], "states": [state, ...]}; each state is an amplitude array
/// or an object accepted by `density_from`.
inline Ensemble ensemble_from(const json& j) {
  detail::require(j.is_object() && j.contains("probs") && j.contains("states"), "ensembles are {probs, states}");
  std::vector<DensityOperator> states;
  for (const auto& s : j.at("states")) states.push_back(s.is_object() ? density_from(s) : DensityOperator(state_from(s)));
  return Ensemble(distribution_from(j.at("probs")), std::move(states));
}

inline json to_json(const Ensemble& e) {
  json states = json::array();
  for (const auto& s : e.states()) states.push_back(to_json(s));
  return json{{"probs", to_json(e.probs())}, {"states", states}};
}

inline std::vector<Matrix> matrices_from(const json& j) {
  detail::require(j.is_array() && !j.empty(), "expected a list of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from(m));
  return out;
}

inline Povm povm_from(const json& j) { return Povm(matrices_from(j)); }
inline KrausChannel channel_from(const json& j) { return KrausChannel(matrices_from(j)); }

inline Axis3 axis_from(const json& j) {
  detail::require(j.is_array() && j.size() == 3, "axes are 3-vectors");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

/// {"alice": [a0, a2], "bob": [b0, b2]}.
inline ChshSetting chsh_from(const json& j) {
  detail::require(j.is_object() && j.contains("alice") && j.contains("bob"), "CHSH settings are {alice, bob}");
  const auto& a = j.at("alice");
  const auto& b = j.at("bob");
  detail::require(a.size() == 2 && b.size() == 2, "each party needs two axes");
  return ChshSetting({axis_from(a[0]), axis_from(a[1])}, {axis_from(b[0]), axis_from(b[1])});
}

inline json to_json(const ChshSetting& s) {
  return json{{"alice", {to_json(s.alice[0]), to_json(s.alice[1])}}, {"bob", {to_json(s.bob[0]), to_json(s.bob[1])}}};
}

/// {"codewords": [amplitude arrays], "errors": ["IXI", ...]}.
inline std::pair<CodeSubspace, PauliErrorSet> code_from(const json& j) {
  detail::require(j.is_object() && j.contains("codewords") && j.contains("errors"), "codes are {codewords, errors}");
  std::vector<StateVector> words;
  for (const auto& w : j.at("codewords")) words.push_back(state_from(w));
  return {CodeSubspace(std::move(words)), PauliErrorSet(j.at("errors").get<std::vector<std::string>>())};
}

}  // namespace qinfo::json_io
