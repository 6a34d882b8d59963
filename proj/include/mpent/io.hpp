// Copyright 2026 The mpent Authors
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

#pragma once

// File formats: JSON state files, JSON optimizer reports, run manifests
// and CSV helpers. Numbers are written with round-trip precision and a '.'
// decimal separator regardless of locale.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mpent/entopt.hpp"
#include "mpent/hilbert.hpp"
#include "mpent/version.hpp"

namespace mpent {

using json = nlohmann::json;

inline json state_to_json(const PureState& psi) {
  json amp = json::array();
  for (std::uint64_t k = 0; k < psi.size(); ++k) amp.push_back({psi.amp()[k].real(), psi.amp()[k].imag()});
  return {{"n", psi.n()}, {"d", psi.d()}, {"amp", std::move(amp)}};
}

inline PureState state_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    check_capacity(n, d);
    const json& amp = j.at("amp");
    if (!amp.is_array() || amp.size() != ipow(d, n)) throw InvalidInput("state file: amp must have d^n entries");
    VectorXcd v(amp.size());
    for (std::size_t k = 0; k < amp.size(); ++k) {
      const json& z = amp[k];
      if (!z.is_array() || z.size() != 2) throw InvalidInput("state file: amplitude must be [re, im]");
      v[k] = cplx(z[0].get<double>(), z[1].get<double>());
    }
    return PureState(n, d, std::move(v), 1e-10);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("state file: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

inline PureState read_state(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InvalidInput("state file " + path + ": " + e.what());
  }
  return state_from_json(j);
}

inline void write_state(const std::string& path, const PureState& psi) { write_file(path, state_to_json(psi).dump() + "\n"); }

/// Basis as a list of n matrices, each a list of d rows of [re, im];
/// column j of matrix i is basis vector j of party i.
inline json basis_to_json(const ProductBasis& b) {
  json out = json::array();
  for (const MatrixXcd& u : b.locals()) {
    json m = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
      m.push_back(std::move(row));
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline ProductBasis basis_from_json(const json& j, int n, int d) {
  std::vector<MatrixXcd> u;
  for (const json& m : j) {
    MatrixXcd mat(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) mat(r, c) = cplx(m.at(r).at(c).at(0).get<double>(), m.at(r).at(c).at(1).get<double>());
    u.push_back(std::move(mat));
  }
  return ProductBasis(n, d, std::move(u), 1e-9);
}

inline json opt_result_to_json(const OptResult& r) {
  return {{"s_upper", r.s_upper},
          {"s_lower", r.s_lower},
          {"lower_bound_witness", r.lower_bound_witness},
          {"basis", basis_to_json(r.basis)},
          {"converged", r.converged},
          {"restarts_agreeing", r.restarts_agreeing},
          {"seed", r.seed}};
}

/// Reads the serialized fields back; restart records are not part of the format.
inline OptResult opt_result_from_json(const json& j, int n, int d) {
  try {
    OptResult r{j.at("s_upper").get<double>(),
                basis_from_json(j.at("basis"), n, d),
                j.at("s_lower").get<double>(),
                j.at("lower_bound_witness").get<std::string>(),
                j.at("converged").get<bool>(),
                j.at("restarts_agreeing").get<int>(),
                j.at("seed").get<std::uint64_t>(),
                0,
                {}};
    if (r.s_lower > r.s_upper + 1e-9) throw InvalidInput("result has s_lower > s_upper");
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("result file: ") + e.what());
  }
}

inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

struct RunManifest {
  std::string command;
  json parameters = json::object();
  std::uint64_t seed = 0;
  std::string tool_version = kVersion;
  std::string timestamp;
  std::map<std::string, std::string> input_hashes;  // path -> fnv1a64

  static std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  void add_input(const std::string& path) { input_hashes[path] = "fnv1a64:" + fnv1a64_hex(read_file(path)); }

  json to_json() const {
    return {{"command", command},   {"parameters", parameters}, {"seed", seed},
            {"tool_version", tool_version}, {"timestamp", timestamp}, {"input_hashes", input_hashes}};
  }
};

/// Fixed-precision, locale-independent decimal for CSV output.
inline std::string format_fixed(double v, int digits) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

inline std::string format_full(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace mpent
