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

#include <gtest/gtest.h>

#include <filesystem>
#include <locale>

#include "mpent/io.hpp"
#include "mpent/states.hpp"

using namespace mpent;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mpent_io_" + name)).string();
}

}  // namespace

TEST(StateFile, RoundTrip) {
  Rng rng = stream_rng(1, 0);
  PureState psi = random_state(3, 3, rng);
  const std::string path = temp_path("state.json");
  write_state(path, psi);
  PureState back = read_state(path);
  EXPECT_EQ(back.n(), 3);
  EXPECT_EQ(back.d(), 3);
  EXPECT_EQ((back.amp() - psi.amp()).norm(), 0.0);
  std::filesystem::remove(path);
}

TEST(StateFile, Layout) {
  json j = state_to_json(ghz(2, 2));
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["d"], 2);
  ASSERT_EQ(j["amp"].size(), 4u);
  EXPECT_DOUBLE_EQ(j["amp"][3][0].get<double>(), M_SQRT1_2);
  EXPECT_DOUBLE_EQ(j["amp"][3][1].get<double>(), 0.0);
}

TEST(StateFile, RejectsMalformed) {
  EXPECT_THROW(state_from_json(json::parse(R"({"n":1,"d":2,"amp":[[1,0]]})")), InvalidInput);
  EXPECT_THROW(state_from_json(json::parse(R"({"n":1,"d":2,"amp":[[1,0],[1,0]]})")), InvalidInput);
  EXPECT_THROW(state_from_json(json::parse(R"({"n":1,"d":2,"amp":[[1,0],[0]]})")), InvalidInput);
  EXPECT_THROW(state_from_json(json::parse(R"({"n":1,"amp":[]})")), InvalidInput);
  EXPECT_THROW(state_from_json(json::parse(R"({"n":"x","d":2,"amp":[]})")), InvalidInput);
  EXPECT_THROW(state_from_json(json::parse(R"({"n":30,"d":2,"amp":[]})")), CapacityError);
  EXPECT_NO_THROW(state_from_json(json::parse(R"({"n":1,"d":2,"amp":[[0.6,0],[0,0.8]]})")));
  EXPECT_THROW(read_state(temp_path("does_not_exist.json")), InvalidInput);
  const std::string bad = temp_path("bad.json");
  write_file(bad, "{not json");
  EXPECT_THROW(read_state(bad), InvalidInput);
  std::filesystem::remove(bad);
}

TEST(BasisJson, RoundTrip) {
  Rng rng = stream_rng(2, 0);
  ProductBasis b = random_product_basis(3, 2, rng);
  json j = basis_to_json(b);
  ASSERT_EQ(j.size(), 3u);
  ASSERT_EQ(j[0].size(), 2u);
  EXPECT_DOUBLE_EQ(j[1][0][1][1].get<double>(), b[1](0, 1).imag());
  ProductBasis back = basis_from_json(json::parse(j.dump()), 3, 2);
  for (int i = 0; i < 3; ++i) EXPECT_EQ((back[i] - b[i]).norm(), 0.0);
}

TEST(OptResultJson, RoundTrip) {
  OptConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 44;
  OptResult r = minimize_entropy(ghz(3, 2), cfg);
  json j = opt_result_to_json(r);
  for (const char* key : {"s_upper", "s_lower", "lower_bound_witness", "basis", "converged", "restarts_agreeing", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  OptResult back = opt_result_from_json(json::parse(j.dump()), 3, 2);
  EXPECT_EQ(back.s_upper, r.s_upper);
  EXPECT_EQ(back.s_lower, r.s_lower);
  EXPECT_EQ(back.lower_bound_witness, r.lower_bound_witness);
  EXPECT_EQ(back.seed, 44u);
  EXPECT_EQ(back.restarts_agreeing, r.restarts_agreeing);
  EXPECT_NEAR(entropy_for_bases(ghz(3, 2), back.basis), r.s_upper, 1e-12);

  j["s_lower"] = r.s_upper + 1.0;
  EXPECT_THROW(opt_result_from_json(j, 3, 2), InvalidInput);
  j.erase("seed");
  EXPECT_THROW(opt_result_from_json(j, 3, 2), InvalidInput);
}

TEST(Manifest, FieldsAndHashes) {
  EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
  const std::string path = temp_path("hashme.txt");
  write_file(path, "a");
  RunManifest m;
  m.command = "entropy";
  m.parameters = {{"restarts", 5}};
  m.seed = 9;
  m.timestamp = RunManifest::utc_now();
  m.add_input(path);
  json j = m.to_json();
  EXPECT_EQ(j["command"], "entropy");
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["tool_version"], std::string(kVersion));
  EXPECT_EQ(j["input_hashes"][path], "fnv1a64:af63dc4c8601ec8c");
  EXPECT_EQ(j["timestamp"].get<std::string>().size(), 20u);
  std::filesystem::remove(path);
}

TEST(Formatting, LocaleIndependent) {
  std::locale saved = std::locale::global(std::locale::classic());
  try {
    std::locale::global(std::locale("de_DE.UTF-8"));
  } catch (const std::runtime_error&) {
    // locale not installed; the classic-locale path is still exercised
  }
  EXPECT_EQ(format_fixed(0.5, 2), "0.50");
  EXPECT_EQ(format_full(0.25), "0.25");
  std::locale::global(saved);
}
