// Copyright 2026 The convexfam Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "convexfam/cli.hpp"

namespace convexfam {
namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "convexfam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Json json_of(const Outcome& o) { return Json::parse(o.out); }

std::string sample(const std::string& name) {
  return (std::filesystem::path(CONVEXFAM_DATA_DIR) / ".." / "samples" / name).string();
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("convexfam_cli_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

TEST(Cli, ListShowsEveryEntry) {
  auto r = invoke({"list"});
  EXPECT_EQ(r.code, cli::kExitPass);
  for (const auto& e : list_families()) EXPECT_NE(r.out.find(e.id()), std::string::npos) << e.id();
}

TEST(Cli, VerifyFixturePasses) {
  auto r = invoke({"verify", "wrochna"});
  EXPECT_EQ(r.code, cli::kExitPass);
  EXPECT_NE(r.out.find("status: pass (exit 0)"), std::string::npos);
}

TEST(Cli, JsonCarriesEverythingTheTextShows) {
  auto text = invoke({"verify", "cube", "g16"});
  auto json = json_of(invoke({"--format", "json", "verify", "cube", "g16"}));
  EXPECT_EQ(json["status"], "pass");
  EXPECT_EQ(json["exit_status"], 0);
  ASSERT_EQ(json["results"].size(), 2u);
  for (const auto& fixture : json["results"]) {
    EXPECT_NE(text.out.find(fixture["fixture"].get<std::string>()), std::string::npos);
    for (const auto& c : fixture["checks"]) {
      EXPECT_NE(text.out.find(c["name"].get<std::string>()), std::string::npos) << c["name"];
      if (!c["detail"].get<std::string>().empty()) {
        EXPECT_NE(text.out.find(c["detail"].get<std::string>()), std::string::npos);
      }
    }
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  std::vector<std::string> args{"--format", "json", "--jobs", "2", "verify", "--all"};
  auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, cli::kExitPass);
  EXPECT_EQ(a.out, b.out);
  auto c = json_of(invoke({"--format", "json", "--jobs", "1", "audit", "connected:edge"}));
  auto d = json_of(invoke({"--format", "json", "--jobs", "3", "audit", "connected:edge"}));
  c.erase("command");
  d.erase("command");
  EXPECT_EQ(c.dump(), d.dump());
}

TEST(Cli, UnknownFixtureIsAUsageError) {
  auto r = invoke({"verify", "no-such-fixture"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE((r.out + r.err).find("wrochna"), std::string::npos);
}

TEST(Cli, SlowFixturesNeedTheFlag) {
  EXPECT_EQ(invoke({"verify", "icosidodecahedron"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"--slow", "verify", "icosidodecahedron"}).code, cli::kExitPass);
}

TEST(Cli, ExhaustedBudgetIsUndecided) {
  auto r = invoke({"--budget", "1", "verify", "circulant43"});
  EXPECT_EQ(r.code, cli::kExitBudget);
  EXPECT_NE(r.out.find("undecided"), std::string::npos);
}

TEST(Cli, AuditExitReflectsAgreement) {
  EXPECT_EQ(invoke({"audit", "connected:vertex"}).code, cli::kExitPass);
  auto r = json_of(invoke({"--format", "json", "audit", "has-ne"}));
  EXPECT_EQ(r["exit_status"], cli::kExitFail);
  EXPECT_EQ(r["results"][0]["properties"][2]["status"], "mismatch");
}

TEST(Cli, OversizedAuditIsRefused) {
  auto r = invoke({"audit", "connected", "--n", "9"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE((r.out + r.err).find("universe bound refused"), std::string::npos);
}

TEST(Cli, ClassifyReadsSampleFiles) {
  auto r = json_of(invoke({"--format", "json", "classify", sample("c5_digraph.json"), "--kind", "digraph",
                           "--family", "kernel-less"}));
  EXPECT_EQ(r["exit_status"], 0);
  const auto& res = r["results"][0];
  ASSERT_EQ(res["minima"].size(), 1u);
  EXPECT_EQ(res["minima"][0]["text"], "V{1,2,3,4,5}");
}

TEST(Cli, ClassifyRejectsBadInput) {
  EXPECT_EQ(invoke({"classify", temp_file("empty.json", ""), "--kind", "graph", "--family", "connected"}).code,
            cli::kExitUsage);
  auto bad = invoke({"classify", temp_file("bad.json", "{\"n\": 2, \"edges\": [[1,3]]}"), "--kind", "graph",
                     "--family", "connected"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_NE((bad.out + bad.err).find("edges[0]"), std::string::npos);
  EXPECT_EQ(invoke({"classify", sample("pi_dgraph.json"), "--kind", "dgraph", "--family", "connected"}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"classify", sample("pi_dgraph.json"), "--kind", "dgraph", "--family", "cc", "--order", "edge"})
                .code,
            cli::kExitUsage);
}

TEST(Cli, BadOptionsAndHelp) {
  EXPECT_EQ(invoke({"--frobnicate", "list"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitPass);
  EXPECT_EQ(invoke({"--jobs", "0", "list"}).code, cli::kExitUsage);
}

TEST(Cli, JobsEnvironmentVariableIsValidated) {
  ::setenv("CONVEXFAM_JOBS", "0", 1);
  auto bad = invoke({"list"});
  ::setenv("CONVEXFAM_JOBS", "2", 1);
  auto good = invoke({"list"});
  ::unsetenv("CONVEXFAM_JOBS");
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_EQ(good.code, cli::kExitPass);
}

}  // namespace
}  // namespace convexfam
