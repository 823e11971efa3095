// Copyright 2026 The geomeas Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "geomeas/cli.hpp"
#include "geomeas/errors.hpp"
#include "json.hpp"

namespace geomeas::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "geomeas");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("geomeas_test_" + name);
  std::ofstream(p) << content;
  return p;
}

TEST(Compute, WState) {
  const Invocation r = invoke({"compute", "W"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["lambda_sq"].get<double>(), 4.0 / 9, 1e-12);
  EXPECT_EQ(doc["degenerate"], true);
}

TEST(Compute, GhzAndRightTriangle) {
  EXPECT_NEAR(json::parse(invoke({"compute", "GHZ"}).out)["lambda_sq"].get<double>(), 0.5, 1e-12);
  const Invocation r = invoke({"compute", "wtype(0.5,0.5,0.7071067811865476)"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["lambda_sq"].get<double>(), 0.5, 1e-12);
}

TEST(Compute, Formats) {
  const Invocation table = invoke({"compute", "GHZ", "--format", "table"});
  ASSERT_EQ(table.code, kExitOk);
  EXPECT_NE(table.out.find("lambda_sq"), std::string::npos);
  const Invocation csv = invoke({"compute", "GHZ", "--format", "csv"});
  const auto rows = csv_rows(csv.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "lambda_sq");
  EXPECT_EQ(rows[1][0], "0.5");
}

TEST(Compute, StateFileAndPolicies) {
  const fs::path p = temp_file("state.json", R"({"amps": [[0,0],[0.5,0],[0.5,0],[0,0],[0.7071067811865476,0],[0,0],[0,0],[0,0]]})");
  for (const char* policy : {"auto", "analytic", "stationary", "oracle"}) {
    const Invocation r = invoke({"compute", p.string(), "--policy", policy});
    ASSERT_EQ(r.code, kExitOk) << policy << ": " << r.err;
    EXPECT_NEAR(json::parse(r.out)["lambda_sq"].get<double>(), 0.5, 1e-9) << policy;
  }
  fs::remove(p);
}

TEST(Compute, OutFile) {
  const fs::path p = fs::temp_directory_path() / "geomeas_test_out.json";
  const Invocation r = invoke({"compute", "W", "--out", p.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(p);
  const json doc = json::parse(in);
  EXPECT_NEAR(doc["lambda_sq"].get<double>(), 4.0 / 9, 1e-12);
  fs::remove(p);
}

TEST(ExitCodes, InputErrors) {
  const fs::path bad = temp_file("bad.json", "{ not json");
  EXPECT_EQ(invoke({"compute", bad.string()}).code, kExitInput);
  fs::remove(bad);
  EXPECT_EQ(invoke({"compute", "/nonexistent/file.json"}).code, kExitInput);
  EXPECT_EQ(invoke({"compute", "wtype(1,2)"}).code, kExitInput);
  EXPECT_EQ(invoke({"compute", "W", "--policy", "fast"}).code, kExitInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(invoke({}).code, kExitInput);
}

TEST(ExitCodes, StateErrors) {
  const fs::path zero = temp_file("zero.json", R"({"amps": [[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
  EXPECT_EQ(invoke({"compute", zero.string()}).code, kExitState);
  fs::remove(zero);
  EXPECT_EQ(invoke({"compute", "wtype(1,1,1)", "--strict"}).code, kExitState);
  EXPECT_EQ(invoke({"compute", "wtype(1,1,1)"}).code, kExitOk);
}

TEST(ExitCodes, AnalyticPolicyOnGenericState) {
  const fs::path p = temp_file("generic.json", R"({"amps": [[0.3,0.1],[0.2,0],[0.1,0.4],[0,0.2],[0.5,0],[0.1,0.1],[0.3,0.2],[0.2,0.3]]})");
  const Invocation r = invoke({"compute", p.string(), "--policy", "analytic"});
  EXPECT_EQ(r.code, kExitInput);
  fs::remove(p);
}

TEST(Check, Passes) {
  for (const char* input : {"W", "GHZ", "ww(0.4)", "symmetric(0.3,0.5,0.2,0.6)"}) {
    const Invocation r = invoke({"check", input});
    ASSERT_EQ(r.code, kExitOk) << input << ": " << r.out << r.err;
    const json doc = json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    for (const auto& [k, v] : doc["deltas"].items()) EXPECT_LT(v.get<double>(), 1e-9) << input << " " << k;
  }
  const fs::path p = temp_file("check.json", R"({"amps": [[0.3,0.1],[0.2,0],[0.1,0.4],[0,0.2],[0.5,0],[0.1,0.1],[0.3,0.2],[0.2,0.3]]})");
  const Invocation r = invoke({"check", p.string()});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(json::parse(r.out)["values"].size(), 2u);
  fs::remove(p);
}

TEST(Sweep, WWEndpoints) {
  const Invocation r = invoke({"sweep", "ww", "--param", "theta=0:1.5707963267948966:5", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "lambda_sq", "e_g", "method", "degenerate"}));
  EXPECT_NEAR(std::stod(rows[1][1]), 4.0 / 9, 1e-12);
  EXPECT_NEAR(std::stod(rows[5][1]), 4.0 / 9, 1e-12);
}

TEST(Sweep, GeneralizedGhzTakesLargerCoefficient) {
  const Invocation r = invoke({"sweep", "symmetric", "--param", "a=0.7071067811865476:1:6", "--param", "b=rest",
                        "--param", "c=0", "--param", "d=0", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][4]), a * a, 1e-12);
  }
}

TEST(Sweep, WTypeMinimumAtRegularTriangle) {
  const Invocation r = invoke({"sweep", "wtype", "--param", "a=1", "--param", "b=1", "--param", "c=0.2:2:91", "--format",
                        "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  double best = 2;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][3]);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  EXPECT_NEAR(best, 4.0 / 9, 1e-12);
  EXPECT_NEAR(std::stod(rows[arg][0]), std::stod(rows[arg][2]), 1e-12);
}

TEST(Sweep, JsonAndDeterminism) {
  const std::vector<std::string> args = {"sweep", "symmetric", "--param", "a=0.1:0.7:3", "--param", "b=0.1:0.5:3",
                                         "--param", "c=0.3", "--param", "d=rest", "--samples", "10", "--seed", "9"};
  auto with_format = [&](const char* f) {
    auto a = args;
    a.insert(a.end(), {"--format", f});
    return invoke(a);
  };
  const Invocation csv1 = with_format("csv"), csv2 = with_format("csv");
  ASSERT_EQ(csv1.code, kExitOk) << csv1.err;
  EXPECT_EQ(csv1.out, csv2.out);
  EXPECT_EQ(csv_rows(csv1.out).size(), 11u);
  const json doc = json::parse(with_format("json").out);
  EXPECT_EQ(doc["rows"].size(), 10u);
  auto other = args;
  other[other.size() - 1] = "10";
  EXPECT_NE(invoke(other).out, invoke(args).out);
}

TEST(Sweep, InvalidSpecs) {
  EXPECT_EQ(invoke({"sweep", "ww", "--param", "theta=0:1:1"}).code, kExitInput);
  EXPECT_EQ(invoke({"sweep", "ww", "--param", "phi=0:1:3"}).code, kExitInput);
  EXPECT_EQ(invoke({"sweep", "wtype", "--param", "a=-1:1:3"}).code, kExitInput);
  EXPECT_EQ(invoke({"sweep", "wtype", "--param", "a=rest", "--param", "b=rest"}).code, kExitInput);
  EXPECT_EQ(invoke({"sweep", "cluster"}).code, kExitInput);
  EXPECT_EQ(invoke({"sweep", "ww", "--param", "theta"}).code, kExitInput);
}

TEST(ParamSpec, Grammar) {
  const ParamSpec r = parse_param_spec("a=0.1:0.9:5");
  EXPECT_EQ(r.kind, ParamSpec::Kind::range);
  EXPECT_EQ(r.steps, 5);
  EXPECT_EQ(parse_param_spec("b=0.5").kind, ParamSpec::Kind::fixed);
  EXPECT_EQ(parse_param_spec("c=rest").kind, ParamSpec::Kind::rest);
  EXPECT_THROW(parse_param_spec("=1"), InputError);
  EXPECT_THROW(parse_param_spec("a=1:2"), InputError);
  EXPECT_THROW(parse_param_spec("a=1:2:x"), InputError);
}

}  // namespace
}  // namespace geomeas::cli
