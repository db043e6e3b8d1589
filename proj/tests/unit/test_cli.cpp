// Copyright 2026 The polaron2d Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
using polaron2d::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "polaron2d");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bound") {
  const Outcome o = call({"bound", "--mass", "2.0", "--binding", "-1.0", "--lambda", "1.0",
                          "--format", "json"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j["mu"].get<double>() == doctest::Approx(-20.3122286253484).epsilon(1e-12));
  CHECK(j["optimized"] == false);
  CHECK(json::parse(j.dump()) == j);

  const Outcome csv = call({"bound", "--mass", "2", "--binding", "-1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("M,E_B,lambda,mu,gamma,alpha_M,residual\n", 0) == 0);

  const Outcome opt = call({"bound", "--mass", "2", "--binding", "-1", "--optimize-lambda",
                            "--format", "json"});
  CHECK(opt.code == 0);
  CHECK(json::parse(opt.out)["optimized"] == true);
}

TEST_CASE("exit codes") {
  CHECK(call({"bound", "--mass", "1", "--binding", "-1"}).code == 2);
  CHECK(call({"gamma", "--mass", "1"}).code == 2);
  CHECK(call({"bound", "--mass", "-1", "--binding", "-1"}).code == 1);
  CHECK(call({"bound", "--mass", "2", "--binding", "1"}).code == 1);
  CHECK(call({"bound", "--mass", "2"}).code == 1);
  CHECK(call({"nonsense"}).code == 1);
  CHECK(call({"gamma", "--scan", "3:1:4"}).code == 1);
  CHECK(call({"gamma", "--mass", "2", "--format", "xml"}).code == 1);
  CHECK(call({"bound", "--mass", "2", "--binding", "-1", "--lambda", "1", "--optimize-lambda"})
            .code == 1);
  CHECK(call({"verify", "--suite", "bogus"}).code == 1);
  const Outcome fail =
      call({"verify", "--suite", "integrals", "--samples", "20", "--tolerance", "1e-300"});
  CHECK(fail.code == 4);
  CHECK(fail.err.find("failed:") != std::string::npos);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("gamma scan keeps failing rows") {
  const Outcome o = call({"gamma", "--scan", "1:3:5", "--format", "json"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  REQUIRE(j["rows"].size() == 5);
  CHECK(j["rows"][0].contains("error"));
  CHECK(j["rows"][0]["gamma"].is_null());
  CHECK(j["rows"][4]["gamma"].get<double>() > 1.0);
  CHECK(o.err.find("observation") != std::string::npos);
}

TEST_CASE("critical mass") {
  const Outcome o = call({"critical-mass", "--format", "json"});
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["m_star"].get<double>() <= 1.225);
}

TEST_CASE("outputs do not depend on the thread count") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"c-constant", "--mass", "2", "--format", "json"},
        std::vector<std::string>{"gamma", "--scan", "1.5:20:8", "--format", "csv"},
        std::vector<std::string>{"verify", "--samples", "100", "--format", "json"}}) {
    auto a = base;
    auto b = base;
    a.insert(a.end(), {"--threads", "1"});
    b.insert(b.end(), {"--threads", "8"});
    const Outcome x = call(a);
    const Outcome y = call(b);
    CHECK(x.code == 0);
    CHECK(x.out == y.out);
  }
}

TEST_CASE("csv doubles round-trip") {
  const Outcome o = call({"gamma", "--mass", "2", "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream in(o.out);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  const std::string gamma = row.substr(row.find(',') + 1, row.rfind(',') - row.find(',') - 1);
  const Outcome j = call({"gamma", "--mass", "2", "--format", "json"});
  CHECK(std::stod(gamma) == json::parse(j.out)["rows"][0]["gamma"].get<double>());
}
