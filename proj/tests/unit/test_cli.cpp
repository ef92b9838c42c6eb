/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stpa/cli.hpp"
#include "stpa/config.hpp"
#include "stpa/errors.hpp"

using namespace stpa;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out Run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = Dispatch(args, o, e);
  return {code, o.str(), e.str()};
}

std::string TempFile(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(Run({"step", "--at", "1", "--sigma", "{}", "es(c,d; 3; (0,0,0))"}).code ==
        kExitOk);
  auto b = Run({"bisim", "es(c,d;1;(0,0,0))", "es(c,d;2;(0,0,0))"});
  CHECK(b.code == kExitNegative);
  CHECK(b.out.find("distinguished") != std::string::npos);
  CHECK(Run({"parse", "es(c,d; 3"}).code == kExitUsage);
  CHECK(Run({}).code == kExitUsage);
  CHECK(Run({"step", "--at", "x", "dd"}).code == kExitUsage);
  CHECK(Run({"normalize",
             "L{c}@0:{}(ps(c,d; abs 1; (1,1,0)) || pr(c,d; abs 0..9; (0,0,0)))"})
            .code == kExitNotRepresentable);
}

TEST_CASE("meadow self test") {
  auto r = Run({"meadow-selftest", "--samples", "200"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("json output is well formed and deterministic") {
  std::vector<std::string> cmd{"--json", "--seed", "4", "run", "--random",
                               "es(c,d;1;(0,0,0)) + es(c,d;2;(0,0,0))"};
  auto a = Run(cmd), b = Run(cmd);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("kind"));
    ++n;
  }
  CHECK(n >= 1);

  auto c = Run({"--json", "par", "condition"});
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["cycle"] == "8");
  CHECK(j["holds"] == true);
}

TEST_CASE("normalize with a derivation trace") {
  auto r = Run({"--trace", "normalize",
                "L{c}@0:{}(ps(c,d; abs 2; (0,0,0)) || pr(c,d; abs 0..5; (0,0,0)))"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("es(c,d; 2; (0,0,0)) . er(c,d; 2; (0,0,0))", 0) == 0);
  CHECK(r.out.find("\"axiom\"") != std::string::npos);
}

TEST_CASE("configuration: file, --set and environment") {
  std::string path = TempFile("stpa_cli_test.cfg", "# protocol\ntimeout = 8\n");
  CHECK(Run({"--config", path, "par", "condition"}).code == kExitNegative);
  CHECK(Run({"--config", path, "--set", "timeout=9", "par", "condition"}).code ==
        kExitOk);
  CHECK(Run({"--set", "timeout", "par", "condition"}).code == kExitUsage);

  setenv("STPA_CONFIG", path.c_str(), 1);
  CHECK(Run({"par", "condition"}).code == kExitNegative);
  unsetenv("STPA_CONFIG");
  CHECK(Run({"par", "condition"}).code == kExitOk);

  std::string bad = TempFile("stpa_cli_bad.cfg", "speed = -1\n");
  CHECK(Run({"--config", bad, "par", "condition"}).code == kExitUsage);
}

TEST_CASE("key-value parsing") {
  KeyValues kv = KeyValues::Parse("a = 1/2  # half\n\ngeometry.S = 1,2,3\nlist = x, y\n");
  CHECK(kv.GetScalar("a", 0) == Scalar(1, 2));
  CHECK(kv.GetPoint("geometry.S", Point{}) == Point{1, 2, 3});
  CHECK(kv.GetList("list", {}) == std::vector<std::string>{"x", "y"});
  CHECK(kv.GetInt("missing", 7) == 7);
  CHECK_THROWS_AS(KeyValues::Parse("novalue\n"), InvalidArgument);
  CHECK_THROWS_AS(kv.GetInt("a", 0), InvalidArgument);

  KeyValues p = KeyValues::Parse("data = d1, d2, d1\ndelays.R = 2\n");
  ParSetup s = ParSetupFromKeyValues(p);
  CHECK(s.inputs.size() == 3);
  CHECK(s.params.data == std::vector<std::string>{"d1", "d2"});
  CHECK(s.params.t_r == Scalar(2));
}
