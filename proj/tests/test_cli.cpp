// Copyright 2026 The cgt Authors
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

#include <sstream>

#include "cgt/cli.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cgt;
using namespace cgt_test;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solving the one-shot table prints both equilibria") {
  CliResult r = cli({"solve", corpus_path("table1_nfg"), "--concept", "pure-nash"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(d, ¬a) eu=(1.000000, -1.000000)\n"
        "(¬d, a) eu=(-1.000000, 1.000000)\n");
}

TEST_CASE("the mixed solve includes the thousandth-weight profile") {
  CliResult r = cli({"solve", corpus_path("table1_nfg"), "--concept", "mixed-nash"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[d:0.001000 ¬d:0.999000], [a:0.001000 ¬a:0.999000]") !=
        std::string::npos);
}

TEST_CASE("subgame perfection prints a single line") {
  CliResult r = cli({"solve", corpus_path("efg_example4"), "--concept", "spe"});
  CHECK(r.code == 0);
  CHECK(r.out == "(d; ¬a, a) eu=(1.000000, -1.000000)\n");
}

TEST_CASE("the diagram solve prints eight lines") {
  CliResult r = cli({"solve", corpus_path("maid_example7"), "--concept", "pure-nash"});
  CHECK(r.code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 8);
}

TEST_CASE("utility queries reproduce the worked values") {
  CliResult conditional =
      cli({"query", corpus_path("maid_example7"), "--eu", "U1", "--strategy",
           "sigma_hat", "--given", "D_D=d"});
  CHECK(conditional.code == 0);
  CHECK(conditional.out == "1.000000\n");
  CliResult forced =
      cli({"query", corpus_path("maid_example7"), "--eu", "U1", "--strategy",
           "sigma_hat", "--do", "D_D=d"});
  CHECK(forced.code == 0);
  CHECK(forced.out == "0.000000\n");
}

TEST_CASE("interventional distribution matches the two-term sum") {
  CliResult r = cli({"query", corpus_path("deter_causal"), "--target", "X_A",
                     "--do", "X_D=d"});
  CHECK(r.code == 0);
  CHECK(r.out == "a: 0.220000\n¬a: 0.780000\n");
  CliResult t = cli({"query", corpus_path("deter_causal"), "--target", "X_A",
                     "--do", "X_D=d", "--route", "truncated"});
  CHECK(t.out == r.out);
}

TEST_CASE("exit codes distinguish failure classes") {
  CHECK(cli({"solve", "no_such_file.json", "--concept", "pure-nash"}).code == 3);
  CHECK(cli({"solve", corpus_path("table1_nfg"), "--concept", "pure-nash",
             "--limit", "2"})
            .code == 2);
  CHECK(cli({"solve", corpus_path("table1_nfg"), "--concept", "spe"}).code == 4);
  CHECK(cli({"query", corpus_path("deter_causal"), "--target", "X_A", "--given",
             "X_A=a"})
            .code == 1);  // overlapping query and evidence
  CHECK(cli({"query", corpus_path("maid_example7"), "--eu", "U1", "--strategy",
             "sigma_hat", "--given", "D_D=zz"})
            .code == 1);
}

TEST_CASE("zero-probability evidence exits with its own code") {
  // Under sigma_hat the deterrer never sends d when weak.
  CliResult r = cli({"query", corpus_path("maid_example7"), "--target", "D_A",
                     "--strategy", "sigma_hat", "--given", "X_C=¬c", "--given",
                     "D_D=d"});
  CHECK(r.code == 5);
}

TEST_CASE("validate reports violations and sets the exit code") {
  CliResult ok = cli({"validate", corpus_path("deter_causal")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");
}

TEST_CASE("dot export draws the diagram node kinds") {
  CliResult r = cli({"export-dot", corpus_path("maid_example7")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"D_D\" [shape=box];") != std::string::npos);
  CHECK(r.out.find("\"U1\" [shape=diamond];") != std::string::npos);
  CliResult mismatch = cli({"export-dot", corpus_path("table1_nfg")});
  CHECK(mismatch.code == 4);
}

TEST_CASE("repeated runs print identical bytes") {
  for (const char* name : {"table1_nfg", "maid_example7", "cbg_example8"}) {
    std::vector<std::string> args = {"solve", corpus_path(name), "--concept",
                                     std::string(name) == "cbg_example8"
                                         ? "pure-bne"
                                         : "pure-nash"};
    CHECK(cli(args).out == cli(args).out);
  }
}

}  // TEST_SUITE
