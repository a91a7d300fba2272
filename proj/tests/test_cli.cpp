// Copyright 2026 The rminv Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rminv/cli.hpp"

using namespace rminv;

namespace {

struct RunResult {
  int code = 0;
  std::string out, err;
  ordered_json json() const { return ordered_json::parse(out); }
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Writes a spec file into the test's scratch space and returns its path.
std::string write_spec(const std::string& name, const ordered_json& j) {
  const std::string path = "cli_spec_" + name + ".json";
  std::ofstream f(path);
  f << j.dump(2);
  return path;
}

ordered_json spec_json(const std::string& family, int q, int m, int n, int k, int s = 1) {
  ordered_json j;
  j["family"] = family;
  j["q"] = q;
  j["e"] = 1;
  j["m"] = m;
  j["n"] = n;
  j["k"] = k;
  j["s"] = s;
  return j;
}

}  // namespace

TEST_CASE("spec json round trip") {
  CodeSpec sp;
  sp.family = CodeFamily::GeneralizedTwisted;
  sp.q = 3;
  sp.e = 1;
  sp.m = 12;
  sp.n = 6;
  sp.k = 3;
  sp.sigma_exp = 5;
  sp.h = {0, 2};
  sp.t = {1, 3};
  sp.eta = {{4, 9}};
  const CodeSpec back = code_spec_from_json(to_json(sp));
  CHECK(back.family == sp.family);
  CHECK(back.q == sp.q);
  CHECK(back.m == sp.m);
  CHECK(back.n == sp.n);
  CHECK(back.k == sp.k);
  CHECK(back.sigma_exp == sp.sigma_exp);
  CHECK(back.h == sp.h);
  CHECK(back.t == sp.t);
  CHECK(back.eta == sp.eta);
  CHECK_FALSE(back.alpha.has_value());

  // Family aliases and scalar eta.
  ordered_json j = spec_json("generalized_twisted", 2, 8, 4, 2);
  j["h"] = {0};
  j["t"] = {1};
  j["eta"] = 3;
  const CodeSpec tw = code_spec_from_json(j);
  CHECK(tw.family == CodeFamily::GeneralizedTwisted);
  REQUIRE(tw.eta.has_value());
  CHECK(*tw.eta == std::vector<std::uint64_t>{3});

  CHECK_THROWS_AS(code_spec_from_json(spec_json("nonsense", 2, 8, 8, 3)),
                  std::invalid_argument);
  ordered_json missing = spec_json("gabidulin", 2, 8, 8, 3);
  missing.erase("k");
  CHECK_THROWS_AS(code_spec_from_json(missing), std::invalid_argument);
  ordered_json bad = spec_json("gabidulin", 2, 8, 8, 3);
  bad["m"] = "eight";
  CHECK_THROWS_AS(code_spec_from_json(bad), std::invalid_argument);
}

TEST_CASE("cli sequence matches the library") {
  const RunResult r = run_cli({"sequence", "--family", "gabidulin", "--q", "2", "--m", "8",
                               "--n", "8", "--k", "3", "--s", "1", "--auto-exp", "1"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  CHECK(j["auto_exp"] == 1);
  CHECK(j["dims"] == ordered_json::array({3, 4, 5, 6, 7, 8}));

  const RunResult tsv = run_cli({"sequence", "--family", "gabidulin", "--q", "2", "--m", "8",
                                 "--n", "8", "--k", "3", "--tsv"});
  REQUIRE(tsv.code == 0);
  CHECK(tsv.out == "3\t4\t5\t6\t7\t8\n");

  const RunResult imax = run_cli({"sequence", "--family", "gabidulin", "--q", "2", "--m", "8",
                                  "--n", "8", "--k", "3", "--imax", "2", "--tsv"});
  CHECK(imax.out == "3\t4\t5\n");
}

TEST_CASE("cli field-info") {
  const RunResult r = run_cli({"field-info", "--m", "4"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  CHECK(j["p"] == 2);
  CHECK(j["size"] == 16);
  CHECK(j["modulus"] == ordered_json::array({1, 1, 0, 0, 1}));

  // Over the enumeration budget: a scale rejection, not a usage error.
  const RunResult big = run_cli({"field-info", "--m", "41"});
  CHECK(big.code == 2);
  CHECK(big.err.find("scale") == 0);
}

TEST_CASE("cli build and emit-spec round trip") {
  const std::vector<std::string> flags{"build",  "--family", "sheekey", "--q", "3",
                                       "--m",    "6",        "--n",     "6",   "--k",
                                       "3"};
  const RunResult direct = run_cli(flags);
  REQUIRE(direct.code == 0);
  const ordered_json built = direct.json();
  CHECK(built["dim"] == 3);
  CHECK(built["generator"].size() == 3);

  std::vector<std::string> emit = flags;
  emit.push_back("--emit-spec");
  const RunResult spec_out = run_cli(emit);
  REQUIRE(spec_out.code == 0);
  const std::string path = write_spec("roundtrip", spec_out.json());
  const RunResult reparsed = run_cli({"build", "--spec", path});
  REQUIRE(reparsed.code == 0);
  CHECK(reparsed.json()["generator"] == built["generator"]);
  std::remove(path.c_str());

  // Mixing --spec with inline flags is a usage error.
  const std::string again = write_spec("conflict", spec_out.json());
  const RunResult conflict = run_cli({"build", "--spec", again, "--k", "3"});
  CHECK(conflict.code == 1);
  std::remove(again.c_str());
}

TEST_CASE("cli build tsv rows are the generator encodings") {
  const RunResult r = run_cli({"build", "--family", "gabidulin", "--q", "2", "--m", "4", "--n",
                               "4", "--k", "4", "--tsv"});
  REQUIRE(r.code == 0);
  // Full-length square code: the reduced generator is the identity.
  CHECK(r.out == "1\t0\t0\t0\n0\t1\t0\t0\n0\t0\t1\t0\n0\t0\t0\t1\n");
}

TEST_CASE("cli fingerprint") {
  const RunResult r = run_cli({"fingerprint", "--family", "gabidulin", "--q", "2", "--m", "8",
                               "--n", "8", "--k", "3"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  CHECK(j["context"]["m"] == 8);
  CHECK(j["sequences"].size() == 4);  // exponents 1,3,5,7
  const std::string key = j["key"].get<std::string>();
  CHECK(key.substr(0, 12) == "q2e1m8n8k3|1");

  const RunResult tsv = run_cli({"fingerprint", "--family", "gabidulin", "--q", "2", "--m", "8",
                                 "--n", "8", "--k", "3", "--tsv"});
  CHECK(tsv.out == key + "\n");

  const RunResult narrowed = run_cli({"fingerprint", "--family", "gabidulin", "--q", "2", "--m",
                                      "8", "--n", "8", "--k", "3", "--auto-exp", "1,3"});
  CHECK(narrowed.json()["sequences"].size() == 2);
}

TEST_CASE("cli distinguish") {
  const std::string gab = write_spec("gab", spec_json("gabidulin", 2, 24, 12, 5));
  ordered_json tw_json = spec_json("twisted", 2, 24, 12, 5);
  tw_json["h"] = {1};
  tw_json["t"] = {5};
  const std::string tw = write_spec("tw", tw_json);

  const RunResult r = run_cli({"distinguish", gab, tw, "--auto-exp", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["result"] == "INEQUIVALENT");

  const RunResult same = run_cli({"distinguish", gab, gab, "--tsv"});
  REQUIRE(same.code == 0);
  CHECK(same.out == "UNKNOWN\n");

  // General power sets are an extra separator.
  const RunResult powered = run_cli({"distinguish", gab, tw, "--auto-exp", "1", "--powers",
                                     "2,5"});
  REQUIRE(powered.code == 0);
  const ordered_json pj = powered.json();
  CHECK(pj.contains("power_dim_a"));
  CHECK(pj.contains("power_dim_b"));
  CHECK(pj["powers"] == ordered_json::array({2, 5}));

  // Codes over different ambient spaces are not comparable.
  const std::string small = write_spec("small", spec_json("gabidulin", 2, 8, 8, 3));
  const RunResult mismatch = run_cli({"distinguish", gab, small});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.err.find("ambient") != std::string::npos);

  const RunResult missing = run_cli({"distinguish", gab, "no_such_file.json"});
  CHECK(missing.code == 1);

  std::remove(gab.c_str());
  std::remove(tw.c_str());
  std::remove(small.c_str());
}

TEST_CASE("cli census") {
  const RunResult r = run_cli({"census", "--n", "7", "--k", "3"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  CHECK(j["a"] == 9);
  CHECK(j["b"] == 36);
  CHECK(j["reference_a"] == 9);
  CHECK(j["delta"] == 0);
  CHECK(r.err.empty());

  const RunResult tsv = run_cli({"census", "--n", "7", "--k", "3", "--tsv", "--auto-set", "n",
                                 "--jobs", "2"});
  REQUIRE(tsv.code == 0);
  CHECK(tsv.out.find("generators-of-n") != std::string::npos);
  CHECK(tsv.out.find("\t9\t36\t") != std::string::npos);

  // Outside the reference range: still computed, but flagged on stderr.
  const RunResult relaxed = run_cli({"census", "--n", "6", "--k", "2"});
  CHECK(relaxed.code == 0);
  CHECK(relaxed.err.find("outside the reference census range") != std::string::npos);

  // Bad eta (inside the subfield) is a validation error.
  const RunResult bad_eta = run_cli({"census", "--n", "7", "--k", "3", "--eta", "1"});
  CHECK(bad_eta.code == 1);
}

TEST_CASE("cli table1 single row") {
  const RunResult r = run_cli({"table1", "--n", "7"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  REQUIRE(j.size() == 2);
  CHECK(j[0]["n"] == 7);
  CHECK(j[0]["k"] == 3);
  CHECK(j[0]["a"] == 9);
  CHECK(j[0]["delta"] == 0);
  CHECK(j[1]["k"] == 4);
  CHECK(j[1]["a"] == 6);

  const RunResult tsv = run_cli({"table1", "--n", "7", "--tsv"});
  REQUIRE(tsv.code == 0);
  CHECK(tsv.out == "n\\k\t3\t4\n7\t9 / 36\t6 / 36\n");
}

TEST_CASE("cli counting subcommands") {
  const RunResult g = run_cli({"count-gabidulin", "--m", "8", "--k", "3"});
  REQUIRE(g.code == 0);
  CHECK(g.json()["count"] == 2);

  const RunResult o = run_cli({"count-orbits", "--q", "3", "--m", "2", "--k", "1", "--tsv"});
  REQUIRE(o.code == 0);
  CHECK(o.out == "2\n");

  const RunResult s = run_cli({"count-sheekey", "--q", "3", "--m", "8", "--k", "4"});
  REQUIRE(s.code == 0);
  const ordered_json sj = s.json();
  CHECK(sj["count"] == sj["orbit_count"].get<long long>() * 2);

  const RunResult bad = run_cli({"count-gabidulin", "--m", "8", "--k", "1"});
  CHECK(bad.code == 1);
}

TEST_CASE("cli mrd-check") {
  const RunResult r = run_cli({"mrd-check", "--family", "gabidulin", "--q", "2", "--m", "4",
                               "--n", "4", "--k", "2"});
  REQUIRE(r.code == 0);
  const ordered_json j = r.json();
  CHECK(j["min_distance"] == 3);
  CHECK(j["singleton_bound"] == 3);
  CHECK(j["mrd"] == true);

  const RunResult guarded = run_cli({"mrd-check", "--family", "gabidulin", "--q", "2", "--m",
                                     "12", "--n", "12", "--k", "2"});
  CHECK(guarded.code == 2);
}

TEST_CASE("cli usage errors and help") {
  CHECK(run_cli({"no-such-command"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"sequence", "--q", "2"}).code == 1);  // missing --m/--n/--k
  CHECK(run_cli({"census", "--n", "7", "--k", "9"}).code == 1);
  CHECK(run_cli({"sequence", "--family", "gabidulin", "--q", "2", "--m", "6", "--n", "6", "--k",
                 "2", "--s", "2"})
            .code == 1);  // exponent does not generate

  const RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("field-info") != std::string::npos);
  CHECK(help.out.find("mrd-check") != std::string::npos);

  // The sigma policy escape hatch makes the non-generator build legal.
  const RunResult relaxed = run_cli({"sequence", "--family", "gabidulin", "--q", "2", "--m", "6",
                                     "--n", "6", "--k", "2", "--s", "2", "--any-sigma-exp",
                                     "--tsv"});
  CHECK(relaxed.code == 0);
}
