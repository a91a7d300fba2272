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

// Command-line front end.  run() is the whole program; the binary's main()
// only forwards argv, so tests can drive every path in process.
//
// Exit codes: 0 success, 1 usage or validation error, 2 scale-guard
// rejection.  Output is JSON unless --tsv asks for flat text.

#ifndef RMINV_CLI_HPP_
#define RMINV_CLI_HPP_

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rminv/json_io.hpp"

namespace rminv::cli {

namespace detail {

inline std::vector<std::uint64_t> parse_u64_list(const std::string& text,
                                                 const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = text.find(',', pos);
    const std::string tok =
        text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty() || tok[0] == '-') {
      throw std::invalid_argument(flag + " expects nonnegative integers, got \"" + tok + "\"");
    }
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw std::invalid_argument(flag + " expects integers, got \"" + tok + "\"");
    }
    out.push_back(value);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// Spec-building flags shared by build, sequence, fingerprint and mrd-check.
// Either --spec FILE or the inline flags; mixing them is rejected.
struct SpecOptions {
  std::string spec_file;
  std::string family = "gabidulin";
  std::uint64_t q = 2;
  int e = 1;
  int m = 0;
  int n = 0;
  int k = 0;
  long long s = 1;
  std::string alpha = "auto";
  std::string eta = "auto";
  std::vector<int> h, t;
  bool any_sigma = false;

  void attach(CLI::App* cmd) {
    // Frees the short -h so the twist-position flag below can be named --h.
    cmd->set_help_flag("--help", "print help");
    CLI::Option* spec_opt =
        cmd->add_option("--spec", spec_file, "JSON spec file instead of inline flags");
    std::vector<CLI::Option*> inline_opts{
        cmd->add_option("--family", family, "gabidulin|sheekey|twisted|gabidulin_new"),
        cmd->add_option("--q", q, "subfield size (default 2)"),
        cmd->add_option("--e", e, "subfield extension degree over its prime field (default 1)"),
        cmd->add_option("--m", m, "extension degree of the big field"),
        cmd->add_option("--n", n, "code length"),
        cmd->add_option("--k", k, "code dimension"),
        cmd->add_option("--s", s, "automorphism exponent of the construction (default 1)"),
        cmd->add_option("--alpha", alpha, "auto or comma-separated element encodings"),
        cmd->add_option("--eta", eta, "auto, one encoding, or comma-separated encodings"),
        cmd->add_option("--h", h, "twist row positions, comma-separated")->delimiter(','),
        cmd->add_option("--t", t, "twist shifts, comma-separated")->delimiter(','),
    };
    for (CLI::Option* opt : inline_opts) spec_opt->excludes(opt);
    cmd->add_flag("--any-sigma-exp", any_sigma,
                  "accept exponents that do not generate the Galois group");
  }

  CodeSpec resolve() const {
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw std::invalid_argument("cannot open spec file " + spec_file);
      ordered_json j;
      in >> j;
      return code_spec_from_json(j);
    }
    if (m <= 0 || n <= 0 || k <= 0) {
      throw std::invalid_argument("--m, --n and --k are required (or pass --spec FILE)");
    }
    CodeSpec sp;
    sp.family = family_from_string(family);
    sp.q = q;
    sp.e = e;
    sp.m = m;
    sp.n = n;
    sp.k = k;
    sp.sigma_exp = s;
    if (alpha != "auto") sp.alpha = parse_u64_list(alpha, "--alpha");
    if (eta != "auto") sp.eta = parse_u64_list(eta, "--eta");
    sp.h = h;
    sp.t = t;
    return sp;
  }

  SigmaPolicy policy() const {
    return any_sigma ? SigmaPolicy::AllowAnyExponent : SigmaPolicy::RequireGenerator;
  }
};

inline AutoSetMode mode_from_flag(const std::string& flag) {
  return flag == "n" ? AutoSetMode::GeneratorsOfN : AutoSetMode::GeneratorsOfM;
}

inline std::vector<long long> exponents_for(const std::vector<long long>& explicit_exps,
                                            const std::string& auto_set, int m, int n) {
  if (!explicit_exps.empty()) return explicit_exps;
  return auto_exponents(mode_from_flag(auto_set), m, n);
}

inline void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

inline ordered_json census_row_json(const CensusRow& row, bool default_setup) {
  ordered_json j = to_json(row);
  if (default_setup) {
    const auto ref = reference_census_cell(row.n, row.k);
    if (ref) {
      j["reference_a"] = ref->first;
      j["delta"] = row.a - ref->first;
    }
  }
  return j;
}

inline std::string census_cell_text(const CensusRow& row, bool default_setup) {
  std::string cell = std::to_string(row.a) + " / " + std::to_string(row.b);
  if (default_setup) {
    const auto ref = reference_census_cell(row.n, row.k);
    if (ref && (ref->first != row.a || ref->second != row.b)) {
      cell += " (ref " + std::to_string(ref->first) + " / " + std::to_string(ref->second) + ")";
    }
  }
  return cell;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact invariants and censuses for linear rank-metric codes"};
  app.require_subcommand(1);
  bool tsv = false;
  std::uint64_t seed = 0;
  app.add_flag("--tsv", tsv, "flat text output instead of JSON");
  app.add_option("--seed", seed, "seed for randomized operations (reserved)");

  // field-info
  CLI::App* c_field = app.add_subcommand("field-info", "describe a field tower");
  std::uint64_t fi_q = 2;
  int fi_e = 1, fi_m = 0;
  c_field->add_option("--q", fi_q, "subfield size");
  c_field->add_option("--e", fi_e, "subfield extension degree");
  c_field->add_option("--m", fi_m, "extension degree")->required();

  // build
  CLI::App* c_build = app.add_subcommand("build", "construct a code and print its generator");
  detail::SpecOptions o_build;
  o_build.attach(c_build);
  bool emit_spec = false;
  c_build->add_flag("--emit-spec", emit_spec, "print the canonical spec instead of the code");

  // sequence
  CLI::App* c_seq = app.add_subcommand("sequence", "dimension sequence of iterated sums");
  detail::SpecOptions o_seq;
  o_seq.attach(c_seq);
  long long seq_exp = 1;
  int seq_imax = -1;
  c_seq->add_option("--auto-exp", seq_exp, "automorphism exponent the sums range over");
  c_seq->add_option("--imax", seq_imax, "last index to report (default n-k)");

  // fingerprint
  CLI::App* c_fp = app.add_subcommand("fingerprint", "sequences over a set of exponents");
  detail::SpecOptions o_fp;
  o_fp.attach(c_fp);
  std::vector<long long> fp_exps;
  std::string fp_set = "m";
  c_fp->add_option("--auto-exp", fp_exps, "explicit exponent list")->delimiter(',');
  c_fp->add_option("--auto-set", fp_set, "default exponent set: m or n")
      ->check(CLI::IsMember({"m", "n"}));

  // distinguish
  CLI::App* c_dist = app.add_subcommand("distinguish", "compare two codes by invariants");
  std::string dist_a, dist_b;
  std::vector<long long> dist_exps, dist_powers;
  std::string dist_set = "m";
  bool dist_any_sigma = false;
  c_dist->add_option("spec_a", dist_a, "first spec file")->required()->check(CLI::ExistingFile);
  c_dist->add_option("spec_b", dist_b, "second spec file")->required()->check(CLI::ExistingFile);
  c_dist->add_option("--auto-exp", dist_exps, "explicit exponent list")->delimiter(',');
  c_dist->add_option("--auto-set", dist_set, "default exponent set: m or n")
      ->check(CLI::IsMember({"m", "n"}));
  c_dist->add_option("--powers", dist_powers, "also compare one general power-set sum")
      ->delimiter(',');
  c_dist->add_flag("--any-sigma-exp", dist_any_sigma,
                   "accept exponents that do not generate the Galois group");

  // census
  CLI::App* c_census = app.add_subcommand("census", "sweep (s,h,t) for one (n,k) cell");
  std::uint64_t cen_q = 2;
  int cen_e = 1, cen_n = 0, cen_k = 0, cen_jobs = 1;
  std::string cen_set = "m", cen_eta = "auto";
  c_census->add_option("--q", cen_q, "subfield size");
  c_census->add_option("--e", cen_e, "subfield extension degree");
  c_census->add_option("--n", cen_n, "code length (m = 2n)")->required();
  c_census->add_option("--k", cen_k, "code dimension")->required();
  c_census->add_option("--auto-set", cen_set, "exponent set: m or n")
      ->check(CLI::IsMember({"m", "n"}));
  c_census->add_option("--jobs", cen_jobs, "worker threads");
  c_census->add_option("--eta", cen_eta, "auto or an explicit encoding outside the subfield");

  // table1
  CLI::App* c_table = app.add_subcommand("table1", "census over the reference grid");
  std::uint64_t tab_q = 2;
  int tab_e = 1, tab_n = 0, tab_jobs = 1;
  std::string tab_set = "m";
  c_table->add_option("--q", tab_q, "subfield size");
  c_table->add_option("--e", tab_e, "subfield extension degree");
  c_table->add_option("--n", tab_n, "restrict to one length (default: 7..18)");
  c_table->add_option("--auto-set", tab_set, "exponent set: m or n")
      ->check(CLI::IsMember({"m", "n"}));
  c_table->add_option("--jobs", tab_jobs, "worker threads");

  // count-gabidulin
  CLI::App* c_cg = app.add_subcommand("count-gabidulin", "class count of plain square codes");
  int cg_m = 0, cg_k = 0;
  c_cg->add_option("--m", cg_m, "extension degree (= length)")->required();
  c_cg->add_option("--k", cg_k, "code dimension")->required();

  // count-sheekey
  CLI::App* c_cs = app.add_subcommand("count-sheekey", "class count of single-twist square codes");
  std::uint64_t cs_q = 2;
  int cs_e = 1, cs_m = 0, cs_k = 0;
  c_cs->add_option("--q", cs_q, "subfield size");
  c_cs->add_option("--e", cs_e, "subfield extension degree");
  c_cs->add_option("--m", cs_m, "extension degree (= length)")->required();
  c_cs->add_option("--k", cs_k, "code dimension")->required();

  // count-orbits
  CLI::App* c_co = app.add_subcommand("count-orbits", "norm-restricted automorphism orbits");
  std::uint64_t co_q = 2;
  int co_e = 1, co_m = 0, co_k = 0;
  c_co->add_option("--q", co_q, "subfield size");
  c_co->add_option("--e", co_e, "subfield extension degree");
  c_co->add_option("--m", co_m, "extension degree")->required();
  c_co->add_option("--k", co_k, "code dimension in the norm condition")->required();

  // mrd-check
  CLI::App* c_mrd = app.add_subcommand("mrd-check", "brute-force minimum rank distance");
  detail::SpecOptions o_mrd;
  o_mrd.attach(c_mrd);

  // Let --tsv and --seed appear after the subcommand name as well.
  for (CLI::App* sub : {c_field, c_build, c_seq, c_fp, c_dist, c_census, c_table, c_cg, c_cs,
                        c_co, c_mrd}) {
    sub->fallthrough();
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return 1;
  }

  try {
    if (c_field->parsed()) {
      auto tower = build_tower(prime_base(fi_q, fi_e), fi_e, fi_m);
      if (tsv) {
        out << "p\t" << tower->p() << "\nq\t" << tower->q() << "\ne\t" << tower->e() << "\nm\t"
            << tower->m() << "\nsize\t" << tower->size() << "\nname\t" << tower->name()
            << "\nmodulus\t";
        const auto& mod = tower->modulus();
        for (std::size_t i = 0; i < mod.size(); ++i) out << (i ? "," : "") << mod[i];
        out << "\n";
      } else {
        ordered_json j;
        j["p"] = tower->p();
        j["q"] = tower->q();
        j["e"] = tower->e();
        j["m"] = tower->m();
        j["size"] = tower->size();
        j["name"] = tower->name();
        j["modulus"] = tower->modulus();
        detail::emit_json(out, j);
      }
    } else if (c_build->parsed()) {
      const CodeSpec sp = o_build.resolve();
      if (emit_spec) {
        detail::emit_json(out, to_json(sp));
        return 0;
      }
      const Code code = build(sp, o_build.policy());
      if (tsv) {
        for (std::size_t r = 0; r < code.gen.rows(); ++r) {
          for (std::size_t c = 0; c < code.gen.cols(); ++c) {
            out << (c ? "\t" : "") << code.gen.at(r, c).enc;
          }
          out << "\n";
        }
      } else {
        ordered_json j;
        j["spec"] = to_json(sp);
        j["n"] = code.n();
        j["dim"] = code.dim();
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < code.gen.rows(); ++r) {
          ordered_json row = ordered_json::array();
          for (std::size_t c = 0; c < code.gen.cols(); ++c) row.push_back(code.gen.at(r, c).enc);
          rows.push_back(row);
        }
        j["generator"] = rows;
        detail::emit_json(out, j);
      }
    } else if (c_seq->parsed()) {
      const Code code = build(o_seq.resolve(), o_seq.policy());
      std::optional<int> imax;
      if (seq_imax >= 0) imax = seq_imax;
      const SigmaSequence seq = sigma_sequence(code, seq_exp, imax);
      if (tsv) {
        for (std::size_t i = 0; i < seq.dims.size(); ++i) out << (i ? "\t" : "") << seq.dims[i];
        out << "\n";
      } else {
        detail::emit_json(out, to_json(seq));
      }
    } else if (c_fp->parsed()) {
      const CodeSpec sp = o_fp.resolve();
      const Code code = build(sp, o_fp.policy());
      const Fingerprint fp =
          fingerprint(code, detail::exponents_for(fp_exps, fp_set, sp.m, sp.n));
      if (tsv) {
        out << fp.key() << "\n";
      } else {
        detail::emit_json(out, to_json(fp));
      }
    } else if (c_dist->parsed()) {
      const auto load = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open spec file " + path);
        ordered_json j;
        in >> j;
        return code_spec_from_json(j);
      };
      const CodeSpec sa = load(dist_a), sb = load(dist_b);
      if (sa.q != sb.q || sa.e != sb.e || sa.m != sb.m || sa.n != sb.n) {
        throw std::invalid_argument("specs describe codes in different ambient spaces");
      }
      const SigmaPolicy policy =
          dist_any_sigma ? SigmaPolicy::AllowAnyExponent : SigmaPolicy::RequireGenerator;
      auto tower = tower_for(sa);
      const Code ca = build(sa, tower, policy);
      const Code cb = build(sb, tower, policy);
      const std::vector<long long> exps =
          detail::exponents_for(dist_exps, dist_set, sa.m, sa.n);
      const Fingerprint fa = fingerprint(ca, exps), fb = fingerprint(cb, exps);
      bool separated = !(fa == fb);
      ordered_json j;
      j["auto_exps"] = exps;
      if (!dist_powers.empty()) {
        std::vector<long long> powers = dist_powers;
        std::sort(powers.begin(), powers.end());
        powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
        const int da = general_sum_dim(ca, powers);
        const int db = general_sum_dim(cb, powers);
        separated = separated || da != db;
        j["powers"] = powers;
        j["power_dim_a"] = da;
        j["power_dim_b"] = db;
      }
      const DistinguishResult verdict =
          separated ? DistinguishResult::Inequivalent : DistinguishResult::Unknown;
      j["result"] = to_string(verdict);
      j["fingerprint_a"] = to_json(fa);
      j["fingerprint_b"] = to_json(fb);
      if (tsv) {
        out << to_string(verdict) << "\n";
      } else {
        detail::emit_json(out, j);
      }
    } else if (c_census->parsed()) {
      std::optional<std::uint64_t> eta;
      if (cen_eta != "auto") eta = detail::parse_u64_list(cen_eta, "--eta").at(0);
      if (!census_table_range(cen_n, cen_k)) {
        err << "note: (n=" << cen_n << ", k=" << cen_k
            << ") is outside the reference census range 2 < k < n-2\n";
      }
      const CensusRow row =
          census_row(cen_q, cen_e, cen_n, cen_k, detail::mode_from_flag(cen_set), cen_jobs, eta);
      const bool default_setup = cen_q == 2 && cen_e == 1 && !eta;
      if (tsv) {
        out << "n\tk\ta\tb\tauto_set\truntime_seconds\n"
            << row.n << "\t" << row.k << "\t" << row.a << "\t" << row.b << "\t"
            << to_string(row.auto_set) << "\t" << row.runtime_seconds << "\n";
      } else {
        detail::emit_json(out, detail::census_row_json(row, default_setup));
      }
    } else if (c_table->parsed()) {
      const AutoSetMode mode = detail::mode_from_flag(tab_set);
      const int n_min = tab_n > 0 ? tab_n : 7;
      const int n_max = tab_n > 0 ? tab_n : 18;
      const std::vector<CensusRow> rows = table1(tab_q, tab_e, mode, tab_jobs, n_min, n_max);
      const bool default_setup = tab_q == 2 && tab_e == 1;
      if (tsv) {
        int k_max = 2;
        for (const CensusRow& row : rows) k_max = std::max(k_max, row.k);
        out << "n\\k";
        for (int k = 3; k <= k_max; ++k) out << "\t" << k;
        out << "\n";
        for (std::size_t i = 0; i < rows.size();) {
          const int n = rows[i].n;
          out << n;
          for (int k = 3; k <= k_max; ++k) {
            out << "\t";
            if (i < rows.size() && rows[i].n == n && rows[i].k == k) {
              out << detail::census_cell_text(rows[i], default_setup);
              ++i;
            }
          }
          out << "\n";
        }
      } else {
        ordered_json arr = ordered_json::array();
        for (const CensusRow& row : rows) {
          arr.push_back(detail::census_row_json(row, default_setup));
        }
        detail::emit_json(out, arr);
      }
    } else if (c_cg->parsed()) {
      const long long count = gabidulin_class_count(cg_m, cg_k);
      if (tsv) {
        out << count << "\n";
      } else {
        ordered_json j;
        j["m"] = cg_m;
        j["k"] = cg_k;
        j["count"] = count;
        detail::emit_json(out, j);
      }
    } else if (c_cs->parsed()) {
      const long long orbits = orbit_count_X(cs_q, cs_e, cs_m, cs_k);
      const long long count = sheekey_class_count(cs_q, cs_e, cs_m, cs_k);
      if (tsv) {
        out << count << "\n";
      } else {
        ordered_json j;
        j["q"] = cs_q;
        j["e"] = cs_e;
        j["m"] = cs_m;
        j["k"] = cs_k;
        j["orbit_count"] = orbits;
        j["count"] = count;
        detail::emit_json(out, j);
      }
    } else if (c_co->parsed()) {
      const long long orbits = orbit_count_X(co_q, co_e, co_m, co_k);
      if (tsv) {
        out << orbits << "\n";
      } else {
        ordered_json j;
        j["q"] = co_q;
        j["e"] = co_e;
        j["m"] = co_m;
        j["k"] = co_k;
        j["orbits"] = orbits;
        detail::emit_json(out, j);
      }
    } else if (c_mrd->parsed()) {
      const CodeSpec sp = o_mrd.resolve();
      const Code code = build(sp, o_mrd.policy());
      const int d = min_rank_distance_bruteforce(code);
      const int singleton = static_cast<int>(code.n() - code.dim()) + 1;
      if (tsv) {
        out << "min_distance\t" << d << "\nsingleton_bound\t" << singleton << "\nmrd\t"
            << (d == singleton ? "true" : "false") << "\n";
      } else {
        ordered_json j;
        j["spec"] = to_json(sp);
        j["n"] = code.n();
        j["dim"] = code.dim();
        j["min_distance"] = d;
        j["singleton_bound"] = singleton;
        j["mrd"] = d == singleton;
        detail::emit_json(out, j);
      }
    }
  } catch (const ScaleError& ex) {
    err << "scale: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rminv::cli

#endif  // RMINV_CLI_HPP_
