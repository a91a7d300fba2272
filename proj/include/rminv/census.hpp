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

// Parameter-space census over single-twist codes, and the closed-form class
// counts.  A census fixes q, e, n and k, sets m = 2n, takes alpha to be the
// canonical basis of the degree-n subfield and eta the smallest element
// outside it, then sweeps every admissible (s, h, t): the fingerprint count
// is a lower bound on inequivalent codes and the sweep size an upper bound.

#ifndef RMINV_CENSUS_HPP_
#define RMINV_CENSUS_HPP_

#include <chrono>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rminv/invariants.hpp"

namespace rminv {

inline long long euler_phi(long long m) {
  if (m < 1) throw std::invalid_argument("euler_phi requires m >= 1");
  long long count = 0;
  for (long long j = 1; j <= m; ++j) {
    if (std::gcd(j, m) == 1) ++count;
  }
  return count;
}

// One point of the census parameter space: automorphism exponent s with
// gcd(s, m) = 1 and 1 <= s < n, twist position h in [0, k), shift t in
// [1, n-k].
struct ParamTriple {
  int s = 1;
  int h = 0;
  int t = 1;

  friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

// All admissible triples in lexicographic (s, h, t) order.
inline std::vector<ParamTriple> enumerate_I(int m, int n, int k) {
  if (m < 1 || n < 1 || k < 1) throw std::invalid_argument("enumerate_I requires positive m, n, k");
  if (k >= n) throw std::invalid_argument("enumerate_I requires k < n so the shift range is nonempty");
  std::vector<int> exps;
  for (int s = 1; s < n; ++s) {
    if (std::gcd<long long>(s, m) == 1) exps.push_back(s);
  }
  if (exps.empty()) throw std::invalid_argument("enumerate_I found no admissible automorphism exponent");
  std::vector<ParamTriple> out;
  out.reserve(exps.size() * static_cast<std::size_t>(k) * static_cast<std::size_t>(n - k));
  for (int s : exps) {
    for (int h = 0; h < k; ++h) {
      for (int t = 1; t <= n - k; ++t) out.push_back({s, h, t});
    }
  }
  return out;
}

// Whether (n, k) lies in the range the reference table covers.
inline bool census_table_range(int n, int k) { return 2 < k && k < n - 2; }

// Which automorphism exponents the fingerprints range over: either the
// generators of the full Galois group of F_{q^m}, or of its index-2 subgroup
// fixing the degree-n subfield (exponents below n coprime to n, applied as
// automorphisms of F_{q^m}).
enum class AutoSetMode { GeneratorsOfM, GeneratorsOfN };

inline std::string to_string(AutoSetMode mode) {
  return mode == AutoSetMode::GeneratorsOfM ? "generators-of-m" : "generators-of-n";
}

inline std::vector<long long> auto_exponents(AutoSetMode mode, int m, int n) {
  const int bound = mode == AutoSetMode::GeneratorsOfM ? m : n;
  const int modulus = bound;
  std::vector<long long> exps;
  for (int j = 1; j < bound; ++j) {
    if (std::gcd(j, modulus) == 1) exps.push_back(j);
  }
  return exps;
}

struct CensusRow {
  std::uint64_t q = 2;
  int e = 1;
  int m = 0;
  int n = 0;
  int k = 0;
  long long a = 0;  // distinct fingerprints: lower bound on classes
  long long b = 0;  // sweep size: upper bound on classes
  AutoSetMode auto_set = AutoSetMode::GeneratorsOfM;
  double runtime_seconds = 0.0;
};

// Raw census material for diagnostics: the swept triples and, per triple,
// one fingerprint key per requested mode.
struct CensusDetail {
  std::vector<ParamTriple> triples;
  std::vector<std::vector<std::string>> keys;  // keys[triple][mode]
};

// Sweeps the (s, h, t) space once and reports one row per requested mode.
// Sequences are computed for the union of the modes' exponent sets, so
// asking for both modes costs a single pass.  Work is split across `jobs`
// threads; the result does not depend on the split.
inline std::vector<CensusRow> census_rows(std::uint64_t q, int e, int n, int k,
                                          const std::vector<AutoSetMode>& modes, int jobs = 1,
                                          std::optional<std::uint64_t> eta_enc = std::nullopt,
                                          CensusDetail* detail = nullptr) {
  if (modes.empty()) throw std::invalid_argument("census needs at least one exponent mode");
  if (jobs < 1) throw std::invalid_argument("census needs jobs >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const int m = 2 * n;
  auto tower = build_tower(prime_base(q, e), e, m);
  const std::vector<ParamTriple> triples = enumerate_I(m, n, k);

  const FieldElem eta = eta_enc ? tower->element(*eta_enc) : default_twist_eta(*tower, n);
  if (tower->subfield_membership(eta, n)) {
    throw std::invalid_argument("census eta must lie outside the degree-n subfield");
  }

  std::vector<std::vector<long long>> mode_exps;
  std::set<long long> union_set;
  for (AutoSetMode mode : modes) {
    mode_exps.push_back(auto_exponents(mode, m, n));
    union_set.insert(mode_exps.back().begin(), mode_exps.back().end());
  }
  const std::vector<long long> union_exps(union_set.begin(), union_set.end());

  std::vector<std::vector<std::string>> keys(triples.size(),
                                             std::vector<std::string>(modes.size()));
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      CodeSpec sp;
      sp.family = CodeFamily::GeneralizedTwisted;
      sp.q = q;
      sp.e = e;
      sp.m = m;
      sp.n = n;
      sp.k = k;
      sp.sigma_exp = triples[idx].s;
      sp.h = {triples[idx].h};
      sp.t = {triples[idx].t};
      sp.eta = {{eta.enc}};
      const Code code = build(sp, tower);
      const Fingerprint full = fingerprint(code, union_exps);
      for (std::size_t mi = 0; mi < modes.size(); ++mi) {
        Fingerprint sub = full;
        sub.entries.clear();
        for (const SigmaSequence& seq : full.entries) {
          for (long long want : mode_exps[mi]) {
            if (seq.auto_exp == want) {
              sub.entries.push_back(seq);
              break;
            }
          }
        }
        keys[idx][mi] = sub.key();
      }
    }
  };

  const std::size_t total = triples.size();
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
  if (threads <= 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      const std::size_t lo = total * w / threads;
      const std::size_t hi = total * (w + 1) / threads;
      pool.emplace_back([&, w, lo, hi] {
        try {
          worker(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<CensusRow> rows;
  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    std::set<std::string> distinct;
    for (std::size_t idx = 0; idx < total; ++idx) distinct.insert(keys[idx][mi]);
    CensusRow row;
    row.q = q;
    row.e = e;
    row.m = m;
    row.n = n;
    row.k = k;
    row.a = static_cast<long long>(distinct.size());
    row.b = static_cast<long long>(total);
    row.auto_set = modes[mi];
    row.runtime_seconds = elapsed;
    rows.push_back(row);
  }
  if (detail) {
    detail->triples = triples;
    detail->keys = std::move(keys);
  }
  return rows;
}

inline CensusRow census_row(std::uint64_t q, int e, int n, int k,
                            AutoSetMode mode = AutoSetMode::GeneratorsOfM, int jobs = 1,
                            std::optional<std::uint64_t> eta_enc = std::nullopt) {
  return census_rows(q, e, n, k, {mode}, jobs, eta_enc).front();
}

// Census over the reference grid: rows n in [n_min, n_max], columns
// 2 < k < n-2.
inline std::vector<CensusRow> table1(std::uint64_t q = 2, int e = 1,
                                     AutoSetMode mode = AutoSetMode::GeneratorsOfM, int jobs = 1,
                                     int n_min = 7, int n_max = 18) {
  std::vector<CensusRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    for (int k = 3; k < n - 2; ++k) rows.push_back(census_row(q, e, n, k, mode, jobs));
  }
  return rows;
}

// Expected census cells for the default configuration (q = 2, e = 1,
// m = 2n), used for the delta column in reports.  First of the pair is the
// distinct-fingerprint count a, second the sweep size b.
inline std::optional<std::pair<long long, long long>> reference_census_cell(int n, int k) {
  static const struct {
    int n;
    std::vector<std::pair<long long, long long>> cells;  // k = 3, 4, ...
  } kTable[] = {
      {7, {{9, 36}, {6, 36}}},
      {8, {{7, 60}, {7, 64}, {3, 60}}},
      {9, {{15, 54}, {21, 60}, {15, 60}, {6, 54}}},
      {10, {{12, 84}, {14, 96}, {13, 100}, {7, 96}, {3, 84}}},
      {11, {{40, 120}, {60, 140}, {65, 150}, {60, 150}, {30, 140}, {10, 120}}},
      {12, {{19, 108}, {18, 128}, {12, 140}, {12, 144}, {8, 140}, {6, 128}, {3, 108}}},
      {13,
       {{66, 180}, {102, 216}, {108, 240}, {120, 252}, {96, 252}, {72, 240}, {36, 216}, {12, 180}}},
      {14,
       {{30, 198},
        {36, 240},
        {42, 270},
        {39, 288},
        {42, 294},
        {30, 288},
        {21, 270},
        {12, 240},
        {4, 198}}},
      {15,
       {{52, 144},
        {64, 176},
        {72, 200},
        {76, 216},
        {72, 224},
        {64, 224},
        {44, 216},
        {36, 200},
        {20, 176},
        {8, 144}}},
      {16,
       {{58, 312},
        {76, 384},
        {92, 440},
        {72, 480},
        {80, 504},
        {72, 512},
        {56, 504},
        {40, 480},
        {28, 440},
        {16, 384},
        {5, 312}}},
      {17,
       {{136, 336},
        {184, 416},
        {224, 480},
        {240, 528},
        {256, 560},
        {280, 576},
        {240, 576},
        {192, 560},
        {128, 528},
        {96, 480},
        {48, 416},
        {16, 336}}},
      {18,
       {{51, 270},
        {54, 336},
        {60, 390},
        {57, 432},
        {60, 462},
        {54, 480},
        {51, 486},
        {39, 480},
        {27, 462},
        {18, 432},
        {12, 390},
        {9, 336},
        {4, 270}}},
  };
  for (const auto& row : kTable) {
    if (row.n != n) continue;
    const int idx = k - 3;
    if (idx < 0 || idx >= static_cast<int>(row.cells.size())) return std::nullopt;
    return row.cells[static_cast<std::size_t>(idx)];
  }
  return std::nullopt;
}

// Number of classes of full-support plain codes of square shape: half the
// generators of the Galois group, since sigma and its inverse give the same
// class.
inline long long gabidulin_class_count(int m, int k) {
  if (m < 3 || k <= 1 || k >= m - 1) {
    throw std::invalid_argument("gabidulin_class_count requires m >= 3 and 1 < k < m-1");
  }
  return euler_phi(m) / 2;
}

// Orbits of the full automorphism group (p-power maps) on the nonzero
// elements whose norm avoids (-1)^(km).  The norm condition is preserved by
// every orbit; this is asserted while walking.
inline long long orbit_count_X(std::uint64_t q, int e, int m, int k) {
  auto tower = build_tower(prime_base(q, e), e, m);
  if (tower->size() > (1ull << 24)) {
    throw ScaleError("orbit_count_X enumerates the field; it needs at most 2^24 elements");
  }
  const std::uint64_t size = tower->size();
  std::vector<bool> seen(size, false);
  long long orbits = 0;
  for (std::uint64_t enc = 1; enc < size; ++enc) {
    if (seen[enc]) continue;
    const FieldElem rep{enc};
    const bool valid = mrd_norm_condition(*tower, rep, k);
    FieldElem x = rep;
    do {
      seen[x.enc] = true;
      if (mrd_norm_condition(*tower, x, k) != valid) {
        throw std::logic_error("norm condition not constant on an automorphism orbit");
      }
      x = tower->frobenius_p(x, 1);
    } while (x.enc != enc);
    if (valid) ++orbits;
  }
  return orbits;
}

// Class count for single-twist codes of square shape with the twist at the
// top row: one class per (generator pair, eta orbit).
inline long long sheekey_class_count(std::uint64_t q, int e, int m, int k) {
  if (k <= 2 || k >= m - 2) {
    throw std::invalid_argument("sheekey_class_count requires 2 < k < m-2");
  }
  return (euler_phi(m) / 2) * orbit_count_X(q, e, m, k);
}

}  // namespace rminv

#endif  // RMINV_CENSUS_HPP_
