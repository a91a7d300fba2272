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

// Equivalence invariants of rank-metric codes built from sums of Frobenius
// images: the dimension sequence of C + sigma(C) + ... + sigma^i(C), general
// power-set dimensions, fingerprints over automorphism sets, and the
// closed-form sequence predictions for the constructed families.
//
// All sequences here are taken with respect to an absolute automorphism
// exponent: "exp" always means the map x -> x^(q^exp), independent of the
// sigma a code was built with.  Codes built with different sigma can thus be
// compared under one common automorphism set.

#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rminv/codes.hpp"

namespace rminv {

struct SigmaSequence {
  long long auto_exp = 1;
  std::vector<int> dims;  // dims[i] = dim of the i-th partial sum

  friend bool operator==(const SigmaSequence&, const SigmaSequence&) = default;
};

// S_i = sum of sigma^(s*j)(C) for j = 0..i, as a code in canonical form.
inline Code sigma_space(const Code& c, long long s, int i) {
  if (i < 0) throw std::invalid_argument("negative index");
  std::vector<Mat> layers;
  layers.reserve(static_cast<std::size_t>(i) + 1);
  std::vector<const Mat*> parts;
  layers.push_back(c.gen);
  for (int j = 1; j <= i; ++j) layers.push_back(c.gen.map_frobenius(s * j));
  for (const Mat& m : layers) parts.push_back(&m);
  RrefResult r = rref(Mat::vstack(parts));
  return Code{c.tower, r.mat.take_rows(r.rank), c.spec};
}

// Dimension sequence of the partial sums, default length n - k + 1 (the
// sequence is constant from index n - k on).  Once two consecutive values
// agree the tail is constant, so the remaining entries are filled in without
// further elimination.
inline SigmaSequence sigma_sequence(const Code& c, long long s,
                                    std::optional<int> i_max = std::nullopt) {
  const int n = static_cast<int>(c.n());
  const int k = static_cast<int>(c.dim());
  const int last = i_max.value_or(n - k);
  if (last < 0) throw std::invalid_argument("negative i_max");

  SigmaSequence seq;
  seq.auto_exp = s;
  seq.dims.resize(static_cast<std::size_t>(last) + 1);

  RowReducer red(c.tower, c.n());
  red.push_matrix(c.gen);
  seq.dims[0] = static_cast<int>(red.rank());
  for (int i = 1; i <= last; ++i) {
    red.push_matrix(c.gen.map_frobenius(s * i));
    seq.dims[static_cast<std::size_t>(i)] = static_cast<int>(red.rank());
    if (seq.dims[static_cast<std::size_t>(i)] == seq.dims[static_cast<std::size_t>(i) - 1]) {
      for (int j = i + 1; j <= last; ++j) {
        seq.dims[static_cast<std::size_t>(j)] = seq.dims[static_cast<std::size_t>(i)];
      }
      break;
    }
  }
  return seq;
}

// dim(C + sigma^(p1)(C) + ... + sigma^(pr)(C)) for strictly increasing
// powers p1 < ... < pr inside (0, m).
inline int general_sum_dim(const Code& c, const std::vector<long long>& powers) {
  const int m = c.tower->m();
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] <= 0 || powers[i] >= m) throw std::invalid_argument("powers must lie in (0, m)");
    if (i > 0 && powers[i] <= powers[i - 1]) {
      throw std::invalid_argument("powers must be strictly increasing");
    }
  }
  RowReducer red(c.tower, c.n());
  red.push_matrix(c.gen);
  for (long long p : powers) red.push_matrix(c.gen.map_frobenius(p));
  return static_cast<int>(red.rank());
}

// Minimal i with dims[i] = dims[i+1].  When no plateau is visible the
// sequence must be long enough (at least n - k + 1 entries, which needs the
// code length) to certify that the final entry is the plateau.
inline int stabilization_index(const SigmaSequence& seq, std::optional<int> length_n = std::nullopt) {
  if (seq.dims.empty()) throw std::invalid_argument("empty sequence");
  for (std::size_t i = 0; i + 1 < seq.dims.size(); ++i) {
    if (seq.dims[i] == seq.dims[i + 1]) return static_cast<int>(i);
  }
  if (length_n) {
    const int k = seq.dims[0];
    const int plateau = *length_n - k;
    if (static_cast<int>(seq.dims.size()) >= plateau + 1) return plateau;
  }
  throw std::invalid_argument("sequence too short to certify its plateau");
}

struct Fingerprint {
  std::uint64_t q = 2;
  int e = 1;
  int m = 1;
  int n = 1;
  int k = 1;
  std::vector<SigmaSequence> entries;  // ascending auto_exp

  std::string key() const {
    std::ostringstream os;
    os << 'q' << q << 'e' << e << 'm' << m << 'n' << n << 'k' << k;
    for (const SigmaSequence& s : entries) {
      os << '|' << s.auto_exp << ':';
      for (std::size_t i = 0; i < s.dims.size(); ++i) {
        if (i) os << ',';
        os << s.dims[i];
      }
    }
    return os.str();
  }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// One sequence per automorphism exponent, exponents normalized mod m into
// [1, m), deduplicated order ascending.
inline Fingerprint fingerprint(const Code& c, const std::vector<long long>& auto_exps) {
  if (auto_exps.empty()) throw std::invalid_argument("empty automorphism set");
  const int m = c.tower->m();
  std::vector<long long> exps;
  exps.reserve(auto_exps.size());
  for (long long e : auto_exps) {
    const long long norm = ((e % m) + m) % m;
    if (norm == 0) throw std::invalid_argument("exponent 0 mod m is the identity");
    exps.push_back(norm);
  }
  std::sort(exps.begin(), exps.end());
  if (std::adjacent_find(exps.begin(), exps.end()) != exps.end()) {
    throw std::invalid_argument("duplicate automorphism exponents");
  }

  Fingerprint fp;
  fp.q = c.tower->q();
  fp.e = c.tower->e();
  fp.m = m;
  fp.n = static_cast<int>(c.n());
  fp.k = static_cast<int>(c.dim());
  fp.entries.reserve(exps.size());
  for (long long e : exps) fp.entries.push_back(sigma_sequence(c, e));
  return fp;
}

enum class DistinguishResult { Inequivalent, Unknown };

inline const char* to_string(DistinguishResult r) {
  return r == DistinguishResult::Inequivalent ? "INEQUIVALENT" : "UNKNOWN";
}

// Certifies inequivalence when any invariant differs; never certifies
// equivalence.
inline DistinguishResult distinguish(const Code& a, const Code& b,
                                     const std::vector<long long>& auto_exps) {
  if (a.tower.get() != b.tower.get() || a.n() != b.n()) {
    throw std::invalid_argument("codes live in different ambient spaces");
  }
  return fingerprint(a, auto_exps) == fingerprint(b, auto_exps) ? DistinguishResult::Unknown
                                                                : DistinguishResult::Inequivalent;
}

// s_1 = k + 1 test: for an MRD code this characterizes equivalence to a
// Gabidulin code with the same sigma.
inline bool gabidulin_criterion(const Code& c, long long s) {
  const SigmaSequence seq = sigma_sequence(c, s, 1);
  return seq.dims[1] == static_cast<int>(c.dim()) + 1;
}

// Published closed forms for the families' sequences.  s_rel is the exponent
// relative to the code's own sigma: the prediction concerns the automorphism
// (sigma_code)^(s_rel).  Returns nothing when no formula covers the input.
inline std::optional<int> closed_form_sequence(const CodeSpec& sp, long long s_rel, int i) {
  if (i < 0) return std::nullopt;
  const int m = sp.m, n = sp.n, k = sp.k;
  const long long l = ((s_rel % m) + m) % m;
  if (i == 0) return k;
  if (l == 0) return k;  // identity automorphism: every partial sum is C

  auto cap = [n](long long v) { return static_cast<int>(std::min<long long>(v, n)); };

  switch (sp.family) {
    case CodeFamily::Gabidulin: {
      if (l <= k) return cap(k + static_cast<long long>(i) * l);
      if (l >= m - k) return cap(k + static_cast<long long>(i) * (m - l));
      if (m == n && i == 1) return cap(2 * k);  // k+1 <= l <= m-k-1
      return std::nullopt;
    }
    case CodeFamily::SheekeyTwisted: {
      // The twist contributes one extra dimension; this needs only a nonzero
      // eta except at the corner l = k = m - k, where the norm condition is
      // what keeps the twisted rows independent.
      if (l <= k - 1) return cap(k + static_cast<long long>(i) * l + 1);
      if (l >= m - k + 1) return cap(k + static_cast<long long>(i) * (m - l) + 1);
      if (m == n && i == 1 && l >= k && l <= m - k) {
        if (m == 2 * k) {
          const auto t = tower_for(sp);
          const FieldElem eta =
              sp.eta ? t->element(sp.eta->at(0)) : default_mrd_eta(*t, k);
          if (!mrd_norm_condition(*t, eta, k)) return std::nullopt;
        }
        return cap(2 * k);
      }
      return std::nullopt;
    }
    case CodeFamily::GeneralizedTwisted: {
      // Single twist and the code's own sigma only; alpha must span the
      // degree-n subfield, which the automatic selector guarantees.
      if (sp.h.size() != 1 || sp.t.size() != 1) return std::nullopt;
      if (l != 1) return std::nullopt;
      if (sp.alpha) return std::nullopt;
      const int h = sp.h[0], t = sp.t[0];
      if (t == 1 || t == n - k) return std::nullopt;
      if (h == 0 || h == k - 1) return std::nullopt;
      const int u = std::min(t - 1, n - k - t);
      if (i <= u) return k + 1 + 2 * i;
      return cap(static_cast<long long>(k) + 1 + u + i);
    }
    case CodeFamily::GabidulinNew: {
      if (l != 1) return std::nullopt;
      return cap(static_cast<long long>(k) + i);
    }
  }
  return std::nullopt;
}

// Vector form of the prediction; present only when every index is covered.
inline std::optional<std::vector<int>> closed_form_sequence_vec(const CodeSpec& sp, long long s_rel,
                                                                int i_max) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(i_max) + 1);
  for (int i = 0; i <= i_max; ++i) {
    const std::optional<int> v = closed_form_sequence(sp, s_rel, i);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

}  // namespace rminv
