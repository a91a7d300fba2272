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

// Constructions of F_{q^m}-linear rank-metric codes: Gabidulin codes, the
// twisted variants (single twist, multiple twists, and the overlapping-twist
// family), plus semilinear equivalence maps and small-scale MRD checks.
//
// A code is stored as the canonical RREF of its generator matrix together
// with the symbolic spec it was built from.  sigma is always a power of the
// q-Frobenius x -> x^q; specs carry the exponent.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rminv/linalg.hpp"

namespace rminv {

enum class CodeFamily { Gabidulin, SheekeyTwisted, GeneralizedTwisted, GabidulinNew };

inline const char* to_string(CodeFamily f) {
  switch (f) {
    case CodeFamily::Gabidulin: return "gabidulin";
    case CodeFamily::SheekeyTwisted: return "sheekey";
    case CodeFamily::GeneralizedTwisted: return "twisted";
    case CodeFamily::GabidulinNew: return "gabidulin_new";
  }
  return "?";
}

// Whether the spec's sigma exponent must generate Gal(F_{q^m}/F_q).  The
// definitions require a generator; invariant computations are meaningful for
// arbitrary automorphisms, so those callers may relax the check.
enum class SigmaPolicy { RequireGenerator, AllowAnyExponent };

struct CodeSpec {
  CodeFamily family = CodeFamily::Gabidulin;
  std::uint64_t q = 2;  // q = p^e
  int e = 1;
  int m = 1;
  int n = 1;
  int k = 1;
  long long sigma_exp = 1;  // sigma = x -> x^(q^sigma_exp)
  // Element encodings; empty optional means "auto" (alpha: canonical basis of
  // F_{q^n}; eta: family-dependent default, see default_*_eta below).
  std::optional<std::vector<std::uint64_t>> alpha;
  std::optional<std::vector<std::uint64_t>> eta;
  // Twist positions, used by the multi-twist family only.
  std::vector<int> h;
  std::vector<int> t;
};

// Recovers the prime p from q = p^e.
inline std::uint64_t prime_base(std::uint64_t q, int e) {
  if (e < 1) throw std::invalid_argument("e must be positive");
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const double root = std::pow(static_cast<double>(q), 1.0 / e);
  for (std::uint64_t p = static_cast<std::uint64_t>(root) > 2 ? static_cast<std::uint64_t>(root) - 2 : 2;
       p <= static_cast<std::uint64_t>(root) + 2; ++p) {
    std::uint64_t v = 1;
    bool overflow = false;
    for (int i = 0; i < e; ++i) {
      if (v > q / p) {
        overflow = true;
        break;
      }
      v *= p;
    }
    if (!overflow && v == q && detail::is_prime_u64(p)) return p;
  }
  throw std::invalid_argument("q is not a prime power of the form p^e");
}

inline std::shared_ptr<const FieldTower> tower_for(const CodeSpec& s) {
  return build_tower(prime_base(s.q, s.e), s.e, s.m);
}

struct Code {
  std::shared_ptr<const FieldTower> tower;
  Mat gen;  // RREF, dim rows, n cols
  std::optional<CodeSpec> spec;

  std::size_t n() const { return gen.cols(); }
  std::size_t dim() const { return gen.rows(); }
};

// Canonicalizes an arbitrary generator; the code's dimension is the rank.
inline Code code_from_generator(std::shared_ptr<const FieldTower> tower, const Mat& rows,
                                std::optional<CodeSpec> provenance = std::nullopt) {
  RrefResult r = rref(rows);
  return Code{std::move(tower), r.mat.take_rows(r.rank), std::move(provenance)};
}

// Rows sigma^(s*j)(alpha) for j = 0, ..., i-1.
inline Mat moore_matrix(const std::shared_ptr<const FieldTower>& t,
                        const std::vector<FieldElem>& alpha, int i, long long s) {
  if (i < 1) throw std::invalid_argument("moore_matrix needs at least one row");
  Mat m(t, static_cast<std::size_t>(i), alpha.size());
  for (int r = 0; r < i; ++r) {
    for (std::size_t c = 0; c < alpha.size(); ++c) {
      m.at(static_cast<std::size_t>(r), c) = t->frobenius(alpha[c], s * r);
    }
  }
  return m;
}

// Smallest-encoding element of F_{q^m} outside the subfield F_{q^n}.
inline FieldElem default_twist_eta(const FieldTower& t, int n) {
  if (t.m() % n != 0) throw std::invalid_argument("subfield degree must divide m");
  if (n == t.m()) throw std::invalid_argument("no element outside F_{q^m} itself");
  for (std::uint64_t enc = 0;; ++enc) {
    const FieldElem x = t.element(enc);
    if (!t.subfield_membership(x, n)) return x;
  }
}

// True iff N(eta) differs from (-1)^(km), the norm condition under which the
// single-twist constructions are maximum rank distance.
inline bool mrd_norm_condition(const FieldTower& t, FieldElem eta, int k) {
  const FieldElem nrm = t.norm(eta);
  const FieldElem sign =
      (static_cast<long long>(k) * t.m()) % 2 == 0 ? t.one() : t.neg(t.one());
  return nrm != sign;
}

// Smallest-encoding nonzero eta passing the norm condition.  Over F_2 every
// nonzero element has norm 1 = (-1)^(km), so no such eta exists.
inline FieldElem default_mrd_eta(const FieldTower& t, int k) {
  for (std::uint64_t enc = 1; enc < t.size(); ++enc) {
    const FieldElem x = t.element(enc);
    if (mrd_norm_condition(t, x, k)) return x;
  }
  throw std::invalid_argument(
      "no eta satisfies the norm condition (always the case for q = 2); pass eta explicitly");
}

namespace detail {

inline void validate_spec(const CodeSpec& s, const FieldTower& t, SigmaPolicy policy) {
  if (s.m != t.m() || s.e != t.e()) throw std::invalid_argument("spec does not match tower");
  if (s.k < 1 || s.k > s.n || s.n > s.m) throw std::invalid_argument("need 1 <= k <= n <= m");
  const long long smod = ((s.sigma_exp % s.m) + s.m) % s.m;
  if (policy == SigmaPolicy::RequireGenerator &&
      std::gcd(static_cast<long long>(s.m), smod) != 1) {
    throw std::invalid_argument("sigma exponent does not generate the Galois group");
  }
  const std::size_t ell = s.h.size();
  switch (s.family) {
    case CodeFamily::Gabidulin:
      break;
    case CodeFamily::SheekeyTwisted:
      if (s.k >= s.n) throw std::invalid_argument("single-twist code needs k < n");
      break;
    case CodeFamily::GeneralizedTwisted: {
      if (s.t.size() != ell) throw std::invalid_argument("h and t must have equal length");
      if (ell > static_cast<std::size_t>(s.k)) throw std::invalid_argument("more twists than rows");
      for (std::size_t i = 0; i < ell; ++i) {
        if (s.h[i] < 0 || s.h[i] >= s.k) throw std::invalid_argument("h out of range [0, k)");
        if (s.t[i] < 1 || s.t[i] > s.n - s.k) throw std::invalid_argument("t out of range [1, n-k]");
        for (std::size_t j = i + 1; j < ell; ++j) {
          if (s.h[i] == s.h[j]) throw std::invalid_argument("h entries must be distinct");
          if (s.t[i] == s.t[j]) throw std::invalid_argument("t entries must be distinct");
        }
      }
      break;
    }
    case CodeFamily::GabidulinNew:
      if (s.m - s.k > s.k) throw std::invalid_argument("overlapping-twist family needs m - k <= k");
      break;
  }
}

inline std::vector<FieldElem> resolve_alpha(const CodeSpec& s,
                                            const std::shared_ptr<const FieldTower>& t) {
  std::vector<FieldElem> alpha;
  if (s.alpha) {
    if (s.alpha->size() != static_cast<std::size_t>(s.n)) {
      throw std::invalid_argument("alpha must have n entries");
    }
    alpha.reserve(s.alpha->size());
    for (std::uint64_t enc : *s.alpha) alpha.push_back(t->element(enc));
  } else {
    if (s.m % s.n != 0) {
      throw std::invalid_argument("auto alpha needs n dividing m (subfield basis)");
    }
    alpha = t->subfield_basis(s.n);
  }
  if (q_rank(*t, alpha) != static_cast<std::size_t>(s.n)) {
    throw std::invalid_argument("alpha entries must be linearly independent over F_q");
  }
  return alpha;
}

inline std::vector<FieldElem> resolve_eta(const CodeSpec& s,
                                          const std::shared_ptr<const FieldTower>& t,
                                          std::size_t count) {
  std::vector<FieldElem> eta;
  if (s.eta) {
    if (s.eta->size() != count) throw std::invalid_argument("wrong number of eta values");
    for (std::uint64_t enc : *s.eta) {
      const FieldElem x = t->element(enc);
      if (t->is_zero(x)) throw std::invalid_argument("eta must be nonzero");
      eta.push_back(x);
    }
    return eta;
  }
  switch (s.family) {
    case CodeFamily::SheekeyTwisted:
      eta.push_back(default_mrd_eta(*t, s.k));
      break;
    case CodeFamily::GabidulinNew:
      eta.push_back(default_mrd_eta(*t, s.k));
      break;
    case CodeFamily::GeneralizedTwisted: {
      // One shared default is only meaningful for a single twist; multi-twist
      // specs must pin their eta vector explicitly.
      if (count != 1) throw std::invalid_argument("auto eta supports exactly one twist");
      eta.push_back(default_twist_eta(*t, s.n));
      break;
    }
    case CodeFamily::Gabidulin:
      break;
  }
  return eta;
}

}  // namespace detail

inline Code build(const CodeSpec& spec, const std::shared_ptr<const FieldTower>& t,
                  SigmaPolicy policy = SigmaPolicy::RequireGenerator) {
  detail::validate_spec(spec, *t, policy);
  const std::vector<FieldElem> alpha = detail::resolve_alpha(spec, t);
  const long long s = spec.sigma_exp;
  const int k = spec.k, n = spec.n;

  // Start from the plain Moore rows and twist where the family says so.
  Mat g = moore_matrix(t, alpha, k, s);
  auto add_twist = [&](int row, long long power, FieldElem coeff) {
    for (int c = 0; c < n; ++c) {
      const FieldElem extra = t->mul(coeff, t->frobenius(alpha[static_cast<std::size_t>(c)], power));
      g.at(static_cast<std::size_t>(row), static_cast<std::size_t>(c)) =
          t->add(g.at(static_cast<std::size_t>(row), static_cast<std::size_t>(c)), extra);
    }
  };

  switch (spec.family) {
    case CodeFamily::Gabidulin:
      break;
    case CodeFamily::SheekeyTwisted: {
      const FieldElem eta = detail::resolve_eta(spec, t, 1)[0];
      add_twist(0, s * k, eta);
      break;
    }
    case CodeFamily::GeneralizedTwisted: {
      if (spec.h.empty()) break;  // zero twists degenerates to the plain family
      const std::vector<FieldElem> eta = detail::resolve_eta(spec, t, spec.h.size());
      for (std::size_t i = 0; i < spec.h.size(); ++i) {
        add_twist(spec.h[i], s * (k - 1 + spec.t[i]), eta[i]);
      }
      break;
    }
    case CodeFamily::GabidulinNew: {
      const FieldElem eta = detail::resolve_eta(spec, t, 1)[0];
      for (int i = 0; i < spec.m - k; ++i) {
        add_twist(i, s * (k + i), t->frobenius(eta, s * i));
      }
      break;
    }
  }

  Code c = code_from_generator(t, g, spec);
  if (c.dim() != static_cast<std::size_t>(k)) {
    throw std::logic_error("generator rank dropped below k");
  }
  return c;
}

inline Code build(const CodeSpec& spec, SigmaPolicy policy = SigmaPolicy::RequireGenerator) {
  return build(spec, tower_for(spec), policy);
}

// One semilinear rank isometry: v -> theta(lambda * v) A with A over F_q.
struct Isometry {
  FieldElem lambda;
  Mat A;
  long long theta_exp = 0;  // x -> x^(p^theta_exp)
};

inline Code apply_equivalence(const Code& c, const Isometry& iso) {
  const FieldTower& t = *c.tower;
  if (t.is_zero(iso.lambda)) throw std::invalid_argument("lambda must be nonzero");
  if (iso.A.rows() != c.n() || iso.A.cols() != c.n()) {
    throw std::invalid_argument("A must be n x n");
  }
  for (std::size_t i = 0; i < iso.A.rows(); ++i) {
    for (std::size_t j = 0; j < iso.A.cols(); ++j) {
      if (!t.subfield_membership(iso.A.at(i, j), 1)) {
        throw std::invalid_argument("A entries must lie in F_q");
      }
    }
  }
  if (rref(iso.A).rank != c.n()) throw std::invalid_argument("A must be invertible");

  Mat mapped = c.gen.scaled(iso.lambda).map_frobenius_p(iso.theta_exp).mul(iso.A);
  Code out = code_from_generator(c.tower, mapped, c.spec);
  if (out.dim() != c.dim()) throw std::logic_error("equivalence changed the dimension");
  return out;
}

// Exhaustive minimum rank distance; only for q^(mk) up to 2^20.
inline std::size_t min_rank_distance_bruteforce(const Code& c) {
  const FieldTower& t = *c.tower;
  const std::size_t k = c.dim(), n = c.n();
  double total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(t.size());
  if (total > static_cast<double>(1ull << 20)) {
    throw ScaleError("too many codewords for brute-force enumeration");
  }
  std::size_t best = n + 1;
  std::vector<std::uint64_t> coef(k, 0);
  std::vector<FieldElem> word(n);
  for (;;) {
    std::size_t pos = 0;
    while (pos < k && ++coef[pos] == t.size()) coef[pos++] = 0;
    if (pos == k) break;
    for (std::size_t c2 = 0; c2 < n; ++c2) word[c2] = t.zero();
    for (std::size_t i = 0; i < k; ++i) {
      if (coef[i] == 0) continue;
      const FieldElem ci = t.element(coef[i]);
      for (std::size_t c2 = 0; c2 < n; ++c2) {
        word[c2] = t.add(word[c2], t.mul(ci, c.gen.at(i, c2)));
      }
    }
    best = std::min(best, q_rank(t, word));
    if (best == 1) break;  // cannot get lower
  }
  return best;
}

}  // namespace rminv
