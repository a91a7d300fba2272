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

// Shared randomized helpers for the test binaries.  Not part of the library.

#pragma once

#include <random>
#include <vector>

#include "rminv/codes.hpp"

namespace testutil {

using rminv::Code;
using rminv::FieldElem;
using rminv::FieldTower;
using rminv::Isometry;
using rminv::Mat;

inline FieldElem rand_elem(const FieldTower& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, t.size() - 1);
  return t.element(d(rng));
}

inline FieldElem rand_nonzero(const FieldTower& t, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(1, t.size() - 1);
  return t.element(d(rng));
}

inline Mat rand_gl_over_q(const std::shared_ptr<const FieldTower>& t, std::size_t n,
                          std::mt19937_64& rng) {
  const std::vector<FieldElem> fq = t->enumerate_subfield(1);
  std::uniform_int_distribution<std::size_t> pick(0, fq.size() - 1);
  for (;;) {
    Mat a(t, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = fq[pick(rng)];
    if (rminv::rref(a).rank == n) return a;
  }
}

inline Isometry random_isometry(const std::shared_ptr<const FieldTower>& t, std::size_t n,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> th(0, static_cast<long long>(t->degree()) - 1);
  return Isometry{rand_nonzero(*t, rng), rand_gl_over_q(t, n, rng), th(rng)};
}

// Applies the isometry to a single vector the way it acts on a code.
inline std::vector<FieldElem> map_word(const FieldTower& t, const std::vector<FieldElem>& v,
                                       const Isometry& iso) {
  const std::size_t n = v.size();
  std::vector<FieldElem> w(n, t.zero());
  for (std::size_t j = 0; j < n; ++j) {
    const FieldElem x = t.frobenius_p(t.mul(iso.lambda, v[j]), iso.theta_exp);
    for (std::size_t c = 0; c < n; ++c) {
      w[c] = t.add(w[c], t.mul(x, iso.A.at(j, c)));
    }
  }
  return w;
}

inline std::vector<FieldElem> random_codeword(const Code& c, std::mt19937_64& rng) {
  const FieldTower& t = *c.tower;
  std::vector<FieldElem> w(c.n(), t.zero());
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const FieldElem ci = rand_elem(t, rng);
    for (std::size_t j = 0; j < c.n(); ++j) {
      w[j] = t.add(w[j], t.mul(ci, c.gen.at(i, j)));
    }
  }
  return w;
}

// True iff v lies in the row space of the code's generator.
inline bool contains_word(const Code& c, const std::vector<FieldElem>& v) {
  Mat row(c.tower, 1, c.n());
  for (std::size_t j = 0; j < c.n(); ++j) row.at(0, j) = v[j];
  return rminv::rref(Mat::vstack({&c.gen, &row})).rank == c.dim();
}

}  // namespace testutil
