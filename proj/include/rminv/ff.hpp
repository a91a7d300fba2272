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

// Exact arithmetic in a tower F_p <= F_q <= F_{q^m} with q = p^e.
//
// The top field is realized as F_p[x]/(f) where f is the canonical modulus:
// the first monic irreducible polynomial of degree e*m over F_p when
// coefficient vectors are ordered by their integer encoding.  Elements are
// value types carrying the encoding sum(c_i * p^i) of their coefficient
// vector; all operations are pure functions on a shared immutable tower.
// Towers are desk scale: p^(e*m) <= 2^40 for arithmetic, and any operation
// that enumerates elements additionally requires <= 2^24 of them.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#if defined(__PCLMUL__)
#include <emmintrin.h>
#include <wmmintrin.h>
#endif

namespace rminv {

inline constexpr int kMaxDegree = 40;                        // e*m bound, from p^(e*m) <= 2^40
inline constexpr std::uint64_t kArithGuard = 1ull << 40;     // plain arithmetic
inline constexpr std::uint64_t kEnumGuard = 1ull << 24;      // element enumeration

// Thrown when a request exceeds the desk-scale guards above.
struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the top field, identified by its integer encoding.
struct FieldElem {
  std::uint64_t enc = 0;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t k, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  a %= mod;
  while (k) {
    if (k & 1) r = mulmod_u64(r, a, mod);
    a = mulmod_u64(a, a, mod);
    k >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

inline std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int ex = 0;
    while (n % d == 0) {
      n /= d;
      ++ex;
    }
    out.emplace_back(d, ex);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Dense polynomials over F_p, little-endian coefficients, digits < p < 2^20.
using Poly = std::vector<std::uint32_t>;

inline int poly_deg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i]) return i;
  }
  return -1;
}

inline void poly_trim(Poly& a) { a.resize(static_cast<std::size_t>(poly_deg(a) + 1)); }

// a*b mod f, with f monic of degree n >= 1.
inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  const int n = poly_deg(f);
  std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * n - 1), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  }
  for (auto& c : prod) c %= p;
  for (int d = 2 * n - 2; d >= n; --d) {
    const std::uint64_t c = prod[static_cast<std::size_t>(d)];
    if (!c) continue;
    for (int i = 0; i <= n; ++i) {
      auto& slot = prod[static_cast<std::size_t>(d - n + i)];
      slot = (slot + (p - c) * f[static_cast<std::size_t>(i)]) % p;
    }
  }
  Poly r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
  return r;
}

inline Poly poly_powmod(Poly base, std::uint64_t k, const Poly& f, std::uint64_t p) {
  Poly r = {1};
  while (k) {
    if (k & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    k >>= 1;
  }
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((x + p - y) % p);
  }
  poly_trim(r);
  return r;
}

inline Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
  poly_trim(a);
  const int db = poly_deg(b);
  const std::uint64_t lead_inv = fp_inv(b[static_cast<std::size_t>(db)], p);
  for (int d = poly_deg(a); d >= db; d = poly_deg(a)) {
    const std::uint64_t c = mulmod_u64(a[static_cast<std::size_t>(d)], lead_inv, p);
    for (int i = 0; i <= db; ++i) {
      auto& slot = a[static_cast<std::size_t>(d - db + i)];
      slot = static_cast<std::uint32_t>((slot + (p - c) * b[static_cast<std::size_t>(i)]) % p);
    }
    poly_trim(a);
  }
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (poly_deg(b) >= 0) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1
// for every prime r dividing n.
inline bool poly_irreducible(const Poly& f, std::uint64_t p) {
  const int n = poly_deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  std::vector<int> checkpoints;
  for (auto [r, ex] : factorize_u64(static_cast<std::uint64_t>(n))) {
    (void)ex;
    checkpoints.push_back(n / static_cast<int>(r));
  }
  const Poly x = {0, 1};
  Poly u = x;
  for (int i = 1; i <= n; ++i) {
    u = poly_powmod(u, p, f, p);
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      Poly g = poly_gcd(poly_sub(u, x, p), f, p);
      if (poly_deg(g) != 0) return false;
    }
  }
  Poly diff = poly_sub(u, x, p);
  return poly_deg(diff) < 0;
}

// Row-reduce an F_p matrix in place; returns rank, optionally pivot columns.
using FpMat = std::vector<std::vector<std::uint32_t>>;

inline std::size_t fp_rref(FpMat& m, std::uint64_t p, std::vector<int>* pivot_cols = nullptr) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    const std::uint64_t inv = fp_inv(m[r][c], p);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = static_cast<std::uint32_t>(mulmod_u64(m[r][j], inv, p));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t c0 = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = static_cast<std::uint32_t>((m[i][j] + (p - c0) * m[r][j]) % p);
      }
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(c));
    ++r;
  }
  return r;
}

inline FpMat fp_nullspace(FpMat m, std::uint64_t p) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  std::vector<int> pivots;
  const std::size_t rank = fp_rref(m, p, &pivots);
  FpMat basis;
  for (std::size_t j = 0; j < cols; ++j) {
    if (std::find(pivots.begin(), pivots.end(), static_cast<int>(j)) != pivots.end()) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[j] = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      v[static_cast<std::size_t>(pivots[r])] =
          static_cast<std::uint32_t>((p - m[r][j] % p) % p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline unsigned __int128 clmul128(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  const std::uint64_t lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  const std::uint64_t hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
  return (static_cast<unsigned __int128>(hi) << 64) | lo;
#else
  unsigned __int128 acc = 0;
  while (b) {
    acc ^= static_cast<unsigned __int128>(a) << std::countr_zero(b);
    b &= b - 1;
  }
  return acc;
#endif
}

}  // namespace detail

// Immutable realization of F_{q^m} = F_p[x]/(f), q = p^e, with precomputed
// Frobenius tables.  Obtain instances through build_tower(); identical
// parameters always yield the identical field (the modulus is canonical).
class FieldTower {
 public:
  static std::shared_ptr<const FieldTower> make(std::uint64_t p, int e, int m) {
    static std::mutex mx;
    static std::map<std::tuple<std::uint64_t, int, int>, std::shared_ptr<const FieldTower>> cache;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_tuple(p, e, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto tower = std::shared_ptr<const FieldTower>(new FieldTower(p, e, m));
    cache.emplace(key, tower);
    return tower;
  }

  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  int e() const { return e_; }
  int m() const { return m_; }
  int degree() const { return deg_; }
  std::uint64_t size() const { return size_; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string name() const {
    return std::to_string(p_) + "^" + std::to_string(e_) + "^" + std::to_string(m_);
  }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  bool is_zero(FieldElem a) const { return a.enc == 0; }

  FieldElem element(std::uint64_t enc) const {
    if (enc >= size_) throw std::invalid_argument("element encoding out of range for " + name());
    return {enc};
  }

  FieldElem from_coeffs(const std::vector<int>& c) const {
    if (c.size() > static_cast<std::size_t>(deg_)) throw std::invalid_argument("coefficient vector too long");
    std::uint64_t enc = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] < 0 || static_cast<std::uint64_t>(c[i]) >= p_) throw std::invalid_argument("coefficient out of range");
      enc = enc * p_ + static_cast<std::uint64_t>(c[i]);
    }
    return {enc};
  }

  std::vector<int> coeffs(FieldElem a) const {
    std::vector<int> c(static_cast<std::size_t>(deg_));
    std::uint64_t v = a.enc;
    for (int i = 0; i < deg_; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<int>(v % p_);
      v /= p_;
    }
    return c;
  }

  FieldElem add(FieldElem a, FieldElem b) const {
    switch (rep_) {
      case Rep::Bits:
        return {a.enc ^ b.enc};
      case Rep::Scalar: {
        std::uint64_t s = a.enc + b.enc;
        return {s >= p_ ? s - p_ : s};
      }
      case Rep::Digits: {
        std::uint32_t da[kMaxDegree], db[kMaxDegree];
        unpack(a.enc, da);
        unpack(b.enc, db);
        for (int i = 0; i < deg_; ++i) {
          da[i] += db[i];
          if (da[i] >= p_) da[i] -= static_cast<std::uint32_t>(p_);
        }
        return {pack(da)};
      }
    }
    return {0};
  }

  FieldElem neg(FieldElem a) const {
    switch (rep_) {
      case Rep::Bits:
        return a;
      case Rep::Scalar:
        return {a.enc ? p_ - a.enc : 0};
      case Rep::Digits: {
        std::uint32_t d[kMaxDegree];
        unpack(a.enc, d);
        for (int i = 0; i < deg_; ++i) {
          if (d[i]) d[i] = static_cast<std::uint32_t>(p_) - d[i];
        }
        return {pack(d)};
      }
    }
    return {0};
  }

  FieldElem sub(FieldElem a, FieldElem b) const {
    return rep_ == Rep::Bits ? FieldElem{a.enc ^ b.enc} : add(a, neg(b));
  }

  FieldElem mul(FieldElem a, FieldElem b) const {
    switch (rep_) {
      case Rep::Bits: {
        // Carryless product plus Barrett reduction: with mu = floor(x^(2n)/f),
        // the quotient of c by f is ((c >> n) clmul mu) >> n exactly.
        const unsigned __int128 c = detail::clmul128(a.enc, b.enc);
        const std::uint64_t c1 = static_cast<std::uint64_t>(c >> deg_);
        const std::uint64_t qhat = static_cast<std::uint64_t>(detail::clmul128(c1, mu_) >> deg_);
        const std::uint64_t r = static_cast<std::uint64_t>(c) ^ static_cast<std::uint64_t>(detail::clmul128(qhat, fmask_));
        return {r & lowmask_};
      }
      case Rep::Scalar:
        return {detail::mulmod_u64(a.enc, b.enc, p_)};
      case Rep::Digits: {
        std::uint32_t da[kMaxDegree], db[kMaxDegree];
        unpack(a.enc, da);
        unpack(b.enc, db);
        std::uint64_t prod[2 * kMaxDegree] = {0};
        for (int i = 0; i < deg_; ++i) {
          if (!da[i]) continue;
          const std::uint64_t x = da[i];
          for (int j = 0; j < deg_; ++j) prod[i + j] += x * db[j];
        }
        for (int i = 0; i < 2 * deg_ - 1; ++i) prod[i] %= p_;
        for (int d = 2 * deg_ - 2; d >= deg_; --d) {
          const std::uint64_t c = prod[d];
          if (!c) continue;
          for (int i = 0; i <= deg_; ++i) {
            prod[d - deg_ + i] = (prod[d - deg_ + i] + (p_ - c) * fpoly_[static_cast<std::size_t>(i)]) % p_;
          }
        }
        std::uint32_t out[kMaxDegree];
        for (int i = 0; i < deg_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return {pack(out)};
      }
    }
    return {0};
  }

  FieldElem pow(FieldElem a, std::uint64_t k) const {
    FieldElem r = one();
    if (k == 0) return r;
    const int hi = 63 - std::countl_zero(k);
    for (int i = hi; i >= 0; --i) {
      r = mul(r, r);
      if ((k >> i) & 1) r = mul(r, a);
    }
    return r;
  }

  FieldElem inv(FieldElem a) const {
    if (is_zero(a)) throw std::invalid_argument("inverse of zero");
    if (rep_ == Rep::Scalar) return {detail::powmod_u64(a.enc, p_ - 2, p_)};
    return pow(a, size_ - 2);
  }

  // a^(p^t); t is reduced mod e*m.
  FieldElem frobenius_p(FieldElem a, long long t) const {
    const int n = deg_;
    int tt = static_cast<int>(((t % n) + n) % n);
    if (tt == 0 || rep_ == Rep::Scalar) return a;
    if (rep_ == Rep::Bits) {
      const std::uint64_t* col = frob2_.data() + static_cast<std::size_t>(tt) * n;
      std::uint64_t v = a.enc, r = 0;
      while (v) {
        r ^= col[std::countr_zero(v)];
        v &= v - 1;
      }
      return {r};
    }
    std::uint32_t d[kMaxDegree], out[kMaxDegree];
    unpack(a.enc, d);
    const std::uint32_t* mrow = frobg_.data() + static_cast<std::size_t>(tt) * n * n;
    for (int r = 0; r < n; ++r) {
      std::uint64_t acc = 0;
      for (int i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(mrow[r * n + i]) * d[i];
      out[r] = static_cast<std::uint32_t>(acc % p_);
    }
    return {pack(out)};
  }

  // a^(q^j); j may be negative, reduced mod m.
  FieldElem frobenius(FieldElem a, long long j) const {
    const long long jm = ((j % m_) + m_) % m_;
    return frobenius_p(a, static_cast<long long>(e_) * jm);
  }

  // Field norm down to F_q: a^((q^m-1)/(q-1)).
  FieldElem norm(FieldElem a) const { return pow(a, (size_ - 1) / (q_ - 1)); }

  // Membership in the intermediate field F_{q^d}; d must divide m.
  bool subfield_membership(FieldElem a, int d) const {
    check_subfield_degree(d);
    return frobenius(a, d) == a;
  }

  // All of F_{q^d} in increasing encoding order.  Enumeration guarded at 2^24.
  std::vector<FieldElem> enumerate_subfield(int d) const {
    check_subfield_degree(d);
    const int dim = e_ * d;
    std::uint64_t count = 1;
    for (int i = 0; i < dim; ++i) {
      count *= p_;
      if (count > kEnumGuard) throw ScaleError("subfield of " + name() + " too large to enumerate");
    }
    const detail::FpMat basis = fixed_space_basis(dim);
    std::vector<FieldElem> out;
    out.reserve(static_cast<std::size_t>(count));
    if (p_ == 2) {
      std::vector<std::uint64_t> masks;
      for (const auto& v : basis) masks.push_back(pack_digits(v));
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t val = 0, w = idx;
        while (w) {
          val ^= masks[static_cast<std::size_t>(std::countr_zero(w))];
          w &= w - 1;
        }
        out.push_back({val});
      }
    } else {
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint32_t acc[kMaxDegree] = {0};
        std::uint64_t w = idx;
        for (std::size_t bvec = 0; bvec < basis.size(); ++bvec) {
          const std::uint64_t c = w % p_;
          w /= p_;
          if (!c) continue;
          for (int i = 0; i < deg_; ++i) {
            acc[i] = static_cast<std::uint32_t>((acc[i] + c * basis[bvec][static_cast<std::size_t>(i)]) % p_);
          }
        }
        out.push_back({pack(acc)});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // (1, b, ..., b^(d-1)) where b is the smallest-encoding element of
  // multiplicative order q^d - 1.  Canonical generators of intermediate fields.
  std::vector<FieldElem> subfield_basis(int d) const {
    const std::vector<FieldElem> elems = enumerate_subfield(d);
    std::uint64_t target = 1;
    for (int i = 0; i < e_ * d; ++i) target *= p_;
    target -= 1;
    for (FieldElem a : elems) {
      if (is_zero(a) || element_order(a) != target) continue;
      std::vector<FieldElem> basis{one()};
      for (int i = 1; i < d; ++i) basis.push_back(mul(basis.back(), a));
      return basis;
    }
    throw std::logic_error("no primitive element found in subfield");
  }

  std::uint64_t element_order(FieldElem a) const {
    if (is_zero(a)) throw std::invalid_argument("order of zero is undefined");
    std::uint64_t ord = size_ - 1;
    for (auto [pr, ex] : group_factors_) {
      (void)ex;
      while (ord % pr == 0 && pow(a, ord / pr) == one()) ord /= pr;
    }
    return ord;
  }

  // An F_p-basis of F_q inside the tower (canonical, not enumeration-based).
  const std::vector<FieldElem>& q_basis() const { return q_basis_; }

 private:
  enum class Rep { Bits, Scalar, Digits };

  FieldTower(std::uint64_t p, int e, int m) : p_(p), e_(e), m_(m) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    if (e < 1 || m < 1) throw std::invalid_argument("e and m must be positive");
    deg_ = e * m;
    if (deg_ > kMaxDegree) throw ScaleError("field degree exceeds desk scale");
    size_ = 1;
    for (int i = 0; i < deg_; ++i) {
      if (size_ > kArithGuard / p) throw ScaleError("field size exceeds 2^40");
      size_ *= p;
    }
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;
    rep_ = p == 2 ? Rep::Bits : (deg_ == 1 ? Rep::Scalar : Rep::Digits);
    find_modulus();
    build_frobenius_tables();
    group_factors_ = detail::factorize_u64(size_ - 1);
    build_q_basis();
  }

  void check_subfield_degree(int d) const {
    if (d < 1 || m_ % d != 0) throw std::invalid_argument("subfield degree must divide m");
  }

  void unpack(std::uint64_t enc, std::uint32_t* d) const {
    for (int i = 0; i < deg_; ++i) {
      d[i] = static_cast<std::uint32_t>(enc % p_);
      enc /= p_;
    }
  }

  std::uint64_t pack(const std::uint32_t* d) const {
    std::uint64_t enc = 0;
    for (int i = deg_; i-- > 0;) enc = enc * p_ + d[i];
    return enc;
  }

  std::uint64_t pack_digits(const std::vector<std::uint32_t>& v) const {
    std::uint64_t enc = 0;
    for (int i = deg_; i-- > 0;) enc = enc * p_ + v[static_cast<std::size_t>(i)];
    return enc;
  }

  void find_modulus() {
    const int n = deg_;
    if (n == 1) {
      modulus_ = {0, 1};  // x itself; every monic linear polynomial is irreducible
      fpoly_ = {0, 1};
    } else {
      detail::Poly f(static_cast<std::size_t>(n + 1), 0);
      f[static_cast<std::size_t>(n)] = 1;
      for (std::uint64_t c = 0;; ++c) {
        std::uint64_t w = c;
        for (int i = 0; i < n; ++i) {
          f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(w % p_);
          w /= p_;
        }
        if (w) throw std::logic_error("no irreducible polynomial found");
        if (detail::poly_irreducible(f, p_)) break;
      }
      fpoly_ = f;
      modulus_.clear();
      for (auto c : fpoly_) modulus_.push_back(static_cast<int>(c));
    }
    if (modulus_.size() != static_cast<std::size_t>(n + 1)) {
      modulus_.resize(static_cast<std::size_t>(n + 1));
      modulus_[static_cast<std::size_t>(n)] = 1;
    }
    if (p_ == 2) {
      fmask_ = 0;
      for (int i = 0; i <= n; ++i) {
        if (modulus_[static_cast<std::size_t>(i)]) fmask_ |= 1ull << i;
      }
      lowmask_ = n == 64 ? ~0ull : (1ull << n) - 1;
      unsigned __int128 num = static_cast<unsigned __int128>(1) << (2 * n);
      mu_ = 0;
      for (int bit = 2 * n; bit >= n; --bit) {
        if ((num >> bit) & 1) {
          mu_ |= 1ull << (bit - n);
          num ^= static_cast<unsigned __int128>(fmask_) << (bit - n);
        }
      }
    }
  }

  void build_frobenius_tables() {
    const int n = deg_;
    if (rep_ == Rep::Scalar) return;
    // Column i of the p-power Frobenius matrix holds x^(i*p) mod f.
    std::vector<detail::Poly> cols(static_cast<std::size_t>(n));
    const detail::Poly xp = detail::poly_powmod({0, 1}, p_, fpoly_, p_);
    detail::Poly g = {1};
    for (int i = 0; i < n; ++i) {
      cols[static_cast<std::size_t>(i)] = g;
      cols[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n), 0);
      g = detail::poly_mulmod(g, xp, fpoly_, p_);
    }
    std::vector<std::uint32_t> m1(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < n; ++i) m1[static_cast<std::size_t>(r) * n + i] = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    }
    frobg_.assign(static_cast<std::size_t>(n) * n * n, 0);
    // t = 0 is the identity.
    for (int i = 0; i < n; ++i) frobg_[static_cast<std::size_t>(i) * n + i] = 1;
    for (int t = 1; t < n; ++t) {
      const std::uint32_t* prev = frobg_.data() + static_cast<std::size_t>(t - 1) * n * n;
      std::uint32_t* cur = frobg_.data() + static_cast<std::size_t>(t) * n * n;
      for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
          std::uint64_t acc = 0;
          for (int i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(m1[static_cast<std::size_t>(r) * n + i]) * prev[static_cast<std::size_t>(i) * n + c];
          cur[static_cast<std::size_t>(r) * n + c] = static_cast<std::uint32_t>(acc % p_);
        }
      }
    }
    if (p_ == 2) {
      frob2_.assign(static_cast<std::size_t>(n) * n, 0);
      for (int t = 0; t < n; ++t) {
        const std::uint32_t* mt = frobg_.data() + static_cast<std::size_t>(t) * n * n;
        for (int i = 0; i < n; ++i) {
          std::uint64_t mask = 0;
          for (int r = 0; r < n; ++r) {
            if (mt[static_cast<std::size_t>(r) * n + i]) mask |= 1ull << r;
          }
          frob2_[static_cast<std::size_t>(t) * n + i] = mask;
        }
      }
    }
  }

  // Basis over F_p of the fixed space of frobenius_p^dim (an intermediate field).
  detail::FpMat fixed_space_basis(int dim) const {
    const int n = deg_;
    detail::FpMat k(static_cast<std::size_t>(n), std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0));
    const int t = dim % n;
    for (int r = 0; r < n; ++r) {
      for (int i = 0; i < n; ++i) {
        std::uint32_t v = frob_matrix_entry(t, r, i);
        if (r == i) v = static_cast<std::uint32_t>((v + p_ - 1) % p_);
        k[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = v;
      }
    }
    return detail::fp_nullspace(std::move(k), p_);
  }

  std::uint32_t frob_matrix_entry(int t, int r, int i) const {
    const int n = deg_;
    if (rep_ == Rep::Scalar) return r == i ? 1 : 0;
    if (rep_ == Rep::Bits) return (frob2_[static_cast<std::size_t>(t) * n + i] >> r) & 1 ? 1 : 0;
    return frobg_[static_cast<std::size_t>(t) * n * n + static_cast<std::size_t>(r) * n + i];
  }

  void build_q_basis() {
    const detail::FpMat basis = fixed_space_basis(e_);
    if (basis.size() != static_cast<std::size_t>(e_)) throw std::logic_error("F_q basis has wrong dimension");
    for (const auto& v : basis) q_basis_.push_back({pack_digits(v)});
    std::sort(q_basis_.begin(), q_basis_.end());
  }

  std::uint64_t p_, q_ = 0, size_ = 0;
  int e_, m_, deg_ = 0;
  Rep rep_ = Rep::Bits;
  std::vector<int> modulus_;
  detail::Poly fpoly_;
  std::uint64_t fmask_ = 0, mu_ = 0, lowmask_ = 0;
  std::vector<std::uint64_t> frob2_;
  std::vector<std::uint32_t> frobg_;
  std::vector<std::pair<std::uint64_t, int>> group_factors_;
  std::vector<FieldElem> q_basis_;
};

inline std::shared_ptr<const FieldTower> build_tower(std::uint64_t p, int e, int m) {
  return FieldTower::make(p, e, m);
}

}  // namespace rminv
