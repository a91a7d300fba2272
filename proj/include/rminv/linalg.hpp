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

// Exact dense linear algebra over a field tower: matrices of field elements,
// canonical reduced row echelon forms, row-space arithmetic, and ranks over
// the middle field F_q obtained by expanding coordinates over F_p.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rminv/ff.hpp"

namespace rminv {

class Mat {
 public:
  Mat(std::shared_ptr<const FieldTower> tower, std::size_t rows, std::size_t cols)
      : tw_(std::move(tower)), rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::shared_ptr<const FieldTower> tower, std::size_t n) {
    Mat m(std::move(tower), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.tower()->one();
    return m;
  }

  static Mat from_rows(std::shared_ptr<const FieldTower> tower,
                       const std::vector<std::vector<FieldElem>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Mat m(std::move(tower), r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::shared_ptr<const FieldTower>& tower() const { return tw_; }

  FieldElem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  FieldElem at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  FieldElem* row_ptr(std::size_t r) { return a_.data() + r * cols_; }
  const FieldElem* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }

  std::vector<FieldElem> row(std::size_t r) const {
    return std::vector<FieldElem>(row_ptr(r), row_ptr(r) + cols_);
  }

  Mat mul(const Mat& rhs) const {
    if (tw_.get() != rhs.tw_.get()) throw std::invalid_argument("tower mismatch");
    if (cols_ != rhs.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    Mat out(tw_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const FieldElem x = at(i, k);
        if (tw_->is_zero(x)) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          out.at(i, j) = tw_->add(out.at(i, j), tw_->mul(x, rhs.at(k, j)));
        }
      }
    }
    return out;
  }

  Mat scaled(FieldElem lambda) const {
    Mat out = *this;
    for (auto& x : out.a_) x = tw_->mul(x, lambda);
    return out;
  }

  Mat map_frobenius(long long j) const {
    Mat out = *this;
    for (auto& x : out.a_) x = tw_->frobenius(x, j);
    return out;
  }

  Mat map_frobenius_p(long long t) const {
    Mat out = *this;
    for (auto& x : out.a_) x = tw_->frobenius_p(x, t);
    return out;
  }

  static Mat vstack(const std::vector<const Mat*>& parts) {
    if (parts.empty()) throw std::invalid_argument("vstack of nothing");
    const Mat& first = *parts[0];
    std::size_t total = 0;
    for (const Mat* m : parts) {
      if (m->tw_.get() != first.tw_.get() || m->cols_ != first.cols_) {
        throw std::invalid_argument("vstack shape mismatch");
      }
      total += m->rows_;
    }
    Mat out(first.tw_, total, first.cols_);
    std::size_t r = 0;
    for (const Mat* m : parts) {
      std::copy(m->a_.begin(), m->a_.end(), out.a_.begin() + static_cast<std::ptrdiff_t>(r * first.cols_));
      r += m->rows_;
    }
    return out;
  }

  Mat take_rows(std::size_t count) const {
    Mat out(tw_, count, cols_);
    std::copy(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(count * cols_), out.a_.begin());
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.tw_.get() == b.tw_.get() && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::shared_ptr<const FieldTower> tw_;
  std::size_t rows_, cols_;
  std::vector<FieldElem> a_;
};

struct RrefResult {
  Mat mat;
  std::size_t rank;
};

// Canonical reduced row echelon form: leftmost pivot column, topmost pivot
// row, unit pivots, zeros above and below.
inline RrefResult rref(Mat m) {
  const FieldTower& t = *m.tower();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && t.is_zero(m.at(pr, c))) ++pr;
    if (pr == rows) continue;
    if (pr != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
    }
    const FieldElem piv_inv = t.inv(m.at(r, c));
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = t.mul(m.at(r, j), piv_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const FieldElem f = m.at(i, c);
      if (t.is_zero(f)) continue;
      for (std::size_t j = c; j < cols; ++j) {
        m.at(i, j) = t.sub(m.at(i, j), t.mul(f, m.at(r, j)));
      }
    }
    ++r;
  }
  return {std::move(m), r};
}

// Echelon-basis accumulator.  Keeps a row basis with unit pivots but does not
// maintain reduced form; meant for rank evolution along space sums where the
// canonical form is not needed.
class RowReducer {
 public:
  RowReducer(std::shared_ptr<const FieldTower> tower, std::size_t cols)
      : tw_(std::move(tower)), cols_(cols) {}

  // Reduces row against the basis; absorbs it if independent.
  bool push_row(std::vector<FieldElem> row) {
    if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
    const FieldTower& t = *tw_;
    for (std::size_t idx = 0; idx < pivots_.size(); ++idx) {
      const std::size_t pc = pivots_[idx];
      const FieldElem c = row[pc];
      if (t.is_zero(c)) continue;
      const std::vector<FieldElem>& b = rows_[idx];
      for (std::size_t j = pc; j < cols_; ++j) row[j] = t.sub(row[j], t.mul(c, b[j]));
    }
    std::size_t lead = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!t.is_zero(row[j])) {
        lead = j;
        break;
      }
    }
    if (lead == cols_) return false;
    const FieldElem inv = t.inv(row[lead]);
    for (std::size_t j = lead; j < cols_; ++j) row[j] = t.mul(row[j], inv);
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    return true;
  }

  void push_matrix(const Mat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) push_row(m.row(r));
  }

  std::size_t rank() const { return rows_.size(); }

  Mat basis() const {
    Mat out(tw_, rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = rows_[i][j];
    }
    return out;
  }

 private:
  std::shared_ptr<const FieldTower> tw_;
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<FieldElem>> rows_;
};

// RREF basis (rank rows, zero rows trimmed) of the sum of row spaces.
inline Mat row_space_sum(const std::vector<const Mat*>& parts) {
  RrefResult r = rref(Mat::vstack(parts));
  return r.mat.take_rows(r.rank);
}

inline Mat row_space_sum(const Mat& a, const Mat& b) { return row_space_sum({&a, &b}); }

inline bool row_space_equal(const Mat& a, const Mat& b) {
  if (a.tower().get() != b.tower().get() || a.cols() != b.cols()) return false;
  const RrefResult ra = rref(a), rb = rref(b);
  if (ra.rank != rb.rank) return false;
  return ra.mat.take_rows(ra.rank) == rb.mat.take_rows(rb.rank);
}

// Dimension over F_q of the span of the entries of v, computed as the F_p
// rank of the expansion of {b * v_i : b in an F_p-basis of F_q} divided by e.
inline std::size_t q_rank(const FieldTower& t, const std::vector<FieldElem>& v) {
  if (v.empty()) return 0;
  detail::FpMat rows;
  rows.reserve(v.size() * t.q_basis().size());
  for (const FieldElem b : t.q_basis()) {
    for (const FieldElem x : v) {
      const FieldElem w = t.mul(b, x);
      const std::vector<int> c = t.coeffs(w);
      std::vector<std::uint32_t> row(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) row[i] = static_cast<std::uint32_t>(c[i]);
      rows.push_back(std::move(row));
    }
  }
  const std::size_t fp_rank = detail::fp_rref(rows, t.p());
  if (fp_rank % static_cast<std::size_t>(t.e()) != 0) throw std::logic_error("F_p rank not divisible by e");
  return fp_rank / static_cast<std::size_t>(t.e());
}

// Rank distance d_R(u, v) = dim_{F_q} of the support of u - v.
inline std::size_t rank_distance(const FieldTower& t, const std::vector<FieldElem>& u,
                                 const std::vector<FieldElem>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("length mismatch");
  std::vector<FieldElem> diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = t.sub(u[i], v[i]);
  return q_rank(t, diff);
}

}  // namespace rminv
