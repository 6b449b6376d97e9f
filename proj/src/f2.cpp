#include "hfbord/f2.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "hfbord/f2_kernels.hpp"

namespace hfb {

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
  kernels::active().xor_words(w_.data(), o.w_.data(), w_.size());
  return *this;
}

bool BitVec::dot(const BitVec& o) const {
  if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
  return kernels::active().dot_words(w_.data(), o.w_.data(), w_.size());
}

bool BitVec::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

std::optional<std::size_t> BitVec::first_set() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
  return std::nullopt;
}

std::vector<std::size_t> BitVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    uint64_t w = w_[k];
    while (w) {
      out.push_back(k * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

BitVec operator^(BitVec a, const BitVec& b) {
  a ^= b;
  return a;
}

BitMatrix BitMatrix::from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& ones) {
  BitMatrix m(rows, cols);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [i, j] : ones) {
    if (i >= rows || j >= cols) throw std::invalid_argument("matrix entry out of bounds");
    if (!seen.insert({i, j}).second) throw std::invalid_argument("duplicate matrix entry");
    m.set(i, j);
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVec>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    m.r_[i] = rows[i];
  }
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j : r_[i].support()) t.set(j, i);
  return t;
}

BitVec BitMatrix::operator*(const BitVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
  BitVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (r_[i].dot(v)) out.set(i);
  return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
  BitMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k : r_[i].support()) out.r_[i] ^= o.r_[k];
  return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  BitMatrix out = *this;
  for (std::size_t i = 0; i < rows_; ++i) out.r_[i] ^= o.r_[i];
  return out;
}

bool BitMatrix::is_zero() const {
  for (const auto& r : r_)
    if (r.any()) return false;
  return true;
}

namespace {

// Row echelon form in place; returns pivot columns (lowest index first).
std::vector<std::size_t> echelon(std::vector<BitVec>& rows, std::size_t cols, bool full) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = full ? 0 : r + 1; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<BitVec> rows_of(const BitMatrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

}  // namespace

std::size_t rank(const BitMatrix& m) {
  auto rows = rows_of(m);
  return echelon(rows, m.cols(), false).size();
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("dimension mismatch in solve");
  // Augmented rows: columns 0..cols-1 are m, column cols is b.
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BitVec r(m.cols() + 1);
    for (std::size_t j : m.row(i).support()) r.set(j);
    if (b.get(i)) r.set(m.cols());
    rows.push_back(std::move(r));
  }
  auto pivots = echelon(rows, m.cols() + 1, true);
  BitVec x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == m.cols()) return std::nullopt;
    if (rows[k].get(m.cols())) x.set(pivots[k]);
  }
  return x;
}

std::vector<BitVec> nullspace(const BitMatrix& m) {
  auto rows = rows_of(m);
  auto pivots = echelon(rows, m.cols(), true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(m.cols());
    v.set(f);
    for (std::size_t k = 0; k < pivots.size(); ++k)
      if (rows[k].get(f)) v.set(pivots[k]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BitVec> column_space(const BitMatrix& m) {
  auto rows = rows_of(m.transpose());
  auto pivots = echelon(rows, m.rows(), false);
  rows.resize(pivots.size());
  return rows;
}

Homology homology(const BitMatrix& d_in, const BitMatrix& d_out) {
  if (d_in.rows() != d_out.cols()) throw std::invalid_argument("dimension mismatch in homology");
  if (!(d_out * d_in).is_zero()) throw std::domain_error("not a complex");
  const std::size_t n = d_out.cols();
  SpanTracker span(n);
  for (const auto& v : column_space(d_in)) span.insert(v);
  Homology h;
  for (const auto& z : nullspace(d_out))
    if (span.insert(z)) h.representatives.push_back(z);
  h.dimension = h.representatives.size();
  return h;
}

HomologyCoordinates::HomologyCoordinates(const Homology& h, const BitMatrix& d_in)
    : dim_(h.dimension) {
  auto bnd = column_space(d_in);
  std::size_t n = d_in.rows();
  basis_ = BitMatrix(n, dim_ + bnd.size());
  for (std::size_t k = 0; k < dim_; ++k)
    for (std::size_t i : h.representatives[k].support()) basis_.set(i, k);
  for (std::size_t k = 0; k < bnd.size(); ++k)
    for (std::size_t i : bnd[k].support()) basis_.set(i, dim_ + k);
}

std::optional<BitVec> HomologyCoordinates::coords(const BitVec& z) const {
  auto x = solve(basis_, z);
  if (!x) return std::nullopt;
  BitVec c(dim_);
  for (std::size_t k = 0; k < dim_; ++k)
    if (x->get(k)) c.set(k);
  return c;
}

BitVec SpanTracker::reduced(const BitVec& v) const {
  BitVec r = v;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (r.get(pivots_[k])) r ^= rows_[k];
  return r;
}

bool SpanTracker::insert(const BitVec& v) {
  if (v.size() != n_) throw std::invalid_argument("SpanTracker size mismatch");
  BitVec r = reduced(v);
  auto p = r.first_set();
  if (!p) return false;
  // keep rows fully reduced on pivots so reduced() is a single pass
  for (auto& row : rows_)
    if (row.get(*p)) row ^= r;
  rows_.push_back(std::move(r));
  pivots_.push_back(*p);
  return true;
}

bool SpanTracker::contains(const BitVec& v) const { return !reduced(v).any(); }

}  // namespace hfb
