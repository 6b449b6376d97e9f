#pragma once
// Exact linear algebra over F2 on bit-packed dense rows.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hfb {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= (uint64_t{1} << (i & 63));
    else w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }

  BitVec& operator^=(const BitVec& o);
  bool dot(const BitVec& o) const;  // parity of the AND
  bool any() const;
  std::size_t popcount() const;
  std::optional<std::size_t> first_set() const;
  std::vector<std::size_t> support() const;

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator<(const BitVec& o) const {
    return n_ != o.n_ ? n_ < o.n_ : w_ < o.w_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

BitVec operator^(BitVec a, const BitVec& b);

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

  // Throws std::invalid_argument on an out-of-range or duplicate position.
  static BitMatrix from_entries(std::size_t rows, std::size_t cols,
                                const std::vector<std::pair<std::size_t, std::size_t>>& ones);
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v = true) { r_[i].set(j, v); }
  void flip(std::size_t i, std::size_t j) { r_[i].flip(j); }
  const BitVec& row(std::size_t i) const { return r_[i]; }
  BitVec& row(std::size_t i) { return r_[i]; }

  BitMatrix transpose() const;
  BitVec operator*(const BitVec& v) const;
  BitMatrix operator*(const BitMatrix& o) const;
  BitMatrix operator+(const BitMatrix& o) const;
  bool is_zero() const;
  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BitVec> r_;
};

std::size_t rank(const BitMatrix& m);

// Some x with m x = b, free variables zero (least solution in pivot order).
// Throws std::invalid_argument if b.size() != m.rows().
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b);

// Basis of {x : m x = 0}, one vector per free column in increasing order.
std::vector<BitVec> nullspace(const BitMatrix& m);

// Basis of the column space of m (as vectors of length rows).
std::vector<BitVec> column_space(const BitMatrix& m);

// A guarded enumeration or search ran past its configured cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Homology {
  std::size_t dimension = 0;
  std::vector<BitVec> representatives;
};

// d_in : C_{k+1} -> C_k, d_out : C_k -> C_{k-1} (rows = target dimension).
// Throws std::domain_error("not a complex") when d_out * d_in != 0.
Homology homology(const BitMatrix& d_in, const BitMatrix& d_out);

// Coordinates of cycles in a chosen homology basis.
class HomologyCoordinates {
 public:
  HomologyCoordinates(const Homology& h, const BitMatrix& d_in);
  // nullopt when z is not a cycle modulo the span used (caller checks cycles).
  std::optional<BitVec> coords(const BitVec& z) const;
  std::size_t dimension() const { return dim_; }

 private:
  std::size_t dim_ = 0;
  BitMatrix basis_;  // columns: representatives then boundary basis
};

// Elimination of a growing set of vectors; answers span-membership queries.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t n) : n_(n) {}
  bool insert(const BitVec& v);  // false if already in the span
  bool contains(const BitVec& v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  BitVec reduced(const BitVec& v) const;
  std::size_t n_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hfb
