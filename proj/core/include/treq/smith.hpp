#pragma once

#include <cstdint>
#include <vector>

namespace treq {

// Dense integer matrix, row major.  All arithmetic is overflow-checked and
// throws std::overflow_error rather than wrapping.
class MatZ {
 public:
  MatZ() = default;
  MatZ(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, 0) {}
  static MatZ identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  MatZ operator*(const MatZ& o) const;
  friend bool operator==(const MatZ&, const MatZ&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> e_;
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

// u * a * v == d with u, v unimodular and d diagonal, d_1 | d_2 | ..., all
// diagonal entries nonnegative.
struct SmithResult {
  MatZ u, d, v;
  int rank = 0;  // number of nonzero diagonal entries
};

SmithResult smith_normal_form(const MatZ& a);

}  // namespace treq
