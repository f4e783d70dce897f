#include "treq/smith.hpp"

#include <cstdlib>
#include <stdexcept>

namespace treq {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer multiply overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer add overflow");
  return r;
}

MatZ MatZ::identity(int n) {
  MatZ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatZ MatZ::operator*(const MatZ& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("MatZ multiply: shape mismatch");
  MatZ r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, o.at(k, j)));
    }
  return r;
}

namespace {

// Row/column elementary operations applied simultaneously to the work matrix
// and the accumulated transforms.
struct Working {
  MatZ d, u, v;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
    for (int j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
    for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
  }
  void negate_row(int a) {
    for (int j = 0; j < d.cols(); ++j) d.at(a, j) = -d.at(a, j);
    for (int j = 0; j < u.cols(); ++j) u.at(a, j) = -u.at(a, j);
  }
  // row[a] -= q * row[b]
  void add_row(int a, int b, std::int64_t q) {
    if (q == 0) return;
    for (int j = 0; j < d.cols(); ++j)
      d.at(a, j) = checked_add(d.at(a, j), checked_mul(-q, d.at(b, j)));
    for (int j = 0; j < u.cols(); ++j)
      u.at(a, j) = checked_add(u.at(a, j), checked_mul(-q, u.at(b, j)));
  }
  // col[a] -= q * col[b]
  void add_col(int a, int b, std::int64_t q) {
    if (q == 0) return;
    for (int i = 0; i < d.rows(); ++i)
      d.at(i, a) = checked_add(d.at(i, a), checked_mul(-q, d.at(i, b)));
    for (int i = 0; i < v.rows(); ++i)
      v.at(i, a) = checked_add(v.at(i, a), checked_mul(-q, v.at(i, b)));
  }
};

}  // namespace

SmithResult smith_normal_form(const MatZ& a) {
  const int r = a.rows(), c = a.cols();
  Working w{a, MatZ::identity(r), MatZ::identity(c)};

  const int steps = r < c ? r : c;
  int t = 0;
  while (t < steps) {
    // Locate the entry of least absolute value in the trailing block; it
    // becomes the pivot.  Smallest-pivot selection keeps coefficients small.
    int pi = -1, pj = -1;
    std::int64_t best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        const std::int64_t x = w.d.at(i, j) < 0 ? -w.d.at(i, j) : w.d.at(i, j);
        if (x != 0 && (pi < 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    if (w.d.at(t, t) < 0) w.negate_row(t);

    bool clean = true;
    for (int i = t + 1; i < r; ++i) {
      const std::int64_t q = w.d.at(i, t) / w.d.at(t, t);
      w.add_row(i, t, q);
      if (w.d.at(i, t) != 0) clean = false;  // remainder left; pivot shrinks next pass
    }
    for (int j = t + 1; j < c; ++j) {
      const std::int64_t q = w.d.at(t, j) / w.d.at(t, t);
      w.add_col(j, t, q);
      if (w.d.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;

    // Enforce the divisibility chain: fold any entry the pivot misses into
    // the pivot row and repeat.
    bool divides_all = true;
    for (int i = t + 1; i < r && divides_all; ++i)
      for (int j = t + 1; j < c; ++j)
        if (w.d.at(i, j) % w.d.at(t, t) != 0) {
          w.add_row(t, i, -1);  // row_t += row_i
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    ++t;
  }

  SmithResult out{std::move(w.u), std::move(w.d), std::move(w.v), t};
  return out;
}

}  // namespace treq
