#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treq/smith.hpp"

namespace treq {

// Base ring Z/m with its prime factorization precomputed.
struct Modulus {
  std::int64_t m = 2;
  std::vector<std::pair<std::int64_t, int>> factorization;  // (p, multiplicity), p ascending
  bool is_prime() const {
    return factorization.size() == 1 && factorization[0].second == 1;
  }
};

// Throws std::invalid_argument unless m >= 2.
Modulus make_modulus(std::int64_t m);

// Finitely generated Z/m module presented as a direct sum of cyclic pieces
// Z/d_1 (+) ... (+) Z/d_r.  The empty list is the zero module.
class FgModule {
 public:
  FgModule() = default;
  explicit FgModule(std::vector<std::int64_t> invariant_factors);
  static FgModule zero() { return FgModule{}; }
  static FgModule free(int rank, std::int64_t m);

  const std::vector<std::int64_t>& invariant_factors() const { return f_; }
  int rank() const { return static_cast<int>(f_.size()); }
  bool is_zero() const { return f_.empty(); }
  bool is_free_over(std::int64_t m) const;
  // Throws unless every factor is >= 2 and divides mod.m.
  void validate_under(const Modulus& mod) const;

  friend bool operator==(const FgModule&, const FgModule&) = default;

 private:
  std::vector<std::int64_t> f_;
};

// Matrix over Z/m, row major, entries kept in [0, m).
class MatZm {
 public:
  MatZm() = default;
  MatZm(std::int64_t m, int rows, int cols);
  static MatZm identity(std::int64_t m, int n);

  std::int64_t modulus() const { return m_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, std::int64_t v);
  void set_block(int i0, int j0, const MatZm& b);

  MatZm operator*(const MatZm& o) const;
  // Applies the matrix to a column vector.
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  bool is_zero() const;

  friend bool operator==(const MatZm&, const MatZm&) = default;

 private:
  std::int64_t m_ = 2;
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> e_;
};

MatZm vstack(std::span<const MatZm> parts, std::int64_t m, int cols);

// Homomorphism semantics for matrices between presented modules: f maps
// (+) Z/d_j -> (+) Z/c_i with f(e_j) = sum_i f_ij e_i.  Entry (i, j) only
// matters modulo c_i, so maps are compared and canonicalized row-wise.
bool is_module_map(const MatZm& f, const FgModule& src, const FgModule& dst);
MatZm canonical_map(MatZm f, const FgModule& dst);
bool maps_equal(const MatZm& a, const MatZm& b, const FgModule& dst);

// Product of prime powers, used for exact cardinalities of solution sets
// (these can exceed any fixed-width integer, but their factorizations stay
// tiny).
class PrimePowers {
 public:
  static PrimePowers one() { return PrimePowers{}; }
  static PrimePowers of(std::int64_t n);  // factor n >= 1
  PrimePowers& operator*=(const PrimePowers& o);
  // Requires exact divisibility.
  PrimePowers& operator/=(const PrimePowers& o);
  PrimePowers pow(int k) const;
  bool is_one() const { return exp_.empty(); }
  // log_p of the value; requires the value to be a power of p.
  int exponent_of(std::int64_t p) const;
  std::string to_string() const;
  friend bool operator==(const PrimePowers&, const PrimePowers&) = default;

 private:
  std::map<std::int64_t, int> exp_;
};

// Finite system of linear congruences  sum_j a_rj x_j == b_r (mod q_r) with
// every q_r dividing m, solved exactly through one integer Smith
// decomposition of the lifted matrix [A | diag(q)].
class CongruenceSystem {
 public:
  CongruenceSystem(std::int64_t m, int unknowns);

  // terms: (unknown index, coefficient).  modulus must divide m.
  void add_row(std::vector<std::pair<int, std::int64_t>> terms, std::int64_t rhs,
               std::int64_t modulus);

  struct Outcome {
    bool solvable = false;
    std::vector<std::int64_t> particular;             // entries in [0, m)
    std::vector<std::vector<std::int64_t>> kernel;    // generators of the homogeneous solutions mod m
    PrimePowers solution_count;                       // |solution set| when solvable
  };
  Outcome solve() const;

  int unknowns() const { return n_; }

 private:
  std::int64_t m_;
  int n_;
  struct Row {
    std::vector<std::pair<int, std::int64_t>> terms;
    std::int64_t rhs;
    std::int64_t q;
  };
  std::vector<Row> rows_;
};

// A x == b over Z/m for free modules; returns one solution if any.
std::optional<std::vector<std::int64_t>> solve_linear(const MatZm& a,
                                                      std::span<const std::int64_t> b);
// A X == B column-wise with a single Smith decomposition.
std::optional<MatZm> solve_linear_multi(const MatZm& a, const MatZm& b);

// g with f * g == identity; free-module version and the general version for
// maps src -> dst between presented modules (identity compared row-wise).
std::optional<MatZm> right_inverse(const MatZm& f);
std::optional<MatZm> right_inverse(const MatZm& f, const FgModule& src, const FgModule& dst,
                                   const Modulus& mod);

// A Z/m module is injective iff for every prime p | m the p-part of each
// invariant factor is trivial or maximal.
bool is_injective_module(const FgModule& mod_candidate, const Modulus& mod);

// { Z/p^a : p^a maximal prime power in m }, in ascending prime order.
std::vector<FgModule> indecomposable_injective_modules(const Modulus& mod);

// |Hom(a, b)| = prod gcd(d_j, c_i); closed form used as the independent side
// of adjunction checks.
PrimePowers module_hom_count(const FgModule& a, const FgModule& b);

// Row reduction over the prime field F_p (callers guarantee a prime modulus).
struct FpEchelon {
  int rank = 0;
  std::vector<int> pivot_cols;
  MatZm rref;
};
FpEchelon fp_rref(const MatZm& a);
// Columns form the standard reduced basis of the null space.
MatZm fp_kernel_basis(const MatZm& a);
std::optional<MatZm> fp_inverse(const MatZm& a);
int fp_rank(const MatZm& a);

std::int64_t mod_reduce(std::int64_t v, std::int64_t m);

}  // namespace treq
