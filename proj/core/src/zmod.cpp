#include "treq/zmod.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treq {

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

Modulus make_modulus(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  Modulus out;
  out.m = m;
  std::int64_t rest = m;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    int a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    out.factorization.emplace_back(p, a);
  }
  if (rest > 1) out.factorization.emplace_back(rest, 1);
  return out;
}

FgModule::FgModule(std::vector<std::int64_t> invariant_factors)
    : f_(std::move(invariant_factors)) {
  for (std::int64_t d : f_)
    if (d < 2) throw std::invalid_argument("invariant factor below 2");
}

FgModule FgModule::free(int rank, std::int64_t m) {
  return FgModule{std::vector<std::int64_t>(static_cast<std::size_t>(rank), m)};
}

bool FgModule::is_free_over(std::int64_t m) const {
  return std::all_of(f_.begin(), f_.end(), [m](std::int64_t d) { return d == m; });
}

void FgModule::validate_under(const Modulus& mod) const {
  for (std::int64_t d : f_)
    if (d < 2 || mod.m % d != 0)
      throw std::invalid_argument("invariant factor " + std::to_string(d) +
                                  " does not divide modulus " + std::to_string(mod.m));
}

MatZm::MatZm(std::int64_t m, int rows, int cols)
    : m_(m), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, 0) {
  if (m < 2) throw std::invalid_argument("matrix modulus must be at least 2");
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

MatZm MatZm::identity(std::int64_t m, int n) {
  MatZm r(m, n, n);
  for (int i = 0; i < n; ++i) r.set(i, i, 1);
  return r;
}

void MatZm::set(int i, int j, std::int64_t v) {
  e_[static_cast<std::size_t>(i) * cols_ + j] = mod_reduce(v, m_);
}

void MatZm::set_block(int i0, int j0, const MatZm& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) set(i0 + i, j0 + j, b.at(i, j));
}

MatZm MatZm::operator*(const MatZm& o) const {
  if (cols_ != o.rows_ || m_ != o.m_)
    throw std::invalid_argument("MatZm multiply: shape or modulus mismatch");
  MatZm r(m_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.set(i, j, r.at(i, j) + aik * o.at(k, j));
    }
  return r;
}

std::vector<std::int64_t> MatZm::apply(std::span<const std::int64_t> x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("MatZm apply: vector length mismatch");
  std::vector<std::int64_t> y(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < cols_; ++j) acc += at(i, j) * mod_reduce(x[j], m_) % m_;
    y[static_cast<std::size_t>(i)] = mod_reduce(acc, m_);
  }
  return y;
}

bool MatZm::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::int64_t v) { return v == 0; });
}

MatZm vstack(std::span<const MatZm> parts, std::int64_t m, int cols) {
  int rows = 0;
  for (const MatZm& p : parts) {
    if (p.cols() != cols || p.modulus() != m)
      throw std::invalid_argument("vstack: shape or modulus mismatch");
    rows += p.rows();
  }
  MatZm r(m, rows, cols);
  int i0 = 0;
  for (const MatZm& p : parts) {
    r.set_block(i0, 0, p);
    i0 += p.rows();
  }
  return r;
}

bool is_module_map(const MatZm& f, const FgModule& src, const FgModule& dst) {
  if (f.cols() != src.rank() || f.rows() != dst.rank()) return false;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) {
      // f(e_j) must have order dividing d_j, i.e. d_j * f_ij == 0 in Z/c_i.
      const std::int64_t d = src.invariant_factors()[static_cast<std::size_t>(j)];
      const std::int64_t c = dst.invariant_factors()[static_cast<std::size_t>(i)];
      if (mod_reduce(d * f.at(i, j), c) != 0) return false;
    }
  return true;
}

MatZm canonical_map(MatZm f, const FgModule& dst) {
  MatZm r(f.modulus(), f.rows(), f.cols());
  for (int i = 0; i < f.rows(); ++i) {
    const std::int64_t c = dst.invariant_factors()[static_cast<std::size_t>(i)];
    for (int j = 0; j < f.cols(); ++j) r.set(i, j, mod_reduce(f.at(i, j), c));
  }
  return r;
}

bool maps_equal(const MatZm& a, const MatZm& b, const FgModule& dst) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    const std::int64_t c = dst.invariant_factors()[static_cast<std::size_t>(i)];
    for (int j = 0; j < a.cols(); ++j)
      if (mod_reduce(a.at(i, j) - b.at(i, j), c) != 0) return false;
  }
  return true;
}

PrimePowers PrimePowers::of(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("PrimePowers::of requires n >= 1");
  PrimePowers out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      out.exp_[p] += 1;
    }
  }
  if (n > 1) out.exp_[n] += 1;
  return out;
}

PrimePowers& PrimePowers::operator*=(const PrimePowers& o) {
  for (const auto& [p, e] : o.exp_) {
    exp_[p] += e;
    if (exp_[p] == 0) exp_.erase(p);
  }
  return *this;
}

PrimePowers& PrimePowers::operator/=(const PrimePowers& o) {
  for (const auto& [p, e] : o.exp_) {
    auto it = exp_.find(p);
    if (it == exp_.end() || it->second < e)
      throw std::invalid_argument("PrimePowers division is not exact");
    it->second -= e;
    if (it->second == 0) exp_.erase(it);
  }
  return *this;
}

PrimePowers PrimePowers::pow(int k) const {
  if (k < 0) throw std::invalid_argument("PrimePowers::pow of negative power");
  PrimePowers out;
  if (k == 0) return out;
  for (const auto& [p, e] : exp_) out.exp_[p] = e * k;
  return out;
}

int PrimePowers::exponent_of(std::int64_t p) const {
  for (const auto& [q, e] : exp_)
    if (q != p) throw std::invalid_argument("PrimePowers value is not a power of the given prime");
  auto it = exp_.find(p);
  return it == exp_.end() ? 0 : it->second;
}

std::string PrimePowers::to_string() const {
  if (exp_.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : exp_) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

CongruenceSystem::CongruenceSystem(std::int64_t m, int unknowns) : m_(m), n_(unknowns) {
  if (m < 2) throw std::invalid_argument("congruence modulus must be at least 2");
  if (unknowns < 0) throw std::invalid_argument("negative unknown count");
}

void CongruenceSystem::add_row(std::vector<std::pair<int, std::int64_t>> terms,
                               std::int64_t rhs, std::int64_t modulus) {
  if (modulus < 1 || m_ % modulus != 0)
    throw std::invalid_argument("row modulus must divide the system modulus");
  for (const auto& [idx, coeff] : terms) {
    (void)coeff;
    if (idx < 0 || idx >= n_) throw std::invalid_argument("unknown index out of range");
  }
  if (modulus == 1) return;  // vacuous congruence
  rows_.push_back(Row{std::move(terms), rhs, modulus});
}

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return mod_reduce(checked_mul(a, b), m);
}

// Inverse of a mod m, for gcd(a, m) == 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = mod_reduce(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::logic_error("inv_mod of a noninvertible element");
  return mod_reduce(s0, m);
}

// Diagonal form u * a * v == d over Z/m.  Unlike smith_normal_form this never
// leaves [0, m), so the transforms cannot overflow no matter how dense the
// input is; the price is a non-canonical diagonal.  That is enough for the
// congruence layer: a decoupled row d_i w_i == c_i (mod m) is governed by
// gcd(d_i, m) alone, and when every invariant factor of the input divides m
// (true for the lifts below) those gcds carry the full counting data.
struct ZmDiag {
  std::int64_t m = 2;
  int rows = 0, cols = 0;
  std::vector<std::int64_t> d;  // min(rows, cols) diagonal entries, in [0, m)
  MatZm u, v;

  explicit ZmDiag(const MatZm& a)
      : m(a.modulus()),
        rows(a.rows()),
        cols(a.cols()),
        u(MatZm::identity(a.modulus(), a.rows())),
        v(MatZm::identity(a.modulus(), a.cols())) {
    MatZm w = a;
    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
      for (;;) {
        // Smallest nonzero representative in the trailing block; remainders
        // are strictly smaller than the pivot, so re-selection terminates.
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
          for (int j = t; j < cols; ++j)
            if (w.at(i, j) != 0 && (pi < 0 || w.at(i, j) < w.at(pi, pj))) {
              pi = i;
              pj = j;
            }
        if (pi < 0) break;  // trailing block vanished
        if (pi != t) {
          swap_rows(w, t, pi);
          swap_rows(u, t, pi);
        }
        if (pj != t) {
          swap_cols(w, t, pj);
          swap_cols(v, t, pj);
        }
        const std::int64_t p = w.at(t, t);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
          const std::int64_t q = w.at(i, t) / p;
          if (q != 0) {
            add_row(w, i, t, m - q);
            add_row(u, i, t, m - q);
          }
          clean = clean && w.at(i, t) == 0;
        }
        for (int j = t + 1; j < cols; ++j) {
          const std::int64_t q = w.at(t, j) / p;
          if (q != 0) {
            add_col(w, j, t, m - q);
            add_col(v, j, t, m - q);
          }
          clean = clean && w.at(t, j) == 0;
        }
        if (clean) break;
      }
      d.push_back(w.at(t, t));
    }
  }

 private:
  static void swap_rows(MatZm& x, int i, int j) {
    for (int k = 0; k < x.cols(); ++k) {
      const std::int64_t tmp = x.at(i, k);
      x.set(i, k, x.at(j, k));
      x.set(j, k, tmp);
    }
  }

  static void swap_cols(MatZm& x, int i, int j) {
    for (int k = 0; k < x.rows(); ++k) {
      const std::int64_t tmp = x.at(k, i);
      x.set(k, i, x.at(k, j));
      x.set(k, j, tmp);
    }
  }

  // row i += k * row j
  void add_row(MatZm& x, int i, int j, std::int64_t k) const {
    for (int c = 0; c < x.cols(); ++c) x.set(i, c, x.at(i, c) + mulmod(k, x.at(j, c), m));
  }

  // col i += k * col j
  void add_col(MatZm& x, int i, int j, std::int64_t k) const {
    for (int r = 0; r < x.rows(); ++r) x.set(r, i, x.at(r, i) + mulmod(k, x.at(r, j), m));
  }
};

}  // namespace

CongruenceSystem::Outcome CongruenceSystem::solve() const {
  const int rcount = static_cast<int>(rows_.size());
  Outcome out;

  if (rcount == 0) {
    out.solvable = true;
    out.particular.assign(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < n_; ++j) {
      std::vector<std::int64_t> e(static_cast<std::size_t>(n_), 0);
      e[static_cast<std::size_t>(j)] = 1;
      out.kernel.push_back(std::move(e));
    }
    out.solution_count = PrimePowers::of(m_).pow(n_);
    return out;
  }

  // Lift each row to the system modulus: A_i x == b_i (mod q_i) holds iff
  // A_i x + q_i t_i == b_i (mod m) for some t_i, because q_i divides m.  So
  // solve [A | diag(q)] y == b (mod m) and keep the leading n coordinates;
  // each x there arises from exactly prod(q_i) tail values t.
  MatZm lifted(m_, rcount, n_ + rcount);
  std::vector<std::int64_t> b(static_cast<std::size_t>(rcount), 0);
  for (int r = 0; r < rcount; ++r) {
    for (const auto& [idx, coeff] : rows_[static_cast<std::size_t>(r)].terms)
      lifted.set(r, idx, lifted.at(r, idx) + mod_reduce(coeff, m_));
    lifted.set(r, n_ + r, rows_[static_cast<std::size_t>(r)].q);
    b[static_cast<std::size_t>(r)] = mod_reduce(rows_[static_cast<std::size_t>(r)].rhs,
                                                rows_[static_cast<std::size_t>(r)].q);
  }

  const ZmDiag dg(lifted);

  // Decoupled rows d_i w_i == (u b)_i (mod m), then y = v w.  gcd(d_i, m)
  // decides solvability and is the number of admissible w_i.
  std::vector<std::int64_t> w(static_cast<std::size_t>(rcount), 0);
  std::vector<std::int64_t> g(static_cast<std::size_t>(rcount), 0);
  bool ok = true;
  for (int i = 0; i < rcount; ++i) {
    std::int64_t c = 0;
    for (int k = 0; k < rcount; ++k)
      c = mod_reduce(c + mulmod(dg.u.at(i, k), b[static_cast<std::size_t>(k)], m_), m_);
    const std::int64_t di = dg.d[static_cast<std::size_t>(i)];
    const std::int64_t gi = di == 0 ? m_ : std::gcd(di, m_);
    g[static_cast<std::size_t>(i)] = gi;
    if (c % gi != 0)
      ok = false;
    else if (di != 0)
      w[static_cast<std::size_t>(i)] = mulmod(c / gi, inv_mod(di / gi, m_ / gi), m_ / gi);
  }
  out.solvable = ok;
  if (ok) {
    out.particular.assign(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < n_; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < rcount; ++k)
        acc = mod_reduce(acc + mulmod(dg.v.at(j, k), w[static_cast<std::size_t>(k)], m_), m_);
      out.particular[static_cast<std::size_t>(j)] = acc;
    }
  }

  // Homogeneous solutions mod m: w_i ranges over the multiples of m / g_i and
  // the tail coordinates are free, so the scaled columns of v span the kernel.
  for (int col = 0; col < n_ + rcount; ++col) {
    const std::int64_t step = col < rcount ? m_ / g[static_cast<std::size_t>(col)] : 1;
    std::vector<std::int64_t> gen(static_cast<std::size_t>(n_), 0);
    bool nonzero = false;
    for (int j = 0; j < n_; ++j) {
      gen[static_cast<std::size_t>(j)] = mulmod(step, dg.v.at(j, col), m_);
      nonzero |= gen[static_cast<std::size_t>(j)] != 0;
    }
    if (nonzero) out.kernel.push_back(std::move(gen));
  }

  // |S| = m^n * prod(g_i) / prod(row moduli); every factor divides m.
  PrimePowers count = PrimePowers::of(m_).pow(n_);
  for (std::int64_t gi : g) count *= PrimePowers::of(gi);
  for (const Row& r : rows_) count /= PrimePowers::of(r.q);
  out.solution_count = count;
  return out;
}

namespace {

// Shared diagonalization for free systems A x == b (mod m): one
// decomposition, cheap per-column solves.
struct FreeLift {
  ZmDiag dg;

  explicit FreeLift(const MatZm& a) : dg(a) {}

  std::optional<std::vector<std::int64_t>> solve(std::span<const std::int64_t> b) const {
    const std::int64_t m = dg.m;
    const int diag = static_cast<int>(dg.d.size());
    std::vector<std::int64_t> w(static_cast<std::size_t>(dg.cols), 0);
    for (int i = 0; i < dg.rows; ++i) {
      std::int64_t c = 0;
      for (int k = 0; k < dg.rows; ++k)
        c = mod_reduce(c + mulmod(dg.u.at(i, k), mod_reduce(b[static_cast<std::size_t>(k)], m), m),
                       m);
      const std::int64_t di = i < diag ? dg.d[static_cast<std::size_t>(i)] : 0;
      if (di == 0) {
        if (c != 0) return std::nullopt;
      } else {
        const std::int64_t gi = std::gcd(di, m);
        if (c % gi != 0) return std::nullopt;
        w[static_cast<std::size_t>(i)] = mulmod(c / gi, inv_mod(di / gi, m / gi), m / gi);
      }
    }
    std::vector<std::int64_t> x(static_cast<std::size_t>(dg.cols), 0);
    for (int j = 0; j < dg.cols; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < dg.cols; ++k) {
        if (w[static_cast<std::size_t>(k)] == 0) continue;
        acc = mod_reduce(acc + mulmod(dg.v.at(j, k), w[static_cast<std::size_t>(k)], m), m);
      }
      x[static_cast<std::size_t>(j)] = acc;
    }
    return x;
  }
};

}  // namespace

std::optional<std::vector<std::int64_t>> solve_linear(const MatZm& a,
                                                      std::span<const std::int64_t> b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("solve_linear: rhs length mismatch");
  return FreeLift(a).solve(b);
}

std::optional<MatZm> solve_linear_multi(const MatZm& a, const MatZm& b) {
  if (b.rows() != a.rows() || b.modulus() != a.modulus())
    throw std::invalid_argument("solve_linear_multi: shape or modulus mismatch");
  const FreeLift lift(a);
  MatZm x(a.modulus(), a.cols(), b.cols());
  std::vector<std::int64_t> col(static_cast<std::size_t>(b.rows()));
  for (int k = 0; k < b.cols(); ++k) {
    for (int i = 0; i < b.rows(); ++i) col[static_cast<std::size_t>(i)] = b.at(i, k);
    auto sol = lift.solve(col);
    if (!sol) return std::nullopt;
    for (int j = 0; j < a.cols(); ++j) x.set(j, k, (*sol)[static_cast<std::size_t>(j)]);
  }
  return x;
}

std::optional<MatZm> right_inverse(const MatZm& f) {
  return solve_linear_multi(f, MatZm::identity(f.modulus(), f.rows()));
}

std::optional<MatZm> right_inverse(const MatZm& f, const FgModule& src, const FgModule& dst,
                                   const Modulus& mod) {
  if (f.cols() != src.rank() || f.rows() != dst.rank())
    throw std::invalid_argument("right_inverse: matrix does not match the presentations");
  if (!is_module_map(f, src, dst))
    throw std::invalid_argument("right_inverse: matrix is not a module map");

  if (src.is_free_over(mod.m) && dst.is_free_over(mod.m)) return right_inverse(f);

  // Column by column: g(e_k) is an element of src whose image under f is
  // e_k of dst, subject to g being well defined on Z/c_k.
  const auto& d = src.invariant_factors();
  const auto& c = dst.invariant_factors();
  MatZm g(f.modulus(), src.rank(), dst.rank());
  for (int k = 0; k < dst.rank(); ++k) {
    CongruenceSystem sys(mod.m, src.rank());
    for (int j = 0; j < src.rank(); ++j) {
      const std::int64_t dj = d[static_cast<std::size_t>(j)];
      if (mod_reduce(c[static_cast<std::size_t>(k)], dj) != 0)
        sys.add_row({{j, c[static_cast<std::size_t>(k)]}}, 0, dj);
    }
    for (int i = 0; i < dst.rank(); ++i) {
      std::vector<std::pair<int, std::int64_t>> terms;
      for (int j = 0; j < src.rank(); ++j)
        if (f.at(i, j) != 0) terms.emplace_back(j, f.at(i, j));
      sys.add_row(std::move(terms), i == k ? 1 : 0, c[static_cast<std::size_t>(i)]);
    }
    auto outcome = sys.solve();
    if (!outcome.solvable) return std::nullopt;
    for (int j = 0; j < src.rank(); ++j)
      g.set(j, k, outcome.particular[static_cast<std::size_t>(j)]);
  }
  return canonical_map(g, src);
}

bool is_injective_module(const FgModule& mod_candidate, const Modulus& mod) {
  mod_candidate.validate_under(mod);
  for (const auto& [p, a] : mod.factorization) {
    std::int64_t full = 1;
    for (int i = 0; i < a; ++i) full *= p;
    for (std::int64_t d : mod_candidate.invariant_factors()) {
      std::int64_t part = 1;
      while (d % p == 0) {
        d /= p;
        part *= p;
      }
      if (part != 1 && part != full) return false;
    }
  }
  return true;
}

std::vector<FgModule> indecomposable_injective_modules(const Modulus& mod) {
  std::vector<FgModule> out;
  for (const auto& [p, a] : mod.factorization) {
    std::int64_t full = 1;
    for (int i = 0; i < a; ++i) full *= p;
    out.push_back(FgModule{{full}});
  }
  return out;
}

PrimePowers module_hom_count(const FgModule& a, const FgModule& b) {
  PrimePowers out;
  for (std::int64_t d : a.invariant_factors())
    for (std::int64_t c : b.invariant_factors()) out *= PrimePowers::of(std::gcd(d, c));
  return out;
}

FpEchelon fp_rref(const MatZm& a) {
  const std::int64_t p = a.modulus();
  FpEchelon out;
  out.rref = a;
  MatZm& r = out.rref;
  int lead = 0;
  for (int col = 0; col < r.cols() && lead < r.rows(); ++col) {
    int piv = -1;
    for (int i = lead; i < r.rows(); ++i)
      if (r.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < r.cols(); ++j) {
        const std::int64_t t = r.at(lead, j);
        r.set(lead, j, r.at(piv, j));
        r.set(piv, j, t);
      }
    // Scale the pivot row to 1 (p prime, so the pivot is invertible).
    std::int64_t inv = 1, base = r.at(lead, col);
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {  // Fermat
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
    }
    for (int j = 0; j < r.cols(); ++j) r.set(lead, j, r.at(lead, j) * inv);
    for (int i = 0; i < r.rows(); ++i) {
      if (i == lead || r.at(i, col) == 0) continue;
      const std::int64_t f = r.at(i, col);
      for (int j = 0; j < r.cols(); ++j) r.set(i, j, r.at(i, j) - f * r.at(lead, j));
    }
    out.pivot_cols.push_back(col);
    ++lead;
  }
  out.rank = static_cast<int>(out.pivot_cols.size());
  return out;
}

MatZm fp_kernel_basis(const MatZm& a) {
  const FpEchelon ech = fp_rref(a);
  const std::int64_t p = a.modulus();
  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int j = 0; j < a.cols(); ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
  }
  MatZm basis(p, a.cols(), static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis.set(fc, static_cast<int>(k), 1);
    for (int i = 0; i < ech.rank; ++i)
      basis.set(ech.pivot_cols[static_cast<std::size_t>(i)], static_cast<int>(k),
                -ech.rref.at(i, fc));
  }
  return basis;
}

std::optional<MatZm> fp_inverse(const MatZm& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("fp_inverse: matrix not square");
  const int n = a.rows();
  if (n == 0) return a;  // vacuously invertible
  MatZm aug(a.modulus(), n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, MatZm::identity(a.modulus(), n));
  const FpEchelon ech = fp_rref(aug);
  if (ech.rank < n || ech.pivot_cols[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
  MatZm inv(a.modulus(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, ech.rref.at(i, n + j));
  return inv;
}

int fp_rank(const MatZm& a) { return fp_rref(a).rank; }

}  // namespace treq
