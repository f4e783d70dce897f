#include "treq/rep.hpp"

#include <algorithm>
#include <set>

namespace treq {

Representation::Representation(FiniteQuiver quiver, Modulus mod,
                               std::map<std::string, FgModule> vertex_modules,
                               std::map<std::string, MatZm> arrow_maps)
    : quiver_(std::move(quiver)), mod_(std::move(mod)), modules_(std::move(vertex_modules)) {
  for (const auto& [v, mdl] : modules_) {
    if (!quiver_.has_vertex(v))
      throw std::invalid_argument("module assigned to unknown vertex '" + v + "'");
    mdl.validate_under(mod_);
  }
  for (const std::string& v : quiver_.vertices())
    if (!modules_.count(v)) modules_.emplace(v, FgModule::zero());
  for (const Arrow& a : quiver_.arrows()) {
    const FgModule& src = modules_.at(a.src);
    const FgModule& dst = modules_.at(a.dst);
    auto it = arrow_maps.find(a.id);
    if (it == arrow_maps.end()) {
      maps_.emplace(a.id, MatZm(mod_.m, dst.rank(), src.rank()));
      continue;
    }
    MatZm f = std::move(it->second);
    if (f.modulus() != mod_.m || f.rows() != dst.rank() || f.cols() != src.rank())
      throw std::invalid_argument("matrix for arrow '" + a.id + "' has the wrong shape");
    if (!is_module_map(f, src, dst))
      throw std::invalid_argument("matrix for arrow '" + a.id + "' is not a module map");
    maps_.emplace(a.id, canonical_map(std::move(f), dst));
  }
  for (const auto& [id, f] : arrow_maps)
    if (!maps_.count(id)) throw std::invalid_argument("matrix for unknown arrow '" + id + "'");
}

const FgModule& Representation::module_at(const std::string& v) const {
  auto it = modules_.find(v);
  if (it == modules_.end()) throw std::invalid_argument("unknown vertex '" + v + "'");
  return it->second;
}

const MatZm& Representation::map_at(const std::string& arrow_id) const {
  auto it = maps_.find(arrow_id);
  if (it == maps_.end()) throw std::invalid_argument("unknown arrow '" + arrow_id + "'");
  return it->second;
}

std::vector<int> Representation::dimension_vector() const {
  std::vector<int> dims;
  for (const std::string& v : quiver_.vertices()) dims.push_back(module_at(v).rank());
  return dims;
}

bool Representation::is_zero() const {
  return std::all_of(modules_.begin(), modules_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

MatZm Representation::path_map(const std::vector<std::string>& arrow_path,
                               const std::string& from) const {
  std::string at = from;
  MatZm acc = MatZm::identity(mod_.m, module_at(from).rank());
  for (const std::string& id : arrow_path) {
    const Arrow& a = quiver_.arrow(id);
    if (a.src != at)
      throw std::invalid_argument("path breaks at '" + id + "': expected source '" + at + "'");
    acc = map_at(id) * acc;
    at = a.dst;
  }
  return acc;
}

bool operator==(const Representation& a, const Representation& b) {
  return a.quiver_ == b.quiver_ && a.mod_.m == b.mod_.m && a.modules_ == b.modules_ &&
         a.maps_ == b.maps_;
}

MorphismCheck check_morphism(const RepMorphism& eta) {
  MorphismCheck out;
  const Representation& x = eta.source;
  const Representation& y = eta.target;
  if (!(x.quiver() == y.quiver()) || x.modulus().m != y.modulus().m) {
    out.detail = "source and target live on different quivers or moduli";
    return out;
  }
  const std::int64_t m = x.modulus().m;
  auto component = [&](const std::string& v) {
    auto it = eta.components.find(v);
    if (it != eta.components.end()) return it->second;
    return MatZm(m, y.module_at(v).rank(), x.module_at(v).rank());
  };
  for (const auto& [v, comp] : eta.components) {
    if (!x.quiver().has_vertex(v)) {
      out.detail = "component at unknown vertex '" + v + "'";
      return out;
    }
    if (comp.modulus() != m || comp.rows() != y.module_at(v).rank() ||
        comp.cols() != x.module_at(v).rank()) {
      out.detail = "component at '" + v + "' has the wrong shape";
      return out;
    }
    if (!is_module_map(comp, x.module_at(v), y.module_at(v))) {
      out.detail = "component at '" + v + "' is not a module map";
      return out;
    }
  }
  for (const Arrow& a : x.quiver().arrows()) {
    const MatZm left = y.map_at(a.id) * component(a.src);
    const MatZm right = component(a.dst) * x.map_at(a.id);
    if (!maps_equal(left, right, y.module_at(a.dst))) out.failing_arrows.push_back(a.id);
  }
  out.ok = out.failing_arrows.empty();
  return out;
}

RepMorphism identity_morphism(const Representation& x) {
  RepMorphism eta{x, x, {}};
  for (const std::string& v : x.quiver().vertices())
    eta.components.emplace(v, MatZm::identity(x.modulus().m, x.module_at(v).rank()));
  return eta;
}

namespace {

// Unknown layout for the naturality system of Hom(x, y): one unknown per
// entry of each per-vertex component matrix.
struct HomSlots {
  std::map<std::string, int> base;
  std::map<std::string, std::pair<int, int>> shape;  // rows from y, cols from x
  int total = 0;

  int slot(const std::string& v, int i, int j) const {
    return base.at(v) + i * shape.at(v).second + j;
  }
};

HomSlots make_slots(const Representation& x, const Representation& y) {
  HomSlots s;
  for (const std::string& v : x.quiver().vertices()) {
    const int rows = y.module_at(v).rank(), cols = x.module_at(v).rank();
    s.base[v] = s.total;
    s.shape[v] = {rows, cols};
    s.total += rows * cols;
  }
  return s;
}

void add_hom_rows(CongruenceSystem& sys, const Representation& x, const Representation& y,
                  const HomSlots& slots) {
  // Well-definedness of each component: order of the source generator kills
  // the entry in the target cyclic factor.
  for (const std::string& v : x.quiver().vertices()) {
    const auto& dx = x.module_at(v).invariant_factors();
    const auto& cy = y.module_at(v).invariant_factors();
    for (std::size_t i = 0; i < cy.size(); ++i)
      for (std::size_t j = 0; j < dx.size(); ++j)
        if (mod_reduce(dx[j], cy[i]) != 0)
          sys.add_row({{slots.slot(v, static_cast<int>(i), static_cast<int>(j)), dx[j]}}, 0,
                      cy[i]);
  }
  // Naturality per arrow, entry by entry in the target's cyclic factors.
  for (const Arrow& a : x.quiver().arrows()) {
    const MatZm& xa = x.map_at(a.id);
    const MatZm& ya = y.map_at(a.id);
    const auto& cy = y.module_at(a.dst).invariant_factors();
    const int rows_dst = y.module_at(a.dst).rank();
    const int cols_src = x.module_at(a.src).rank();
    const int mid_y = y.module_at(a.src).rank();
    const int mid_x = x.module_at(a.dst).rank();
    for (int i = 0; i < rows_dst; ++i)
      for (int j = 0; j < cols_src; ++j) {
        std::vector<std::pair<int, std::int64_t>> terms;
        for (int k = 0; k < mid_y; ++k)
          if (ya.at(i, k) != 0) terms.emplace_back(slots.slot(a.src, k, j), ya.at(i, k));
        for (int l = 0; l < mid_x; ++l)
          if (xa.at(l, j) != 0) terms.emplace_back(slots.slot(a.dst, i, l), -xa.at(l, j));
        sys.add_row(std::move(terms), 0, cy[static_cast<std::size_t>(i)]);
      }
  }
}

// Matrix-entry redundancy: entry (i, j) of a component only matters modulo
// the i-th target factor, so each solution class has this many matrices.
PrimePowers hom_gauge(const Representation& x, const Representation& y) {
  PrimePowers g;
  const std::int64_t m = x.modulus().m;
  for (const std::string& v : x.quiver().vertices()) {
    const int cols = x.module_at(v).rank();
    for (std::int64_t c : y.module_at(v).invariant_factors())
      g *= PrimePowers::of(m / c).pow(cols);
  }
  return g;
}

RepMorphism morphism_from_flat(const Representation& x, const Representation& y,
                               const HomSlots& slots, const std::vector<std::int64_t>& flat) {
  RepMorphism eta{x, y, {}};
  for (const auto& [v, sh] : slots.shape) {
    MatZm comp(x.modulus().m, sh.first, sh.second);
    for (int i = 0; i < sh.first; ++i)
      for (int j = 0; j < sh.second; ++j)
        comp.set(i, j, flat[static_cast<std::size_t>(slots.slot(v, i, j))]);
    eta.components.emplace(v, canonical_map(std::move(comp), y.module_at(v)));
  }
  return eta;
}

void require_same_setting(const Representation& x, const Representation& y) {
  if (!(x.quiver() == y.quiver()) || x.modulus().m != y.modulus().m)
    throw std::invalid_argument("representations live on different quivers or moduli");
}

}  // namespace

PrimePowers hom_count(const Representation& x, const Representation& y) {
  require_same_setting(x, y);
  const HomSlots slots = make_slots(x, y);
  CongruenceSystem sys(x.modulus().m, slots.total);
  add_hom_rows(sys, x, y, slots);
  auto outcome = sys.solve();
  PrimePowers count = outcome.solution_count;
  count /= hom_gauge(x, y);
  return count;
}

std::vector<RepMorphism> hom_basis(const Representation& x, const Representation& y) {
  require_same_setting(x, y);
  const HomSlots slots = make_slots(x, y);
  const std::int64_t m = x.modulus().m;
  std::vector<RepMorphism> gens;

  if (x.modulus().is_prime()) {
    // Field case: the naturality equations are one F_p system; its null-space
    // basis is a basis of the hom space.
    std::vector<std::vector<std::int64_t>> rows;
    for (const Arrow& a : x.quiver().arrows()) {
      const MatZm& xa = x.map_at(a.id);
      const MatZm& ya = y.map_at(a.id);
      for (int i = 0; i < y.module_at(a.dst).rank(); ++i)
        for (int j = 0; j < x.module_at(a.src).rank(); ++j) {
          std::vector<std::int64_t> row(static_cast<std::size_t>(slots.total), 0);
          for (int k = 0; k < y.module_at(a.src).rank(); ++k)
            row[static_cast<std::size_t>(slots.slot(a.src, k, j))] += ya.at(i, k);
          for (int l = 0; l < x.module_at(a.dst).rank(); ++l)
            row[static_cast<std::size_t>(slots.slot(a.dst, i, l))] -= xa.at(l, j);
          rows.push_back(std::move(row));
        }
    }
    MatZm sys(m, static_cast<int>(rows.size()), slots.total);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < slots.total; ++c)
        sys.set(static_cast<int>(r), c, rows[r][static_cast<std::size_t>(c)]);
    const MatZm basis = fp_kernel_basis(sys);
    for (int k = 0; k < basis.cols(); ++k) {
      std::vector<std::int64_t> flat(static_cast<std::size_t>(slots.total));
      for (int r = 0; r < slots.total; ++r) flat[static_cast<std::size_t>(r)] = basis.at(r, k);
      gens.push_back(morphism_from_flat(x, y, slots, flat));
    }
    return gens;
  }

  CongruenceSystem sys(m, slots.total);
  add_hom_rows(sys, x, y, slots);
  auto outcome = sys.solve();
  for (const auto& gen : outcome.kernel) {
    RepMorphism eta = morphism_from_flat(x, y, slots, gen);
    const bool zero = std::all_of(eta.components.begin(), eta.components.end(),
                                  [](const auto& kv) { return kv.second.is_zero(); });
    if (zero) continue;
    const bool dup = std::any_of(gens.begin(), gens.end(), [&](const RepMorphism& e) {
      return e.components == eta.components;
    });
    if (!dup) gens.push_back(std::move(eta));
  }
  return gens;
}

namespace {

FgModule repeated(const FgModule& m_module, int copies) {
  std::vector<std::int64_t> factors;
  for (int c = 0; c < copies; ++c)
    factors.insert(factors.end(), m_module.invariant_factors().begin(),
                   m_module.invariant_factors().end());
  return factors.empty() ? FgModule::zero() : FgModule(std::move(factors));
}

using PathKey = std::vector<std::string>;

std::map<std::string, std::vector<PathKey>> all_paths_from(const FiniteQuiver& q,
                                                           const std::string& v) {
  std::map<std::string, std::vector<PathKey>> out;
  for (const std::string& w : q.vertices()) out[w] = paths_between(q, v, w);
  return out;
}

std::map<std::string, std::vector<PathKey>> all_paths_into(const FiniteQuiver& q,
                                                           const std::string& v) {
  std::map<std::string, std::vector<PathKey>> out;
  for (const std::string& w : q.vertices()) out[w] = paths_between(q, w, v);
  return out;
}

}  // namespace

Representation stalk_functor(const std::string& v, const FgModule& m_module,
                             const FiniteQuiver& q, const Modulus& mod) {
  const auto paths = all_paths_from(q, v);
  const int rk = m_module.rank();
  std::map<std::string, FgModule> modules;
  for (const auto& [w, ps] : paths) modules[w] = repeated(m_module, static_cast<int>(ps.size()));
  std::map<std::string, MatZm> maps;
  for (const Arrow& a : q.arrows()) {
    const auto& src_paths = paths.at(a.src);
    const auto& dst_paths = paths.at(a.dst);
    MatZm f(mod.m, static_cast<int>(dst_paths.size()) * rk,
            static_cast<int>(src_paths.size()) * rk);
    for (std::size_t p = 0; p < src_paths.size(); ++p) {
      PathKey extended = src_paths[p];
      extended.push_back(a.id);
      const auto it = std::find(dst_paths.begin(), dst_paths.end(), extended);
      const auto qi = static_cast<std::size_t>(it - dst_paths.begin());
      for (int r = 0; r < rk; ++r)
        f.set(static_cast<int>(qi) * rk + r, static_cast<int>(p) * rk + r, 1);
    }
    maps.emplace(a.id, std::move(f));
  }
  return Representation(q, mod, std::move(modules), std::move(maps));
}

Representation costalk_functor(const std::string& v, const FgModule& m_module,
                               const FiniteQuiver& q, const Modulus& mod) {
  const auto paths = all_paths_into(q, v);
  const int rk = m_module.rank();
  std::map<std::string, FgModule> modules;
  for (const auto& [w, ps] : paths) modules[w] = repeated(m_module, static_cast<int>(ps.size()));
  std::map<std::string, MatZm> maps;
  for (const Arrow& a : q.arrows()) {
    const auto& src_paths = paths.at(a.src);
    const auto& dst_paths = paths.at(a.dst);
    MatZm f(mod.m, static_cast<int>(dst_paths.size()) * rk,
            static_cast<int>(src_paths.size()) * rk);
    for (std::size_t qi = 0; qi < dst_paths.size(); ++qi) {
      PathKey extended{a.id};
      extended.insert(extended.end(), dst_paths[qi].begin(), dst_paths[qi].end());
      const auto it = std::find(src_paths.begin(), src_paths.end(), extended);
      const auto p = static_cast<std::size_t>(it - src_paths.begin());
      for (int r = 0; r < rk; ++r)
        f.set(static_cast<int>(qi) * rk + r, static_cast<int>(p) * rk + r, 1);
    }
    maps.emplace(a.id, std::move(f));
  }
  return Representation(q, mod, std::move(modules), std::move(maps));
}

namespace {

// Shared core of both adjunction checks: cardinalities agree and the
// restriction morphism -> component-at-v has trivial kernel.
bool adjunction_core(const Representation& built, const Representation& other, bool built_first,
                     const std::string& v, const PrimePowers& module_side) {
  const Representation& x = built_first ? built : other;
  const Representation& y = built_first ? other : built;
  if (!(hom_count(x, y) == module_side)) return false;
  const HomSlots slots = make_slots(x, y);
  CongruenceSystem sys(x.modulus().m, slots.total);
  add_hom_rows(sys, x, y, slots);
  const auto& cy = y.module_at(v).invariant_factors();
  const auto [rows, cols] = slots.shape.at(v);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      sys.add_row({{slots.slot(v, i, j), 1}}, 0, cy[static_cast<std::size_t>(i)]);
  auto outcome = sys.solve();
  PrimePowers classes = outcome.solution_count;
  classes /= hom_gauge(x, y);
  return classes.is_one();
}

}  // namespace

bool adjunction_left_check(const std::string& v, const FgModule& m_module,
                           const Representation& x) {
  const Representation s = stalk_functor(v, m_module, x.quiver(), x.modulus());
  return adjunction_core(s, x, true, v, module_hom_count(m_module, x.module_at(v)));
}

bool adjunction_right_check(const std::string& v, const FgModule& m_module,
                            const Representation& x) {
  const Representation c = costalk_functor(v, m_module, x.quiver(), x.modulus());
  return adjunction_core(c, x, false, v, module_hom_count(x.module_at(v), m_module));
}

Representation rep_direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum needs at least one part");
  for (const Representation& p : parts) require_same_setting(parts.front(), p);
  const FiniteQuiver& q = parts.front().quiver();
  const std::int64_t m = parts.front().modulus().m;

  std::map<std::string, FgModule> modules;
  for (const std::string& v : q.vertices()) {
    std::vector<std::int64_t> factors;
    for (const Representation& p : parts) {
      const auto& f = p.module_at(v).invariant_factors();
      factors.insert(factors.end(), f.begin(), f.end());
    }
    modules[v] = factors.empty() ? FgModule::zero() : FgModule(std::move(factors));
  }
  std::map<std::string, MatZm> maps;
  for (const Arrow& a : q.arrows()) {
    MatZm f(m, modules[a.dst].rank(), modules[a.src].rank());
    int r0 = 0, c0 = 0;
    for (const Representation& p : parts) {
      f.set_block(r0, c0, p.map_at(a.id));
      r0 += p.module_at(a.dst).rank();
      c0 += p.module_at(a.src).rank();
    }
    maps.emplace(a.id, std::move(f));
  }
  return Representation(q, parts.front().modulus(), std::move(modules), std::move(maps));
}

int sum_offset(const std::vector<Representation>& parts, std::size_t part,
               const std::string& vertex) {
  int off = 0;
  for (std::size_t k = 0; k < part; ++k) off += parts[k].module_at(vertex).rank();
  return off;
}

std::map<std::string, MatZm> socle(const Representation& x) {
  if (!x.modulus().is_prime())
    throw std::invalid_argument("socle computation needs a prime modulus");
  const std::int64_t p = x.modulus().m;
  std::map<std::string, MatZm> out;
  for (const std::string& v : x.quiver().vertices()) {
    std::vector<MatZm> outgoing;
    for (int ai : x.quiver().arrows_from(v))
      outgoing.push_back(x.map_at(x.quiver().arrows()[static_cast<std::size_t>(ai)].id));
    const MatZm stacked = vstack(outgoing, p, x.module_at(v).rank());
    out.emplace(v, fp_kernel_basis(stacked));
  }
  return out;
}

SourceConditionsReport source_conditions_check(const Representation& x) {
  SourceConditionsReport report;
  report.overall = true;
  for (const std::string& v : x.quiver().vertices()) {
    VertexConditions c;
    c.vertex = v;
    c.module_injective = is_injective_module(x.module_at(v), x.modulus());

    std::vector<MatZm> outgoing;
    std::vector<std::int64_t> target_factors;
    for (int ai : x.quiver().arrows_from(v)) {
      const Arrow& a = x.quiver().arrows()[static_cast<std::size_t>(ai)];
      outgoing.push_back(x.map_at(a.id));
      const auto& f = x.module_at(a.dst).invariant_factors();
      target_factors.insert(target_factors.end(), f.begin(), f.end());
    }
    const MatZm bundled = vstack(outgoing, x.modulus().m, x.module_at(v).rank());
    const FgModule target =
        target_factors.empty() ? FgModule::zero() : FgModule(std::move(target_factors));
    c.split_onto_targets =
        right_inverse(bundled, x.module_at(v), target, x.modulus()).has_value();

    report.overall &= c.module_injective && c.split_onto_targets;
    report.per_vertex.push_back(std::move(c));
  }
  return report;
}

bool is_injective_rep(const Representation& x) { return source_conditions_check(x).overall; }

namespace {

void require_field_tree(const Representation& x, const char* what) {
  if (!x.modulus().is_prime())
    throw std::invalid_argument(std::string(what) + " needs a prime modulus");
  if (!x.quiver().root())
    throw std::invalid_argument(std::string(what) + " needs a rooted tree quiver");
  if (!validate_tree(x.quiver(), *x.quiver().root()).ok)
    throw std::invalid_argument(std::string(what) + " needs a tree quiver");
}

// Functionals dual to the socle basis: complete the basis columns, invert,
// keep the leading rows.
MatZm socle_dual_rows(const MatZm& socle_basis, std::int64_t p) {
  const int dim = socle_basis.rows(), sdim = socle_basis.cols();
  if (sdim == 0) return MatZm(p, 0, dim);
  MatZm candidates(p, dim, sdim + dim);
  candidates.set_block(0, 0, socle_basis);
  candidates.set_block(0, sdim, MatZm::identity(p, dim));
  const FpEchelon ech = fp_rref(candidates);
  MatZm basis(p, dim, dim);
  for (int k = 0; k < dim; ++k) {
    const int col = ech.pivot_cols[static_cast<std::size_t>(k)];
    for (int i = 0; i < dim; ++i) basis.set(i, k, candidates.at(i, col));
  }
  const MatZm inv = *fp_inverse(basis);
  MatZm rows(p, sdim, dim);
  for (int s = 0; s < sdim; ++s)
    for (int j = 0; j < dim; ++j) rows.set(s, j, inv.at(s, j));
  return rows;
}

}  // namespace

std::pair<Representation, RepMorphism> injective_envelope(const Representation& x) {
  require_field_tree(x, "injective envelope");
  const std::int64_t p = x.modulus().m;
  const FiniteQuiver& q = x.quiver();
  const FgModule line({p});

  const auto soc = socle(x);
  struct Part {
    std::string vertex;
    MatZm dual;  // one functional per socle dimension
  };
  std::vector<Part> blocks;
  std::vector<Representation> parts;
  for (const std::string& v : q.vertices()) {
    const MatZm& basis = soc.at(v);
    if (basis.cols() == 0) continue;
    const MatZm dual = socle_dual_rows(basis, p);
    for (int s = 0; s < basis.cols(); ++s) {
      parts.push_back(costalk_functor(v, line, q, x.modulus()));
      MatZm one_row(p, 1, basis.rows());
      for (int j = 0; j < basis.rows(); ++j) one_row.set(0, j, dual.at(s, j));
      blocks.push_back({v, std::move(one_row)});
    }
  }

  if (parts.empty()) {
    std::map<std::string, FgModule> zeros;
    Representation e(q, x.modulus(), std::move(zeros), {});
    RepMorphism eta{x, e, {}};
    for (const std::string& v : q.vertices())
      eta.components.emplace(v, MatZm(p, 0, x.module_at(v).rank()));
    return {std::move(e), std::move(eta)};
  }

  Representation e = rep_direct_sum(parts);
  RepMorphism eta{x, e, {}};
  for (const std::string& u : q.vertices()) {
    MatZm comp(p, e.module_at(u).rank(), x.module_at(u).rank());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (parts[b].module_at(u).rank() == 0) continue;  // no path from u into the block vertex
      const auto route = paths_between(q, u, blocks[b].vertex);
      const MatZm row = blocks[b].dual * x.path_map(route.front(), u);
      comp.set_block(sum_offset(parts, b, u), 0, row);
    }
    eta.components.emplace(u, std::move(comp));
  }
  return {std::move(e), std::move(eta)};
}

std::vector<std::pair<std::string, int>> decompose_injective(const Representation& x) {
  require_field_tree(x, "injective decomposition");
  SourceConditionsReport report = source_conditions_check(x);
  if (!report.overall) throw NotInjective(std::move(report));

  const auto soc = socle(x);
  std::vector<std::pair<std::string, int>> mult;
  for (const std::string& v : x.quiver().vertices())
    if (soc.at(v).cols() > 0) mult.emplace_back(v, soc.at(v).cols());

  // The multiplicities must reproduce the dimension vector exactly.
  std::map<std::string, int> expected;
  for (const auto& [v, k] : mult) {
    const auto into = all_paths_into(x.quiver(), v);
    for (const auto& [u, ps] : into) expected[u] += k * static_cast<int>(ps.size());
  }
  for (const std::string& u : x.quiver().vertices())
    if (expected[u] != x.module_at(u).rank())
      throw std::logic_error("socle multiplicities disagree with the dimension vector");
  return mult;
}

bool is_indecomposable_injective(const Representation& x) {
  const auto mult = decompose_injective(x);
  int total = 0;
  for (const auto& [v, k] : mult) total += k;
  return total == 1;
}

}  // namespace treq
