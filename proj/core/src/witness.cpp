#include "treq/witness.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace treq {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

Representation zero_rep(const FiniteQuiver& tree, const Modulus& mod) {
  return Representation(tree, mod, {}, {});
}

std::vector<std::string> unique_path(const FiniteQuiver& tree, const std::string& from,
                                     const std::string& to) {
  auto paths = paths_between(tree, from, to);
  if (paths.size() != 1)
    throw std::logic_error("expected exactly one path " + from + " -> " + to);
  return std::move(paths.front());
}

}  // namespace

WitnessFamily build_witness_family(const RationalTreeScheme& s, const Modulus& mod, int n,
                                   int depth) {
  if (!mod.is_prime()) fail("witness families need a prime modulus");
  if (n < 1) fail("need at least one antichain member");
  auto comb = infinite_antichain(s);
  if (!comb) fail("scheme is barren: every level count stabilizes, no witness family exists");
  std::vector<TreeVertexAddress> antichain;
  antichain.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    antichain.push_back(comb->member(j));
    const auto need = static_cast<int>(antichain.back().transitions.size()) + 1;
    if (need > depth)
      fail("depth " + std::to_string(depth) + " cannot hold antichain member " +
           antichain.back().render() + " plus one level; need at least " + std::to_string(need));
  }
  FiniteQuiver tree = unfold(s, depth);
  const FgModule coeff = FgModule::free(1, mod.m);
  std::vector<Representation> stalks;
  stalks.reserve(antichain.size());
  for (const TreeVertexAddress& w : antichain)
    stalks.push_back(stalk_functor(w.render(), coeff, tree, mod));

  std::vector<Representation> envelopes;
  std::vector<RepMorphism> embeddings;  // tail sum -> envelope, per i
  envelopes.reserve(stalks.size());
  for (std::size_t i = 0; i < stalks.size(); ++i) {
    std::vector<Representation> tail(stalks.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                     stalks.end());
    Representation tail_sum = tail.empty() ? zero_rep(tree, mod) : rep_direct_sum(tail);
    auto [hull, embed] = injective_envelope(tail_sum);
    envelopes.push_back(std::move(hull));
    embeddings.push_back(std::move(embed));
  }

  Representation stalk_sum = rep_direct_sum(stalks);
  Representation envelope_sum = rep_direct_sum(envelopes);

  std::map<std::string, MatZm> components;
  for (const std::string& u : tree.vertices()) {
    MatZm c(mod.m, envelope_sum.module_at(u).rank(), stalk_sum.module_at(u).rank());
    for (std::size_t i = 0; i < stalks.size(); ++i) {
      const MatZm& iota = embeddings[i].components.at(u);
      const int row0 = sum_offset(envelopes, i, u);
      int tail_off = 0;
      for (std::size_t j = i + 1; j < stalks.size(); ++j) {
        const int col0 = sum_offset(stalks, j, u);
        const int width = stalks[j].module_at(u).rank();
        for (int r = 0; r < iota.rows(); ++r)
          for (int t = 0; t < width; ++t) c.set(row0 + r, col0 + t, iota.at(r, tail_off + t));
        tail_off += width;
      }
    }
    components.emplace(u, std::move(c));
  }
  RepMorphism phi{stalk_sum, envelope_sum, std::move(components)};
  return WitnessFamily{s,
                       depth,
                       std::move(antichain),
                       std::move(tree),
                       std::move(stalks),
                       std::move(envelopes),
                       std::move(stalk_sum),
                       std::move(envelope_sum),
                       std::move(phi)};
}

ForcedComponentsReport forced_components(const WitnessFamily& f) {
  const auto n = f.antichain.size();
  ForcedComponentsReport report;
  const std::string root = f.tree.root().value();

  // phi on the unit of summand i+1, read off per envelope block.
  for (std::size_t i = 1; i < n; ++i) {
    const std::string wid = f.antichain[i].render();
    std::vector<std::int64_t> unit(
        static_cast<std::size_t>(f.stalk_sum.module_at(wid).rank()), 0);
    unit[static_cast<std::size_t>(sum_offset(f.stalks, i, wid))] = 1;
    const std::vector<std::int64_t> value = f.phi.components.at(wid).apply(unit);
    ForcedComponentsReport::PerIndex entry{static_cast<int>(i), {}};
    for (std::size_t k = 0; k < n; ++k) {
      const int off = sum_offset(f.envelopes, k, wid);
      const int width = f.envelopes[k].module_at(wid).rank();
      bool nonzero = false;
      for (int t = 0; t < width; ++t) nonzero = nonzero || value[static_cast<std::size_t>(off + t)] != 0;
      if (nonzero) entry.forced.push_back(static_cast<int>(k) + 1);
    }
    report.per_index.push_back(std::move(entry));
  }

  // One explicit factorization: its root value x must satisfy, for every j,
  // (envelope_sum along root->w_j)(x) = phi(unit of summand j), and those
  // constraints propagate to all deeper vertices by naturality.
  const int unknowns = f.envelope_sum.module_at(root).rank();
  CongruenceSystem system(f.envelope_sum.modulus().m, unknowns);
  for (std::size_t j = 0; j < n; ++j) {
    const std::string wid = f.antichain[j].render();
    const MatZm h = f.envelope_sum.path_map(unique_path(f.tree, root, wid), root);
    std::vector<std::int64_t> unit(
        static_cast<std::size_t>(f.stalk_sum.module_at(wid).rank()), 0);
    unit[static_cast<std::size_t>(sum_offset(f.stalks, j, wid))] = 1;
    const std::vector<std::int64_t> value = f.phi.components.at(wid).apply(unit);
    const auto& factors = f.envelope_sum.module_at(wid).invariant_factors();
    for (int r = 0; r < h.rows(); ++r) {
      std::vector<std::pair<int, std::int64_t>> terms;
      for (int c = 0; c < h.cols(); ++c)
        if (h.at(r, c) != 0) terms.emplace_back(c, h.at(r, c));
      system.add_row(std::move(terms), value[static_cast<std::size_t>(r)],
                     factors[static_cast<std::size_t>(r)]);
    }
  }
  const auto outcome = system.solve();
  report.lift_exists = outcome.solvable;
  if (outcome.solvable) {
    for (std::size_t k = 0; k < n; ++k) {
      const int off = sum_offset(f.envelopes, k, root);
      const int width = f.envelopes[k].module_at(root).rank();
      bool nonzero = false;
      for (int t = 0; t < width; ++t)
        nonzero = nonzero || outcome.particular[static_cast<std::size_t>(off + t)] != 0;
      if (nonzero) report.lift_forced.push_back(static_cast<int>(k) + 1);
    }
  }
  return report;
}

NonInjectivityCertificate non_injectivity_certificate(const RationalTreeScheme& s,
                                                      const Modulus& mod, int n_max) {
  if (n_max < 1) fail("need at least one family size");
  auto comb = infinite_antichain(s);
  if (!comb) fail("scheme is barren: the growth argument does not apply");
  int depth = 0;
  for (int j = 1; j <= n_max; ++j)
    depth = std::max(depth, static_cast<int>(comb->member(j).transitions.size()) + 1);

  NonInjectivityCertificate cert;
  cert.depth = depth;
  bool all_pass = true;
  bool strict = true;
  int prev = -1;
  for (int n = 1; n <= n_max; ++n) {
    WitnessFamily family = build_witness_family(s, mod, n, depth);
    GrowthEntry entry{n, source_conditions_check(family.envelope_sum),
                      forced_components(family), 0};
    entry.max_forced = entry.forced.per_index.empty()
                           ? 0
                           : static_cast<int>(entry.forced.per_index.back().forced.size());
    all_pass = all_pass && entry.conditions.overall;
    strict = strict && entry.max_forced > prev;
    prev = entry.max_forced;
    cert.per_n.push_back(std::move(entry));
  }
  cert.conditions_all_pass = all_pass;
  cert.counts_strictly_increasing = strict;
  cert.interpretation =
      "Every finite stage keeps both local source conditions, yet any factorization of the "
      "comparison map through the ambient rank-one representation is forced to occupy one more "
      "nonzero root block per stage. A direct-sum element only has finitely many nonzero "
      "blocks, so no single map serves every stage at once.";
  return cert;
}

InterchangeReport interchange_check(int fanout, int summands, const Modulus& mod,
                                    std::uint64_t seed) {
  if (fanout < 1 || summands < 1) fail("fanout and summand count must be at least 1");
  // All invariant-factor chains of rank <= 2 over m.
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 2; d <= mod.m; ++d)
    if (mod.m % d == 0) divisors.push_back(d);
  std::vector<FgModule> choices{FgModule::zero()};
  for (std::int64_t d : divisors) choices.push_back(FgModule{{d}});
  for (std::int64_t d1 : divisors)
    for (std::int64_t d2 : divisors)
      if (d2 % d1 == 0) choices.push_back(FgModule{{d1, d2}});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  InterchangeReport report;
  report.fanout = fanout;
  report.summands = summands;
  report.modules.resize(static_cast<std::size_t>(summands));
  for (auto& row : report.modules) {
    row.reserve(static_cast<std::size_t>(fanout));
    for (int k = 0; k < fanout; ++k) row.push_back(choices[pick(rng)]);
  }

  // Sum-of-products concatenates summand-major, product-of-sums arrow-major;
  // the comparison map relabels coordinates.
  std::vector<std::int64_t> left_factors, right_factors;
  std::map<std::pair<int, int>, int> left_off, right_off;
  for (int j = 0; j < summands; ++j)
    for (int k = 0; k < fanout; ++k) {
      left_off[{j, k}] = static_cast<int>(left_factors.size());
      const auto& f = report.modules[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      left_factors.insert(left_factors.end(), f.invariant_factors().begin(),
                          f.invariant_factors().end());
    }
  for (int k = 0; k < fanout; ++k)
    for (int j = 0; j < summands; ++j) {
      right_off[{k, j}] = static_cast<int>(right_factors.size());
      const auto& f = report.modules[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      right_factors.insert(right_factors.end(), f.invariant_factors().begin(),
                           f.invariant_factors().end());
    }
  const int total = static_cast<int>(left_factors.size());
  MatZm comparison(mod.m, total, total);
  for (int j = 0; j < summands; ++j)
    for (int k = 0; k < fanout; ++k) {
      const auto& f = report.modules[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      for (int t = 0; t < f.rank(); ++t)
        comparison.set(right_off[{k, j}] + t, left_off[{j, k}] + t, 1);
    }
  const FgModule src{std::move(left_factors)};
  const FgModule dst{std::move(right_factors)};
  const auto inverse = right_inverse(comparison, src, dst, mod);
  report.ok = inverse.has_value() &&
              maps_equal(comparison * *inverse, MatZm::identity(mod.m, total), dst) &&
              maps_equal(*inverse * comparison, MatZm::identity(mod.m, total), src);
  report.note =
      "Finite fanout makes the comparison a block permutation, so it is two-sided invertible. "
      "With infinitely many arrows out of a vertex it stays injective but stops being "
      "surjective: a product element may spread over infinitely many summand blocks, which no "
      "direct-sum element can match.";
  return report;
}

}  // namespace treq
