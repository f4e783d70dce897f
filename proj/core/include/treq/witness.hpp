#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treq/quiver.hpp"
#include "treq/rep.hpp"
#include "treq/zmod.hpp"

namespace treq {

// The escalating family living on a depth-d unfolding of a non-barren scheme:
// an antichain prefix w_1..w_N, the rank-one stalk representation at each
// w_j, the injective envelope E_i of the tail sum over j > i, and the
// comparison map phi whose (i, j) block is the envelope embedding restricted
// to summand j (zero for j <= i).
struct WitnessFamily {
  RationalTreeScheme scheme;
  int depth;
  std::vector<TreeVertexAddress> antichain;  // w_1..w_N
  FiniteQuiver tree;                         // unfold(scheme, depth)
  std::vector<Representation> stalks;        // S_{w_j}, rank-one coefficients
  std::vector<Representation> envelopes;     // E_i, with E_N the zero hull
  Representation stalk_sum;
  Representation envelope_sum;
  RepMorphism phi;  // stalk_sum -> envelope_sum
};

// Requires a non-barren scheme, prime modulus, and depth at least one level
// past the deepest antichain member.
WitnessFamily build_witness_family(const RationalTreeScheme& s, const Modulus& mod, int n,
                                   int depth);

// What any factorization of phi through the ambient rank-one tree
// representation must satisfy: evaluating phi on the unit of summand i+1
// leaves nonzero entries exactly in envelope blocks 1..i, and those blocks of
// the factoring map's root value are then pinned nonzero.  One explicit
// factorization is solved from the per-antichain-member path constraints as
// evidence that factorizations exist at finite depth.
struct ForcedComponentsReport {
  struct PerIndex {
    int index;                 // i, 1-based
    std::vector<int> forced;   // envelope blocks with nonzero entries, 1-based
  };
  std::vector<PerIndex> per_index;  // i = 1..N-1
  bool lift_exists = false;
  std::vector<int> lift_forced;  // nonzero blocks of the solved root value
};

ForcedComponentsReport forced_components(const WitnessFamily& f);

// Per family size n <= n_max: the local source conditions hold for the sum of
// envelopes while the forced-component count keeps growing.  The limit
// reading lives in `interpretation` as prose, never as an asserted result.
struct GrowthEntry {
  int n;
  SourceConditionsReport conditions;
  ForcedComponentsReport forced;
  int max_forced = 0;
};

struct NonInjectivityCertificate {
  int depth = 0;
  std::vector<GrowthEntry> per_n;  // n = 1..n_max
  bool conditions_all_pass = false;
  bool counts_strictly_increasing = false;
  std::string interpretation;
};

NonInjectivityCertificate non_injectivity_certificate(const RationalTreeScheme& s,
                                                      const Modulus& mod, int n_max);

// Finite sum/product interchange: the block permutation comparing
// sum-of-products with product-of-sums is two-sided invertible for finite
// fanout.  The note records why infinite fanout breaks surjectivity.
struct InterchangeReport {
  bool ok = false;
  int fanout = 0, summands = 0;
  std::vector<std::vector<FgModule>> modules;  // [summand][arrow]
  std::string note;
};

InterchangeReport interchange_check(int fanout, int summands, const Modulus& mod,
                                    std::uint64_t seed);

}  // namespace treq
