#include <set>

#include "doctest.h"
#include "treq/witness.hpp"

using namespace treq;

namespace {

RationalTreeScheme binary_scheme() {
  return RationalTreeScheme({"s"}, {{"l", "s", "s"}, {"r", "s", "s"}}, "s");
}

}  // namespace

TEST_CASE("witness family assembles as advertised") {
  const Modulus m2 = make_modulus(2);
  const WitnessFamily f = build_witness_family(binary_scheme(), m2, 3, 5);
  CHECK(f.antichain.size() == 3);
  CHECK(f.stalks.size() == 3);
  CHECK(f.envelopes.size() == 3);
  CHECK(f.tree.vertices().size() == 63);  // binary unfolding through depth 5

  // phi is a genuine morphism
  CHECK(check_morphism(f.phi).ok);

  // the stalks are pairwise direct inside the ambient tree: the summed
  // dimension matches the direct-sum dimension at every vertex (no collisions
  // by construction, since antichain members have disjoint successor sets)
  for (const std::string& v : f.tree.vertices()) {
    int total = 0;
    for (const Representation& s : f.stalks) total += s.module_at(v).rank();
    CHECK(f.stalk_sum.module_at(v).rank() == total);
  }

  // every envelope passes the local conditions
  for (const Representation& e : f.envelopes) CHECK(is_injective_rep(e));
  CHECK(is_injective_rep(f.envelope_sum));

  // antichain members are pairwise incomparable addresses
  for (std::size_t i = 0; i < f.antichain.size(); ++i)
    for (std::size_t j = 0; j < f.antichain.size(); ++j) {
      if (i == j) continue;
      const auto& a = f.antichain[i].transitions;
      const auto& b = f.antichain[j].transitions;
      const bool prefix =
          a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
      CHECK_FALSE(prefix);
    }
}

TEST_CASE("depth must clear the deepest member") {
  const Modulus m2 = make_modulus(2);
  CHECK_THROWS(build_witness_family(binary_scheme(), m2, 4, 4));
  CHECK_NOTHROW(build_witness_family(binary_scheme(), m2, 4, 6));
  // barren schemes have no antichain to build on
  const RationalTreeScheme chain({"s"}, {{"n", "s", "s"}}, "s");
  CHECK_THROWS(build_witness_family(chain, m2, 2, 9));
  // composite moduli are rejected: envelopes need the prime field machinery
  CHECK_THROWS(build_witness_family(binary_scheme(), make_modulus(4), 2, 5));
}

TEST_CASE("forced component sets are exactly the lower intervals") {
  const Modulus m2 = make_modulus(2);
  for (int n = 2; n <= 4; ++n) {
    const WitnessFamily f = build_witness_family(binary_scheme(), m2, n, n + 2);
    const ForcedComponentsReport rep = forced_components(f);
    REQUIRE(static_cast<int>(rep.per_index.size()) == n - 1);
    for (int i = 1; i < n; ++i) {
      const auto& entry = rep.per_index[static_cast<std::size_t>(i - 1)];
      CHECK(entry.index == i);
      std::vector<int> expect;
      for (int k = 1; k <= i; ++k) expect.push_back(k);
      CHECK(entry.forced == expect);
    }
    CHECK(rep.lift_exists);
    // the factoring map's root value is pinned on the same blocks
    std::vector<int> full;
    for (int k = 1; k < n; ++k) full.push_back(k);
    CHECK(rep.lift_forced == full);
  }
}

TEST_CASE("certificate collates growth across family sizes") {
  const Modulus m2 = make_modulus(2);
  const NonInjectivityCertificate cert =
      non_injectivity_certificate(binary_scheme(), m2, 4);
  REQUIRE(cert.per_n.size() == 4);
  CHECK(cert.conditions_all_pass);
  CHECK(cert.counts_strictly_increasing);
  for (int n = 1; n <= 4; ++n) {
    const GrowthEntry& e = cert.per_n[static_cast<std::size_t>(n - 1)];
    CHECK(e.n == n);
    CHECK(e.max_forced == n - 1);
    CHECK(e.conditions.overall);
  }
  CHECK_FALSE(cert.interpretation.empty());

  // with m = 3 the same shape comes out
  const NonInjectivityCertificate cert3 =
      non_injectivity_certificate(binary_scheme(), make_modulus(3), 3);
  CHECK(cert3.conditions_all_pass);
  CHECK(cert3.counts_strictly_increasing);
  CHECK(cert3.per_n.back().max_forced == 2);

  const RationalTreeScheme chain({"s"}, {{"n", "s", "s"}}, "s");
  CHECK_THROWS(non_injectivity_certificate(chain, m2, 3));
}

TEST_CASE("finite interchange maps are invertible") {
  for (const std::int64_t m : {2, 6}) {
    const InterchangeReport rep = interchange_check(3, 2, make_modulus(m), 1729);
    CHECK(rep.ok);
    CHECK(rep.fanout == 3);
    CHECK(rep.summands == 2);
    CHECK(rep.modules.size() == 2);
    CHECK(rep.modules[0].size() == 3);
    CHECK_FALSE(rep.note.empty());
  }
  CHECK(interchange_check(1, 1, make_modulus(2), 7).ok);
  CHECK(interchange_check(2, 4, make_modulus(9), 3).ok);
}
