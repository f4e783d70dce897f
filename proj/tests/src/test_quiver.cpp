#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "treq/quiver.hpp"

using namespace treq;

namespace {

RationalTreeScheme binary_scheme() {
  return RationalTreeScheme({"s"}, {{"l", "s", "s"}, {"r", "s", "s"}}, "s");
}

RationalTreeScheme chain_scheme() {
  return RationalTreeScheme({"s"}, {{"n", "s", "s"}}, "s");
}

RationalTreeScheme three_branch_scheme() {
  return RationalTreeScheme({"r", "a", "b", "c"},
                            {{"t1", "r", "a"},
                             {"t2", "r", "b"},
                             {"t3", "r", "c"},
                             {"u1", "a", "a"},
                             {"u2", "b", "b"},
                             {"u3", "c", "c"}},
                            "r");
}

// Level counts by explicit unfolding: count vertices per depth in the tree.
std::vector<BigInt> level_counts_by_unfolding(const RationalTreeScheme& s, int i_max) {
  const FiniteQuiver tree = unfold(s, i_max);
  std::vector<BigInt> counts(static_cast<std::size_t>(i_max) + 1, 0);
  for (const std::string& v : tree.vertices()) {
    const std::size_t depth =
        v == "()" ? 0 : 1 + static_cast<std::size_t>(std::count(v.begin(), v.end(), '.'));
    counts[depth] += 1;
  }
  return counts;
}

RationalTreeScheme random_scheme(std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(rng() % 6);
  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));
  std::vector<Transition> transitions;
  int id = 0;
  // connect every state to the root region first so the scheme validates
  for (int i = 1; i < n; ++i)
    transitions.push_back({"t" + std::to_string(id++),
                           states[rng() % static_cast<std::size_t>(i)],
                           states[static_cast<std::size_t>(i)]});
  const int extra = static_cast<int>(rng() % 4);
  for (int k = 0; k < extra; ++k)
    transitions.push_back({"t" + std::to_string(id++),
                           states[rng() % static_cast<std::size_t>(n)],
                           states[rng() % static_cast<std::size_t>(n)]});
  return RationalTreeScheme(std::move(states), std::move(transitions), "q0");
}

bool is_prefix(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("identifier charset") {
  CHECK(valid_id("abc_0.DEF-2"));
  CHECK(valid_id("r/c@3"));
  CHECK(valid_id("(x)+y"));
  CHECK_FALSE(valid_id(""));
  CHECK_FALSE(valid_id("has space"));
  CHECK_FALSE(valid_id("tab\tchar"));
}

TEST_CASE("finite quiver construction and ordering") {
  FiniteQuiver q({"b", "a"}, {{"z", "a", "b"}, {"y", "a", "a"}});
  CHECK(q.vertices() == std::vector<std::string>{"a", "b"});
  CHECK(q.arrows()[0].id == "y");
  CHECK_THROWS(FiniteQuiver({"a", "a"}, {}));                       // duplicate vertex
  CHECK_THROWS(FiniteQuiver({"a"}, {{"x", "a", "missing"}}));       // dangling endpoint
  CHECK_THROWS(FiniteQuiver({"a"}, {{"x", "a", "a"}, {"x", "a", "a"}}));  // duplicate id
  CHECK_THROWS(FiniteQuiver({"a"}, {}, "missing"));                 // bad root
}

TEST_CASE("tree validation diagnoses each failure mode") {
  const FiniteQuiver good({"r", "x", "y"}, {{"a", "r", "x"}, {"b", "r", "y"}}, "r");
  CHECK(validate_tree(good, "r").ok);

  const FiniteQuiver loose({"r", "x", "y"}, {{"a", "r", "x"}}, "r");
  const TreeCheck t1 = validate_tree(loose, "r");
  CHECK_FALSE(t1.ok);
  CHECK(t1.unreachable == std::vector<std::string>{"y"});

  const FiniteQuiver cyc({"r", "x"}, {{"a", "r", "x"}, {"b", "x", "r"}}, "r");
  const TreeCheck t2 = validate_tree(cyc, "r");
  CHECK_FALSE(t2.ok);
  CHECK(t2.cycle.has_value());

  const FiniteQuiver dbl({"r", "x"}, {{"a", "r", "x"}, {"b", "r", "x"}}, "r");
  const TreeCheck t3 = validate_tree(dbl, "r");
  CHECK_FALSE(t3.ok);
  REQUIRE(t3.double_path.has_value());
  CHECK(t3.double_path->first != t3.double_path->second);
}

TEST_CASE("paths are enumerated in lexicographic order") {
  // r -> m two ways, m -> t two ways: four paths r -> t
  const FiniteQuiver q({"r", "m", "t"},
                       {{"a", "r", "m"}, {"b", "r", "m"}, {"c", "m", "t"}, {"d", "m", "t"}});
  const auto paths = paths_between(q, "r", "t");
  REQUIRE(paths.size() == 4);
  CHECK(paths[0] == std::vector<std::string>{"a", "c"});
  CHECK(paths[1] == std::vector<std::string>{"a", "d"});
  CHECK(paths[2] == std::vector<std::string>{"b", "c"});
  CHECK(paths[3] == std::vector<std::string>{"b", "d"});
  CHECK(paths_between(q, "t", "t") == std::vector<std::vector<std::string>>{{}});
  CHECK(paths_between(q, "t", "r").empty());
  const FiniteQuiver cyc({"x"}, {{"e", "x", "x"}});
  CHECK_FALSE(is_right_rooted(cyc));
  CHECK_THROWS(paths_between(cyc, "x", "x"));
}

TEST_CASE("unfolding the binary scheme") {
  const FiniteQuiver t = unfold(binary_scheme(), 2);
  CHECK(t.vertices().size() == 7);  // 1 + 2 + 4
  CHECK(t.root() == std::optional<std::string>{"()"});
  CHECK(validate_tree(t, "()").ok);
  CHECK(t.has_vertex("l.r"));
  // arrow into "l.r" is named by its target
  const Arrow& a = t.arrow("l.r");
  CHECK(a.src == "l");
  CHECK(a.dst == "l.r");
}

TEST_CASE("addresses resolve through the transition table") {
  const auto s = binary_scheme();
  CHECK(TreeVertexAddress{}.render() == "()");
  CHECK(TreeVertexAddress{{"l", "r"}}.render() == "l.r");
  CHECK(valid_address(s, TreeVertexAddress{{"l", "r", "l"}}));
  CHECK_FALSE(valid_address(s, TreeVertexAddress{{"l", "bogus"}}));
  CHECK(address_state(s, TreeVertexAddress{{"l"}}) == "s");
  const auto tb = three_branch_scheme();
  CHECK(address_state(tb, TreeVertexAddress{{"t2", "u2"}}) == "b");
  CHECK_FALSE(valid_address(tb, TreeVertexAddress{{"t2", "u1"}}));  // u1 starts at a
}

TEST_CASE("level counts against the unfolding oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_scheme(rng);
    CHECK(level_counts(s, 8) == level_counts_by_unfolding(s, 8));
  }
  // powering handles ranges far beyond feasible unfolding
  const auto big = level_counts(binary_scheme(), 120);
  CHECK(big[120] == BigInt(1) << 120);
}

TEST_CASE("named schemes classify as expected") {
  const BarrenCertificate bin = is_barren(binary_scheme());
  CHECK_FALSE(bin.barren);
  CHECK(bin.witness_state.has_value());

  const BarrenCertificate chain = is_barren(chain_scheme());
  CHECK(chain.barren);
  CHECK(chain.stable_value == 1);

  const BarrenCertificate tb = is_barren(three_branch_scheme());
  CHECK(tb.barren);
  CHECK(tb.stable_value == 3);
  CHECK(level_counts(three_branch_scheme(), 4) ==
        std::vector<BigInt>{1, 3, 3, 3, 3});

  // self-loop plus exit: 1, 2, 2, 2, ...
  const RationalTreeScheme comb({"s", "b"}, {{"n", "s", "s"}, {"t", "s", "b"}}, "s");
  const BarrenCertificate cb = is_barren(comb);
  CHECK(cb.barren);
  CHECK(cb.stable_value == 2);

  // oscillator: two parallel arrows into a state that feeds back
  const RationalTreeScheme osc({"p", "q"},
                               {{"f1", "p", "q"}, {"f2", "p", "q"}, {"g", "q", "p"}}, "p");
  const BarrenCertificate oc = is_barren(osc);
  CHECK_FALSE(oc.barren);

  // a cycle with a chord inside the component is growth
  const RationalTreeScheme chord(
      {"x", "y"}, {{"a", "x", "y"}, {"b", "y", "x"}, {"c", "x", "x"}}, "x");
  CHECK_FALSE(is_barren(chord).barren);
}

TEST_CASE("structural decision agrees with windowed level counts") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_scheme(rng);
    const int n = static_cast<int>(s.states().size());
    const auto counts = level_counts(s, 2 * n + 2);
    bool window_constant = true;
    for (int i = n; i < 2 * n + 2; ++i)
      if (counts[static_cast<std::size_t>(i)] != counts[static_cast<std::size_t>(n)])
        window_constant = false;
    CHECK(is_barren(s).barren == window_constant);
  }
}

TEST_CASE("antichain combs exist exactly off the barren case") {
  CHECK_FALSE(infinite_antichain(chain_scheme()).has_value());
  CHECK_FALSE(infinite_antichain(three_branch_scheme()).has_value());

  const auto comb = infinite_antichain(binary_scheme());
  REQUIRE(comb.has_value());
  // members are pairwise unconnected: neither address a prefix of the other
  std::vector<TreeVertexAddress> members;
  for (int j = 1; j <= 10; ++j) {
    members.push_back(comb->member(j));
    CHECK(valid_address(binary_scheme(), members.back()));
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j) CHECK_FALSE(is_prefix(members[i].transitions, members[j].transitions));

  // binary comb takes the lexicographically least cycle and exits it
  CHECK(comb->member(1).transitions.size() >= 2);
}

TEST_CASE("path spaces restrict the scheme") {
  const auto tb = three_branch_scheme();
  const RationalTreeScheme at_b = path_space(tb, TreeVertexAddress{{"t2"}});
  CHECK(at_b.root() == "b");
  CHECK(at_b.states() == std::vector<std::string>{"b"});
  CHECK(at_b.transitions().size() == 1);

  const auto whole = path_space(tb, TreeVertexAddress{});
  CHECK(whole.states().size() == 4);

  // path space of a finite tree: the subtree below the addressed vertex
  const FiniteQuiver y({"r", "m", "p", "q"},
                       {{"a", "r", "m"}, {"b", "m", "p"}, {"c", "m", "q"}}, "r");
  const RationalTreeScheme below_m = path_space(y, {"a"});
  CHECK(below_m.root() == "m");
  CHECK(below_m.states().size() == 3);
  const auto self = as_scheme(y, "r");
  CHECK(is_barren(self).barren);
  CHECK(is_barren(self).stable_value == 0);  // finite tree: counts reach 0
}

TEST_CASE("rooted subschemes drop unreachable states") {
  const auto tb = three_branch_scheme();
  const RationalTreeScheme sub = rooted_at(tb, "a");
  CHECK(sub.root() == "a");
  CHECK(sub.states() == std::vector<std::string>{"a"});
}
