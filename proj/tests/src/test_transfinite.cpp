#include <algorithm>

#include "doctest.h"
#include "treq/transfinite.hpp"

using namespace treq;

namespace {

const Ordinal W = Ordinal::omega();

SegmentScheme omega_scheme(bool top = false) {
  return SegmentScheme({{"r", W, top, {}}}, "r");
}

SegmentScheme two_omega() {
  return SegmentScheme({{"r", W, true, {"c"}}, {"c", W, false, {}}}, "r");
}

SegmentScheme deep_scheme() {
  return SegmentScheme({{"r", Ordinal::from_nat(3), false, {"m"}},
                        {"m", W, true, {"leaf"}},
                        {"leaf", Ordinal::from_nat(2), false, {}}},
                       "r");
}

TransfiniteAddress at(std::vector<std::string> path, const Ordinal& off) {
  return TransfiniteAddress{std::move(path), off};
}

}  // namespace

TEST_CASE("segment scheme construction rules") {
  // successor lengths own their last element regardless of the flag
  const SegmentScheme pt({{"r", Ordinal::from_nat(1), false, {}}}, "r");
  CHECK(pt.node("r").has_top);
  CHECK(pt.element_count("r") == Ordinal::from_nat(1));
  CHECK(pt.max_offset("r") == Ordinal{});

  CHECK_THROWS(SegmentScheme({{"r", Ordinal{}, false, {}}}, "r"));  // zero length
  CHECK_THROWS(SegmentScheme({{"r", W, false, {}}}, "missing"));
  // duplicate ids
  CHECK_THROWS(SegmentScheme({{"r", W, false, {}}, {"r", W, false, {}}}, "r"));
  // child of a topless limit segment needs pre_completion
  CHECK_THROWS(SegmentScheme({{"r", W, false, {"c"}}, {"c", W, false, {}}}, "r"));
  CHECK_NOTHROW(SegmentScheme({{"r", W, false, {"c"}}, {"c", W, false, {}}}, "r", true));
  // one parent per node, root not a child
  CHECK_THROWS(SegmentScheme(
      {{"r", Ordinal::from_nat(1), false, {"c", "c"}}, {"c", W, false, {}}}, "r"));
  CHECK_THROWS(SegmentScheme({{"r", Ordinal::from_nat(1), false, {"r"}}}, "r"));
  // unreachable node
  CHECK_THROWS(SegmentScheme({{"r", W, false, {}}, {"x", W, false, {}}}, "r"));
}

TEST_CASE("element counts distinguish owned tops") {
  const SegmentScheme with_top = omega_scheme(true);
  CHECK(with_top.element_count("r") == ord_add(W, Ordinal::from_nat(1)));
  CHECK(with_top.max_offset("r") == W);
  CHECK(with_top.element_offset("r", W));

  const SegmentScheme no_top = omega_scheme(false);
  CHECK(no_top.element_count("r") == W);
  CHECK_FALSE(no_top.element_offset("r", W));
  CHECK(no_top.element_offset("r", Ordinal::from_nat(12)));
  CHECK_THROWS(no_top.max_offset("r"));  // no maximal element

  // interior limit offsets are elements of long successor segments
  const SegmentScheme long_seg({{"r", Ordinal::parse("w+3"), false, {}}}, "r");
  CHECK(long_seg.node("r").has_top);  // successor length
  CHECK(long_seg.element_offset("r", W));
  CHECK(long_seg.max_offset("r") == Ordinal::parse("w+2"));
}

TEST_CASE("addresses validate and render") {
  const SegmentScheme t = deep_scheme();
  CHECK(valid_transfinite_address(t, at({"r"}, Ordinal::from_nat(2))));
  CHECK_FALSE(valid_transfinite_address(t, at({"r"}, Ordinal::from_nat(3))));
  CHECK(valid_transfinite_address(t, at({"r", "m"}, W)));  // owned top
  CHECK(valid_transfinite_address(t, at({"r", "m", "leaf"}, Ordinal::from_nat(1))));
  CHECK_FALSE(valid_transfinite_address(t, at({"r", "leaf"}, Ordinal{})));  // not a child
  CHECK_FALSE(valid_transfinite_address(t, at({"m"}, Ordinal{})));          // path must start at root
  CHECK(at({"r", "m"}, W).render() == "r/m@w");
  CHECK(at({"r"}, Ordinal{}).render() == "r@0");
}

TEST_CASE("tree order on addresses") {
  const SegmentScheme t = SegmentScheme(
      {{"r", Ordinal::from_nat(2), false, {"a", "b"}},
       {"a", Ordinal::from_nat(2), false, {}},
       {"b", Ordinal::from_nat(2), false, {}}},
      "r");
  const auto r0 = at({"r"}, Ordinal{});
  const auto r1 = at({"r"}, Ordinal::from_nat(1));
  const auto a0 = at({"r", "a"}, Ordinal{});
  const auto b0 = at({"r", "b"}, Ordinal{});
  CHECK(address_le(t, r0, r1) == std::optional<bool>{true});
  CHECK(address_le(t, r1, r0) == std::optional<bool>{false});
  CHECK(address_le(t, r1, a0) == std::optional<bool>{true});
  CHECK(address_le(t, a0, a0) == std::optional<bool>{true});
  CHECK_FALSE(address_le(t, a0, b0).has_value());  // incomparable siblings
}

TEST_CASE("strata accumulate ancestor element counts") {
  const SegmentScheme t = deep_scheme();
  CHECK(stratum(t, at({"r"}, Ordinal::from_nat(2))) == Ordinal::from_nat(2));
  CHECK(stratum(t, at({"r", "m"}, Ordinal{})) == Ordinal::from_nat(3));
  CHECK(stratum(t, at({"r", "m"}, W)) == ord_add(Ordinal::from_nat(3), W));  // = w
  CHECK(stratum(t, at({"r", "m", "leaf"}, Ordinal::from_nat(1))) ==
        Ordinal::parse("w+2"));

  const StrataProfile profile = strata_profile(t);
  CHECK(profile.lambda_star == Ordinal::parse("w+3"));
  REQUIRE(profile.spans.size() == 3);
  // spans tile [0, lambda*) in order
  Ordinal cursor;
  for (const SegmentSpan& s : profile.spans) {
    CHECK(s.base == cursor);
    cursor = ord_add(s.base, s.count);
  }
  CHECK(cursor == profile.lambda_star);
}

TEST_CASE("frozen strata profiles") {
  CHECK(strata_profile(omega_scheme(false)).lambda_star == W);
  CHECK(strata_profile(omega_scheme(true)).lambda_star == Ordinal::parse("w+1"));
  CHECK(strata_profile(two_omega()).lambda_star == Ordinal::parse("w*2"));

  // pre-completion attachment: child of a topless w segment starts at stratum w
  const SegmentScheme pre({{"r", W, false, {"c"}}, {"c", Ordinal::from_nat(3), false, {}}},
                          "r", true);
  CHECK(stratum(pre, at({"r", "c"}, Ordinal::from_nat(2))) == Ordinal::parse("w+2"));
  CHECK(strata_profile(pre).lambda_star == Ordinal::parse("w+3"));
}

TEST_CASE("least upper bounds of chains") {
  const SegmentScheme open = omega_scheme(false);
  const SegmentScheme closed = omega_scheme(true);
  ChainDescription cof;
  cof.cofinal = {{"r"}, W};
  CHECK_FALSE(lub_of_chain(open, cof).has_value());  // sup is missing
  const auto sup = lub_of_chain(closed, cof);
  REQUIRE(sup.has_value());
  CHECK(*sup == at({"r"}, W));

  // finite chains: lub is the maximum
  ChainDescription fin;
  fin.finite = {at({"r"}, Ordinal::from_nat(3)), at({"r"}, Ordinal::from_nat(7))};
  const auto mx = lub_of_chain(closed, fin);
  REQUIRE(mx.has_value());
  CHECK(*mx == at({"r"}, Ordinal::from_nat(7)));

  // incomparable elements do not form a chain
  const SegmentScheme forked({{"r", Ordinal::from_nat(1), false, {"a", "b"}},
                              {"a", Ordinal::from_nat(1), false, {}},
                              {"b", Ordinal::from_nat(1), false, {}}},
                             "r");
  ChainDescription bad;
  bad.finite = {at({"r", "a"}, Ordinal{}), at({"r", "b"}, Ordinal{})};
  CHECK_THROWS(lub_of_chain(forked, bad));
}

TEST_CASE("completion grants tops and reports the new addresses") {
  CHECK(is_complete(omega_scheme(true)));
  CHECK_FALSE(is_complete(omega_scheme(false)));

  const CompletionResult one = complete(omega_scheme(false));
  CHECK(is_complete(one.completed));
  REQUIRE(one.added.size() == 1);
  CHECK(one.added[0] == at({"r"}, W));

  // two topless branches -> two added tops
  const SegmentScheme par({{"r", Ordinal::from_nat(1), false, {"c1", "c2"}},
                           {"c1", W, false, {}},
                           {"c2", W, false, {}}},
                          "r");
  const CompletionResult two = complete(par);
  CHECK(is_complete(two.completed));
  CHECK(two.added.size() == 2);

  // already complete: identity, nothing added
  const CompletionResult none = complete(SegmentScheme({{"r", W, true, {}}}, "r"));
  CHECK(none.added.empty());

  CHECK_THROWS(complete(SegmentScheme(
      {{"r", W, false, {"c"}}, {"c", Ordinal::from_nat(3), false, {}}}, "r", true)));
}

TEST_CASE("strata are preserved by completion on old addresses") {
  const SegmentScheme before = two_omega();
  const CompletionResult after = complete(before);
  for (const auto& addr : {at({"r"}, Ordinal::from_nat(5)), at({"r"}, W),
                           at({"r", "c"}, Ordinal::from_nat(2))}) {
    REQUIRE(valid_transfinite_address(before, addr));
    CHECK(stratum(before, addr) == stratum(after.completed, addr));
  }
}

TEST_CASE("cocontinuous data evaluates and composes") {
  const Modulus m2 = make_modulus(2);
  const FgModule e({2});
  const SegmentScheme t = omega_scheme(true);
  // value Z/2 everywhere including the top, identity steps
  std::map<std::string, std::vector<Breakpoint>> data;
  data["r"] = {{Ordinal{}, e, MatZm(2, 1, 0)}, {W, e, MatZm::identity(2, 1)}};
  const CocontinuousRep x(t, m2, data);
  CHECK(x.value_at(at({"r"}, Ordinal::from_nat(40))) == e);
  CHECK(x.value_at(at({"r"}, W)) == e);
  CHECK(x.map_between(at({"r"}, Ordinal::from_nat(2)), at({"r"}, W)) ==
        MatZm::identity(2, 1));
  CHECK(check_cocontinuous(x).empty());

  // dropping to zero exactly at the limit violates cocontinuity
  std::map<std::string, std::vector<Breakpoint>> drop;
  drop["r"] = {{Ordinal{}, e, MatZm(2, 1, 0)}, {W, FgModule::zero(), MatZm(2, 0, 1)}};
  const CocontinuousRep bad(t, m2, drop);
  const auto violations = check_cocontinuous(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == at({"r"}, W));

  // dropping one past the limit is fine: value changes at a successor offset
  const SegmentScheme longer({{"r", Ordinal::parse("w+2"), false, {}}}, "r");
  std::map<std::string, std::vector<Breakpoint>> late;
  late["r"] = {{Ordinal{}, e, MatZm(2, 1, 0)},
               {W, e, MatZm::identity(2, 1)},
               {Ordinal::parse("w+1"), FgModule::zero(), MatZm(2, 0, 1)}};
  CHECK(check_cocontinuous(CocontinuousRep(longer, m2, late)).empty());

  // malformed data is rejected at construction
  std::map<std::string, std::vector<Breakpoint>> nofirst;
  nofirst["r"] = {{W, e, MatZm::identity(2, 1)}};
  CHECK_THROWS(CocontinuousRep(t, m2, nofirst));
  std::map<std::string, std::vector<Breakpoint>> badshape;
  badshape["r"] = {{Ordinal{}, e, MatZm(2, 1, 1)}};  // root step must come from rank 0
  CHECK_THROWS(CocontinuousRep(t, m2, badshape));
}

TEST_CASE("indecomposable injectives over the completed scheme") {
  const Modulus m2 = make_modulus(2);
  const FgModule e({2});
  const SegmentScheme t = complete(two_omega()).completed;

  const CocontinuousRep ei = build_indec_injective(t, at({"r"}, W), e, m2);
  CHECK(ei.value_at(at({"r"}, Ordinal::from_nat(9))) == e);
  CHECK(ei.value_at(at({"r"}, W)) == e);
  CHECK(ei.value_at(at({"r", "c"}, Ordinal{})).is_zero());  // above v: zero
  CHECK(check_cocontinuous(ei).empty());

  const CocontinuousRep deep = build_indec_injective(t, at({"r", "c"}, W), e, m2);
  CHECK(deep.value_at(at({"r"}, Ordinal::from_nat(3))) == e);
  CHECK(deep.value_at(at({"r", "c"}, W)) == e);
  CHECK(check_cocontinuous(deep).empty());

  CHECK_THROWS(build_indec_injective(omega_scheme(false), at({"r"}, Ordinal{}), e, m2));
  CHECK_THROWS(build_indec_injective(t, at({"r"}, Ordinal{}), FgModule({2, 2}), m2));
}

TEST_CASE("truncations restrict to the finite levels") {
  const SegmentScheme t = complete(two_omega()).completed;
  const Truncation tr = truncate_tree(t, 5);
  CHECK(tr.tree.vertices().size() == 5);
  CHECK(validate_tree(tr.tree, "r@0").ok);
  for (const auto& [vid, addr] : tr.vertex_address) {
    CHECK(stratum(t, addr).is_finite());
    CHECK(stratum(t, addr).as_nat() < 5);
  }

  // truncating the injective at r@w through depth 6 gives the costalk shape:
  // value Z/2 on every finite level of the r segment
  const Modulus m2 = make_modulus(2);
  const FgModule e({2});
  const CocontinuousRep ei = build_indec_injective(t, at({"r"}, W), e, m2);
  const Representation fin = truncate_rep(ei, 6);
  for (const std::string& v : fin.quiver().vertices()) CHECK(fin.module_at(v) == e);
  for (const Arrow& a : fin.quiver().arrows())
    CHECK(fin.map_at(a.id) == MatZm::identity(2, 1));
  CHECK(is_injective_rep(fin));

  // the deeper injective vanishes on the truncation of the sibling branch
  const SegmentScheme forked = complete(SegmentScheme({{"r", Ordinal::from_nat(2), false, {"a", "b"}},
                                                       {"a", W, false, {}},
                                                       {"b", W, false, {}}},
                                                      "r"))
                                   .completed;
  const CocontinuousRep ea =
      build_indec_injective(forked, at({"r", "a"}, Ordinal::from_nat(1)), e, m2);
  const Representation finf = truncate_rep(ea, 4);
  CHECK(finf.module_at("r/b@0").is_zero());
  CHECK(finf.module_at("r/a@1") == e);
}

TEST_CASE("classification stream order and content") {
  const Modulus m2 = make_modulus(2);
  // A-infinity: completion adds r@w; labels run through strata 0,1,2,...
  const auto labels = classify_take(omega_scheme(false), m2, 4);
  REQUIRE(labels.size() == 4);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CHECK(labels[i].stratum == Ordinal::from_nat(i));
    CHECK(labels[i].address == at({"r"}, Ordinal::from_nat(i)));
    CHECK(labels[i].module == FgModule({2}));
  }

  // two injective modules per address over m = 12
  const auto twelve = classify_take(omega_scheme(false), make_modulus(12), 4);
  REQUIRE(twelve.size() == 4);
  CHECK(twelve[0].address == at({"r"}, Ordinal{}));
  CHECK(twelve[1].address == at({"r"}, Ordinal{}));
  CHECK(twelve[0].module.invariant_factors() == std::vector<std::int64_t>{3});
  CHECK(twelve[1].module.invariant_factors() == std::vector<std::int64_t>{4});
  CHECK(twelve[2].stratum == Ordinal::from_nat(1));

  // sibling branches at one stratum come in path order
  const SegmentScheme forked({{"r", Ordinal::from_nat(1), false, {"a", "b"}},
                              {"a", Ordinal::from_nat(1), false, {}},
                              {"b", Ordinal::from_nat(1), false, {}}},
                             "r");
  const auto fk = classify_take(forked, m2, 3);
  REQUIRE(fk.size() == 3);
  CHECK(fk[0].address == at({"r"}, Ordinal{}));
  CHECK(fk[1].address == at({"r", "a"}, Ordinal{}));
  CHECK(fk[2].address == at({"r", "b"}, Ordinal{}));

  // the stream eventually reaches the limit label of the completion
  ClassificationStream stream(omega_scheme(false), m2);
  std::optional<ClassificationLabel> last;
  for (int k = 0; k < 30; ++k) last = stream.next();
  REQUIRE(last.has_value());
  CHECK(last->stratum == Ordinal::from_nat(29));
  CHECK(stream.completed().node("r").has_top);
}

TEST_CASE("classification streams pair injectives with strata on deep schemes") {
  // iterating next() alone can never cross a limit stratum; skip_to can
  const Modulus m2 = make_modulus(2);
  const SegmentScheme t = complete(two_omega()).completed;
  ClassificationStream stream(t, m2);
  const auto first = stream.next();
  REQUIRE(first.has_value());
  CHECK(first->stratum == Ordinal{});
  CHECK(first->address == at({"r"}, Ordinal{}));

  stream.skip_to(Ordinal::from_nat(5));  // forward inside the same span
  const auto fifth = stream.next();
  REQUIRE(fifth.has_value());
  CHECK(fifth->stratum == Ordinal::from_nat(5));
  CHECK(fifth->address == at({"r"}, Ordinal::from_nat(5)));

  stream.skip_to(W);  // across the limit
  const auto limit = stream.next();
  REQUIRE(limit.has_value());
  CHECK(limit->stratum == W);
  CHECK(limit->address == at({"r"}, W));
  const auto after = stream.next();  // plain iteration resumes past the jump
  REQUIRE(after.has_value());
  CHECK(after->stratum == ord_add(W, Ordinal::from_nat(1)));
  CHECK(after->address == at({"r", "c"}, Ordinal{}));

  stream.skip_to(Ordinal::parse("w*2"));  // the completed child's own top
  const auto top = stream.next();
  REQUIRE(top.has_value());
  CHECK(top->stratum == Ordinal::parse("w*2"));
  CHECK(top->address == at({"r", "c"}, W));
  stream.skip_to(Ordinal{});  // skipping backwards never rewinds
  CHECK_FALSE(stream.next().has_value());
}

TEST_CASE("segment path spaces and the noetherian verdict") {
  const SegmentScheme t = deep_scheme();
  const RationalTreeScheme ps = segment_path_space(t, "r");
  CHECK(is_barren(ps).barren);

  const NoetherianReport rep = is_noetherian(t);
  CHECK(rep.noetherian);
  CHECK(rep.per_class.size() == t.nodes().size());
  for (const auto& [cls, cert] : rep.per_class) CHECK(cert.barren);

  // rational schemes: barren ones are noetherian, growing ones are not
  const RationalTreeScheme chain({"s"}, {{"n", "s", "s"}}, "s");
  CHECK(is_noetherian(chain).noetherian);
  const RationalTreeScheme binary({"s"}, {{"l", "s", "s"}, {"r", "s", "s"}}, "s");
  CHECK_FALSE(is_noetherian(binary).noetherian);
}
