#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "treq/dot.hpp"
#include "treq/json_io.hpp"

namespace {

using namespace treq;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T expect(ParsedInput input, const char* what) {
  T* p = std::get_if<T>(&input);
  if (!p) throw std::invalid_argument(std::string("this command needs ") + what);
  return std::move(*p);
}

struct Output {
  std::string format;  // json | text | dot
  std::uint64_t seed = 0;

  // Reports carry the command and seed up front so any run is reproducible
  // from its own output.
  int emit(const std::string& command, int status, Json body, const std::string& text) const {
    if (format == "dot")
      throw std::invalid_argument("dot output is not available for command '" + command + "'");
    if (format == "text") {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
      Json j{{"command", command}, {"seed", seed}};
      for (auto& [k, v] : body.items()) j[k] = std::move(v);
      std::cout << canon_dump(j);
    }
    return status;
  }

  int emit_graph(const FiniteQuiver& q, const DotOptions& opts) const {
    std::cout << emit_dot(q, opts);
    return 0;
  }
};

std::string join_ids(const std::vector<std::string>& ids, char sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += ids[i];
  }
  return out;
}

int cmd_validate(const std::string& path, const Output& out) {
  const ParsedInput input = parse_input(slurp(path));
  if (const auto* q = std::get_if<FiniteQuiver>(&input)) {
    if (!q->root())
      return out.emit("validate", 0,
                      Json{{"ok", true}, {"kind", "finite"}, {"note", "no root declared"}},
                      "ok: finite quiver without a declared root\n");
    const TreeCheck check = validate_tree(*q, *q->root());
    Json body = tree_check_to_json(check);
    body["kind"] = "finite";
    return out.emit("validate", check.ok ? 0 : 1, std::move(body), check.describe());
  }
  if (const auto* s = std::get_if<RationalTreeScheme>(&input))
    return out.emit("validate", 0,
                    Json{{"ok", true},
                         {"kind", "rational"},
                         {"states", static_cast<int>(s->states().size())}},
                    "ok: rational scheme with " + std::to_string(s->states().size()) +
                        " states\n");
  if (const auto* t = std::get_if<SegmentScheme>(&input))
    return out.emit("validate", 0,
                    Json{{"ok", true}, {"kind", "segments"}, {"complete", is_complete(*t)}},
                    std::string("ok: segment scheme, ") +
                        (is_complete(*t) ? "complete" : "not complete") + "\n");
  if (const auto* x = std::get_if<Representation>(&input))
    return out.emit("validate", 0,
                    Json{{"ok", true},
                         {"kind", "representation"},
                         {"modulus", x->modulus().m},
                         {"vertices", static_cast<int>(x->quiver().vertices().size())}},
                    "ok: representation over Z/" + std::to_string(x->modulus().m) + "\n");
  const auto& c = std::get<CocontinuousRep>(input);
  return out.emit("validate", 0,
                  Json{{"ok", true}, {"kind", "cocontinuous"}, {"modulus", c.modulus().m}},
                  "ok: cocontinuous representation data\n");
}

int cmd_barren(const std::string& path, const Output& out) {
  const auto& s = expect<RationalTreeScheme>(parse_input(slurp(path)), "a rational scheme");
  const BarrenCertificate cert = is_barren(s);
  std::string text = cert.barren
                         ? "barren, stable level count " + cert.stable_value.str() + "\n" +
                               cert.describe() + "\n"
                         : "not barren\n" + cert.describe() + "\n";
  return out.emit("barren", cert.barren ? 0 : 1, barren_to_json(cert), text);
}

int cmd_antichain(const std::string& path, int members, const Output& out) {
  const auto& s = expect<RationalTreeScheme>(parse_input(slurp(path)), "a rational scheme");
  const auto comb = infinite_antichain(s);
  if (!comb) {
    const BarrenCertificate cert = is_barren(s);
    return out.emit("antichain", 1,
                    Json{{"exists", false}, {"reason", cert.describe()}},
                    "no infinite antichain: " + cert.describe() + "\n");
  }
  if (out.format == "dot") {
    const int depth = static_cast<int>(comb->member(members).transitions.size());
    const FiniteQuiver tree = unfold(s, depth);
    DotOptions opts;
    opts.graph_name = "antichain";
    opts.rank_of = depth_ranks(tree);
    for (int j = 1; j <= members; ++j) opts.highlight.insert(comb->member(j).render());
    return out.emit_graph(tree, opts);
  }
  Json body = antichain_to_json(*comb, members);
  body["exists"] = true;
  std::string text = comb->describe() + "\n";
  for (int j = 1; j <= members; ++j)
    text += "w_" + std::to_string(j) + " = " + comb->member(j).render() + "\n";
  return out.emit("antichain", 0, std::move(body), text);
}

int cmd_stratify(const std::string& path, const Output& out) {
  const auto& t = expect<SegmentScheme>(parse_input(slurp(path)), "a segment scheme");
  const StrataProfile profile = strata_profile(t);
  std::string text = "lambda* = " + profile.lambda_star.render() + "\n";
  for (const SegmentSpan& s : profile.spans)
    text += join_ids(s.node_path, '/') + ": strata [" + s.base.render() + ", " +
            s.base.render() + "+" + s.count.render() + ")\n";
  return out.emit("stratify", 0, strata_profile_to_json(profile), text);
}

int cmd_complete(const std::string& path, const Output& out) {
  const auto& t = expect<SegmentScheme>(parse_input(slurp(path)), "a segment scheme");
  const CompletionResult result = complete(t);
  std::string text = result.added.empty() ? "already complete\n" : "";
  for (const TransfiniteAddress& a : result.added) text += "added " + a.render() + "\n";
  return out.emit("complete", 0, completion_to_json(result), text);
}

int cmd_classify(const std::string& path, int take, std::int64_t m, const Output& out) {
  const auto& t = expect<SegmentScheme>(parse_input(slurp(path)), "a segment scheme");
  const auto labels = classify_take(t, make_modulus(m), take);
  std::string text;
  for (const ClassificationLabel& l : labels) {
    text += "stratum " + l.stratum.render() + "  " + l.address.render() + "  Z/" +
            std::to_string(m) + "-module [";
    const auto& f = l.module.invariant_factors();
    for (std::size_t i = 0; i < f.size(); ++i)
      text += (i ? "," : "") + std::to_string(f[i]);
    text += "]\n";
  }
  return out.emit("classify", 0,
                  Json{{"modulus", m}, {"take", take}, {"labels", labels_to_json(labels)}},
                  text);
}

int cmd_check_injective(const std::string& path, const Output& out) {
  const auto& x = expect<Representation>(parse_input(slurp(path)), "a representation");
  const SourceConditionsReport report = source_conditions_check(x);
  std::string text;
  for (const VertexConditions& v : report.per_vertex)
    text += v.vertex + ": module " + (v.module_injective ? "injective" : "NOT injective") +
            ", outgoing map " + (v.split_onto_targets ? "split" : "NOT split") + "\n";
  text += report.overall ? "injective\n" : "not injective\n";
  return out.emit("check-injective", report.overall ? 0 : 1,
                  source_conditions_to_json(report), text);
}

int cmd_envelope(const std::string& path, const Output& out) {
  const auto& x = expect<Representation>(parse_input(slurp(path)), "a representation");
  const auto soc = socle(x);
  const auto [hull, embedding] = injective_envelope(x);
  std::vector<std::pair<std::string, int>> dims;
  for (const auto& [v, basis] : soc) dims.emplace_back(v, basis.cols());
  std::string text = "socle dimensions:";
  for (const auto& [v, d] : dims) text += " " + v + ":" + std::to_string(d);
  text += "\n";
  (void)embedding;
  return out.emit("envelope", 0,
                  Json{{"socle_dimensions", multiplicities_to_json(dims)},
                       {"envelope", representation_to_json(hull)}},
                  text);
}

int cmd_decompose(const std::string& path, const Output& out) {
  const auto& x = expect<Representation>(parse_input(slurp(path)), "a representation");
  try {
    const auto parts = decompose_injective(x);
    std::string text;
    for (const auto& [v, count] : parts) text += v + ": " + std::to_string(count) + "\n";
    if (parts.empty()) text = "zero representation\n";
    return out.emit("decompose", 0, multiplicities_to_json(parts), text);
  } catch (const NotInjective& e) {
    return out.emit("decompose", 1,
                    Json{{"error", "not injective"},
                         {"conditions", source_conditions_to_json(e.report)}},
                    std::string("not injective: ") + e.what() + "\n");
  }
}

int cmd_cocontinuous_check(const std::string& path, const Output& out) {
  const auto& x = expect<CocontinuousRep>(parse_input(slurp(path)),
                                          "cocontinuous representation data");
  const auto violations = check_cocontinuous(x);
  std::string text = violations.empty() ? "cocontinuous\n" : "";
  for (const TransfiniteAddress& a : violations)
    text += "violation at " + a.render() + ": value does not match the limit below it\n";
  return out.emit("cocontinuous-check", violations.empty() ? 0 : 1,
                  violations_to_json(violations), text);
}

int cmd_noetherian(const std::string& path, const Output& out) {
  const ParsedInput input = parse_input(slurp(path));
  NoetherianReport report;
  if (const auto* t = std::get_if<SegmentScheme>(&input))
    report = is_noetherian(*t);
  else
    report = is_noetherian(expect<RationalTreeScheme>(input, "a segment or rational scheme"));
  std::string text = report.noetherian ? "noetherian: every path space is barren\n"
                                       : "not noetherian\n";
  for (const auto& [cls, cert] : report.per_class)
    text += cls + ": " + cert.describe() + "\n";
  return out.emit("noetherian", report.noetherian ? 0 : 1, noetherian_to_json(report), text);
}

int cmd_counterexample(const std::string& path, int n, int depth, std::int64_t m,
                       const Output& out) {
  const auto& s = expect<RationalTreeScheme>(parse_input(slurp(path)), "a rational scheme");
  if (depth == 0) {
    const auto comb = infinite_antichain(s);
    if (!comb)
      throw std::invalid_argument(
          "scheme is barren; the counterexample construction needs growth");
    for (int j = 1; j <= n; ++j)
      depth = std::max(depth, static_cast<int>(comb->member(j).transitions.size()) + 1);
  }
  const WitnessFamily family = build_witness_family(s, make_modulus(m), n, depth);
  if (out.format == "dot") {
    DotOptions opts;
    opts.graph_name = "witness";
    opts.rank_of = depth_ranks(family.tree);
    for (const TreeVertexAddress& w : family.antichain) opts.highlight.insert(w.render());
    return out.emit_graph(family.tree, opts);
  }
  const ForcedComponentsReport forced = forced_components(family);
  const SourceConditionsReport conditions = source_conditions_check(family.envelope_sum);
  Json antichain = Json::array();
  for (const TreeVertexAddress& w : family.antichain) antichain.push_back(w.render());
  std::string text = "antichain:";
  for (const TreeVertexAddress& w : family.antichain) text += " " + w.render();
  text += "\nconditions " + std::string(conditions.overall ? "pass" : "FAIL") + "\n";
  for (const auto& e : forced.per_index) {
    text += "i=" + std::to_string(e.index) + ": forced {";
    for (std::size_t k = 0; k < e.forced.size(); ++k)
      text += (k ? "," : "") + std::to_string(e.forced[k]);
    text += "}\n";
  }
  return out.emit("counterexample", 0,
                  Json{{"n", n},
                       {"depth", depth},
                       {"modulus", m},
                       {"antichain", std::move(antichain)},
                       {"conditions", source_conditions_to_json(conditions)},
                       {"forced", forced_to_json(forced)}},
                  text);
}

int cmd_emit_dot(const std::string& path, int depth, const Output& out) {
  const ParsedInput input = parse_input(slurp(path));
  FiniteQuiver graph = std::visit(
      [&](const auto& value) -> FiniteQuiver {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, FiniteQuiver>) return value;
        if constexpr (std::is_same_v<T, RationalTreeScheme>) return unfold(value, depth);
        if constexpr (std::is_same_v<T, SegmentScheme>)
          return truncate_tree(value, depth).tree;
        if constexpr (std::is_same_v<T, Representation>) return value.quiver();
        if constexpr (std::is_same_v<T, CocontinuousRep>)
          return truncate_tree(value.scheme(), depth).tree;
      },
      input);
  DotOptions opts;
  opts.graph_name = "tree";
  opts.rank_of = depth_ranks(graph);
  return out.emit_graph(graph, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for representations of tree quivers over Z/m"};
  app.require_subcommand(1);

  Output out;
  out.format = "json";
  out.seed = 1729;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--seed", out.seed, "seed recorded in reports");

  std::string input;
  int members = 5, take = 8, n = 2, depth = 0, dot_depth = 4;
  std::int64_t modulus = 2;

  auto add_input = [&](CLI::App* sc) {
    sc->add_option("input", input, "input file")->required();
    sc->fallthrough();
  };
  add_input(app.add_subcommand("validate", "parse and structurally check an input"));
  add_input(app.add_subcommand("barren", "decide whether level counts stabilize"));
  auto* sc_antichain =
      app.add_subcommand("antichain", "exhibit the infinite antichain comb");
  add_input(sc_antichain);
  sc_antichain->add_option("--members", members, "members to list");
  add_input(app.add_subcommand("stratify", "strata spans and lambda*"));
  add_input(app.add_subcommand("complete", "grant every limit segment its top"));
  auto* sc_classify = app.add_subcommand("classify", "stream classification labels");
  add_input(sc_classify);
  sc_classify->add_option("--take", take, "labels to emit");
  sc_classify->add_option("--modulus", modulus, "coefficient modulus");
  add_input(app.add_subcommand("check-injective", "local source conditions"));
  add_input(app.add_subcommand("envelope", "injective envelope and socle dimensions"));
  add_input(app.add_subcommand("decompose", "multiplicities of the vertex injectives"));
  add_input(app.add_subcommand("cocontinuous-check", "limit-position value check"));
  add_input(app.add_subcommand("noetherian", "all path spaces barren?"));
  auto* sc_counter = app.add_subcommand("counterexample", "escalating witness family");
  add_input(sc_counter);
  sc_counter->add_option("--N", n, "antichain members")->check(CLI::PositiveNumber);
  sc_counter->add_option("--depth", depth, "truncation depth (0 = smallest usable)");
  sc_counter->add_option("--modulus", modulus, "prime coefficient modulus");
  auto* sc_dot = app.add_subcommand("emit-dot", "render as DOT");
  add_input(sc_dot);
  sc_dot->add_option("--depth", dot_depth, "unfolding/truncation depth");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("validate")) return cmd_validate(input, out);
    if (app.got_subcommand("barren")) return cmd_barren(input, out);
    if (app.got_subcommand("antichain")) return cmd_antichain(input, members, out);
    if (app.got_subcommand("stratify")) return cmd_stratify(input, out);
    if (app.got_subcommand("complete")) return cmd_complete(input, out);
    if (app.got_subcommand("classify")) return cmd_classify(input, take, modulus, out);
    if (app.got_subcommand("check-injective")) return cmd_check_injective(input, out);
    if (app.got_subcommand("envelope")) return cmd_envelope(input, out);
    if (app.got_subcommand("decompose")) return cmd_decompose(input, out);
    if (app.got_subcommand("cocontinuous-check")) return cmd_cocontinuous_check(input, out);
    if (app.got_subcommand("noetherian")) return cmd_noetherian(input, out);
    if (app.got_subcommand("counterexample"))
      return cmd_counterexample(input, n, depth, modulus, out);
    if (app.got_subcommand("emit-dot")) return cmd_emit_dot(input, dot_depth, out);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const JsonParseError& e) {
    std::cerr << "input error at " << (e.path.empty() ? "(document)" : e.path) << ": "
              << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
