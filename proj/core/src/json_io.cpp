#include "treq/json_io.hpp"

#include <utility>

namespace treq {

namespace {

std::string sub(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw JsonParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonParseError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_uint(const Json& j, const std::string& path) {
  const std::int64_t v = as_int(j, path);
  if (v < 0) throw JsonParseError(path, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::string as_str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonParseError(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw JsonParseError(path, "expected a boolean");
  return j.get<bool>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonParseError(path, "expected an array");
  return j;
}

template <typename F>
auto guarded(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw JsonParseError(path, e.what());
  }
}

std::string join_path(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '/';
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string canon_dump(const Json& j) { return j.dump(2) + "\n"; }

Json ordinal_to_json(const Ordinal& o) {
  Json terms = Json::array();
  for (const auto& t : o.terms()) terms.push_back(Json::array({t.exponent, t.coefficient}));
  return Json{{"terms", std::move(terms)}};
}

Ordinal ordinal_from_json(const Json& j, const std::string& path) {
  const Json& terms = as_array(need(j, "terms", path), sub(path, "terms"));
  std::vector<Ordinal::Term> parsed;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = idx(sub(path, "terms"), i);
    const Json& t = as_array(terms[i], tp);
    if (t.size() != 2) throw JsonParseError(tp, "expected [exponent, coefficient]");
    const std::uint64_t e = as_uint(t[0], tp + "[0]");
    const std::uint64_t c = as_uint(t[1], tp + "[1]");
    if (e > 0xffffffffull) throw JsonParseError(tp + "[0]", "exponent out of range");
    parsed.push_back({static_cast<std::uint32_t>(e), c});
  }
  return guarded(path, [&] { return Ordinal(std::move(parsed)); });
}

Json module_to_json(const FgModule& m) {
  return Json{{"invariant_factors", m.invariant_factors()}};
}

FgModule module_from_json(const Json& j, const std::string& path) {
  const Json& factors = as_array(need(j, "invariant_factors", path),
                                 sub(path, "invariant_factors"));
  std::vector<std::int64_t> f;
  for (std::size_t i = 0; i < factors.size(); ++i)
    f.push_back(as_int(factors[i], idx(sub(path, "invariant_factors"), i)));
  return guarded(path, [&] { return FgModule(std::move(f)); });
}

Json matrix_to_json(const MatZm& a) {
  Json entries = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

MatZm matrix_from_json(const Json& j, std::int64_t m, const std::string& path) {
  const std::int64_t rows = as_int(need(j, "rows", path), sub(path, "rows"));
  const std::int64_t cols = as_int(need(j, "cols", path), sub(path, "cols"));
  if (rows < 0 || cols < 0) throw JsonParseError(path, "negative matrix shape");
  const Json& entries = as_array(need(j, "entries", path), sub(path, "entries"));
  if (static_cast<std::int64_t>(entries.size()) != rows)
    throw JsonParseError(sub(path, "entries"), "expected " + std::to_string(rows) + " rows");
  MatZm a(m, static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string rp = idx(sub(path, "entries"), i);
    const Json& row = as_array(entries[i], rp);
    if (static_cast<std::int64_t>(row.size()) != cols)
      throw JsonParseError(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < row.size(); ++k)
      a.set(static_cast<int>(i), static_cast<int>(k),
            mod_reduce(as_int(row[k], idx(rp, k)), m));
  }
  return a;
}

namespace {

std::vector<Arrow> arrows_from_json(const Json& j, const std::string& path) {
  const Json& list = as_array(j, path);
  std::vector<Arrow> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ap = idx(path, i);
    out.push_back({as_str(need(list[i], "id", ap), sub(ap, "id")),
                   as_str(need(list[i], "src", ap), sub(ap, "src")),
                   as_str(need(list[i], "dst", ap), sub(ap, "dst"))});
  }
  return out;
}

Json arrows_to_json(const std::vector<Arrow>& arrows) {
  Json out = Json::array();
  for (const Arrow& a : arrows)
    out.push_back(Json{{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
  return out;
}

std::vector<std::string> strings_from_json(const Json& j, const std::string& path) {
  const Json& list = as_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(as_str(list[i], idx(path, i)));
  return out;
}

}  // namespace

Json finite_quiver_to_json(const FiniteQuiver& q) {
  Json j{{"kind", "finite"}, {"vertices", q.vertices()}, {"arrows", arrows_to_json(q.arrows())}};
  if (q.root())
    j["root"] = *q.root();
  else
    j["root"] = nullptr;
  return j;
}

FiniteQuiver finite_quiver_from_json(const Json& j, const std::string& path) {
  auto vertices = strings_from_json(need(j, "vertices", path), sub(path, "vertices"));
  auto arrows = arrows_from_json(need(j, "arrows", path), sub(path, "arrows"));
  std::optional<std::string> root;
  if (auto it = j.find("root"); it != j.end() && !it->is_null())
    root = as_str(*it, sub(path, "root"));
  return guarded(path, [&] {
    return FiniteQuiver(std::move(vertices), std::move(arrows), std::move(root));
  });
}

Json rational_scheme_to_json(const RationalTreeScheme& s) {
  Json transitions = Json::array();
  for (const Transition& t : s.transitions())
    transitions.push_back(Json{{"id", t.id}, {"src", t.src}, {"dst", t.dst}});
  return Json{{"kind", "rational"},
              {"states", s.states()},
              {"transitions", std::move(transitions)},
              {"root", s.root()}};
}

RationalTreeScheme rational_scheme_from_json(const Json& j, const std::string& path) {
  auto states = strings_from_json(need(j, "states", path), sub(path, "states"));
  const Json& list = as_array(need(j, "transitions", path), sub(path, "transitions"));
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string tp = idx(sub(path, "transitions"), i);
    transitions.push_back({as_str(need(list[i], "id", tp), sub(tp, "id")),
                           as_str(need(list[i], "src", tp), sub(tp, "src")),
                           as_str(need(list[i], "dst", tp), sub(tp, "dst"))});
  }
  std::string root = as_str(need(j, "root", path), sub(path, "root"));
  return guarded(path, [&] {
    return RationalTreeScheme(std::move(states), std::move(transitions), std::move(root));
  });
}

Json segment_scheme_to_json(const SegmentScheme& t) {
  Json nodes = Json::array();
  for (const SegmentNode& n : t.nodes())
    nodes.push_back(Json{{"id", n.id},
                         {"length", ordinal_to_json(n.length)},
                         {"has_top", n.has_top},
                         {"children", n.children}});
  Json j{{"kind", "segments"}, {"nodes", std::move(nodes)}, {"root", t.root()}};
  if (t.pre_completion()) j["pre_completion"] = true;
  return j;
}

SegmentScheme segment_scheme_from_json(const Json& j, const std::string& path) {
  const Json& list = as_array(need(j, "nodes", path), sub(path, "nodes"));
  std::vector<SegmentNode> nodes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string np = idx(sub(path, "nodes"), i);
    SegmentNode n;
    n.id = as_str(need(list[i], "id", np), sub(np, "id"));
    n.length = ordinal_from_json(need(list[i], "length", np), sub(np, "length"));
    n.has_top = as_bool(need(list[i], "has_top", np), sub(np, "has_top"));
    n.children = strings_from_json(need(list[i], "children", np), sub(np, "children"));
    nodes.push_back(std::move(n));
  }
  std::string root = as_str(need(j, "root", path), sub(path, "root"));
  bool pre = false;
  if (auto it = j.find("pre_completion"); it != j.end())
    pre = as_bool(*it, sub(path, "pre_completion"));
  return guarded(path,
                 [&] { return SegmentScheme(std::move(nodes), std::move(root), pre); });
}

Json representation_to_json(const Representation& x) {
  Json vertices = Json::object();
  for (const std::string& v : x.quiver().vertices())
    vertices[v] = module_to_json(x.module_at(v));
  Json arrows = Json::object();
  for (const Arrow& a : x.quiver().arrows())
    arrows[a.id] = Json{{"matrix", matrix_to_json(x.map_at(a.id))}};
  return Json{{"quiver", finite_quiver_to_json(x.quiver())},
              {"modulus", x.modulus().m},
              {"vertices", std::move(vertices)},
              {"arrows", std::move(arrows)}};
}

Representation representation_from_json(const Json& j, const std::string& path) {
  FiniteQuiver q = finite_quiver_from_json(need(j, "quiver", path), sub(path, "quiver"));
  const std::int64_t m = as_int(need(j, "modulus", path), sub(path, "modulus"));
  Modulus mod = guarded(sub(path, "modulus"), [&] { return make_modulus(m); });
  std::map<std::string, FgModule> modules;
  if (auto it = j.find("vertices"); it != j.end()) {
    if (!it->is_object()) throw JsonParseError(sub(path, "vertices"), "expected an object");
    for (const auto& [v, spec] : it->items())
      modules[v] = module_from_json(spec, sub(path, "vertices") + "." + v);
  }
  std::map<std::string, MatZm> maps;
  if (auto it = j.find("arrows"); it != j.end()) {
    if (!it->is_object()) throw JsonParseError(sub(path, "arrows"), "expected an object");
    for (const auto& [a, spec] : it->items()) {
      const std::string ap = sub(path, "arrows") + "." + a;
      maps[a] = matrix_from_json(need(spec, "matrix", ap), m, sub(ap, "matrix"));
    }
  }
  return guarded(path, [&] {
    return Representation(std::move(q), std::move(mod), std::move(modules), std::move(maps));
  });
}

Json cocontinuous_to_json(const CocontinuousRep& x) {
  Json segments = Json::object();
  for (const SegmentNode& n : x.scheme().nodes()) {
    Json list = Json::array();
    for (const Breakpoint& bp : x.breakpoints(n.id))
      list.push_back(Json{{"offset", ordinal_to_json(bp.offset)},
                          {"module", module_to_json(bp.module)},
                          {"step_in", matrix_to_json(bp.step_in)}});
    segments[n.id] = std::move(list);
  }
  return Json{{"kind", "cocontinuous"},
              {"scheme", segment_scheme_to_json(x.scheme())},
              {"modulus", x.modulus().m},
              {"segments", std::move(segments)}};
}

CocontinuousRep cocontinuous_from_json(const Json& j, const std::string& path) {
  SegmentScheme scheme =
      segment_scheme_from_json(need(j, "scheme", path), sub(path, "scheme"));
  const std::int64_t m = as_int(need(j, "modulus", path), sub(path, "modulus"));
  Modulus mod = guarded(sub(path, "modulus"), [&] { return make_modulus(m); });
  const Json& segments = need(j, "segments", path);
  if (!segments.is_object()) throw JsonParseError(sub(path, "segments"), "expected an object");
  std::map<std::string, std::vector<Breakpoint>> data;
  for (const auto& [node, list] : segments.items()) {
    const std::string np = sub(path, "segments") + "." + node;
    const Json& arr = as_array(list, np);
    std::vector<Breakpoint> bps;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string bp = idx(np, i);
      bps.push_back({ordinal_from_json(need(arr[i], "offset", bp), sub(bp, "offset")),
                     module_from_json(need(arr[i], "module", bp), sub(bp, "module")),
                     matrix_from_json(need(arr[i], "step_in", bp), m, sub(bp, "step_in"))});
    }
    data[node] = std::move(bps);
  }
  return guarded(path, [&] {
    return CocontinuousRep(std::move(scheme), std::move(mod), std::move(data));
  });
}

ParsedInput parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonParseError("", e.what());
  }
  if (!j.is_object()) throw JsonParseError("", "expected a top-level object");
  if (auto it = j.find("kind"); it != j.end()) {
    const std::string kind = as_str(*it, "kind");
    if (kind == "finite") return finite_quiver_from_json(j, "");
    if (kind == "rational") return rational_scheme_from_json(j, "");
    if (kind == "segments") return segment_scheme_from_json(j, "");
    if (kind == "cocontinuous") return cocontinuous_from_json(j, "");
    throw JsonParseError("kind", "unknown kind '" + kind + "'");
  }
  if (j.contains("quiver")) return representation_from_json(j, "");
  throw JsonParseError("", "cannot tell what this document is: no 'kind' and no 'quiver'");
}

Json tree_check_to_json(const TreeCheck& c) {
  Json j{{"ok", c.ok}, {"unreachable", c.unreachable}};
  if (c.cycle) j["cycle"] = *c.cycle;
  if (c.double_path)
    j["double_path"] = Json{{"first", c.double_path->first}, {"second", c.double_path->second}};
  j["summary"] = c.describe();
  return j;
}

Json barren_to_json(const BarrenCertificate& c) {
  Json j{{"barren", c.barren}};
  if (c.barren) {
    j["transient"] = c.transient;
    j["stable_value"] = c.stable_value.str();
  } else {
    if (c.witness_state) j["witness_state"] = *c.witness_state;
    if (!c.witness_arrows.empty()) j["witness_arrows"] = c.witness_arrows;
    if (c.two_cycle_walk)
      j["two_cycle_walk"] = Json::array({c.two_cycle_walk->first, c.two_cycle_walk->second});
  }
  j["window_start"] = c.window_start;
  Json window = Json::array();
  for (const BigInt& v : c.window) window.push_back(v.str());
  j["window"] = std::move(window);
  j["summary"] = c.describe();
  return j;
}

Json antichain_to_json(const AntichainComb& comb, int members) {
  Json out{{"prefix", comb.prefix.render()},
           {"cycle", comb.cycle},
           {"branch", comb.branch},
           {"summary", comb.describe()}};
  Json list = Json::array();
  for (int n = 1; n <= members; ++n) list.push_back(comb.member(n).render());
  out["members"] = std::move(list);
  return out;
}

Json strata_profile_to_json(const StrataProfile& p) {
  Json spans = Json::array();
  for (const SegmentSpan& s : p.spans)
    spans.push_back(Json{{"path", join_path(s.node_path)},
                         {"base", s.base.render()},
                         {"count", s.count.render()}});
  return Json{{"lambda_star", p.lambda_star.render()}, {"spans", std::move(spans)}};
}

Json completion_to_json(const CompletionResult& r) {
  Json added = Json::array();
  for (const TransfiniteAddress& a : r.added) added.push_back(a.render());
  return Json{{"added", std::move(added)}, {"scheme", segment_scheme_to_json(r.completed)}};
}

Json labels_to_json(const std::vector<ClassificationLabel>& labels) {
  Json out = Json::array();
  for (const ClassificationLabel& l : labels)
    out.push_back(Json{{"stratum", l.stratum.render()},
                       {"address", l.address.render()},
                       {"module", l.module.invariant_factors()}});
  return out;
}

Json source_conditions_to_json(const SourceConditionsReport& r) {
  Json per_vertex = Json::array();
  for (const VertexConditions& v : r.per_vertex)
    per_vertex.push_back(Json{{"vertex", v.vertex},
                              {"module_injective", v.module_injective},
                              {"split_onto_targets", v.split_onto_targets}});
  return Json{{"overall", r.overall}, {"per_vertex", std::move(per_vertex)}};
}

Json multiplicities_to_json(const std::vector<std::pair<std::string, int>>& parts) {
  Json out = Json::object();
  for (const auto& [vertex, count] : parts) out[vertex] = count;
  return out;
}

Json violations_to_json(const std::vector<TransfiniteAddress>& v) {
  Json list = Json::array();
  for (const TransfiniteAddress& a : v) list.push_back(a.render());
  return Json{{"ok", v.empty()}, {"violations", std::move(list)}};
}

Json noetherian_to_json(const NoetherianReport& r) {
  Json per_class = Json::array();
  for (const auto& [cls, cert] : r.per_class)
    per_class.push_back(Json{{"class", cls}, {"certificate", barren_to_json(cert)}});
  return Json{{"noetherian", r.noetherian}, {"per_class", std::move(per_class)}};
}

Json forced_to_json(const ForcedComponentsReport& r) {
  Json per_index = Json::array();
  for (const auto& e : r.per_index)
    per_index.push_back(Json{{"index", e.index}, {"forced", e.forced}});
  return Json{{"per_index", std::move(per_index)},
              {"lift_exists", r.lift_exists},
              {"lift_forced", r.lift_forced}};
}

Json growth_certificate_to_json(const NonInjectivityCertificate& c) {
  Json per_n = Json::array();
  for (const GrowthEntry& e : c.per_n)
    per_n.push_back(Json{{"n", e.n},
                         {"conditions", source_conditions_to_json(e.conditions)},
                         {"forced", forced_to_json(e.forced)},
                         {"max_forced", e.max_forced}});
  return Json{{"depth", c.depth},
              {"per_n", std::move(per_n)},
              {"conditions_all_pass", c.conditions_all_pass},
              {"counts_strictly_increasing", c.counts_strictly_increasing},
              {"interpretation", c.interpretation}};
}

Json interchange_to_json(const InterchangeReport& r) {
  Json modules = Json::array();
  for (const auto& row : r.modules) {
    Json jrow = Json::array();
    for (const FgModule& m : row) jrow.push_back(m.invariant_factors());
    modules.push_back(std::move(jrow));
  }
  return Json{{"ok", r.ok},
              {"fanout", r.fanout},
              {"summands", r.summands},
              {"modules", std::move(modules)},
              {"note", r.note}};
}

}  // namespace treq
