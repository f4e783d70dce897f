#include "treq/transfinite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace treq {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

SegmentScheme::SegmentScheme(std::vector<SegmentNode> nodes, std::string root,
                             bool pre_completion)
    : nodes_(std::move(nodes)), root_(std::move(root)), pre_completion_(pre_completion) {
  if (nodes_.empty()) fail("segment scheme needs at least one node");
  std::sort(nodes_.begin(), nodes_.end(),
            [](const SegmentNode& a, const SegmentNode& b) { return a.id < b.id; });
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    SegmentNode& n = nodes_[static_cast<std::size_t>(i)];
    if (!valid_id(n.id)) fail("bad segment id: " + n.id);
    if (index_.count(n.id)) fail("duplicate segment id: " + n.id);
    index_[n.id] = i;
    if (n.length.is_zero()) fail("segment " + n.id + " has zero length");
    if (n.length.is_successor()) n.has_top = true;  // last element always present
    std::sort(n.children.begin(), n.children.end());
  }
  if (!index_.count(root_)) fail("unknown root segment: " + root_);
  for (const SegmentNode& n : nodes_) {
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      const std::string& c = n.children[k];
      if (!index_.count(c)) fail("segment " + n.id + " references unknown child " + c);
      if (k > 0 && n.children[k - 1] == c) fail("duplicate child " + c + " under " + n.id);
      if (c == root_) fail("root segment cannot be a child");
      if (parent_.count(c)) fail("segment " + c + " has two parents");
      parent_[c] = n.id;
    }
    if (!n.children.empty() && n.length.is_limit() && !n.has_top && !pre_completion_)
      fail("segment " + n.id + " attaches children without its top");
  }
  std::set<std::string> seen{root_};
  std::deque<std::string> queue{root_};
  while (!queue.empty()) {
    const SegmentNode& n = node(queue.front());
    queue.pop_front();
    for (const std::string& c : n.children)
      if (seen.insert(c).second) queue.push_back(c);
  }
  if (seen.size() != nodes_.size()) fail("segment scheme is not a tree rooted at " + root_);
}

const SegmentNode& SegmentScheme::node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) fail("unknown segment: " + id);
  return nodes_[static_cast<std::size_t>(it->second)];
}

bool SegmentScheme::has_node(const std::string& id) const { return index_.count(id) > 0; }

std::optional<std::string> SegmentScheme::parent(const std::string& id) const {
  node(id);
  auto it = parent_.find(id);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> SegmentScheme::path_to(const std::string& id) const {
  node(id);
  std::vector<std::string> path{id};
  auto it = parent_.find(id);
  while (it != parent_.end()) {
    path.push_back(it->second);
    it = parent_.find(it->second);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::string> SegmentScheme::preorder() const {
  std::vector<std::string> out;
  std::vector<std::string> stack{root_};
  while (!stack.empty()) {
    std::string id = std::move(stack.back());
    stack.pop_back();
    const SegmentNode& n = node(id);
    out.push_back(std::move(id));
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

Ordinal SegmentScheme::element_count(const std::string& id) const {
  const SegmentNode& n = node(id);
  return n.length.is_limit() && n.has_top ? n.length.successor() : n.length;
}

Ordinal SegmentScheme::max_offset(const std::string& id) const {
  const SegmentNode& n = node(id);
  if (n.length.is_successor()) return n.length.predecessor();
  if (n.has_top) return n.length;
  throw std::logic_error("segment " + id + " has no maximal element");
}

bool SegmentScheme::element_offset(const std::string& id, const Ordinal& offset) const {
  const SegmentNode& n = node(id);
  if (offset < n.length) return true;
  return offset == n.length && n.length.is_limit() && n.has_top;
}

bool operator==(const SegmentScheme& a, const SegmentScheme& b) {
  if (a.root_ != b.root_ || a.pre_completion_ != b.pre_completion_) return false;
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const SegmentNode &x = a.nodes_[i], &y = b.nodes_[i];
    if (x.id != y.id || x.length != y.length || x.has_top != y.has_top ||
        x.children != y.children)
      return false;
  }
  return true;
}

std::string TransfiniteAddress::render() const {
  std::string out;
  for (std::size_t i = 0; i < node_path.size(); ++i) {
    if (i) out += '/';
    out += node_path[i];
  }
  out += '@';
  out += offset.render();
  return out;
}

bool valid_transfinite_address(const SegmentScheme& t, const TransfiniteAddress& a) {
  if (a.node_path.empty() || a.node_path.front() != t.root()) return false;
  for (std::size_t i = 0; i + 1 < a.node_path.size(); ++i) {
    if (!t.has_node(a.node_path[i])) return false;
    const auto& kids = t.node(a.node_path[i]).children;
    if (!std::binary_search(kids.begin(), kids.end(), a.node_path[i + 1])) return false;
  }
  if (!t.has_node(a.node_path.back())) return false;
  return t.element_offset(a.node_path.back(), a.offset);
}

std::optional<bool> address_le(const SegmentScheme& t, const TransfiniteAddress& a,
                               const TransfiniteAddress& b) {
  if (!valid_transfinite_address(t, a) || !valid_transfinite_address(t, b))
    fail("invalid address");
  const std::size_t na = a.node_path.size(), nb = b.node_path.size();
  const std::size_t shared = std::min(na, nb);
  for (std::size_t i = 0; i < shared; ++i)
    if (a.node_path[i] != b.node_path[i]) return std::nullopt;
  if (na == nb) return a.offset <= b.offset;
  // Every element of an ancestor segment lies below every element of a
  // descendant segment, so a proper prefix decides the order outright.
  return na < nb;
}

Ordinal stratum(const SegmentScheme& t, const TransfiniteAddress& a) {
  if (!valid_transfinite_address(t, a)) fail("invalid address: " + a.render());
  Ordinal base;
  for (std::size_t i = 0; i + 1 < a.node_path.size(); ++i)
    base = ord_add(base, t.element_count(a.node_path[i]));
  return ord_add(base, a.offset);
}

StrataProfile strata_profile(const SegmentScheme& t) {
  StrataProfile out;
  std::vector<std::pair<std::string, Ordinal>> stack{{t.root(), Ordinal{}}};
  std::vector<Ordinal> ends;
  while (!stack.empty()) {
    auto [id, base] = std::move(stack.back());
    stack.pop_back();
    const Ordinal count = t.element_count(id);
    out.spans.push_back({t.path_to(id), base, count});
    ends.push_back(ord_add(base, count));
    const SegmentNode& n = t.node(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back({*it, ends.back()});
  }
  // Spans are emitted in preorder; restore path-lexicographic order.
  std::sort(out.spans.begin(), out.spans.end(),
            [](const SegmentSpan& a, const SegmentSpan& b) { return a.node_path < b.node_path; });
  out.lambda_star = ord_sup(ends);
  return out;
}

bool is_complete(const SegmentScheme& t) {
  for (const SegmentNode& n : t.nodes())
    if (n.length.is_limit() && !n.has_top) return false;
  return true;
}

std::optional<TransfiniteAddress> lub_of_chain(const SegmentScheme& t,
                                               const ChainDescription& chain) {
  if (chain.cofinal) {
    const auto& [path, bound] = *chain.cofinal;
    if (path.empty()) fail("empty segment path in chain");
    TransfiniteAddress probe{path, Ordinal{}};
    if (!valid_transfinite_address(t, probe)) fail("invalid segment path in chain");
    const SegmentNode& n = t.node(path.back());
    if (bound.is_zero()) fail("chain below offset 0 is empty");
    if (n.length < bound) fail("chain bound exceeds the segment length");
    const Ordinal sup = bound.is_limit() ? bound : bound.predecessor();
    TransfiniteAddress lub{path, sup};
    if (valid_transfinite_address(t, lub)) return lub;
    return std::nullopt;  // the missing top; completion supplies it
  }
  if (chain.finite.empty()) fail("empty chain");
  for (const TransfiniteAddress& a : chain.finite)
    if (!valid_transfinite_address(t, a)) fail("invalid address: " + a.render());
  for (std::size_t i = 0; i < chain.finite.size(); ++i)
    for (std::size_t j = i + 1; j < chain.finite.size(); ++j)
      if (!address_le(t, chain.finite[i], chain.finite[j]))
        fail("addresses do not form a chain");
  TransfiniteAddress best = chain.finite.front();
  for (const TransfiniteAddress& a : chain.finite)
    if (*address_le(t, best, a)) best = a;
  return best;
}

CompletionResult complete(const SegmentScheme& t) {
  if (t.pre_completion())
    fail("pre-completion schemes cannot be completed in place: their deferred attachments "
         "would sit above the new tops");
  CompletionResult out{t, {}};
  std::vector<SegmentNode> nodes;
  for (const std::string& id : t.preorder()) {
    SegmentNode n = t.node(id);
    if (n.length.is_limit() && !n.has_top) {
      n.has_top = true;
      out.added.push_back({t.path_to(id), n.length});
    }
    nodes.push_back(std::move(n));
  }
  out.completed = SegmentScheme(std::move(nodes), t.root(), false);
  return out;
}

CocontinuousRep::CocontinuousRep(SegmentScheme scheme, Modulus mod,
                                 std::map<std::string, std::vector<Breakpoint>> per_segment)
    : scheme_(std::move(scheme)), mod_(std::move(mod)), data_(std::move(per_segment)) {
  for (const auto& [id, bps] : data_)
    if (!scheme_.has_node(id)) fail("breakpoints for unknown segment: " + id);
  for (const SegmentNode& n : scheme_.nodes())
    if (!data_.count(n.id)) fail("segment " + n.id + " has no breakpoints");
  for (const std::string& id : scheme_.preorder()) {
    std::vector<Breakpoint>& bps = data_.at(id);
    if (bps.empty()) fail("segment " + id + " has no breakpoints");
    if (!bps.front().offset.is_zero()) fail("segment " + id + " must start at offset 0");
    const auto par = scheme_.parent(id);
    for (std::size_t k = 0; k < bps.size(); ++k) {
      Breakpoint& bp = bps[k];
      if (k > 0 && !(bps[k - 1].offset < bp.offset))
        fail("breakpoint offsets must increase in segment " + id);
      if (!scheme_.element_offset(id, bp.offset))
        fail("breakpoint offset " + bp.offset.render() + " is not an element of segment " + id);
      bp.module.validate_under(mod_);
      const FgModule& src = k > 0            ? bps[k - 1].module
                            : par.has_value() ? data_.at(*par).back().module
                                              : FgModule::zero();
      if (bp.step_in.modulus() != mod_.m || bp.step_in.rows() != bp.module.rank() ||
          bp.step_in.cols() != src.rank())
        fail("step shape mismatch at " + id + '@' + bp.offset.render());
      if (!is_module_map(bp.step_in, src, bp.module))
        fail("step is not a module map at " + id + '@' + bp.offset.render());
      bp.step_in = canonical_map(bp.step_in, bp.module);
    }
  }
}

const std::vector<Breakpoint>& CocontinuousRep::breakpoints(const std::string& node) const {
  auto it = data_.find(node);
  if (it == data_.end()) fail("unknown segment: " + node);
  return it->second;
}

const FgModule& CocontinuousRep::value_at(const TransfiniteAddress& a) const {
  if (!valid_transfinite_address(scheme_, a)) fail("invalid address: " + a.render());
  const std::vector<Breakpoint>& bps = data_.at(a.node_path.back());
  const Breakpoint* last = &bps.front();
  for (const Breakpoint& bp : bps)
    if (bp.offset <= a.offset) last = &bp;
  return last->module;
}

MatZm CocontinuousRep::map_between(const TransfiniteAddress& from,
                                   const TransfiniteAddress& to) const {
  auto le = address_le(scheme_, from, to);
  if (!le || !*le) fail("addresses are not ordered: " + from.render() + " to " + to.render());
  MatZm acc = MatZm::identity(mod_.m, value_at(from).rank());
  Ordinal cur = from.offset;
  const std::size_t start = from.node_path.size() - 1;
  for (std::size_t idx = start; idx < to.node_path.size(); ++idx) {
    const std::string& id = to.node_path[idx];
    const bool last_segment = idx + 1 == to.node_path.size();
    for (const Breakpoint& bp : data_.at(id)) {
      if (!(cur < bp.offset)) continue;
      if (last_segment && to.offset < bp.offset) break;
      acc = bp.step_in * acc;
    }
    if (!last_segment) {
      acc = data_.at(to.node_path[idx + 1]).front().step_in * acc;
      cur = Ordinal{};
    }
  }
  return acc;
}

std::vector<TransfiniteAddress> check_cocontinuous(const CocontinuousRep& x) {
  const SegmentScheme& t = x.scheme();
  std::vector<TransfiniteAddress> bad;
  for (const std::string& id : t.preorder()) {
    const std::vector<Breakpoint>& bps = x.breakpoints(id);
    for (std::size_t k = 1; k < bps.size(); ++k) {
      if (!bps[k].offset.is_limit()) continue;
      const FgModule& approached = bps[k - 1].module;
      const bool ok = bps[k].module == approached &&
                      maps_equal(bps[k].step_in,
                                 MatZm::identity(x.modulus().m, approached.rank()),
                                 bps[k].module);
      if (!ok) bad.push_back({t.path_to(id), bps[k].offset});
    }
    const SegmentNode& n = t.node(id);
    if (n.length.is_limit() && !n.has_top) {
      // Deferred attachments sit at the limit of the whole segment.
      const FgModule& tail = bps.back().module;
      for (const std::string& c : n.children) {
        const Breakpoint& bp0 = x.breakpoints(c).front();
        const bool ok = bp0.module == tail &&
                        maps_equal(bp0.step_in, MatZm::identity(x.modulus().m, tail.rank()),
                                   bp0.module);
        if (!ok) bad.push_back({t.path_to(c), Ordinal{}});
      }
    }
  }
  return bad;
}

CocontinuousRep build_indec_injective(const SegmentScheme& t, const TransfiniteAddress& v,
                                      const FgModule& e, const Modulus& mod) {
  if (!is_complete(t)) fail("scheme must be complete");
  if (!valid_transfinite_address(t, v)) fail("invalid address: " + v.render());
  const auto injectives = indecomposable_injective_modules(mod);
  if (std::find(injectives.begin(), injectives.end(), e) == injectives.end())
    fail("module is not an indecomposable injective for this modulus");
  const std::int64_t m = mod.m;
  std::map<std::string, std::vector<Breakpoint>> data;
  std::set<std::string> on_path(v.node_path.begin(), v.node_path.end());
  const std::string& last = v.node_path.back();
  for (const std::string& id : t.preorder()) {
    std::vector<Breakpoint> bps;
    if (on_path.count(id)) {
      const bool is_root = id == t.root();
      MatZm step0 = is_root ? MatZm(m, e.rank(), 0) : MatZm::identity(m, e.rank());
      bps.push_back({Ordinal{}, e, std::move(step0)});
      if (id == last) {
        const Ordinal drop = v.offset.successor();
        if (t.element_offset(id, drop))
          bps.push_back({drop, FgModule::zero(), MatZm(m, 0, e.rank())});
      }
    } else {
      const auto par = t.parent(id);
      const int tail_rank = data.at(*par).back().module.rank();
      bps.push_back({Ordinal{}, FgModule::zero(), MatZm(m, 0, tail_rank)});
    }
    data[id] = std::move(bps);
  }
  return CocontinuousRep(t, mod, std::move(data));
}

Truncation truncate_tree(const SegmentScheme& t, int depth) {
  if (depth < 1) fail("truncation depth must be at least 1");
  std::map<std::string, TransfiniteAddress> vertex_address;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  struct Item {
    std::string id;
    std::uint64_t base;
  };
  std::vector<Item> stack{{t.root(), 0}};
  const auto ubound = static_cast<std::uint64_t>(depth);
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    const SegmentNode& n = t.node(item.id);
    const std::vector<std::string> path = t.path_to(item.id);
    std::uint64_t k = 0;
    std::string prev_id;
    while (item.base + k < ubound && Ordinal::from_nat(k) < n.length) {
      TransfiniteAddress addr{path, Ordinal::from_nat(k)};
      std::string vid = addr.render();
      vertices.push_back(vid);
      vertex_address.emplace(vid, std::move(addr));
      if (k > 0) arrows.push_back({vid, prev_id, vid});
      prev_id = std::move(vid);
      ++k;
    }
    if (!n.length.is_finite()) continue;  // covers never cross a limit
    const std::uint64_t len = n.length.as_nat();
    if (k < len || item.base + len >= ubound) continue;
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      stack.push_back({*it, item.base + len});
      std::vector<std::string> cpath = path;
      cpath.push_back(*it);
      std::string cid = TransfiniteAddress{std::move(cpath), Ordinal{}}.render();
      arrows.push_back({cid, prev_id, std::move(cid)});
    }
  }
  std::string root_id = TransfiniteAddress{{t.root()}, Ordinal{}}.render();
  return Truncation{FiniteQuiver(std::move(vertices), std::move(arrows), root_id),
                    std::move(vertex_address)};
}

Representation truncate_rep(const CocontinuousRep& x, int depth) {
  Truncation tr = truncate_tree(x.scheme(), depth);
  std::map<std::string, FgModule> modules;
  for (const auto& [vid, addr] : tr.vertex_address) modules[vid] = x.value_at(addr);
  std::map<std::string, MatZm> maps;
  for (const Arrow& a : tr.tree.arrows())
    maps[a.id] = x.map_between(tr.vertex_address.at(a.src), tr.vertex_address.at(a.dst));
  return Representation(std::move(tr.tree), x.modulus(), std::move(modules), std::move(maps));
}

ClassificationStream::ClassificationStream(const SegmentScheme& t, const Modulus& mod)
    : completed_(complete(t).completed),
      mod_(mod),
      injectives_(indecomposable_injective_modules(mod)) {
  // stream order is (stratum, segment path, module label)
  std::sort(injectives_.begin(), injectives_.end(),
            [](const FgModule& a, const FgModule& b) {
              return a.invariant_factors() < b.invariant_factors();
            });
  spans_ = strata_profile(completed_).spans;
  if (injectives_.empty() || spans_.empty()) done_ = true;
}

std::optional<ClassificationLabel> ClassificationStream::next() {
  while (pending_pos_ >= pending_.size() && !done_) {
    pending_.clear();
    pending_pos_ = 0;
    for (const SegmentSpan& s : spans_) {
      const Ordinal end = ord_add(s.base, s.count);
      if (s.base <= stratum_ && stratum_ < end) {
        TransfiniteAddress addr{s.node_path, ord_sub_left(s.base, stratum_)};
        for (const FgModule& e : injectives_) pending_.push_back({stratum_, addr, e});
      }
    }
    aim_at(stratum_.successor());
  }
  if (pending_pos_ < pending_.size()) return pending_[pending_pos_++];
  return std::nullopt;
}

void ClassificationStream::aim_at(const Ordinal& floor) {
  std::optional<Ordinal> next_stratum;
  for (const SegmentSpan& s : spans_) {
    const Ordinal end = ord_add(s.base, s.count);
    std::optional<Ordinal> candidate;
    if (floor <= s.base)
      candidate = s.base;
    else if (floor < end)
      candidate = floor;
    if (candidate && (!next_stratum || *candidate < *next_stratum))
      next_stratum = std::move(candidate);
  }
  if (next_stratum)
    stratum_ = std::move(*next_stratum);
  else
    done_ = true;
}

void ClassificationStream::skip_to(const Ordinal& stratum) {
  if (pending_pos_ < pending_.size() && pending_[pending_pos_].stratum < stratum) {
    pending_.clear();
    pending_pos_ = 0;
  }
  if (!done_ && stratum_ < stratum) aim_at(stratum);
}

std::vector<ClassificationLabel> classify_take(const SegmentScheme& t, const Modulus& mod,
                                               int count) {
  ClassificationStream stream(t, mod);
  std::vector<ClassificationLabel> out;
  for (int i = 0; i < count; ++i) {
    auto label = stream.next();
    if (!label) break;
    out.push_back(std::move(*label));
  }
  return out;
}

namespace {

// Finite cover chains from offset 0 of `id`: a finite-length segment is a
// finite chain that hands over to its children; any infinite length strands
// the walk below its first limit, an absorbing self-loop.
std::string append_path_space(const SegmentScheme& t, const std::string& id,
                              std::vector<std::string>& states,
                              std::vector<Transition>& transitions) {
  const SegmentNode& n = t.node(id);
  if (!n.length.is_finite()) {
    std::string state = id + "+w";
    states.push_back(state);
    transitions.push_back({state + ".loop", state, state});
    return state;
  }
  const std::uint64_t len = n.length.as_nat();
  std::vector<std::string> chain;
  for (std::uint64_t k = 0; k < len; ++k) {
    std::string state = id + "+" + std::to_string(k);
    if (k > 0) transitions.push_back({state, chain.back(), state});
    states.push_back(state);
    chain.push_back(std::move(state));
  }
  for (const std::string& c : n.children) {
    std::string first = append_path_space(t, c, states, transitions);
    transitions.push_back({first + ".in", chain.back(), first});
  }
  return chain.front();
}

}  // namespace

RationalTreeScheme segment_path_space(const SegmentScheme& t, const std::string& node) {
  std::vector<std::string> states;
  std::vector<Transition> transitions;
  std::string root = append_path_space(t, node, states, transitions);
  return RationalTreeScheme(std::move(states), std::move(transitions), std::move(root));
}

NoetherianReport is_noetherian(const SegmentScheme& t) {
  NoetherianReport out;
  out.noetherian = true;
  for (const std::string& id : t.preorder()) {
    BarrenCertificate cert = is_barren(segment_path_space(t, id));
    out.noetherian = out.noetherian && cert.barren;
    out.per_class.emplace_back(id, std::move(cert));
  }
  return out;
}

NoetherianReport is_noetherian(const RationalTreeScheme& s) {
  NoetherianReport out;
  out.noetherian = true;
  for (const std::string& state : s.states()) {
    BarrenCertificate cert = is_barren(rooted_at(s, state));
    out.noetherian = out.noetherian && cert.barren;
    out.per_class.emplace_back(state, std::move(cert));
  }
  return out;
}

}  // namespace treq
