#include "treq/quiver.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace treq {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '+' || c == '-' ||
                    c == '(' || c == ')' || c == '.' || c == '@' || c == '/';
    if (!ok) return false;
  }
  return true;
}

namespace {

void require_id(const std::string& s, const char* what) {
  if (!valid_id(s)) throw std::invalid_argument(std::string(what) + " id '" + s + "' is malformed");
}

}  // namespace

FiniteQuiver::FiniteQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                           std::optional<std::string> root)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), root_(std::move(root)) {
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    require_id(vertices_[i], "vertex");
    if (i && vertices_[i] == vertices_[i - 1])
      throw std::invalid_argument("duplicate vertex '" + vertices_[i] + "'");
    vertex_index_[vertices_[i]] = static_cast<int>(i);
  }
  std::sort(arrows_.begin(), arrows_.end(),
            [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    require_id(a.id, "arrow");
    if (i && a.id == arrows_[i - 1].id)
      throw std::invalid_argument("duplicate arrow id '" + a.id + "'");
    if (!vertex_index_.count(a.src) || !vertex_index_.count(a.dst))
      throw std::invalid_argument("arrow '" + a.id + "' references a missing vertex");
    arrow_index_[a.id] = static_cast<int>(i);
    out_[static_cast<std::size_t>(vertex_index_[a.src])].push_back(static_cast<int>(i));
    in_[static_cast<std::size_t>(vertex_index_[a.dst])].push_back(static_cast<int>(i));
  }
  if (root_ && !vertex_index_.count(*root_))
    throw std::invalid_argument("root vertex '" + *root_ + "' does not exist");
}

int FiniteQuiver::vindex(const std::string& v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw std::invalid_argument("unknown vertex '" + v + "'");
  return it->second;
}

bool FiniteQuiver::has_vertex(const std::string& v) const { return vertex_index_.count(v) > 0; }

const Arrow& FiniteQuiver::arrow(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) throw std::invalid_argument("unknown arrow '" + id + "'");
  return arrows_[static_cast<std::size_t>(it->second)];
}

const std::vector<int>& FiniteQuiver::arrows_from(const std::string& v) const {
  return out_[static_cast<std::size_t>(vindex(v))];
}

const std::vector<int>& FiniteQuiver::arrows_into(const std::string& v) const {
  return in_[static_cast<std::size_t>(vindex(v))];
}

namespace {

// DFS from the given starts; on a back edge, the arrow ids around the cycle.
std::optional<std::vector<std::string>> find_cycle(const FiniteQuiver& q,
                                                   const std::vector<int>& starts) {
  const auto& vs = q.vertices();
  const auto& as = q.arrows();
  std::map<std::string, int> vidx;
  for (std::size_t i = 0; i < vs.size(); ++i) vidx[vs[i]] = static_cast<int>(i);
  std::vector<int> color(vs.size(), 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    int v;
    std::size_t pos;
  };
  for (int s : starts) {
    if (color[static_cast<std::size_t>(s)]) continue;
    std::vector<Frame> st{{s, 0}};
    std::vector<std::string> in_arrow{""};
    color[static_cast<std::size_t>(s)] = 1;
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& outs = q.arrows_from(vs[static_cast<std::size_t>(f.v)]);
      if (f.pos == outs.size()) {
        color[static_cast<std::size_t>(f.v)] = 2;
        st.pop_back();
        in_arrow.pop_back();
        continue;
      }
      const Arrow& a = as[static_cast<std::size_t>(outs[f.pos++])];
      const int t = vidx[a.dst];
      if (color[static_cast<std::size_t>(t)] == 0) {
        color[static_cast<std::size_t>(t)] = 1;
        st.push_back({t, 0});
        in_arrow.push_back(a.id);
      } else if (color[static_cast<std::size_t>(t)] == 1) {
        std::size_t at = 0;
        while (st[at].v != t) ++at;
        std::vector<std::string> cyc;
        for (std::size_t i = at + 1; i < st.size(); ++i) cyc.push_back(in_arrow[i]);
        cyc.push_back(a.id);
        return cyc;
      }
    }
  }
  return std::nullopt;
}

std::vector<int> all_indices(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
  return v;
}

}  // namespace

bool is_right_rooted(const FiniteQuiver& q) {
  return !find_cycle(q, all_indices(q.vertices().size())).has_value();
}

std::string TreeCheck::describe() const {
  if (ok) return "tree: exactly one root path per vertex";
  std::string out = "not a tree:";
  if (!unreachable.empty()) {
    out += " unreachable {";
    for (std::size_t i = 0; i < unreachable.size(); ++i)
      out += (i ? "," : "") + unreachable[i];
    out += "}";
  }
  if (cycle) {
    out += " cycle [";
    for (std::size_t i = 0; i < cycle->size(); ++i) out += (i ? "," : "") + (*cycle)[i];
    out += "]";
  }
  if (double_path) {
    auto render = [](const std::vector<std::string>& p) {
      std::string s = "[";
      for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i];
      return s + "]";
    };
    out += " two root paths " + render(double_path->first) + " vs " + render(double_path->second);
  }
  return out;
}

TreeCheck validate_tree(const FiniteQuiver& q, const std::string& root) {
  if (!q.has_vertex(root)) throw std::invalid_argument("root '" + root + "' is not a vertex");
  const auto& vs = q.vertices();
  const auto& as = q.arrows();
  const int nv = static_cast<int>(vs.size());
  std::map<std::string, int> vidx;
  for (int i = 0; i < nv; ++i) vidx[vs[static_cast<std::size_t>(i)]] = i;
  const int r = vidx[root];

  // Breadth-first discovery, remembering the first in-arrow of each vertex.
  std::vector<int> parent_arrow(static_cast<std::size_t>(nv), -1);
  std::vector<bool> reached(static_cast<std::size_t>(nv), false);
  reached[static_cast<std::size_t>(r)] = true;
  std::deque<int> bfs{r};
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    for (int ai : q.arrows_from(vs[static_cast<std::size_t>(v)])) {
      const int t = vidx[as[static_cast<std::size_t>(ai)].dst];
      if (reached[static_cast<std::size_t>(t)]) continue;
      reached[static_cast<std::size_t>(t)] = true;
      parent_arrow[static_cast<std::size_t>(t)] = ai;
      bfs.push_back(t);
    }
  }

  TreeCheck check;
  for (int i = 0; i < nv; ++i)
    if (!reached[static_cast<std::size_t>(i)])
      check.unreachable.push_back(vs[static_cast<std::size_t>(i)]);

  check.cycle = find_cycle(q, {r});

  if (!check.cycle) {
    auto root_path = [&](int v) {
      std::vector<std::string> p;
      while (parent_arrow[static_cast<std::size_t>(v)] >= 0) {
        const Arrow& a = as[static_cast<std::size_t>(parent_arrow[static_cast<std::size_t>(v)])];
        p.push_back(a.id);
        v = vidx[a.src];
      }
      std::reverse(p.begin(), p.end());
      return p;
    };
    for (int v = 0; v < nv && !check.double_path; ++v) {
      if (!reached[static_cast<std::size_t>(v)]) continue;
      std::vector<int> ins;
      for (int ai : q.arrows_into(vs[static_cast<std::size_t>(v)]))
        if (reached[static_cast<std::size_t>(vidx[as[static_cast<std::size_t>(ai)].src])])
          ins.push_back(ai);
      if (ins.size() < 2) continue;
      auto path_via = [&](int ai) {
        auto p = root_path(vidx[as[static_cast<std::size_t>(ai)].src]);
        p.push_back(as[static_cast<std::size_t>(ai)].id);
        return p;
      };
      check.double_path = {path_via(ins[0]), path_via(ins[1])};
    }
  }

  check.ok = check.unreachable.empty() && !check.cycle && !check.double_path;
  return check;
}

std::vector<std::vector<std::string>> paths_between(const FiniteQuiver& q, const std::string& v,
                                                    const std::string& w) {
  if (!q.has_vertex(v) || !q.has_vertex(w))
    throw std::invalid_argument("paths_between: unknown endpoint");
  if (!is_right_rooted(q))
    throw std::invalid_argument("paths_between requires an acyclic quiver");
  std::vector<std::vector<std::string>> found;
  std::vector<std::string> cur;
  // Arrow ids are explored in sorted order, so paths come out lexicographic.
  auto dfs = [&](auto&& self, const std::string& at) -> void {
    if (at == w) found.push_back(cur);
    for (int ai : q.arrows_from(at)) {
      const Arrow& a = q.arrows()[static_cast<std::size_t>(ai)];
      cur.push_back(a.id);
      self(self, a.dst);
      cur.pop_back();
    }
  };
  dfs(dfs, v);
  return found;
}

RationalTreeScheme::RationalTreeScheme(std::vector<std::string> states,
                                       std::vector<Transition> transitions, std::string root)
    : states_(std::move(states)), transitions_(std::move(transitions)), root_(std::move(root)) {
  std::sort(states_.begin(), states_.end());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    require_id(states_[i], "state");
    if (i && states_[i] == states_[i - 1])
      throw std::invalid_argument("duplicate state '" + states_[i] + "'");
    state_index_[states_[i]] = static_cast<int>(i);
  }
  std::sort(transitions_.begin(), transitions_.end(),
            [](const Transition& a, const Transition& b) { return a.id < b.id; });
  out_.assign(states_.size(), {});
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    require_id(t.id, "transition");
    if (i && t.id == transitions_[i - 1].id)
      throw std::invalid_argument("duplicate transition id '" + t.id + "'");
    if (!state_index_.count(t.src) || !state_index_.count(t.dst))
      throw std::invalid_argument("transition '" + t.id + "' references a missing state");
    transition_index_[t.id] = static_cast<int>(i);
    out_[static_cast<std::size_t>(state_index_[t.src])].push_back(static_cast<int>(i));
  }
  if (!state_index_.count(root_))
    throw std::invalid_argument("root state '" + root_ + "' does not exist");

  std::vector<bool> reached(states_.size(), false);
  std::deque<int> bfs{state_index_[root_]};
  reached[static_cast<std::size_t>(state_index_[root_])] = true;
  while (!bfs.empty()) {
    const int s = bfs.front();
    bfs.pop_front();
    for (int ti : out_[static_cast<std::size_t>(s)]) {
      const int t = state_index_[transitions_[static_cast<std::size_t>(ti)].dst];
      if (reached[static_cast<std::size_t>(t)]) continue;
      reached[static_cast<std::size_t>(t)] = true;
      bfs.push_back(t);
    }
  }
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (!reached[i])
      throw std::invalid_argument("state '" + states_[i] + "' is unreachable from the root");
}

bool RationalTreeScheme::has_state(const std::string& s) const {
  return state_index_.count(s) > 0;
}

const Transition& RationalTreeScheme::transition(const std::string& id) const {
  auto it = transition_index_.find(id);
  if (it == transition_index_.end())
    throw std::invalid_argument("unknown transition '" + id + "'");
  return transitions_[static_cast<std::size_t>(it->second)];
}

const std::vector<int>& RationalTreeScheme::transitions_from(const std::string& s) const {
  auto it = state_index_.find(s);
  if (it == state_index_.end()) throw std::invalid_argument("unknown state '" + s + "'");
  return out_[static_cast<std::size_t>(it->second)];
}

std::string TreeVertexAddress::render() const {
  if (transitions.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < transitions.size(); ++i) out += (i ? "." : "") + transitions[i];
  return out;
}

bool valid_address(const RationalTreeScheme& s, const TreeVertexAddress& a) {
  std::string at = s.root();
  for (const std::string& id : a.transitions) {
    auto it = std::find_if(s.transitions().begin(), s.transitions().end(),
                           [&](const Transition& t) { return t.id == id; });
    if (it == s.transitions().end() || it->src != at) return false;
    at = it->dst;
  }
  return true;
}

std::string address_state(const RationalTreeScheme& s, const TreeVertexAddress& a) {
  std::string at = s.root();
  for (const std::string& id : a.transitions) {
    const Transition& t = s.transition(id);
    if (t.src != at)
      throw std::invalid_argument("address breaks at '" + id + "': expected source '" + at + "'");
    at = t.dst;
  }
  return at;
}

FiniteQuiver unfold(const RationalTreeScheme& s, int depth) {
  if (depth < 0) throw std::invalid_argument("unfold depth must be nonnegative");
  std::vector<std::string> vertices{"()"};
  std::vector<Arrow> arrows;
  struct Node {
    std::string address, state;
    int depth;
  };
  std::deque<Node> bfs{{"()", s.root(), 0}};
  while (!bfs.empty()) {
    Node n = bfs.front();
    bfs.pop_front();
    if (n.depth == depth) continue;
    for (int ti : s.transitions_from(n.state)) {
      const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
      const std::string child = n.address == "()" ? t.id : n.address + "." + t.id;
      vertices.push_back(child);
      arrows.push_back({child, n.address, child});
      bfs.push_back({child, t.dst, n.depth + 1});
    }
  }
  return FiniteQuiver(std::move(vertices), std::move(arrows), "()");
}

std::vector<BigInt> level_counts(const RationalTreeScheme& s, int i_max) {
  if (i_max < 0) throw std::invalid_argument("level bound must be nonnegative");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < s.states().size(); ++i) idx[s.states()[i]] = i;
  std::vector<BigInt> v(s.states().size(), 0);
  v[idx[s.root()]] = 1;
  std::vector<BigInt> counts;
  for (int i = 0;; ++i) {
    BigInt total = 0;
    for (const BigInt& x : v) total += x;
    counts.push_back(total);
    if (i == i_max) break;
    std::vector<BigInt> next(v.size(), 0);
    for (const Transition& t : s.transitions()) next[idx[t.dst]] += v[idx[t.src]];
    v = std::move(next);
  }
  return counts;
}

namespace {

struct SchemeAnalysis {
  std::map<std::string, int> idx;
  std::vector<bool> reachable;
  std::vector<int> comp;                   // strongly connected component id per state
  std::vector<std::vector<int>> members;   // states per component
  std::vector<bool> nontrivial;            // component has a cycle through it
  // states q with >= 2 transitions staying inside q's nontrivial component
  std::vector<int> growth_states;
  // states on a reachable cycle with a transition leaving the component
  std::vector<int> exit_states;
  std::optional<std::pair<std::string, std::string>> two_cycle_walk;
  bool structurally_bounded = false;
};

SchemeAnalysis analyze_scheme(const RationalTreeScheme& s) {
  SchemeAnalysis an;
  const auto& states = s.states();
  const int n = static_cast<int>(states.size());
  for (int i = 0; i < n; ++i) an.idx[states[static_cast<std::size_t>(i)]] = i;

  an.reachable.assign(static_cast<std::size_t>(n), true);  // scheme ctor guarantees it

  // Tarjan's strongly connected components, iterative.
  std::vector<int> low(static_cast<std::size_t>(n), -1), num(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  an.comp.assign(static_cast<std::size_t>(n), -1);
  int counter = 0;
  struct Frame {
    int v;
    std::size_t pos;
  };
  for (int start = 0; start < n; ++start) {
    if (num[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<Frame> st{{start, 0}};
    num[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = counter++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = true;
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& outs = s.transitions_from(states[static_cast<std::size_t>(f.v)]);
      if (f.pos < outs.size()) {
        const Transition& t = s.transitions()[static_cast<std::size_t>(outs[f.pos++])];
        const int w = an.idx[t.dst];
        if (num[static_cast<std::size_t>(w)] < 0) {
          num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          st.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], num[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.v)] == num[static_cast<std::size_t>(f.v)]) {
          std::vector<int> group;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            an.comp[static_cast<std::size_t>(w)] = static_cast<int>(an.members.size());
            group.push_back(w);
          } while (w != f.v);
          std::sort(group.begin(), group.end());
          an.members.push_back(std::move(group));
        }
        const int v = f.v;
        st.pop_back();
        if (!st.empty())
          low[static_cast<std::size_t>(st.back().v)] =
              std::min(low[static_cast<std::size_t>(st.back().v)], low[static_cast<std::size_t>(v)]);
      }
    }
  }

  const int nc = static_cast<int>(an.members.size());
  an.nontrivial.assign(static_cast<std::size_t>(nc), false);
  for (int c = 0; c < nc; ++c) {
    if (an.members[static_cast<std::size_t>(c)].size() > 1) {
      an.nontrivial[static_cast<std::size_t>(c)] = true;
      continue;
    }
    const int v = an.members[static_cast<std::size_t>(c)][0];
    for (int ti : s.transitions_from(states[static_cast<std::size_t>(v)]))
      if (s.transitions()[static_cast<std::size_t>(ti)].dst == states[static_cast<std::size_t>(v)])
        an.nontrivial[static_cast<std::size_t>(c)] = true;
  }

  for (int v = 0; v < n; ++v) {
    const int c = an.comp[static_cast<std::size_t>(v)];
    if (!an.nontrivial[static_cast<std::size_t>(c)]) continue;
    int inside = 0, outside = 0;
    for (int ti : s.transitions_from(states[static_cast<std::size_t>(v)])) {
      const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
      (an.comp[static_cast<std::size_t>(an.idx[t.dst])] == c ? inside : outside) += 1;
    }
    if (inside >= 2) an.growth_states.push_back(v);
    if (outside >= 1) an.exit_states.push_back(v);
  }

  // Condensation reachability between distinct components carrying cycles.
  std::vector<std::set<int>> cedges(static_cast<std::size_t>(nc));
  for (const Transition& t : s.transitions()) {
    const int a = an.comp[static_cast<std::size_t>(an.idx[t.src])];
    const int b = an.comp[static_cast<std::size_t>(an.idx[t.dst])];
    if (a != b) cedges[static_cast<std::size_t>(a)].insert(b);
  }
  auto first_state = [&](int c) { return states[static_cast<std::size_t>(an.members[static_cast<std::size_t>(c)][0])]; };
  std::vector<std::pair<std::string, std::string>> walk_pairs;
  for (int c = 0; c < nc; ++c) {
    if (!an.nontrivial[static_cast<std::size_t>(c)]) continue;
    std::vector<bool> seen(static_cast<std::size_t>(nc), false);
    std::deque<int> q{c};
    seen[static_cast<std::size_t>(c)] = true;
    while (!q.empty()) {
      const int cur = q.front();
      q.pop_front();
      if (cur != c && an.nontrivial[static_cast<std::size_t>(cur)])
        walk_pairs.emplace_back(first_state(c), first_state(cur));
      for (int nxt : cedges[static_cast<std::size_t>(cur)])
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = true;
          q.push_back(nxt);
        }
    }
  }
  if (!walk_pairs.empty()) an.two_cycle_walk = *std::min_element(walk_pairs.begin(), walk_pairs.end());

  an.structurally_bounded = an.growth_states.empty() && !an.two_cycle_walk;
  return an;
}

// Shortest path by transition ids (lexicographically least among the shortest),
// restricted to an allowed state set.
std::optional<std::vector<std::string>> shortest_lex_path(const RationalTreeScheme& s,
                                                          const std::string& from,
                                                          const std::string& to,
                                                          const std::set<std::string>& allowed) {
  if (from == to) return std::vector<std::string>{};
  std::map<std::string, std::vector<std::string>> best{{from, {}}};
  std::vector<std::string> frontier{from};
  while (!frontier.empty()) {
    std::map<std::string, std::vector<std::string>> next;
    for (const std::string& v : frontier) {
      for (int ti : s.transitions_from(v)) {
        const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
        if (!allowed.count(t.dst) || best.count(t.dst)) continue;
        auto cand = best[v];
        cand.push_back(t.id);
        auto it = next.find(t.dst);
        if (it == next.end() || cand < it->second) next[t.dst] = std::move(cand);
      }
    }
    frontier.clear();
    for (auto& [state, path] : next) {
      if (state == to) return path;
      best[state] = path;
      frontier.push_back(state);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string BarrenCertificate::describe() const {
  if (barren)
    return "barren: level counts settle to " + stable_value.str() + " from level " +
           std::to_string(transient);
  if (witness_state) {
    std::string out = "not barren: state '" + *witness_state + "' keeps two arrows in its cycle (";
    for (std::size_t i = 0; i < witness_arrows.size(); ++i)
      out += (i ? "," : "") + witness_arrows[i];
    return out + ")";
  }
  if (two_cycle_walk)
    return "not barren: a root walk passes the cycles at '" + two_cycle_walk->first + "' and '" +
           two_cycle_walk->second + "'";
  std::string out = "not barren: level counts keep oscillating (";
  for (std::size_t i = 0; i < window.size(); ++i) out += (i ? "," : "") + window[i].str();
  return out + " from level " + std::to_string(window_start) + ")";
}

BarrenCertificate is_barren(const RationalTreeScheme& s) {
  const int n = static_cast<int>(s.states().size());
  const auto counts = level_counts(s, 2 * n + 2);
  bool window_constant = true;
  for (int i = n; i <= 2 * n + 2; ++i)
    window_constant &= counts[static_cast<std::size_t>(i)] == counts[static_cast<std::size_t>(n)];

  const SchemeAnalysis an = analyze_scheme(s);

  BarrenCertificate cert;
  if (window_constant) {
    // The counts obey a monic linear recurrence of order <= n, so a constant
    // window of length n+3 pins them forever; a structural growth source
    // would contradict that.
    if (!an.structurally_bounded)
      throw std::logic_error("constant level window on a structurally growing scheme");
    cert.barren = true;
    cert.stable_value = counts[static_cast<std::size_t>(n)];
    int t = n;
    while (t > 0 && counts[static_cast<std::size_t>(t - 1)] == cert.stable_value) --t;
    cert.transient = t;
    cert.window_start = n;
    for (int i = n; i <= 2 * n + 2; ++i)
      cert.window.push_back(counts[static_cast<std::size_t>(i)]);
    return cert;
  }

  cert.barren = false;
  if (!an.growth_states.empty()) {
    const int v = an.growth_states.front();
    cert.witness_state = s.states()[static_cast<std::size_t>(v)];
    for (int ti : s.transitions_from(*cert.witness_state)) {
      const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
      if (an.comp[static_cast<std::size_t>(an.idx.at(t.dst))] ==
          an.comp[static_cast<std::size_t>(v)])
        cert.witness_arrows.push_back(t.id);
    }
  } else if (an.two_cycle_walk) {
    cert.two_cycle_walk = an.two_cycle_walk;
  } else {
    cert.window_start = n;
    for (int i = n; i <= 2 * n + 2; ++i) cert.window.push_back(counts[static_cast<std::size_t>(i)]);
  }
  return cert;
}

TreeVertexAddress AntichainComb::member(int j) const {
  if (j < 0) throw std::invalid_argument("antichain members are indexed from 1");
  TreeVertexAddress a = prefix;
  for (int i = 0; i < j; ++i)
    a.transitions.insert(a.transitions.end(), cycle.begin(), cycle.end());
  a.transitions.insert(a.transitions.end(), branch.begin(), branch.end());
  return a;
}

std::string AntichainComb::describe() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "." : "") + v[i];
    return s;
  };
  std::string p = prefix.transitions.empty() ? "" : join(prefix.transitions) + ".";
  return "w_j = " + p + "(" + join(cycle) + ")^j." + join(branch);
}

std::optional<AntichainComb> infinite_antichain(const RationalTreeScheme& s) {
  if (is_barren(s).barren) return std::nullopt;
  const SchemeAnalysis an = analyze_scheme(s);

  const bool growth = !an.growth_states.empty();
  const std::vector<int>& anchors = growth ? an.growth_states : an.exit_states;
  if (anchors.empty()) throw std::logic_error("non-barren scheme without a comb anchor");
  const int a = anchors.front();  // states are sorted, so this is the least id
  const std::string anchor = s.states()[static_cast<std::size_t>(a)];

  std::set<std::string> everywhere(s.states().begin(), s.states().end());
  std::set<std::string> in_comp;
  for (int v : an.members[static_cast<std::size_t>(an.comp[static_cast<std::size_t>(a)])])
    in_comp.insert(s.states()[static_cast<std::size_t>(v)]);

  AntichainComb comb;
  comb.prefix.transitions = *shortest_lex_path(s, s.root(), anchor, everywhere);

  std::vector<const Transition*> inside, outside;
  for (int ti : s.transitions_from(anchor)) {
    const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
    (in_comp.count(t.dst) ? inside : outside).push_back(&t);
  }
  if (growth) {
    // Least inside arrow peels off, second-least pumps the cycle.
    comb.branch = {inside[0]->id};
    comb.cycle = {inside[1]->id};
    auto back = shortest_lex_path(s, inside[1]->dst, anchor, in_comp);
    comb.cycle.insert(comb.cycle.end(), back->begin(), back->end());
  } else {
    // Chordless cycle: follow the unique inside arrows around; peel off at
    // the least exit.
    std::string at = anchor;
    do {
      const Transition* step = nullptr;
      for (int ti : s.transitions_from(at)) {
        const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
        if (in_comp.count(t.dst)) {
          step = &t;
          break;
        }
      }
      comb.cycle.push_back(step->id);
      at = step->dst;
    } while (at != anchor);
    comb.branch = {outside[0]->id};
  }
  return comb;
}

RationalTreeScheme rooted_at(const RationalTreeScheme& s, const std::string& state) {
  if (!s.has_state(state)) throw std::invalid_argument("unknown state '" + state + "'");
  std::set<std::string> keep;
  std::deque<std::string> bfs{state};
  keep.insert(state);
  while (!bfs.empty()) {
    const std::string v = bfs.front();
    bfs.pop_front();
    for (int ti : s.transitions_from(v)) {
      const Transition& t = s.transitions()[static_cast<std::size_t>(ti)];
      if (keep.insert(t.dst).second) bfs.push_back(t.dst);
    }
  }
  std::vector<std::string> states(keep.begin(), keep.end());
  std::vector<Transition> transitions;
  for (const Transition& t : s.transitions())
    if (keep.count(t.src)) transitions.push_back(t);
  return RationalTreeScheme(std::move(states), std::move(transitions), state);
}

RationalTreeScheme path_space(const RationalTreeScheme& s, const TreeVertexAddress& v) {
  return rooted_at(s, address_state(s, v));
}

RationalTreeScheme path_space(const FiniteQuiver& tree, const std::vector<std::string>& arrow_path) {
  if (!tree.root()) throw std::invalid_argument("path_space needs a rooted quiver");
  std::string at = *tree.root();
  for (const std::string& id : arrow_path) {
    const Arrow& a = tree.arrow(id);
    if (a.src != at)
      throw std::invalid_argument("address breaks at '" + id + "': expected source '" + at + "'");
    at = a.dst;
  }
  return as_scheme(tree, at);
}

RationalTreeScheme as_scheme(const FiniteQuiver& q, const std::string& root) {
  std::set<std::string> keep{root};
  std::deque<std::string> bfs{root};
  while (!bfs.empty()) {
    const std::string v = bfs.front();
    bfs.pop_front();
    for (int ai : q.arrows_from(v)) {
      const Arrow& a = q.arrows()[static_cast<std::size_t>(ai)];
      if (keep.insert(a.dst).second) bfs.push_back(a.dst);
    }
  }
  std::vector<std::string> states(keep.begin(), keep.end());
  std::vector<Transition> transitions;
  for (const Arrow& a : q.arrows())
    if (keep.count(a.src)) transitions.push_back({a.id, a.src, a.dst});
  return RationalTreeScheme(std::move(states), std::move(transitions), root);
}

}  // namespace treq
