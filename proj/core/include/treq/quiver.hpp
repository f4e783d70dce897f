#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treq {

using BigInt = boost::multiprecision::cpp_int;

// Identifiers appearing in presentations and generated addresses.
bool valid_id(const std::string& s);

struct Arrow {
  std::string id, src, dst;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Finite quiver with stable ordering: vertices sorted, arrows sorted by id.
class FiniteQuiver {
 public:
  FiniteQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
               std::optional<std::string> root = std::nullopt);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::optional<std::string>& root() const { return root_; }

  bool has_vertex(const std::string& v) const;
  const Arrow& arrow(const std::string& id) const;
  // Out-/in-arrows in arrow-id order.
  const std::vector<int>& arrows_from(const std::string& v) const;
  const std::vector<int>& arrows_into(const std::string& v) const;

  friend bool operator==(const FiniteQuiver& a, const FiniteQuiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_ && a.root_ == b.root_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::optional<std::string> root_;
  std::map<std::string, int> vertex_index_, arrow_index_;
  std::vector<std::vector<int>> out_, in_;  // arrow indices per vertex
  int vindex(const std::string& v) const;
};

// Rooted-tree diagnosis: exactly one path from the root to every vertex.
struct TreeCheck {
  bool ok = false;
  std::vector<std::string> unreachable;                 // sorted vertex ids
  std::optional<std::vector<std::string>> cycle;        // arrow ids around a cycle
  std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>>
      double_path;                                      // two root paths to one vertex
  std::string describe() const;
};

TreeCheck validate_tree(const FiniteQuiver& q, const std::string& root);

// No infinite forward path; for a finite quiver that means no directed cycle.
bool is_right_rooted(const FiniteQuiver& q);

// All directed paths v -> w as arrow-id sequences in lexicographic order;
// includes the empty path when v == w.  Throws std::invalid_argument when the
// quiver has a directed cycle.
std::vector<std::vector<std::string>> paths_between(const FiniteQuiver& q,
                                                    const std::string& v,
                                                    const std::string& w);

struct Transition {
  std::string id, src, dst;
  friend bool operator==(const Transition&, const Transition&) = default;
};

// Finite digraph presenting an infinite tree: the tree vertices are the
// transition paths from the root state.  Every state must be reachable.
class RationalTreeScheme {
 public:
  RationalTreeScheme(std::vector<std::string> states, std::vector<Transition> transitions,
                     std::string root);

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::string& root() const { return root_; }

  bool has_state(const std::string& s) const;
  const Transition& transition(const std::string& id) const;
  const std::vector<int>& transitions_from(const std::string& s) const;  // id order

  friend bool operator==(const RationalTreeScheme& a, const RationalTreeScheme& b) {
    return a.states_ == b.states_ && a.transitions_ == b.transitions_ && a.root_ == b.root_;
  }

 private:
  std::vector<std::string> states_;
  std::vector<Transition> transitions_;
  std::string root_;
  std::map<std::string, int> state_index_, transition_index_;
  std::vector<std::vector<int>> out_;
};

// Vertex of an unfolding, named by its transition-id path from the root.
struct TreeVertexAddress {
  std::vector<std::string> transitions;
  std::string render() const;  // "()" for the root, ids joined by '.'
  friend bool operator==(const TreeVertexAddress&, const TreeVertexAddress&) = default;
  auto operator<=>(const TreeVertexAddress&) const = default;
};

bool valid_address(const RationalTreeScheme& s, const TreeVertexAddress& a);
// State reached by following the address; throws on invalid addresses.
std::string address_state(const RationalTreeScheme& s, const TreeVertexAddress& a);

// Tree of all transition paths of length <= depth; vertex ids are rendered
// addresses, arrow ids equal their target's address.  Root is "()".
FiniteQuiver unfold(const RationalTreeScheme& s, int depth);

// n_i = number of transition paths of length exactly i, by iterated
// multiplication with the transition-count matrix.
std::vector<BigInt> level_counts(const RationalTreeScheme& s, int i_max);

struct BarrenCertificate {
  bool barren = false;
  // barren case: least index from which the level counts stay constant
  int transient = 0;
  BigInt stable_value = 0;
  // growth case: a state with two arrows staying inside its strongly
  // connected component, or a root walk meeting two distinct cycles
  std::optional<std::string> witness_state;
  std::vector<std::string> witness_arrows;
  std::optional<std::pair<std::string, std::string>> two_cycle_walk;
  // bounded-but-oscillating case: the inspected window of level counts
  int window_start = 0;
  std::vector<BigInt> window;
  std::string describe() const;
};

// Level counts are eventually constant iff they are constant on the window
// [s, 2s+2] (they obey a linear recurrence of order <= s = #states), and that
// forces the structural picture: every reachable cycle is chordless and no
// root walk meets two cycles.
BarrenCertificate is_barren(const RationalTreeScheme& s);

// Infinite family w_j = prefix . cycle^j . branch (j >= 1) of pairwise
// unconnected tree vertices; exists exactly when the scheme is not barren.
struct AntichainComb {
  TreeVertexAddress prefix;
  std::vector<std::string> cycle;   // transition ids, nonempty
  std::vector<std::string> branch;  // transition ids, nonempty
  TreeVertexAddress member(int j) const;
  std::string describe() const;
};

std::optional<AntichainComb> infinite_antichain(const RationalTreeScheme& s);

// Presentation of the tree of paths starting at the given vertex; for trees
// this is the sub-scheme rooted at the vertex's state.
RationalTreeScheme path_space(const RationalTreeScheme& s, const TreeVertexAddress& v);
RationalTreeScheme path_space(const FiniteQuiver& tree, const std::vector<std::string>& arrow_path);
// Sub-scheme spanned by the states reachable from the given one.
RationalTreeScheme rooted_at(const RationalTreeScheme& s, const std::string& state);

// A finite tree viewed as a (cycle-free) scheme presenting itself.
RationalTreeScheme as_scheme(const FiniteQuiver& q, const std::string& root);

}  // namespace treq
