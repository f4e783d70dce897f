#pragma once

#include <map>
#include <set>
#include <string>

#include "treq/quiver.hpp"

namespace treq {

struct DotOptions {
  std::string graph_name = "tree";
  // Vertices sharing a value are emitted in one rank=same group (e.g. depth).
  std::map<std::string, int> rank_of;
  // Filled to mark special vertices (e.g. an antichain overlay).
  std::set<std::string> highlight;
};

// Deterministic digraph rendering: vertices in id order, then rank groups,
// then arrows in id order.
std::string emit_dot(const FiniteQuiver& q, const DotOptions& opts = {});

// Vertex depths from the root, for rank grouping.
std::map<std::string, int> depth_ranks(const FiniteQuiver& q);

// Syntactic check of what emit_dot produces: header, one balanced brace
// block, each statement a node, edge, or rank line with quoted names.
bool dot_is_valid(const std::string& text);

}  // namespace treq
