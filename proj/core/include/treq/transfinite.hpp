#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treq/ordinal.hpp"
#include "treq/quiver.hpp"
#include "treq/rep.hpp"
#include "treq/zmod.hpp"

namespace treq {

// One maximal totally ordered piece of a transfinite tree: a run of elements
// of ordinal length, optionally owning the supremum position ("top") when the
// length is a limit.  Successor lengths always contain their last element, so
// has_top is normalized to true for them.  Children attach directly above the
// parent's maximal element; a limit segment can only carry children once its
// top is present, unless the whole scheme is marked pre_completion.
struct SegmentNode {
  std::string id;
  Ordinal length;  // >= 1
  bool has_top = false;
  std::vector<std::string> children;  // sorted on construction
};

class SegmentScheme {
 public:
  SegmentScheme(std::vector<SegmentNode> nodes, std::string root, bool pre_completion = false);

  const std::vector<SegmentNode>& nodes() const { return nodes_; }  // sorted by id
  const SegmentNode& node(const std::string& id) const;
  const std::string& root() const { return root_; }
  bool pre_completion() const { return pre_completion_; }

  bool has_node(const std::string& id) const;
  // nullopt for the root.
  std::optional<std::string> parent(const std::string& id) const;
  // Node ids from the root to the given node, inclusive.
  std::vector<std::string> path_to(const std::string& id) const;
  // Preorder with children in sorted order.
  std::vector<std::string> preorder() const;

  // Number of elements the segment contributes, as an ordinal: length, plus
  // one more when a limit-length segment owns its top.
  Ordinal element_count(const std::string& id) const;
  // Offset of the segment's maximal element.
  Ordinal max_offset(const std::string& id) const;
  // Whether the given offset names an element of the segment.
  bool element_offset(const std::string& id, const Ordinal& offset) const;

  friend bool operator==(const SegmentScheme&, const SegmentScheme&);

 private:
  std::vector<SegmentNode> nodes_;
  std::string root_;
  bool pre_completion_ = false;
  std::map<std::string, int> index_;
  std::map<std::string, std::string> parent_;
};

// Element of the presented tree: the segment chain from the root plus an
// offset inside the last segment.
struct TransfiniteAddress {
  std::vector<std::string> node_path;
  Ordinal offset;
  std::string render() const;  // ids joined by '/', then '@offset'
  friend bool operator==(const TransfiniteAddress&, const TransfiniteAddress&) = default;
};

bool valid_transfinite_address(const SegmentScheme& t, const TransfiniteAddress& a);
// Tree order; nullopt when the addresses are incomparable.
std::optional<bool> address_le(const SegmentScheme& t, const TransfiniteAddress& a,
                               const TransfiniteAddress& b);

// Order type of the strict down-set: the element counts of all proper
// ancestor segments summed left to right, plus the offset.
Ordinal stratum(const SegmentScheme& t, const TransfiniteAddress& a);

// Which strata one segment occupies: [base, base + count).
struct SegmentSpan {
  std::vector<std::string> node_path;
  Ordinal base, count;
};

struct StrataProfile {
  Ordinal lambda_star;  // least stratum index with no elements
  std::vector<SegmentSpan> spans;
};

StrataProfile strata_profile(const SegmentScheme& t);

// Every chain has a least upper bound iff every limit-length segment owns its
// top.
bool is_complete(const SegmentScheme& t);

// A chain given either as finitely many addresses or as all elements of one
// segment below a cofinal offset.
struct ChainDescription {
  std::vector<TransfiniteAddress> finite;
  std::optional<std::pair<std::vector<std::string>, Ordinal>> cofinal;  // (node path, bound)
};

// The supremum address when the tree contains it; nullopt when it is missing
// (that is what completion adds).  Throws on malformed chains.
std::optional<TransfiniteAddress> lub_of_chain(const SegmentScheme& t,
                                               const ChainDescription& chain);

struct CompletionResult {
  SegmentScheme completed;
  // The address embedding is the identity; these are the new suprema.
  std::vector<TransfiniteAddress> added;
};

// Grants every limit-length segment its top.  Rejects pre_completion schemes:
// their deferred attachments would end up above the new tops, breaking both
// down-closure and stratum preservation.
CompletionResult complete(const SegmentScheme& t);

// Eventually-constant representation data on one segment: the module and the
// incoming step at finitely many offsets, identity maps in between.  The
// offset-0 step of the root segment comes from the zero module; the offset-0
// step of any other segment is the attachment map from the parent's final
// value.
struct Breakpoint {
  Ordinal offset;
  FgModule module;
  MatZm step_in;
};

class CocontinuousRep {
 public:
  CocontinuousRep(SegmentScheme scheme, Modulus mod,
                  std::map<std::string, std::vector<Breakpoint>> per_segment);

  const SegmentScheme& scheme() const { return scheme_; }
  const Modulus& modulus() const { return mod_; }
  const std::vector<Breakpoint>& breakpoints(const std::string& node) const;
  const FgModule& value_at(const TransfiniteAddress& a) const;
  // Composite structure map between comparable addresses.
  MatZm map_between(const TransfiniteAddress& from, const TransfiniteAddress& to) const;

 private:
  SegmentScheme scheme_;
  Modulus mod_;
  std::map<std::string, std::vector<Breakpoint>> data_;
};

// Colimit condition at limit positions: a breakpoint sitting at a limit
// offset must repeat the value it approaches, with the identity as its step;
// the same applies to attachments onto topless limit segments (the
// pre-completion shape).  Returns the violating addresses.
std::vector<TransfiniteAddress> check_cocontinuous(const CocontinuousRep& x);

// The indecomposable injective attached to (v, E): value E with identity maps
// on the down-set of v, zero elsewhere.  Requires a complete scheme and an
// indecomposable injective module.
CocontinuousRep build_indec_injective(const SegmentScheme& t, const TransfiniteAddress& v,
                                      const FgModule& e, const Modulus& mod);

// The finite tree of elements with stratum < depth, with vertex ids rendered
// from their addresses.
struct Truncation {
  FiniteQuiver tree;
  std::map<std::string, TransfiniteAddress> vertex_address;
};

Truncation truncate_tree(const SegmentScheme& t, int depth);
Representation truncate_rep(const CocontinuousRep& x, int depth);

// One classification label per tree element of the completion and per
// indecomposable injective module, streamed in (stratum, segment path,
// module) order.
struct ClassificationLabel {
  Ordinal stratum;
  TransfiniteAddress address;
  FgModule module;
};

class ClassificationStream {
 public:
  ClassificationStream(const SegmentScheme& t, const Modulus& mod);
  const SegmentScheme& completed() const { return completed_; }
  std::optional<ClassificationLabel> next();
  // Discard every label below the given stratum and continue from there.
  // Iterating next() alone can never cross a limit stratum in finite time;
  // this is the forward seek that makes the far side reachable.
  void skip_to(const Ordinal& stratum);

 private:
  void aim_at(const Ordinal& floor);  // least populated stratum >= floor
  SegmentScheme completed_;
  Modulus mod_;
  std::vector<FgModule> injectives_;
  std::vector<SegmentSpan> spans_;
  Ordinal stratum_;
  bool done_ = false;
  std::vector<ClassificationLabel> pending_;  // FIFO for the current stratum
  std::size_t pending_pos_ = 0;
};

std::vector<ClassificationLabel> classify_take(const SegmentScheme& t, const Modulus& mod,
                                               int count);

// Presentation of the tree of finite cover chains starting inside the given
// segment: a finite chain per finite-length segment, an absorbing loop once a
// limit length blocks further covers.
RationalTreeScheme segment_path_space(const SegmentScheme& t, const std::string& node);

struct NoetherianReport {
  bool noetherian = false;
  std::vector<std::pair<std::string, BarrenCertificate>> per_class;
};

// Every path space barren: per segment node for segment schemes (their path
// spaces are chains with finitely many branch points), per state for rational
// schemes.
NoetherianReport is_noetherian(const SegmentScheme& t);
NoetherianReport is_noetherian(const RationalTreeScheme& s);

}  // namespace treq
