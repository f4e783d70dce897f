#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "treq/ordinal.hpp"
#include "treq/quiver.hpp"
#include "treq/rep.hpp"
#include "treq/transfinite.hpp"
#include "treq/witness.hpp"
#include "treq/zmod.hpp"

namespace treq {

using Json = nlohmann::ordered_json;

// Parse failure with the offending field's path (e.g. "nodes[2].length").
struct JsonParseError : std::runtime_error {
  JsonParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path(path) {}
  std::string path;
};

// Canonical text form: two-space indent, trailing newline; parsing an emitted
// document and emitting again is byte-identical.
std::string canon_dump(const Json& j);

Json ordinal_to_json(const Ordinal& o);
Ordinal ordinal_from_json(const Json& j, const std::string& path);

Json module_to_json(const FgModule& m);
FgModule module_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const MatZm& a);
MatZm matrix_from_json(const Json& j, std::int64_t m, const std::string& path);

Json finite_quiver_to_json(const FiniteQuiver& q);
FiniteQuiver finite_quiver_from_json(const Json& j, const std::string& path);

Json rational_scheme_to_json(const RationalTreeScheme& s);
RationalTreeScheme rational_scheme_from_json(const Json& j, const std::string& path);

Json segment_scheme_to_json(const SegmentScheme& t);
SegmentScheme segment_scheme_from_json(const Json& j, const std::string& path);

Json representation_to_json(const Representation& x);
Representation representation_from_json(const Json& j, const std::string& path);

Json cocontinuous_to_json(const CocontinuousRep& x);
CocontinuousRep cocontinuous_from_json(const Json& j, const std::string& path);

// Any of the five input document shapes, dispatched on "kind" (presence of
// "quiver" selects a representation).
using ParsedInput =
    std::variant<FiniteQuiver, RationalTreeScheme, SegmentScheme, Representation,
                 CocontinuousRep>;
ParsedInput parse_input(const std::string& text);

// Report serializers.  Ordinals inside reports appear in rendered text form.
Json tree_check_to_json(const TreeCheck& c);
Json barren_to_json(const BarrenCertificate& c);
Json antichain_to_json(const AntichainComb& comb, int members);
Json strata_profile_to_json(const StrataProfile& p);
Json completion_to_json(const CompletionResult& r);
Json labels_to_json(const std::vector<ClassificationLabel>& labels);
Json source_conditions_to_json(const SourceConditionsReport& r);
Json multiplicities_to_json(const std::vector<std::pair<std::string, int>>& parts);
Json violations_to_json(const std::vector<TransfiniteAddress>& v);
Json noetherian_to_json(const NoetherianReport& r);
Json forced_to_json(const ForcedComponentsReport& r);
Json growth_certificate_to_json(const NonInjectivityCertificate& c);
Json interchange_to_json(const InterchangeReport& r);

}  // namespace treq
