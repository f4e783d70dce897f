#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treq/quiver.hpp"
#include "treq/zmod.hpp"

namespace treq {

// Module-valued functor on a finite acyclic quiver: a module per vertex, a
// matrix per arrow.  Arrow matrices are canonicalized row-wise modulo the
// target's invariant factors on construction; missing data defaults to zero.
class Representation {
 public:
  Representation(FiniteQuiver quiver, Modulus mod,
                 std::map<std::string, FgModule> vertex_modules,
                 std::map<std::string, MatZm> arrow_maps);

  const FiniteQuiver& quiver() const { return quiver_; }
  const Modulus& modulus() const { return mod_; }
  const FgModule& module_at(const std::string& v) const;
  const MatZm& map_at(const std::string& arrow_id) const;
  const std::map<std::string, FgModule>& modules() const { return modules_; }
  const std::map<std::string, MatZm>& maps() const { return maps_; }

  // Ranks in quiver vertex order.
  std::vector<int> dimension_vector() const;
  bool is_zero() const;
  // Composite matrix along a path given by arrow ids (identity when empty).
  MatZm path_map(const std::vector<std::string>& arrow_path, const std::string& from) const;

  friend bool operator==(const Representation&, const Representation&);

 private:
  FiniteQuiver quiver_;
  Modulus mod_;
  std::map<std::string, FgModule> modules_;
  std::map<std::string, MatZm> maps_;
};

// Natural transformation candidate between representations on one quiver.
struct RepMorphism {
  Representation source, target;
  std::map<std::string, MatZm> components;  // per vertex
};

struct MorphismCheck {
  bool ok = false;
  std::vector<std::string> failing_arrows;
  std::string detail;  // set on shape mismatches
};

MorphismCheck check_morphism(const RepMorphism& eta);

// Identity morphism on x.
RepMorphism identity_morphism(const Representation& x);

// |Hom(x, y)| in factored form: naturality plus well-definedness constraints
// solved as one congruence system, divided by the matrix-representation
// redundancy (entry (i,j) of a component only matters mod the target factor).
PrimePowers hom_count(const Representation& x, const Representation& y);

// Generators of Hom(x, y): an honest basis when m is prime, otherwise a
// spanning set of the solution module.
std::vector<RepMorphism> hom_basis(const Representation& x, const Representation& y);

// Projective building block: value at w is one copy of M per path v -> w,
// arrows append themselves to the indexing path.
Representation stalk_functor(const std::string& v, const FgModule& m_module,
                             const FiniteQuiver& q, const Modulus& mod);

// Injective building block: value at w is one copy of M per path w -> v,
// arrows precompose themselves into the indexing path.
Representation costalk_functor(const std::string& v, const FgModule& m_module,
                               const FiniteQuiver& q, const Modulus& mod);

// Hom(S_v(M), X) is Hom_R(M, X(v)): counts must match and restriction to the
// trivial-path copy must have trivial kernel.
bool adjunction_left_check(const std::string& v, const FgModule& m_module,
                           const Representation& x);
// Hom(X, e_*^v(M)) is Hom_R(X(v), M), dually.
bool adjunction_right_check(const std::string& v, const FgModule& m_module,
                            const Representation& x);

// Direct sum with block-diagonal arrow maps; parts must share quiver and
// modulus.  sum_offset gives the starting row of one part inside the sum.
Representation rep_direct_sum(const std::vector<Representation>& parts);
int sum_offset(const std::vector<Representation>& parts, std::size_t part,
               const std::string& vertex);

// Largest semisimple subrepresentation, prime modulus only: at each vertex the
// joint kernel of the outgoing arrow matrices, returned as a column basis.
std::map<std::string, MatZm> socle(const Representation& x);

// Per-vertex outcome of the two local injectivity conditions: the vertex
// module is injective, and the bundled map onto the out-neighbour values
// splits.
struct VertexConditions {
  std::string vertex;
  bool module_injective = false;
  bool split_onto_targets = false;
};

struct SourceConditionsReport {
  std::vector<VertexConditions> per_vertex;
  bool overall = false;
};

SourceConditionsReport source_conditions_check(const Representation& x);
bool is_injective_rep(const Representation& x);

// Raised when a decomposition is asked of a representation that fails the
// injectivity conditions; carries the per-vertex diagnostics.
struct NotInjective : std::runtime_error {
  explicit NotInjective(SourceConditionsReport r)
      : std::runtime_error("representation is not injective"), report(std::move(r)) {}
  SourceConditionsReport report;
};

// Minimal injective extension over a field on a finite tree: one copy of the
// vertex injective per socle dimension, embedded through functionals dual to
// a socle basis.
std::pair<Representation, RepMorphism> injective_envelope(const Representation& x);

// Multiplicity of each vertex injective inside an injective representation
// (prime modulus, finite tree); sorted by vertex, zero entries dropped.
std::vector<std::pair<std::string, int>> decompose_injective(const Representation& x);

bool is_indecomposable_injective(const Representation& x);

}  // namespace treq
