#pragma once

#include <string>
#include <vector>

#include "atomspec/path_algebra.hpp"
#include "atomspec/quiver.hpp"
#include "atomspec/ring.hpp"

namespace atomspec {

// A relation expression captured verbatim (canonical token spelling) with
// its source position; resolved against the path algebra separately.
struct RelationSource {
  std::string text;
  int line = -1;
  int col = -1;

  friend bool operator==(const RelationSource& a, const RelationSource& b) {
    return a.text == b.text;
  }
};

struct ParsedInput {
  Quiver quiver;
  BaseRing ring = BaseRing::integers();  // default when no ring statement
  bool ring_declared = false;
  std::vector<RelationSource> relations;

  friend bool operator==(const ParsedInput& a, const ParsedInput& b) {
    return a.quiver == b.quiver && a.ring == b.ring &&
           a.ring_declared == b.ring_declared && a.relations == b.relations;
  }
};

// Parses the quiver description language:
//
//   vertices 1 2;
//   arrows a: 1 -> 2, b: 1 -> 2;
//   relations a - b;
//   ring F2;
//
// Statements may repeat and appear in any order; '#' comments run to end
// of line.  Relation expressions are kept as source fragments here and
// resolved later.  All errors carry a line/column position.
ParsedInput parse_quiver(const std::string& text);

// Canonical rendering; parse_quiver(to_dsl(p)) == p.
std::string to_dsl(const ParsedInput& input);

// Resolves one relation expression against the algebra.  Grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := INT | INT '*' factors | factors
//   factors:= factor ('*' factor)*
//   factor := name ('^' INT)?
//
// '*' multiplies in the path algebra, so "a*b" means "first b, then a".
// A name resolves to an arrow, or failing that to a vertex (its trivial
// path).  A bare integer term means that multiple of the algebra unit.
Relation parse_relation(const PathAlgebra& alg, const RelationSource& src);

std::vector<Relation> resolve_relations(const PathAlgebra& alg,
                                        const ParsedInput& input);

// Parse + resolve in one step.
struct LoadedInput {
  ParsedInput parsed;
  PathAlgebra algebra;
  std::vector<Relation> relations;
};

LoadedInput load_input(const std::string& text);

}  // namespace atomspec
