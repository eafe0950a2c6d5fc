#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdfview/dataset.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/syntax.hpp"

namespace rdfview {

// One `<name> { ... }` block, in document order. `raw` is the verbatim text
// between the braces, so callers can recover embedded strings exactly as
// written.
struct TrigBlock {
  Term name;
  Graph graph;
  std::string raw;
};

struct TrigDocument {
  Dataset dataset;                // named blocks merged per name + default statements
  std::vector<TrigBlock> blocks;  // named blocks, one entry per occurrence
  PrefixBindings prefixes;        // @prefix declarations, in order
};

// Parses the TriG subset: prefix/base declarations, bare default-graph
// statements, and named graph blocks with ';'/',' statement lists.
// Variables are rejected; blank nodes keep their document-scoped labels.
TrigDocument parse_trig(std::string_view text);

}  // namespace rdfview
