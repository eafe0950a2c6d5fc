#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "rdfview/errors.hpp"
#include "rdfview/graph.hpp"

namespace rdfview {

// Parses N-Triples text (one statement per line, '#' comments, blank lines
// allowed). Throws ParseError with the offending line number on malformed
// input, including literals in subject position.
Graph parse_ntriples(std::string_view text);

// Serializes deterministically: one statement per line, sorted by subject,
// then predicate, then object under the term total order.
std::string serialize_ntriples(const Graph& g);
void serialize_ntriples(const Graph& g, std::ostream& out);

}  // namespace rdfview
