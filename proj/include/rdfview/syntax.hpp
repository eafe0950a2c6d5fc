#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdfview/ast.hpp"
#include "rdfview/errors.hpp"

namespace rdfview {

using PrefixBindings = std::vector<std::pair<std::string, std::string>>;

// Parses one query (SELECT / CONSTRUCT / ASK; DESCRIBE is rejected as an
// unsupported form). Prefixed names resolve against the query's own
// prologue, then `extra_prefixes`, then the engine default table; an
// unknown prefix or a relative IRI without BASE raises ParseError.
Query parse_query(std::string_view text);
Query parse_query(std::string_view text, const PrefixBindings& extra_prefixes);

// Canonical text form: parse_query(serialize_query(q)) is structurally
// equal to q. Body IRIs are emitted absolute; the prologue is re-emitted
// verbatim.
std::string serialize_query(const Query& q);

}  // namespace rdfview
