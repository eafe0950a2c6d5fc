#pragma once

#include <string_view>
#include <vector>

namespace rdfview::corpus {

// Pattern family a workload query exercises, named by its dominant operator.
enum class PatternKind { Bgp, Group, Optional, Union, NamedGraph };

std::string_view kind_name(PatternKind k);

// One query of the music-catalogue reference workload. Groups build on each
// other: A is plain patterns, B adds FILTER, C adds absent-binding negation,
// D adds ORDER BY.
struct CorpusQuery {
  int id;         // 1..18
  char group;     // 'A'..'D'
  PatternKind kind;
  std::string_view text;
};

// The eighteen CONSTRUCT queries of the reference workload, in id order.
const std::vector<CorpusQuery>& reference_queries();

// One controlled check of a subproperty/subclass/typing inference rule.
// Expected extents are written as prefixed triples (default-graph TriG).
struct InferenceCase {
  std::string_view name;   // e.g. "subPropertyOf (1)"
  std::string_view query;  // CONSTRUCT whose template equals its pattern
  // Extent with inference disabled.
  std::string_view plain_rows;
  // Extent with inference enabled: everything the rules can derive.
  std::string_view entailed_rows;
  // Rows the reference result table lists in addition to entailed_rows even
  // though no rule derives them; reported as a discrepancy, never expected.
  std::string_view extra_reference_rows;
};

const std::vector<InferenceCase>& inference_cases();

// Ten-triple controlled dataset the inference cases run against.
std::string_view inference_data_trig();

// Stored view merging three authorship representations from two catalogue
// graphs, plus a query that consumes it.
std::string_view authorship_view_trig();
std::string_view authorship_usage_query();

// Stored view relating artists whose performances share a venue, plus a
// query that consumes it.
std::string_view colleagues_view_trig();
std::string_view colleagues_usage_query();

}  // namespace rdfview::corpus
