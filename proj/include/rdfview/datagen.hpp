#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rdfview/graph.hpp"
#include "rdfview/term.hpp"

namespace rdfview::datagen {

// Dataset families the generator can produce. Each family mimics the shape
// of a music catalogue published as RDF:
//  - Jamendo:   typed artists with names and per-artist extras (image,
//               biography, one-line bio, sameAs link, location), typed
//               records with titles linked by foaf:made / foaf:maker.
//  - Magnatune: typed artists with names and extras, typed records with
//               titles linked exclusively by foaf:maker.
//  - Peel:      artists with performances (mo:performer / mo:performed),
//               venues shared between performances, and a per-track chain
//               performance --recorded_as--> signal --published_as--> track
//               --track_number--> integer, with occasional chart positions.
enum class Shape { Jamendo, Magnatune, Peel };

std::string shape_name(Shape s);

struct GenProfile {
  Shape shape = Shape::Jamendo;
  std::size_t artist_count = 0;
  // For Peel this is performances per artist.
  std::size_t records_per_artist = 3;
  // Tracks per performance; only used by Peel.
  std::size_t tracks_per_record = 2;
  std::uint64_t seed = 0;
};

// Ground truth captured while generating, for checking query answers against
// what was actually put into the graph.
struct Manifest {
  GenProfile profile;
  std::size_t triple_count = 0;
  // Every (artist, record) pair connected by foaf:made or foaf:maker.
  std::vector<std::pair<Term, Term>> authored;
  // Ordered distinct artist pairs whose performances share a venue (Peel).
  std::vector<std::pair<Term, Term>> colleagues;

  std::string to_json() const;
};

// Exact number of triples generate() will produce for this profile.
std::size_t expected_triples(const GenProfile& p);

// Deterministic: the same profile always yields the same graph, and the
// graph layout depends on the seed only through resource labels.
std::pair<Graph, Manifest> generate(const GenProfile& p);

// Three profiles (Jamendo, Magnatune, Peel) whose combined size approximates
// `total_triples`, split roughly 50/30/20 across the shapes.
std::vector<GenProfile> profiles_for_target(std::size_t total_triples,
                                            std::uint64_t seed);

}  // namespace rdfview::datagen
