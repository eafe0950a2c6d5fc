#include "rdfview/datagen.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include "rdfview/prefixes.hpp"

namespace rdfview::datagen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Short stable label suffix; distinct `tag` values give independent streams.
std::string tag_hex(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t v = splitmix64(seed ^ (tag * 0x100000001b3ULL + index));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<std::uint32_t>(v));
  return buf;
}

const char* kMo = "http://purl.org/ontology/mo/";
const char* kFoaf = "http://xmlns.com/foaf/0.1/";
const char* kDc = "http://purl.org/dc/elements/1.1/";
const char* kBio = "http://purl.org/vocab/bio/0.1/";
const char* kOwl = "http://www.w3.org/2002/07/owl#";
const char* kEvent = "http://purl.org/NET/c4dm/event.owl#";

Term mo(const char* local) { return Term::iri(std::string(kMo) + local); }
Term foaf(const char* local) { return Term::iri(std::string(kFoaf) + local); }

Term xint(std::size_t value) {
  return Term::literal(std::to_string(value), vocab::xsd_integer());
}

const std::array<const char*, 8> kWords = {
    "Crimson", "Silver", "Velvet",  "Hollow",
    "Neon",    "Wooden", "Distant", "Golden"};

const std::array<const char*, 6> kPlaces = {"USA",    "France", "Italy",
                                            "Sweden", "Japan",  "Canada"};

std::string artist_name(std::size_t i, const std::string& hex) {
  std::string name = i % 4 == 0 ? "The " : "";
  name += kWords[i % kWords.size()];
  name += " ";
  name += hex;
  return name;
}

// Four schema triples present in every generated graph.
void add_schema(Graph::Builder& b) {
  b.add({mo("Record"), vocab::rdfs_subClassOf(), mo("MusicalManifestation")});
  b.add({mo("Track"), vocab::rdfs_subClassOf(), mo("MusicalManifestation")});
  b.add({mo("singer"), vocab::rdfs_subPropertyOf(), mo("performer")});
  b.add({mo("performer"), vocab::rdfs_subPropertyOf(),
         Term::iri(std::string(kEvent) + "agent")});
}

// Rotating per-artist extra: image, biography, one-line bio, sameAs link or
// location (location alternates between an IRI and a plain literal).
void add_artist_extra(Graph::Builder& b, const Term& artist, std::size_t i,
                      std::uint64_t seed, std::uint64_t tag) {
  std::string hex = tag_hex(seed, tag, i);
  switch (i % 5) {
    case 0:
      b.add({artist, foaf("img"),
             Term::iri("http://img.example.org/artist/" + hex + ".jpg")});
      break;
    case 1:
      b.add({artist, mo("biography"), Term::literal("Biography " + hex)});
      break;
    case 2:
      b.add({artist, Term::iri(std::string(kBio) + "olb"),
             Term::literal("One line " + hex)});
      break;
    case 3:
      b.add({artist, Term::iri(std::string(kOwl) + "sameAs"),
             Term::iri("http://zitgist.com/music/artist/" + hex)});
      break;
    default:
      if ((i / 5) % 2 == 0) {
        b.add({artist, foaf("based_near"),
               Term::iri(std::string("http://dbpedia.org/resource/") +
                         kPlaces[(i / 5) % kPlaces.size()])});
      } else {
        b.add({artist, foaf("based_near"),
               Term::literal(std::string("Somewhere near ") +
                             kPlaces[(i / 5) % kPlaces.size()])});
      }
      break;
  }
}

std::pair<Graph, Manifest> gen_catalogue(const GenProfile& p, bool magnatune) {
  const std::string base = magnatune ? "http://dbtune.org/magnatune/resource/"
                                     : "http://dbtune.org/jamendo/resource/";
  Graph::Builder b;
  add_schema(b);
  Manifest m;
  m.profile = p;
  std::size_t k = 0;  // global record index
  for (std::size_t i = 0; i < p.artist_count; ++i) {
    std::string ahex = tag_hex(p.seed, 1, i);
    Term artist = Term::iri(base + "artist/" + std::to_string(i) + "-" + ahex);
    b.add({artist, vocab::rdf_type(), mo("MusicArtist")});
    b.add({artist, foaf("name"), Term::literal(artist_name(i, ahex))});
    add_artist_extra(b, artist, i, p.seed, 2);
    for (std::size_t r = 0; r < p.records_per_artist; ++r, ++k) {
      std::string rhex = tag_hex(p.seed, 3, k);
      Term record =
          Term::iri(base + "record/" + std::to_string(k) + "-" + rhex);
      b.add({record, vocab::rdf_type(), mo("Record")});
      b.add({record, Term::iri(std::string(kDc) + "title"),
             Term::literal("Album " + std::to_string(k) + " " + rhex)});
      if (magnatune) {
        b.add({record, foaf("maker"), artist});
      } else {
        // Authorship direction rotates: made only, maker only, or both.
        if (k % 3 != 1) b.add({artist, foaf("made"), record});
        if (k % 3 != 0) b.add({record, foaf("maker"), artist});
        if (k % 4 == 3)
          b.add({record, mo("available_as"),
                 Term::iri(base + "torrent/" + std::to_string(k))});
      }
      m.authored.emplace_back(artist, record);
    }
  }
  Graph g = b.build();
  m.triple_count = g.size();
  return {std::move(g), std::move(m)};
}

std::pair<Graph, Manifest> gen_peel(const GenProfile& p) {
  const std::string base = "http://dbtune.org/peel/";
  Graph::Builder b;
  add_schema(b);
  Manifest m;
  m.profile = p;
  const std::size_t venue_pool = std::max<std::size_t>(1, p.artist_count / 2);
  // venue index -> artist indices performing there, for the colleague list.
  std::vector<std::vector<std::size_t>> at_venue(venue_pool);
  std::vector<Term> artists(p.artist_count);
  std::size_t j = 0;  // global performance index
  std::size_t g = 0;  // global track index
  for (std::size_t i = 0; i < p.artist_count; ++i) {
    std::string ahex = tag_hex(p.seed, 4, i);
    Term artist = Term::iri(base + "artist/" + std::to_string(i) + "-" + ahex);
    artists[i] = artist;
    b.add({artist, vocab::rdf_type(), mo("MusicArtist")});
    b.add({artist, foaf("name"), Term::literal(artist_name(i, ahex))});
    for (std::size_t r = 0; r < p.records_per_artist; ++r, ++j) {
      std::string phex = tag_hex(p.seed, 5, j);
      Term perf =
          Term::iri(base + "performance/" + std::to_string(j) + "-" + phex);
      b.add({perf, mo("performer"), artist});
      b.add({artist, mo("performed"), perf});
      if (j % 2 == 0) {
        std::size_t v = (j / 2) % venue_pool;
        b.add({perf, Term::iri(std::string(kEvent) + "place"),
               Term::iri(base + "venue/" + std::to_string(v))});
        at_venue[v].push_back(i);
      }
      for (std::size_t t = 0; t < p.tracks_per_record; ++t, ++g) {
        std::string thex = tag_hex(p.seed, 6, g);
        Term signal =
            Term::iri(base + "signal/" + std::to_string(g) + "-" + thex);
        Term track =
            Term::iri(base + "track/" + std::to_string(g) + "-" + thex);
        b.add({perf, mo("recorded_as"), signal});
        b.add({signal, mo("published_as"), track});
        b.add({track, mo("track_number"), xint(g % 7 + 1)});
        if (g % 5 == 0)
          b.add({track, mo("chart_position"), xint(g % 9 + 1)});
      }
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& idx : at_venue)
    for (std::size_t a : idx)
      for (std::size_t c : idx)
        if (a != c) pairs.emplace(a, c);
  for (auto [a, c] : pairs) m.colleagues.emplace_back(artists[a], artists[c]);
  Graph gr = b.build();
  m.triple_count = gr.size();
  return {std::move(gr), std::move(m)};
}

}  // namespace

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::Jamendo: return "jamendo";
    case Shape::Magnatune: return "magnatune";
    default: return "peel";
  }
}

std::size_t expected_triples(const GenProfile& p) {
  const std::size_t A = p.artist_count;
  const std::size_t AR = A * p.records_per_artist;
  switch (p.shape) {
    case Shape::Jamendo:
      return 4 + 3 * A + 3 * AR + AR / 3 + AR / 4;
    case Shape::Magnatune:
      return 4 + 3 * A + 3 * AR;
    default: {
      const std::size_t APT = AR * p.tracks_per_record;
      return 4 + 2 * A + 2 * AR + (AR + 1) / 2 + 3 * APT + (APT + 4) / 5;
    }
  }
}

std::pair<Graph, Manifest> generate(const GenProfile& p) {
  switch (p.shape) {
    case Shape::Jamendo: return gen_catalogue(p, false);
    case Shape::Magnatune: return gen_catalogue(p, true);
    default: return gen_peel(p);
  }
}

std::vector<GenProfile> profiles_for_target(std::size_t total_triples,
                                            std::uint64_t seed) {
  // Per-artist costs with the default fan-outs below.
  auto artists_for = [](double share_triples, double per_artist) {
    return static_cast<std::size_t>(share_triples / per_artist + 0.5);
  };
  double t = static_cast<double>(total_triples);
  GenProfile jam{Shape::Jamendo, artists_for(0.5 * t, 13.75), 3, 2, seed};
  GenProfile mag{Shape::Magnatune, artists_for(0.3 * t, 12.0), 3, 2,
                 splitmix64(seed + 1)};
  GenProfile peel{Shape::Peel, artists_for(0.2 * t, 19.8), 2, 2,
                  splitmix64(seed + 2)};
  return {jam, mag, peel};
}

std::string Manifest::to_json() const {
  nlohmann::json j;
  j["shape"] = shape_name(profile.shape);
  j["artist_count"] = profile.artist_count;
  j["records_per_artist"] = profile.records_per_artist;
  j["tracks_per_record"] = profile.tracks_per_record;
  j["seed"] = profile.seed;
  j["triple_count"] = triple_count;
  auto pairs = [](const std::vector<std::pair<Term, Term>>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, b] : v)
      arr.push_back({std::string(a.text()), std::string(b.text())});
    return arr;
  };
  j["authored"] = pairs(authored);
  j["colleagues"] = pairs(colleagues);
  return j.dump(2);
}

}  // namespace rdfview::datagen
