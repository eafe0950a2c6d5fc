#include "rdfview/corpus.hpp"

namespace rdfview::corpus {

namespace {

constexpr std::string_view kQ1 = R"(# simple BGP

CONSTRUCT {?artist foaf:made ?record}

WHERE{
  ?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:name ?name
}
)";

constexpr std::string_view kQ2 = R"(# group graph pattern

CONSTRUCT {?artist mo:performed ?performance }

WHERE{
  {?performance mo:performer ?artist}
  {?performance mo:recorded_as ?signal}
  {?signal mo:published_as ?track}
  {?track mo:track_number ?num}
}
)";

constexpr std::string_view kQ3 = R"(# optional graph pattern

CONSTRUCT {?artist foaf:name ?name;
           foaf:img ?img;
           mo:biography ?bio;
           bio:olb ?olb;
           owl:sameAs ?artist2;
           foaf:based_near ?p }

WHERE {
      ?artist a mo:MusicArtist ;
      foaf:name ?name .

OPTIONAL { ?artist foaf:img ?img}.
OPTIONAL { ?artist mo:biography ?bio}.
OPTIONAL { ?artist bio:olb ?olb}.
OPTIONAL { ?artist owl:sameAs ?artist2 }.
OPTIONAL { ?artist foaf:based_near ?p }
}
)";

constexpr std::string_view kQ4 = R"(# union graph pattern

CONSTRUCT {?artist foaf:made ?record}
WHERE{
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist }
  UNION
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?artist foaf:made ?record }
}
)";

constexpr std::string_view kQ5 = R"(#graph pattern applied to a named graph
CONSTRUCT {?artist1 foaf:made ?work1 .
           ?artist2 foaf:made ?work2}
FROM NAMED <http://dbtune.org/jamendo>
FROM NAMED <http://dbtune.org/magnatune>
WHERE
{  GRAPH <http://dbtune.org/jamendo>{
    ?artist1 foaf:made ?work1 } .
  GRAPH <http://dbtune.org/magnatune> {
    ?work2 foaf:maker ?artist2 }}
)";

constexpr std::string_view kQ6 = R"(# q1 plus FILTER condition
CONSTRUCT {?artist foaf:made ?record}
WHERE{
  ?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:name ?name .
  FILTER (REGEX(str(?name), "^the", "i"))}
)";

constexpr std::string_view kQ7 = R"(# q2 plus FILTER condition
CONSTRUCT {?artist mo:performed ?performance .
           ?track mo:track_number ?num }
WHERE{
  {?performance mo:performer ?artist}
  {?performance mo:recorded_as ?signal}
  {?signal mo:published_as ?track}
  {?track mo:track_number ?num}
  FILTER (?num > 1 && ?num < 5 )}
)";

constexpr std::string_view kQ8 = R"(# q3 plus FILTER condition

CONSTRUCT {?artist foaf:name ?name;
           foaf:img ?img;
           mo:biography ?bio;
           bio:olb ?olb;
           owl:sameAs ?artist2;
           foaf:based_near ?p }
WHERE {
         ?artist a mo:MusicArtist ;
         foaf:name ?name .
OPTIONAL { ?artist foaf:img ?img}.
OPTIONAL { ?artist mo:biography ?bio}.
OPTIONAL { ?artist bio:olb ?olb}.
OPTIONAL { ?artist owl:sameAs ?artist2 }.
OPTIONAL { ?artist foaf:based_near ?p .
           FILTER (!isIRI(?p))}
}
)";

constexpr std::string_view kQ9 = R"(# q4 plus FILTER condition

CONSTRUCT {?artist foaf:made ?record}
WHERE{
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:based_near ?place .
  FILTER (?place != <http://dbpedia.org/resource/USA>)
  } UNION
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?artist foaf:made ?record }
}
)";

constexpr std::string_view kQ10 = R"(# q5 plus FILTER condition

CONSTRUCT {?artist1 foaf:made ?work1 .
           ?name2 foaf:made ?work2}
FROM NAMED <http://dbtune.org/jamendo>
FROM NAMED <http://dbtune.org/magnatune>
WHERE
{
  GRAPH <http://dbtune.org/jamendo>{
    ?artist1 foaf:made ?work1 } .
  GRAPH <http://dbtune.org/magnatune> {
    ?work2 foaf:maker ?artist2 .
    ?artist2 foaf:name ?name2 .
    FILTER (REGEX(str(?name2), "^the", "i"))}
}
)";

constexpr std::string_view kQ11 = R"(# q6 plus negation

CONSTRUCT {?artist foaf:made ?record}
WHERE{
  ?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:name ?name .
  FILTER (REGEX(str(?name), "^the", "i")).
  OPTIONAL {?artist mo:biography ?bio}.
  FILTER (!BOUND(?bio))
}
)";

constexpr std::string_view kQ12 = R"(# q7 plus negation
CONSTRUCT { ?artist mo:performed ?performance .
            ?track mo:track_number ?num }
WHERE{
  {?performance mo:performer ?artist}
  {?performance mo:recorded_as ?signal}
  {?signal mo:published_as ?track}
  {?track mo:track_number ?num}
  FILTER (?num > 1 && ?num < 5 )
  OPTIONAL {?track mo:chart_position ?pos}.
  FILTER (!BOUND(?pos)) }
)";

constexpr std::string_view kQ13 = R"(# q8 plus negation

CONSTRUCT {?artist foaf:name ?name;
           foaf:img ?img;
           mo:biography ?bio;
           bio:olb ?olb;
           foaf:based_near ?p }
WHERE {
 ?artist a mo:MusicArtist ;
         foaf:name ?name .
OPTIONAL { ?artist foaf:img ?img}.
OPTIONAL { ?artist mo:biography ?bio}.
OPTIONAL { ?artist bio:olb ?olb}.
OPTIONAL { ?artist owl:sameAs ?artist2 .
           FILTER (!BOUND(?artist2))}.
OPTIONAL { ?artist foaf:based_near ?p .
           FILTER (!isIRI(?p))}
}
)";

constexpr std::string_view kQ14 = R"(# q9 plus negation

CONSTRUCT {?artist foaf:made ?record}
WHERE{
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:based_near ?place .
  FILTER (?place !=
     <http://dbpedia.org/resource/USA>)
  } UNION
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?artist foaf:made ?record .
  OPTIONAL {?record mo:available_as ?support }.
  FILTER (!BOUND(?support))}
}
)";

constexpr std::string_view kQ15 = R"(# q11 plus ORDER BY

CONSTRUCT {?artist foaf:made ?record}

WHERE{
  ?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:name ?name .

  FILTER (REGEX(str(?name), "^the", "i")).

  OPTIONAL {?artist mo:biography ?bio}.
  FILTER (!BOUND(?bio))
}
ORDER BY ?artist
)";

constexpr std::string_view kQ16 = R"(# q12 plus ORDER BY

CONSTRUCT { ?artist mo:performed ?performance .
            ?track mo:track_number ?num }

WHERE{
  {?performance mo:performer ?artist}
  {?performance mo:recorded_as ?signal}
  {?signal mo:published_as ?track}
  {?track mo:track_number ?num}

  FILTER (?num > 1 && ?num < 5 )

  OPTIONAL {?track mo:chart_position ?pos}.
  FILTER (!BOUND(?pos))
}
ORDER BY ?artist ?num
)";

constexpr std::string_view kQ17 = R"(# q13 plus ORDER BY

CONSTRUCT {?artist foaf:name ?name;
           foaf:img ?img;
           mo:biography ?bio;
           bio:olb ?olb;
           owl:sameAs ?artist2;
           foaf:based_near ?p }
WHERE {
 ?artist a mo:MusicArtist ;
         foaf:name ?name .
OPTIONAL { ?artist foaf:img ?img}.
OPTIONAL { ?artist mo:biography ?bio}.
OPTIONAL { ?artist bio:olb ?olb}.
OPTIONAL { ?artist owl:sameAs ?artist2 .
           FILTER (!BOUND(?artist2))}.
OPTIONAL { ?artist foaf:based_near ?p .
           FILTER (!isIRI(?p))}
}
ORDER BY DESC(?artist)
)";

constexpr std::string_view kQ18 = R"(# q14 plus ORDER BY

CONSTRUCT {?artist foaf:made ?record}
WHERE{
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?record foaf:maker ?artist .
  ?artist foaf:based_near ?place .
  FILTER (?place !=
       <http://dbpedia.org/resource/USA>)
  } UNION
  {?artist a mo:MusicArtist .
  ?record a mo:Record .
  ?artist foaf:made ?record }
}
ORDER BY DESC(?artist)
)";

constexpr std::string_view kInferenceData = R"(dat:inferenceTest {
 mo:singer rdfs:subPropertyOf mo:performer .
 mo:performer rdfs:subPropertyOf eve:agent .
 dat:JohnnyCash mo:singer dat:PersonalJesus .
 mo:Record rdfs:subClassOf mo:MusicalManifestation .
 mo:LiveAlbum rdfs:subClassOf mo:Record .
 dat:TheManComesAround rdf:type mo:Record .
 mo:chart_position rdfs:domain mo:MusicalManifestation .
 dat:IWalkTheLine mo:chart_position "1" .
 mo:recorded rdfs:range mo:Record .
 dat:JohnnyCash mo:recorded dat:AmericanRecordings .
}
)";

constexpr std::string_view kAuthorshipView = R"(def:query1 {
def:query1 ng:definedBy
``CONSTRUCT {?artist foaf:made ?record}
WHERE {
  {GRAPH <http://dbtune.org/jamendo/>
    { ?artist foaf:made ?record .
      ?artist rdf:type mo:MusicArtist .
      ?record rdf:type mo:Record
    }
  }UNION
  {GRAPH <http://dbtune.org/jamendo/>
    { ?record foaf:maker ?artist .
      ?artist rdf:type mo:MusicArtist .
      ?record rdf:type mo:Record
    }
  }UNION
  {GRAPH <http://dbtune.org/magnatune/>
    { ?record foaf:maker ?artist .
      ?artist rdf:type mo:MusicArtist .
      ?record rdf:type mo:Record
    }
  }}''^^ng:query
}
)";

constexpr std::string_view kAuthorshipUsage = R"(SELECT DISTINCT ?artist ?record ?recordTitle
WHERE { ?record dc:title ?recordTitle .
    { GRAPH <http://definedViews/query1>
        {?artist foaf:made ?record }
    }
}
)";

constexpr std::string_view kColleaguesView = R"(def:coleaguesView {
def:coleaguesView ng:definedBy
``CONSTRUCT {?a1 def:coleagues ?a2}
 FROM dbtune:peel
 WHERE {?a1 mo:performed ?p1 .
  ?a2 mo:performed ?p2 .
  ?p1 event:place ?pl1 .
  ?p2 event:place ?pl1 .
  FILTER(!(?a1 = ?a2))}''^^ng:query }
)";

constexpr std::string_view kColleaguesUsage = R"(SELECT ?name1 ?name2
WHERE {
  GRAPH def:coleaguesView{
      ?artist1 def:coleagues ?artist2 } .
  GRAPH dbtune:peel {
    ?artist1 foaf:name ?name1 .
    ?artist2 foaf:name ?name2  }}
)";

}  // namespace

std::string_view kind_name(PatternKind k) {
  switch (k) {
    case PatternKind::Bgp: return "BGP";
    case PatternKind::Group: return "Group GP";
    case PatternKind::Optional: return "Optional GP";
    case PatternKind::Union: return "Union GP";
    default: return "Graph FROM NAMED";
  }
}

const std::vector<CorpusQuery>& reference_queries() {
  using K = PatternKind;
  static const std::vector<CorpusQuery> qs = {
      {1, 'A', K::Bgp, kQ1},       {2, 'A', K::Group, kQ2},
      {3, 'A', K::Optional, kQ3},  {4, 'A', K::Union, kQ4},
      {5, 'A', K::NamedGraph, kQ5},
      {6, 'B', K::Bgp, kQ6},       {7, 'B', K::Group, kQ7},
      {8, 'B', K::Optional, kQ8},  {9, 'B', K::Union, kQ9},
      {10, 'B', K::NamedGraph, kQ10},
      {11, 'C', K::Bgp, kQ11},     {12, 'C', K::Group, kQ12},
      {13, 'C', K::Optional, kQ13},{14, 'C', K::Union, kQ14},
      {15, 'D', K::Bgp, kQ15},     {16, 'D', K::Group, kQ16},
      {17, 'D', K::Optional, kQ17},{18, 'D', K::Union, kQ18},
  };
  return qs;
}

const std::vector<InferenceCase>& inference_cases() {
  static const std::vector<InferenceCase> cases = {
      {"subPropertyOf (1)",
       "CONSTRUCT {?p rdfs:subPropertyOf event:agent}\n"
       "WHERE {?p rdfs:subPropertyOf event:agent}",
       "mo:performer rdfs:subPropertyOf event:agent .",
       "mo:performer rdfs:subPropertyOf event:agent .\n"
       "mo:singer rdfs:subPropertyOf event:agent .",
       ""},
      {"subPropertyOf (2)",
       "CONSTRUCT {dat:JohnnyCash mo:performer ?p}\n"
       "WHERE {dat:JohnnyCash mo:performer ?p}",
       "",
       "dat:JohnnyCash mo:performer dat:PersonalJesus .",
       ""},
      {"subClassOf (3)",
       "CONSTRUCT {?p rdfs:subClassOf mo:MusicalManifestation}\n"
       "WHERE {?p rdfs:subClassOf mo:MusicalManifestation}",
       "mo:Record rdfs:subClassOf mo:MusicalManifestation .",
       "mo:Record rdfs:subClassOf mo:MusicalManifestation .\n"
       "mo:LiveAlbum rdfs:subClassOf mo:MusicalManifestation .",
       ""},
      {"subClassOf (4)",
       "CONSTRUCT {dat:TheManComesAround rdf:type ?p}\n"
       "WHERE {dat:TheManComesAround rdf:type ?p}",
       "dat:TheManComesAround rdf:type mo:Record .",
       "dat:TheManComesAround rdf:type mo:Record .\n"
       "dat:TheManComesAround rdf:type mo:MusicalManifestation .",
       ""},
      {"typing (5)",
       "CONSTRUCT {dat:IWalkTheLine rdf:type ?p}\n"
       "WHERE {dat:IWalkTheLine rdf:type ?p}",
       "",
       "dat:IWalkTheLine rdf:type mo:MusicalManifestation .",
       // The reference table also lists this row, but neither the domain
       // rule (which yields MusicalManifestation) nor any other rule can
       // produce it from the dataset above.
       "dat:IWalkTheLine rdf:type mo:Record ."},
      {"typing (6)",
       "CONSTRUCT {dat:AmericanRecordings rdf:type ?p}\n"
       "WHERE {dat:AmericanRecordings rdf:type ?p}",
       "",
       "dat:AmericanRecordings rdf:type mo:Record .\n"
       "dat:AmericanRecordings rdf:type mo:MusicalManifestation .",
       ""},
  };
  return cases;
}

std::string_view inference_data_trig() { return kInferenceData; }
std::string_view authorship_view_trig() { return kAuthorshipView; }
std::string_view authorship_usage_query() { return kAuthorshipUsage; }
std::string_view colleagues_view_trig() { return kColleaguesView; }
std::string_view colleagues_usage_query() { return kColleaguesUsage; }

}  // namespace rdfview::corpus
