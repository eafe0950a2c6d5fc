#include <doctest.h>

#include <string>
#include <vector>

#include "rdfview/syntax.hpp"

using namespace rdfview;

namespace {

// Parse, print, reparse: the reparse must be structurally identical and the
// second print byte-identical (printing is a fixed point).
void check_round_trip(const std::string& text) {
  CAPTURE(text);
  Query q1 = parse_query(text);
  std::string printed = serialize_query(q1);
  CAPTURE(printed);
  Query q2 = parse_query(printed);
  CHECK(query_equal(q1, q2));
  CHECK(serialize_query(q2) == printed);
}

}  // namespace

TEST_CASE("parse basic select") {
  Query q = parse_query(
      "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
      "SELECT ?name ?mbox\n"
      "WHERE { ?x foaf:name ?name . ?x foaf:mbox ?mbox }");
  CHECK(q.form == QueryForm::Select);
  CHECK_FALSE(q.distinct);
  CHECK_FALSE(q.select_star);
  REQUIRE(q.projection.size() == 2);
  CHECK(q.projection[0].name == "name");
  CHECK(q.projection[1].name == "mbox");

  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  REQUIRE(bgp != nullptr);
  REQUIRE(bgp->patterns.size() == 2);
  const auto* p0 = as_term(bgp->patterns[0].p);
  REQUIRE(p0 != nullptr);
  CHECK(p0->text() == "http://xmlns.com/foaf/0.1/name");
  CHECK(as_var(bgp->patterns[0].s)->name == "x");
}

TEST_CASE("predicate-object and object lists, a keyword") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT * WHERE { ?x a :Person ; :knows ?y , ?z ; :age \"30\" . }");
  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  REQUIRE(bgp != nullptr);
  REQUIRE(bgp->patterns.size() == 4);
  CHECK(as_term(bgp->patterns[0].p)->text() ==
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  CHECK(as_term(bgp->patterns[1].p)->text() == "http://e.org/knows");
  CHECK(as_var(bgp->patterns[1].o)->name == "y");
  CHECK(as_var(bgp->patterns[2].o)->name == "z");
  CHECK(as_term(bgp->patterns[3].o)->text() == "30");
  CHECK(q.select_star);
}

TEST_CASE("filter attaches to innermost group") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :p ?v . FILTER (?v > \"3\") }");
  const auto* f = std::get_if<GraphPattern::Filtered>(&q.where->node);
  REQUIRE(f != nullptr);
  const auto* cmp = std::get_if<Expr::Compare>(&f->condition->node);
  REQUIRE(cmp != nullptr);
  CHECK(cmp->op == Cmp::Gt);
  CHECK(std::holds_alternative<GraphPattern::Bgp>(f->inner->node));
}

TEST_CASE("filters wrap in document order") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :p ?v . FILTER (?v > \"1\") FILTER (?v < \"9\") }");
  const auto* outer = std::get_if<GraphPattern::Filtered>(&q.where->node);
  REQUIRE(outer != nullptr);
  const auto* outer_cmp = std::get_if<Expr::Compare>(&outer->condition->node);
  REQUIRE(outer_cmp != nullptr);
  CHECK(outer_cmp->op == Cmp::Lt);  // last FILTER ends up outermost
  const auto* inner = std::get_if<GraphPattern::Filtered>(&outer->inner->node);
  REQUIRE(inner != nullptr);
  CHECK(std::get_if<Expr::Compare>(&inner->condition->node)->op == Cmp::Gt);
}

TEST_CASE("union chains are left associative") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { { ?x :a ?y } UNION { ?x :b ?y } UNION { ?x :c ?y } }");
  const auto* u = std::get_if<GraphPattern::Union>(&q.where->node);
  REQUIRE(u != nullptr);
  CHECK(std::holds_alternative<GraphPattern::Union>(u->left->node));
  const auto* right = std::get_if<GraphPattern::Bgp>(&u->right->node);
  REQUIRE(right != nullptr);
  CHECK(as_term(right->patterns[0].p)->text() == "http://e.org/c");
}

TEST_CASE("optional and graph patterns") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE {\n"
      "  GRAPH ?g { ?x :p ?y . OPTIONAL { ?y :q ?z } }\n"
      "  GRAPH :fixed { ?x :r ?w }\n"
      "}");
  const auto* grp = std::get_if<GraphPattern::Group>(&q.where->node);
  REQUIRE(grp != nullptr);
  REQUIRE(grp->elements.size() == 2);
  const auto* g1 = std::get_if<GraphPattern::GraphAt>(&grp->elements[0]->node);
  REQUIRE(g1 != nullptr);
  CHECK(as_var(g1->graph)->name == "g");
  const auto* g2 = std::get_if<GraphPattern::GraphAt>(&grp->elements[1]->node);
  REQUIRE(g2 != nullptr);
  CHECK(as_term(g2->graph)->text() == "http://e.org/fixed");

  const auto* inner = std::get_if<GraphPattern::Group>(&g1->inner->node);
  REQUIRE(inner != nullptr);
  REQUIRE(inner->elements.size() == 2);
  CHECK(std::holds_alternative<GraphPattern::Optional>(inner->elements[1]->node));
}

TEST_CASE("expressions parse with precedence") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :p ?v .\n"
      "FILTER (BOUND(?x) && !(?v = \"a\") || isIRI(?x) && REGEX(STR(?v), \"^ab\", \"i\")) }");
  const auto* f = std::get_if<GraphPattern::Filtered>(&q.where->node);
  REQUIRE(f != nullptr);
  // || binds loosest: (BOUND && !(..)) || (isIRI && REGEX).
  const auto* orn = std::get_if<Expr::Or>(&f->condition->node);
  REQUIRE(orn != nullptr);
  const auto* land = std::get_if<Expr::And>(&orn->lhs->node);
  REQUIRE(land != nullptr);
  CHECK(std::holds_alternative<Expr::Bound>(land->lhs->node));
  CHECK(std::holds_alternative<Expr::Not>(land->rhs->node));
  const auto* rand_ = std::get_if<Expr::And>(&orn->rhs->node);
  REQUIRE(rand_ != nullptr);
  CHECK(std::holds_alternative<Expr::IsIri>(rand_->lhs->node));
  const auto* rex = std::get_if<Expr::Regex>(&rand_->rhs->node);
  REQUIRE(rex != nullptr);
  CHECK(rex->pattern == "^ab");
  CHECK(rex->flags == "i");
  CHECK(std::holds_alternative<Expr::Str>(rex->text->node));
}

TEST_CASE("regex flag validation") {
  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?x ?p ?v . FILTER REGEX(?v, \"a\", \"g\") }"),
                  ParseError);
  CHECK_NOTHROW(parse_query("SELECT ?x WHERE { ?x ?p ?v . FILTER REGEX(?v, \"a\") }"));
}

TEST_CASE("construct and ask forms") {
  Query c = parse_query(
      "PREFIX : <http://e.org/>\n"
      "CONSTRUCT { ?x :p ?y . ?y a :T } WHERE { ?x :q ?y }");
  CHECK(c.form == QueryForm::Construct);
  REQUIRE(c.construct_template.size() == 2);
  CHECK(as_term(c.construct_template[1].p)->text() ==
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");

  Query a = parse_query("PREFIX : <http://e.org/>\nASK { ?x :p ?y }");
  CHECK(a.form == QueryForm::Ask);
  CHECK(a.projection.empty());
}

TEST_CASE("describe is rejected") {
  try {
    parse_query("DESCRIBE <http://e.org/x>");
    FAIL_CHECK("DESCRIBE should not parse");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unsupported query form") != std::string::npos);
  }
}

TEST_CASE("dataset clauses") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x FROM :g1 FROM NAMED :g2 WHERE { ?x :p ?y }");
  REQUIRE(q.dataset.size() == 2);
  CHECK(q.dataset[0].kind == DatasetClause::Kind::From);
  CHECK(q.dataset[0].graph.text() == "http://e.org/g1");
  CHECK(q.dataset[1].kind == DatasetClause::Kind::FromNamed);
  CHECK(q.dataset[1].graph.text() == "http://e.org/g2");
}

TEST_CASE("inline view dataset clauses") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x\n"
      "FROM ( CONSTRUCT { ?s :p ?o } WHERE { ?s :q ?o } )\n"
      "FROM NAMED :v [ CONSTRUCT { ?s :p ?o } WHERE { ?s :r ?o } ]\n"
      "WHERE { ?x :p ?y }");
  REQUIRE(q.dataset.size() == 2);
  CHECK(q.dataset[0].kind == DatasetClause::Kind::FromInline);
  REQUIRE(q.dataset[0].inline_query != nullptr);
  CHECK(q.dataset[0].inline_query->form == QueryForm::Construct);
  CHECK(q.dataset[1].kind == DatasetClause::Kind::FromNamedInline);
  CHECK(q.dataset[1].graph.text() == "http://e.org/v");
  REQUIRE(q.dataset[1].inline_query != nullptr);
  CHECK(q.dataset[1].inline_query->form == QueryForm::Construct);

  // Inline dataset queries must be CONSTRUCT.
  CHECK_THROWS_AS(
      parse_query("PREFIX : <http://e.org/>\n"
                  "SELECT ?x FROM ( SELECT ?s WHERE { ?s :q ?o } ) WHERE { ?x :p ?y }"),
      ParseError);
}

TEST_CASE("solution modifiers") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT DISTINCT ?x ?y WHERE { ?x :p ?y }\n"
      "ORDER BY ?y DESC(?x) LIMIT 10 OFFSET 5");
  CHECK(q.distinct);
  REQUIRE(q.order_by.size() == 2);
  CHECK_FALSE(q.order_by[0].descending);
  CHECK(q.order_by[1].descending);
  CHECK(q.limit == uint64_t{10});
  CHECK(q.offset == uint64_t{5});

  Query q2 = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :p ?y } OFFSET 5 LIMIT 10");
  CHECK(q2.limit == uint64_t{10});
  CHECK(q2.offset == uint64_t{5});

  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?x ?p ?y } LIMIT -1"), ParseError);
}

TEST_CASE("prefix resolution order and unknown prefix") {
  // Query prologue wins over extra bindings; extras win over defaults.
  PrefixBindings extra = {{"foaf", "http://override.example/"}, {"loc", "http://loc.example/"}};
  Query q = parse_query(
      "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
      "SELECT ?x WHERE { ?x foaf:name ?n . ?x loc:p ?m . ?x rdf:type ?t }",
      extra);
  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  REQUIRE(bgp != nullptr);
  CHECK(as_term(bgp->patterns[0].p)->text() == "http://xmlns.com/foaf/0.1/name");
  CHECK(as_term(bgp->patterns[1].p)->text() == "http://loc.example/p");
  CHECK(as_term(bgp->patterns[2].p)->text() ==
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");

  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?x nosuch:p ?y }"), ParseError);
}

TEST_CASE("base resolution") {
  Query q = parse_query(
      "BASE <http://base.example/dir/>\n"
      "SELECT ?x WHERE { ?x <rel> ?y . ?x </abs> ?z . ?x <http://full.example/p> ?w }");
  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  REQUIRE(bgp != nullptr);
  CHECK(as_term(bgp->patterns[0].p)->text() == "http://base.example/dir/rel");
  CHECK(as_term(bgp->patterns[1].p)->text() == "http://base.example/abs");
  CHECK(as_term(bgp->patterns[2].p)->text() == "http://full.example/p");
}

TEST_CASE("typographic quote styles") {
  Query q1 = parse_query("SELECT ?x WHERE { ?x ?p “hello” }");
  Query q2 = parse_query("SELECT ?x WHERE { ?x ?p ``hello'' }");
  Query q3 = parse_query("SELECT ?x WHERE { ?x ?p \"hello\" }");
  CHECK(query_equal(q1, q3));
  CHECK(query_equal(q2, q3));
}

TEST_CASE("keywords are case insensitive") {
  Query q = parse_query(
      "prefix : <http://e.org/>\n"
      "select distinct ?x where { ?x :p ?y . optional { ?y :q ?z } filter bound(?z) } limit 3");
  CHECK(q.form == QueryForm::Select);
  CHECK(q.distinct);
  CHECK(q.limit == uint64_t{3});
}

TEST_CASE("literals with datatype and language") {
  Query q = parse_query(
      "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
      "SELECT ?x WHERE { ?x ?p \"5\"^^xsd:integer . ?x ?q \"hi\"@en }");
  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  REQUIRE(bgp != nullptr);
  const Term* t0 = as_term(bgp->patterns[0].o);
  REQUIRE(t0 != nullptr);
  CHECK(t0->datatype().text() == "http://www.w3.org/2001/XMLSchema#integer");
  const Term* t1 = as_term(bgp->patterns[1].o);
  REQUIRE(t1 != nullptr);
  CHECK(t1->language() == "en");
}

TEST_CASE("integer literals") {
  Query q = parse_query("SELECT ?x WHERE { ?x ?p 42 }");
  const auto* bgp = std::get_if<GraphPattern::Bgp>(&q.where->node);
  const Term* o = as_term(bgp->patterns[0].o);
  REQUIRE(o != nullptr);
  CHECK(o->text() == "42");
  CHECK(o->datatype().text() == "http://www.w3.org/2001/XMLSchema#integer");
}

TEST_CASE("round trips") {
  std::vector<std::string> corpus = {
      "SELECT ?x WHERE { ?x ?p ?y }",

      "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
      "SELECT DISTINCT ?name WHERE { ?x foaf:name ?name . ?x foaf:mbox ?m }\n"
      "ORDER BY ?name LIMIT 5 OFFSET 2",

      "PREFIX : <http://e.org/>\n"
      "SELECT * WHERE { { ?x :a ?y } UNION { ?x :b ?y } UNION { ?y :c ?x } }",

      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :p ?v . OPTIONAL { ?v :q ?w . FILTER (?w != \"0\") } }",

      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { GRAPH ?g { ?x :p ?y } GRAPH :n { ?y :q ?x } }",

      "PREFIX : <http://e.org/>\n"
      "CONSTRUCT { ?x :p ?y . _:b :q ?x } WHERE { ?x :r ?y . FILTER REGEX(STR(?y), \"x\") }",

      "PREFIX : <http://e.org/>\n"
      "ASK { ?x :p ?y . FILTER (BOUND(?y) && isIRI(?x) || !(?x = ?y)) }",

      "PREFIX : <http://e.org/>\n"
      "SELECT ?x FROM :g FROM NAMED :h WHERE { ?x :p ?y } ORDER BY DESC(?x)",

      "PREFIX : <http://e.org/>\n"
      "SELECT ?x\n"
      "FROM ( CONSTRUCT { ?s :p ?o } WHERE { ?s :q ?o . FILTER (?o > \"1\") } )\n"
      "FROM NAMED :v [ CONSTRUCT { ?s :p ?o } WHERE { { ?s :r ?o } UNION { ?o :r ?s } } ]\n"
      "WHERE { ?x :p ?y . GRAPH :v { ?y :p ?x } }",

      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE {\n"
      "  { ?x :p ?v . FILTER (?v < \"9\") }\n"
      "  { ?x :q ?w }\n"
      "  OPTIONAL { ?w :r ?z }\n"
      "}",

      "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
      "SELECT ?x WHERE { ?x ?p \"5\"^^xsd:integer . ?x ?q \"salut\"@fr . ?x ?r 7 }",
  };
  for (const auto& text : corpus) check_round_trip(text);
}

TEST_CASE("parse errors report position") {
  try {
    parse_query("SELECT ?x WHERE { ?x ?p }");
    FAIL_CHECK("should not parse");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }
  CHECK_THROWS_AS(parse_query(""), ParseError);
  CHECK_THROWS_AS(parse_query("SELECT ?x { ?x ?p ?y }  trailing"), ParseError);
  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { \"lit\" ?p ?y }"), ParseError);
}

TEST_CASE("where keyword is optional") {
  Query a = parse_query("SELECT ?x WHERE { ?x ?p ?y }");
  Query b = parse_query("SELECT ?x { ?x ?p ?y }");
  CHECK(query_equal(a, b));
}

TEST_CASE("pattern vars order") {
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT * WHERE { ?b :p ?a . GRAPH ?g { ?a :q ?c } FILTER (?zz = \"1\") }");
  std::vector<Var> vars = query_pattern_vars(q);
  REQUIRE(vars.size() == 4);
  CHECK(vars[0].name == "b");
  CHECK(vars[1].name == "a");
  CHECK(vars[2].name == "g");
  CHECK(vars[3].name == "c");
}
