#include <doctest.h>

#include <random>
#include <set>

#include "eval_testutil.hpp"
#include "rdfview/eval.hpp"
#include "rdfview/ntriples.hpp"
#include "rdfview/syntax.hpp"

using namespace rdfview;
using testutil::engine_matches_oracle;

namespace {

Dataset ds_of(const std::string& ntriples) {
  Dataset ds;
  ds.default_graph = parse_ntriples(ntriples);
  return ds;
}

SolutionSet run_select(const std::string& query, const Dataset& ds) {
  return eval_query(parse_query(query), ds, nullptr, EvalOptions{}).rows;
}

Graph run_construct(const std::string& query, const Dataset& ds) {
  return eval_query(parse_query(query), ds, nullptr, EvalOptions{}).graph;
}

ExprPtr vref(const char* n) { return make_expr(Expr::VarRef{Var{n}}); }
ExprPtr lit(const char* s) { return make_expr(Expr::Constant{Term::literal(s)}); }

}  // namespace

TEST_CASE("filter expression three-valued logic") {
  std::vector<Var> vars = {Var{"x"}, Var{"y"}};
  Term t_iri = Term::iri("http://e.org/a");
  std::vector<Term> row = {Term::literal("The Band"), Term{}};  // y unbound

  CHECK(eval_filter_expr(make_expr(Expr::Bound{Var{"x"}}), vars, row) == Truth::True);
  CHECK(eval_filter_expr(make_expr(Expr::Bound{Var{"y"}}), vars, row) == Truth::False);
  CHECK(eval_filter_expr(make_expr(Expr::Bound{Var{"zz"}}), vars, row) == Truth::False);

  // Regex(str("The Band"), "^The", "i") is true; case-insensitivity.
  auto rex = [&](const char* pat, const char* flags) {
    return eval_filter_expr(make_expr(Expr::Regex{make_expr(Expr::Str{vref("x")}), pat, flags}),
                            vars, row);
  };
  CHECK(rex("^The", "i") == Truth::True);
  CHECK(rex("^the", "i") == Truth::True);
  CHECK(rex("^the", "") == Truth::False);
  CHECK(rex("band", "i") == Truth::True);   // substring match
  CHECK(rex("^Band", "i") == Truth::False); // anchored

  // Unbound inside non-BOUND operators is an error.
  auto cmp = [&](Cmp op, ExprPtr l, ExprPtr r) {
    return eval_filter_expr(make_expr(Expr::Compare{op, l, r}), vars, row);
  };
  CHECK(cmp(Cmp::Eq, vref("y"), lit("a")) == Truth::Error);
  CHECK(eval_filter_expr(make_expr(Expr::IsIri{vref("y")}), vars, row) == Truth::Error);

  // Integer lexical forms compare numerically; strings bytewise.
  CHECK(cmp(Cmp::Lt, lit("3"), lit("5")) == Truth::True);
  CHECK(cmp(Cmp::Lt, lit("9"), lit("10")) == Truth::True);  // numeric, not bytewise
  CHECK(cmp(Cmp::Lt, lit("b"), lit("a")) == Truth::False);
  CHECK(cmp(Cmp::Gt, lit("b"), lit("a")) == Truth::True);
  CHECK(cmp(Cmp::Ne, lit("a"), lit("a")) == Truth::False);
  CHECK(cmp(Cmp::Eq, lit("5"),
            make_expr(Expr::Constant{Term::literal("5", Term::iri(
                                                            "http://www.w3.org/2001/XMLSchema#integer"))})) ==
        Truth::True);

  // Three-valued connectives: error && false = false; error || true = true.
  ExprPtr err = make_expr(Expr::Compare{Cmp::Eq, vref("y"), lit("a")});
  ExprPtr tru = make_expr(Expr::Bound{Var{"x"}});
  ExprPtr fls = make_expr(Expr::Bound{Var{"y"}});
  CHECK(eval_filter_expr(make_expr(Expr::And{err, fls}), vars, row) == Truth::False);
  CHECK(eval_filter_expr(make_expr(Expr::And{err, tru}), vars, row) == Truth::Error);
  CHECK(eval_filter_expr(make_expr(Expr::Or{err, tru}), vars, row) == Truth::True);
  CHECK(eval_filter_expr(make_expr(Expr::Or{err, fls}), vars, row) == Truth::Error);
  CHECK(eval_filter_expr(make_expr(Expr::Not{err}), vars, row) == Truth::Error);

  // isIRI.
  std::vector<Term> row2 = {t_iri, Term::literal("x")};
  CHECK(eval_filter_expr(make_expr(Expr::IsIri{vref("x")}), vars, row2) == Truth::True);
  CHECK(eval_filter_expr(make_expr(Expr::IsIri{vref("y")}), vars, row2) == Truth::False);
}

TEST_CASE("single triple pattern binds all variables") {
  Dataset ds = ds_of("<http://e.org/s> <http://e.org/p> <http://e.org/o> .\n");
  SolutionSet s = run_select("SELECT * WHERE { ?s ?p ?o }", ds);
  REQUIRE(s.nrows == 1);
  REQUIRE(s.width() == 3);
  CHECK(s.at(0, 0).text() == "http://e.org/s");
  CHECK(s.at(0, 1).text() == "http://e.org/p");
  CHECK(s.at(0, 2).text() == "http://e.org/o");
}

TEST_CASE("negation by failure via optional and unbound check") {
  Dataset ds = ds_of(
      "<http://e.org/a1> <http://e.org/bio> \"lived\" .\n"
      "<http://e.org/a1> <http://e.org/name> \"one\" .\n"
      "<http://e.org/a2> <http://e.org/name> \"two\" .\n"
      "<http://e.org/a3> <http://e.org/name> \"three\" .\n");
  SolutionSet s = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x WHERE { ?x :name ?n . OPTIONAL { ?x :bio ?b } FILTER (!BOUND(?b)) }",
      ds);
  REQUIRE(s.nrows == 2);
  std::set<std::string> got;
  for (std::size_t r = 0; r < s.nrows; ++r) got.insert(s.at(r, 0).text());
  CHECK(got == std::set<std::string>{"http://e.org/a2", "http://e.org/a3"});
}

TEST_CASE("engine matches oracle on random bgps") {
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 150; ++i) {
    Dataset ds;
    ds.default_graph = testutil::rand_graph(rng, 50);
    PatternPtr p = testutil::rand_bgp(rng);
    CAPTURE(i);
    CHECK(engine_matches_oracle(p, ds));
  }
}

TEST_CASE("engine matches oracle on random composed patterns") {
  std::mt19937_64 rng(60350);
  for (int i = 0; i < 150; ++i) {
    Dataset ds = testutil::rand_dataset(rng, 30);
    PatternPtr p = testutil::rand_pattern(rng);
    CAPTURE(i);
    CHECK(engine_matches_oracle(p, ds));
  }
}

TEST_CASE("union commutativity") {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 40; ++i) {
    Dataset ds = testutil::rand_dataset(rng, 25);
    PatternPtr a = testutil::rand_pattern(rng, 1);
    PatternPtr b = testutil::rand_pattern(rng, 1);
    SolutionSet ab = eval_pattern_flat(make_pattern(GraphPattern::Union{a, b}), ds, nullptr, {});
    SolutionSet ba = eval_pattern_flat(make_pattern(GraphPattern::Union{b, a}), ds, nullptr, {});
    CHECK(same_multiset(ab, ba));
  }
}

TEST_CASE("optional preserves required-part solutions") {
  std::mt19937_64 rng(888);
  for (int i = 0; i < 40; ++i) {
    Dataset ds = testutil::rand_dataset(rng, 25);
    PatternPtr req = testutil::rand_bgp(rng);
    PatternPtr opt = testutil::rand_pattern(rng, 1);
    GraphPattern::Group g;
    g.elements = {req, make_pattern(GraphPattern::Optional{opt})};
    SolutionSet with = eval_pattern_flat(make_pattern(std::move(g)), ds, nullptr, {});
    SolutionSet base = eval_pattern_flat(req, ds, nullptr, {});

    // Every base solution must be subsumed by at least one output solution.
    auto rows_with = testutil::to_rows(with);
    for (const auto& m : testutil::to_rows(base)) {
      bool found = false;
      for (const auto& w : rows_with) {
        bool sub = true;
        for (const auto& [k, v] : m) {
          auto it = w.find(k);
          if (it == w.end() || !(it->second == v)) {
            sub = false;
            break;
          }
        }
        if (sub) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
    CHECK(with.nrows >= base.nrows);
  }
}

TEST_CASE("distinct order limit offset") {
  Dataset ds = ds_of(
      "<http://e.org/s1> <http://e.org/p> \"3\" .\n"
      "<http://e.org/s1> <http://e.org/p> \"10\" .\n"
      "<http://e.org/s2> <http://e.org/p> \"3\" .\n"
      "<http://e.org/s2> <http://e.org/p> \"7\" .\n");

  SolutionSet all = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?v WHERE { ?s :p ?v } ORDER BY ?v", ds);
  REQUIRE(all.nrows == 4);
  CHECK(all.at(0, 0).text() == "3");
  CHECK(all.at(1, 0).text() == "3");
  CHECK(all.at(2, 0).text() == "7");
  CHECK(all.at(3, 0).text() == "10");  // numeric, not lexicographic

  SolutionSet dis = run_select(
      "PREFIX : <http://e.org/>\nSELECT DISTINCT ?v WHERE { ?s :p ?v } ORDER BY DESC(?v)", ds);
  REQUIRE(dis.nrows == 3);
  CHECK(dis.at(0, 0).text() == "10");
  CHECK(dis.at(1, 0).text() == "7");
  CHECK(dis.at(2, 0).text() == "3");

  SolutionSet win = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?v WHERE { ?s :p ?v } ORDER BY ?v LIMIT 2 OFFSET 1", ds);
  REQUIRE(win.nrows == 2);
  CHECK(win.at(0, 0).text() == "3");
  CHECK(win.at(1, 0).text() == "7");

  // ORDER BY preserves the multiset.
  SolutionSet unordered = run_select("PREFIX : <http://e.org/>\nSELECT ?v WHERE { ?s :p ?v }", ds);
  CHECK(same_multiset(all, unordered));

  // DISTINCT idempotence.
  SolutionSet dis2 = run_select(
      "PREFIX : <http://e.org/>\nSELECT DISTINCT ?v WHERE { ?s :p ?v } ORDER BY DESC(?v)", ds);
  CHECK(same_multiset(dis, dis2));
}

TEST_CASE("ask semantics") {
  CHECK_FALSE(eval_query(parse_query("ASK { ?s ?p ?o }"), Dataset{}, nullptr, {}).truth);
  Dataset ds = ds_of("<http://e.org/s> <http://e.org/p> \"v\" .\n");
  CHECK(eval_query(parse_query("ASK { ?s ?p ?o }"), ds, nullptr, {}).truth);
  CHECK_FALSE(eval_query(parse_query("PREFIX : <http://e.org/>\nASK { ?s :nope ?o }"), ds,
                         nullptr, {})
                  .truth);
  // Empty group matches with the empty mapping.
  CHECK(eval_query(parse_query("ASK {}"), Dataset{}, nullptr, {}).truth);
}

TEST_CASE("construct identity on ground graphs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    Dataset ds;
    ds.default_graph = testutil::rand_graph(rng, 30);
    Graph out = run_construct("CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }", ds);
    CHECK(out == ds.default_graph);
  }
}

TEST_CASE("construct drops ill-typed and unbound instantiations") {
  Dataset ds = ds_of(
      "<http://e.org/s> <http://e.org/p> \"lit\" .\n"
      "<http://e.org/s> <http://e.org/p> <http://e.org/o> .\n");
  // ?o in subject position: the literal binding must be dropped.
  Graph out = run_construct(
      "PREFIX : <http://e.org/>\nCONSTRUCT { ?o :inv ?s } WHERE { ?s :p ?o }", ds);
  CHECK(out.size() == 1);
  CHECK(out.contains(Triple(Term::iri("http://e.org/o"), Term::iri("http://e.org/inv"),
                            Term::iri("http://e.org/s"))));

  // Unbound template variable contributes nothing for that triple.
  Graph out2 = run_construct(
      "PREFIX : <http://e.org/>\n"
      "CONSTRUCT { ?s :q ?b . ?s :r \"k\" } WHERE { ?s :p ?o . OPTIONAL { ?s :none ?b } }",
      ds);
  CHECK(out2.size() == 1);
  CHECK(out2.contains(Triple(Term::iri("http://e.org/s"), Term::iri("http://e.org/r"),
                             Term::literal("k"))));
}

TEST_CASE("construct blank nodes are fresh per solution") {
  Dataset ds = ds_of(
      "<http://e.org/s1> <http://e.org/p> \"a\" .\n"
      "<http://e.org/s2> <http://e.org/p> \"b\" .\n");
  Graph out = run_construct(
      "PREFIX : <http://e.org/>\nCONSTRUCT { _:m :of ?s . _:m :val ?o } WHERE { ?s :p ?o }", ds);
  // Two solutions, one fresh blank each, two triples per solution.
  CHECK(out.size() == 4);
  std::set<std::string> blanks;
  for (const Triple& t : out.triples()) {
    REQUIRE(t.s.is_blank());
    blanks.insert(t.s.text());
  }
  CHECK(blanks.size() == 2);
  // Same label within one solution: each blank has both :of and :val.
  for (const std::string& b : blanks) {
    CHECK(out.count_matches(Term::blank(b), Term::iri("http://e.org/of"), Term{}) == 1);
    CHECK(out.count_matches(Term::blank(b), Term::iri("http://e.org/val"), Term{}) == 1);
  }
}

TEST_CASE("cartesian construct uses factors not the cross product") {
  // q5-shaped query: two variable-disjoint GRAPH groups; template triples
  // each touch one group. The result must equal flatten-then-instantiate.
  Dataset ds;
  Graph::Builder j, m;
  for (int i = 0; i < 8; ++i) {
    j.add(Term::iri("http://e.org/art" + std::to_string(i)), Term::iri("http://e.org/made"),
          Term::iri("http://e.org/work" + std::to_string(i)));
    m.add(Term::iri("http://e.org/w" + std::to_string(i)), Term::iri("http://e.org/maker"),
          Term::iri("http://e.org/a" + std::to_string(i % 3)));
  }
  ds.named[Term::iri("http://e.org/jam")] = j.build();
  ds.named[Term::iri("http://e.org/mag")] = m.build();

  std::string q =
      "PREFIX : <http://e.org/>\n"
      "CONSTRUCT { ?a1 :made ?w1 . ?a2 :made ?w2 }\n"
      "WHERE { GRAPH :jam { ?a1 :made ?w1 } GRAPH :mag { ?w2 :maker ?a2 } }";
  Graph fast = run_construct(q, ds);

  Query parsed = parse_query(q);
  SolutionSet flat = eval_pattern_flat(parsed.where, ds, nullptr, {});
  CHECK(flat.nrows == 64);  // the cross product, when actually expanded
  Graph slow = construct_instantiate(parsed.construct_template, flat);
  CHECK(fast == slow);
  CHECK(fast.size() == 16);  // 8 + 8 distinct edges

  // An empty factor empties the whole product.
  ds.named[Term::iri("http://e.org/mag")] = Graph{};
  CHECK(run_construct(q, ds).empty());
}

TEST_CASE("graph patterns over named graphs") {
  Dataset ds;
  ds.default_graph = parse_ntriples("<http://e.org/d> <http://e.org/p> \"def\" .\n");
  ds.named[Term::iri("http://e.org/g1")] =
      parse_ntriples("<http://e.org/x> <http://e.org/p> \"one\" .\n");
  ds.named[Term::iri("http://e.org/g2")] =
      parse_ntriples("<http://e.org/y> <http://e.org/p> \"two\" .\n");

  // GRAPH with IRI.
  SolutionSet s1 = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?s WHERE { GRAPH :g1 { ?s :p ?v } }", ds);
  REQUIRE(s1.nrows == 1);
  CHECK(s1.at(0, 0).text() == "http://e.org/x");

  // GRAPH with variable enumerates named graphs only.
  SolutionSet s2 = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?g ?s WHERE { GRAPH ?g { ?s :p ?v } } ORDER BY ?g", ds);
  REQUIRE(s2.nrows == 2);
  CHECK(s2.at(0, 0).text() == "http://e.org/g1");
  CHECK(s2.at(1, 0).text() == "http://e.org/g2");

  // Unknown graph IRI: empty result, not an error.
  SolutionSet s3 = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?s WHERE { GRAPH :nope { ?s :p ?v } }", ds);
  CHECK(s3.nrows == 0);

  // The default graph is not visible inside GRAPH.
  SolutionSet s4 = run_select(
      "PREFIX : <http://e.org/>\nSELECT ?g WHERE { GRAPH ?g { :d :p \"def\" } }", ds);
  CHECK(s4.nrows == 0);
}

TEST_CASE("filter inside graph group equals filter applied after") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 30; ++i) {
    Dataset ds = testutil::rand_dataset(rng, 25);
    if (ds.named.empty()) continue;
    PatternPtr inner = testutil::rand_bgp(rng);
    ExprPtr cond = testutil::rand_expr(rng);
    Term gname = ds.named.begin()->first;

    GraphPattern::Group withf;
    withf.elements = {make_pattern(GraphPattern::Filtered{inner, cond})};
    PatternPtr inside =
        make_pattern(GraphPattern::GraphAt{TermOrVar(gname), make_pattern(std::move(withf))});

    PatternPtr outside = make_pattern(GraphPattern::Filtered{
        make_pattern(GraphPattern::GraphAt{TermOrVar(gname), inner}), cond});

    SolutionSet a = eval_pattern_flat(inside, ds, nullptr, {});
    SolutionSet b = eval_pattern_flat(outside, ds, nullptr, {});
    CHECK(same_multiset(a, b));
  }
}

TEST_CASE("from merges standardize blank nodes apart") {
  Dataset ds;
  ds.default_graph = Graph{};
  ds.named[Term::iri("http://e.org/g1")] =
      parse_ntriples("_:x <http://e.org/p> \"one\" .\n");
  ds.named[Term::iri("http://e.org/g2")] =
      parse_ntriples("_:x <http://e.org/p> \"two\" .\n");

  // Same label in both sources: after the merge they must stay distinct.
  SolutionSet s = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?s FROM :g1 FROM :g2 WHERE { ?s :p ?v }",
      ds);
  REQUIRE(s.nrows == 2);
  CHECK(s.at(0, 0) != s.at(1, 0));

  SolutionSet paired = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?a FROM :g1 FROM :g2 WHERE { ?a :p \"one\" . ?a :p \"two\" }",
      ds);
  CHECK(paired.nrows == 0);
}

TEST_CASE("from named adds graphs and unresolvable targets error") {
  Dataset ds;
  ds.named[Term::iri("http://e.org/g1")] =
      parse_ntriples("<http://e.org/x> <http://e.org/p> \"one\" .\n");

  SolutionSet s = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?s FROM NAMED :g1 WHERE { GRAPH :g1 { ?s :p ?v } }",
      ds);
  CHECK(s.nrows == 1);

  CHECK_THROWS_AS(run_select("PREFIX : <http://e.org/>\nSELECT ?s FROM :gone WHERE { ?s :p ?v }",
                             ds),
                  EvalError);
  CHECK_THROWS_AS(run_select(
                      "PREFIX : <http://e.org/>\nSELECT ?s FROM NAMED :gone WHERE { ?s ?p ?v }",
                      ds),
                  EvalError);
}

TEST_CASE("inline dataset clauses evaluate first") {
  Dataset ds;
  ds.default_graph = parse_ntriples(
      "<http://e.org/a> <http://e.org/knows> <http://e.org/b> .\n"
      "<http://e.org/b> <http://e.org/knows> <http://e.org/c> .\n");

  // FROM ( CONSTRUCT ): inverted edges merge into the background.
  SolutionSet s1 = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x ?y\n"
      "FROM ( CONSTRUCT { ?b :knownBy ?a } WHERE { ?a :knows ?b } )\n"
      "WHERE { ?x :knownBy ?y }",
      ds);
  CHECK(s1.nrows == 2);

  // FROM NAMED <iri> [ CONSTRUCT ]: result visible as a named graph.
  SolutionSet s2 = run_select(
      "PREFIX : <http://e.org/>\n"
      "SELECT ?x ?y\n"
      "FROM NAMED :inv [ CONSTRUCT { ?b :knownBy ?a } WHERE { ?a :knows ?b } ]\n"
      "WHERE { GRAPH :inv { ?x :knownBy ?y } . ?y :knows ?x }",
      ds);
  CHECK(s2.nrows == 2);
}

TEST_CASE("select projection and star") {
  Dataset ds = ds_of("<http://e.org/s> <http://e.org/p> \"v\" .\n");
  SolutionSet s = run_select("PREFIX : <http://e.org/>\nSELECT ?missing ?s WHERE { ?s :p ?v }",
                             ds);
  REQUIRE(s.nrows == 1);
  REQUIRE(s.width() == 2);
  CHECK_FALSE(s.at(0, 0).valid());
  CHECK(s.at(0, 1).text() == "http://e.org/s");

  SolutionSet star = run_select("PREFIX : <http://e.org/>\nSELECT * WHERE { ?s :p ?v }", ds);
  REQUIRE(star.width() == 2);
  CHECK(star.vars[0].name == "s");
  CHECK(star.vars[1].name == "v");
}

TEST_CASE("evaluation deadline fires") {
  Graph::Builder b;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      b.add(Term::iri("http://e.org/n" + std::to_string(i)), Term::iri("http://e.org/p"),
            Term::iri("http://e.org/n" + std::to_string(j)));
  Dataset ds;
  ds.default_graph = b.build();

  EvalOptions opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  Query q = parse_query(
      "PREFIX : <http://e.org/>\n"
      "SELECT * WHERE { ?a :p ?b . ?b :p ?c . ?c :p ?d . ?d :p ?e }");
  CHECK_THROWS_AS(eval_query(q, ds, nullptr, opts), EvalTimeout);
}

TEST_CASE("graph source resolves unknown names") {
  struct FixedSource : GraphSource {
    std::optional<Graph> resolve(const Term& iri) override {
      if (iri.text() == "http://e.org/view")
        return parse_ntriples("<http://e.org/v> <http://e.org/p> \"from-view\" .\n");
      return std::nullopt;
    }
  };
  FixedSource src;
  Dataset ds;
  ds.named[Term::iri("http://e.org/view")] =
      parse_ntriples("<http://e.org/v> <http://e.org/p> \"loaded\" .\n");

  // Loaded graphs shadow the source.
  Query q = parse_query(
      "PREFIX : <http://e.org/>\nSELECT ?o WHERE { GRAPH :view { ?s :p ?o } }");
  SolutionSet shadowed = eval_query(q, ds, &src, {}).rows;
  REQUIRE(shadowed.nrows == 1);
  CHECK(shadowed.at(0, 0).text() == "loaded");

  Dataset empty;
  SolutionSet via = eval_query(q, empty, &src, {}).rows;
  REQUIRE(via.nrows == 1);
  CHECK(via.at(0, 0).text() == "from-view");

  // FROM resolves through the source as well.
  SolutionSet from = eval_query(parse_query("PREFIX : <http://e.org/>\n"
                                            "SELECT ?o FROM :view WHERE { ?s :p ?o }"),
                                empty, &src, {})
                         .rows;
  REQUIRE(from.nrows == 1);
  CHECK(from.at(0, 0).text() == "from-view");
}

TEST_CASE("construct with order by and limit applies to solutions") {
  Dataset ds = ds_of(
      "<http://e.org/s1> <http://e.org/p> \"1\" .\n"
      "<http://e.org/s2> <http://e.org/p> \"2\" .\n"
      "<http://e.org/s3> <http://e.org/p> \"3\" .\n");
  Graph out = run_construct(
      "PREFIX : <http://e.org/>\n"
      "CONSTRUCT { ?s :kept ?v } WHERE { ?s :p ?v } ORDER BY DESC(?v) LIMIT 2",
      ds);
  CHECK(out.size() == 2);
  CHECK(out.contains(Triple(Term::iri("http://e.org/s3"), Term::iri("http://e.org/kept"),
                            Term::literal("3"))));
  CHECK(out.contains(Triple(Term::iri("http://e.org/s2"), Term::iri("http://e.org/kept"),
                            Term::literal("2"))));
}
