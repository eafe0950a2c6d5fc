#include "rdfview/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "rdfview/corpus.hpp"
#include "rdfview/datagen.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/repository.hpp"
#include "rdfview/syntax.hpp"
#include "rdfview/trig.hpp"

namespace rdfview::bench {

namespace {

namespace fs = std::filesystem;
using steady = std::chrono::steady_clock;

void note_progress(const BenchOptions& opt, const std::string& line) {
  if (opt.progress) *opt.progress << "[bench] " << line << std::endl;
}

Term view_name(int id) {
  return Term::iri("http://definedViews/NG" + std::to_string(id));
}

// SELECT-star over one graph: FROM would merge the target into the
// background, so the extent is read through GRAPH scoping instead.
Query spo_over(const Term& graph_iri) {
  return parse_query("SELECT * WHERE { GRAPH <" +
                     std::string(graph_iri.text()) + "> {?s ?p ?o} }");
}

// Rows of a ?s ?p ?o selection, reassembled into a graph. Rows whose subject
// is a literal cannot form a triple and are dropped, mirroring how CONSTRUCT
// drops ill-formed template instantiations.
Graph rows_to_graph(const SolutionSet& rows) {
  Graph::Builder b;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = rows.row(i);
    if (r.size() != 3) continue;
    if (!r[0].valid() || !r[1].valid() || !r[2].valid()) continue;
    if (r[0].is_literal() || !r[1].is_iri()) continue;
    b.add({r[0], r[1], r[2]});
  }
  return b.build();
}

std::size_t symmetric_diff(const Graph& a, const Graph& b) {
  std::size_t d = 0;
  for (const Triple& t : a.triples())
    if (b.count_matches(t.s, t.p, t.o) == 0) ++d;
  for (const Triple& t : b.triples())
    if (a.count_matches(t.s, t.p, t.o) == 0) ++d;
  return d;
}

// Shape graphs loaded under the catalogue names the workload queries use.
void load_workload(Repository& repo, std::size_t total, std::uint64_t seed) {
  auto profiles = datagen::profiles_for_target(total, seed);
  const char* names[] = {"http://dbtune.org/jamendo",
                         "http://dbtune.org/magnatune",
                         "http://dbtune.org/peel"};
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    auto [g, m] = datagen::generate(profiles[i]);
    repo.add_graph(Term::iri(names[i]), std::move(g));
  }
}

fs::path fresh_scratch(const BenchOptions& opt) {
  if (!opt.scratch_dir.empty()) {
    fs::create_directories(opt.scratch_dir);
    return opt.scratch_dir;
  }
  std::random_device rd;
  fs::path p = fs::temp_directory_path() /
               ("rdfview-bench-" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

TimingCell time_view_query(const Repository& repo, int id,
                           const std::string& repo_name,
                           std::chrono::seconds timeout) {
  TimingCell cell;
  cell.query_id = id;
  cell.repo = repo_name;
  Query spo = spo_over(view_name(id));
  auto start = steady::now();
  try {
    QueryResult res = repo.query(spo, start + timeout);
    cell.seconds =
        std::chrono::duration<double>(steady::now() - start).count();
    (void)res;
  } catch (const EvalTimeout&) {
    cell.timed_out = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

struct Agg {
  double sum = 0;
  std::size_t n = 0;
  void add(const TimingCell& c) {
    if (c.timed_out || !c.error.empty()) return;
    sum += c.seconds;
    ++n;
  }
  std::string text() const {
    if (n == 0) return "N/A";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", sum / static_cast<double>(n));
    return buf;
  }
};

std::string cell_text(const TimingCell& c) {
  if (c.timed_out) return "N/A";
  if (!c.error.empty()) return "err";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", c.seconds);
  return buf;
}

void print_row(std::ostringstream& out, const std::string& head,
               const std::vector<std::string>& cells) {
  out << head;
  for (std::size_t i = head.size(); i < 18; ++i) out << ' ';
  for (const auto& c : cells) {
    for (std::size_t i = c.size(); i < 10; ++i) out << ' ';
    out << c;
  }
  out << '\n';
}

}  // namespace

BenchReport run_equivalence(const BenchOptions& opt) {
  BenchReport report;
  Repository repo;
  load_workload(repo, opt.workload_triples, opt.seed);
  note_progress(opt, "equivalence: loaded " +
                         std::to_string(repo.total_raw_triples()) +
                         " triples");
  for (const auto& cq : corpus::reference_queries()) {
    EquivalenceRow row;
    row.id = cq.id;
    row.group = cq.group;
    row.kind = std::string(corpus::kind_name(cq.kind));
    try {
      Query q = parse_query(cq.text);
      Graph direct = repo.query(q).graph;
      repo.define_view(ViewDef{view_name(cq.id), q, std::string(cq.text)});
      QueryResult via = repo.query(spo_over(view_name(cq.id)));
      Graph through = rows_to_graph(via.rows);
      row.direct_size = direct.size();
      row.via_view_size = through.size();
      row.pass = isomorphic(direct, through);
      if (!row.pass) row.diff = symmetric_diff(direct, through);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    note_progress(opt, "equivalence q" + std::to_string(row.id) + " " +
                           (row.pass ? "pass" : "FAIL"));
    report.equivalence.push_back(std::move(row));
  }
  return report;
}

BenchReport run_inference(const BenchOptions& opt) {
  BenchReport report;
  for (bool entailment : {false, true}) {
    Repository repo(entailment ? EntailmentRegime::RhoDf
                               : EntailmentRegime::None);
    repo.load_trig(corpus::inference_data_trig());
    int n = 0;
    for (const auto& c : corpus::inference_cases()) {
      InferenceRow row;
      row.name = c.name;
      row.entailment = entailment;
      Graph expected =
          parse_trig(entailment ? c.entailed_rows : c.plain_rows)
              .dataset.default_graph;
      row.expected_rows = expected.size();
      try {
        Query q = parse_query(c.query);
        Term name = Term::iri("http://definedViews/I" + std::to_string(++n) +
                              (entailment ? "e" : "p"));
        repo.define_view(ViewDef{name, q, std::string(c.query)});
        Graph got = rows_to_graph(repo.query(spo_over(name)).rows);
        row.obtained_rows = got.size();
        row.pass = got == expected;
        if (entailment && !c.extra_reference_rows.empty()) {
          Graph extra =
              parse_trig(c.extra_reference_rows).dataset.default_graph;
          bool absent = true;
          for (const Triple& t : extra.triples())
            if (got.count_matches(t.s, t.p, t.o) > 0) absent = false;
          row.note = absent
                         ? "reference table lists " +
                               std::to_string(extra.size()) +
                               " extra row(s) no rule derives; correctly absent"
                         : "underivable extra reference row present";
          if (!absent) row.pass = false;
        }
      } catch (const std::exception& e) {
        row.note = e.what();
      }
      note_progress(opt, std::string("inference ") + row.name +
                             (entailment ? " (entailed) " : " (plain) ") +
                             (row.pass ? "pass" : "FAIL"));
      report.inference.push_back(std::move(row));
    }
  }
  return report;
}

BenchReport run_scalability(const BenchOptions& opt) {
  BenchReport report;
  report.sizes = opt.sizes;
  fs::path scratch = fresh_scratch(opt);

  for (std::size_t si = 0; si < opt.sizes.size(); ++si) {
    const std::string idx = std::to_string(si + 1);
    auto profiles = datagen::profiles_for_target(opt.sizes[si], opt.seed);
    const char* names[] = {"http://dbtune.org/jamendo",
                           "http://dbtune.org/magnatune",
                           "http://dbtune.org/peel"};
    std::vector<std::pair<Term, Graph>> graphs;
    for (std::size_t i = 0; i < profiles.size(); ++i)
      graphs.emplace_back(Term::iri(names[i]),
                          datagen::generate(profiles[i]).first);
    std::size_t total = 0;
    for (const auto& [_, g] : graphs) total += g.size();
    note_progress(opt, "size " + std::to_string(opt.sizes[si]) +
                           ": generated " + std::to_string(total) +
                           " triples");

    auto run_repo = [&](Repository& repo, const std::string& label) {
      for (const auto& cq : corpus::reference_queries())
        repo.define_view(ViewDef{view_name(cq.id), parse_query(cq.text),
                                 std::string(cq.text)});
      for (const auto& cq : corpus::reference_queries()) {
        TimingCell cell =
            time_view_query(repo, cq.id, label, opt.cell_timeout);
        note_progress(opt, label + " NG_" + std::to_string(cq.id) + " " +
                               cell_text(cell) + "s");
        report.timings.push_back(std::move(cell));
      }
    };

    {
      Repository mem;
      for (const auto& [name, g] : graphs) mem.add_graph(name, g);
      run_repo(mem, "MEM_" + idx);
    }
    {
      fs::path dir = scratch / ("NAT_" + idx);
      Repository nat = Repository::create(dir, EntailmentRegime::None);
      for (const auto& [name, g] : graphs) nat.add_graph(name, g);
      run_repo(nat, "NAT_" + idx);
      fs::remove_all(dir);
    }
    if (si == 0) {
      fs::path dir = scratch / "NATR_1";
      Repository natr = Repository::create(dir, EntailmentRegime::RhoDf);
      for (const auto& [name, g] : graphs) natr.add_graph(name, g);
      run_repo(natr, "NATR_1");
      fs::remove_all(dir);
    }
  }
  if (opt.scratch_dir.empty()) fs::remove_all(scratch);
  return report;
}

std::string BenchReport::to_json() const {
  nlohmann::json j;
  j["sizes"] = sizes;
  j["equivalence"] = nlohmann::json::array();
  for (const auto& r : equivalence)
    j["equivalence"].push_back({{"id", r.id},
                                {"group", std::string(1, r.group)},
                                {"kind", r.kind},
                                {"pass", r.pass},
                                {"direct_size", r.direct_size},
                                {"via_view_size", r.via_view_size},
                                {"diff", r.diff},
                                {"error", r.error}});
  j["inference"] = nlohmann::json::array();
  for (const auto& r : inference)
    j["inference"].push_back({{"name", r.name},
                              {"entailment", r.entailment},
                              {"pass", r.pass},
                              {"expected_rows", r.expected_rows},
                              {"obtained_rows", r.obtained_rows},
                              {"note", r.note}});
  j["timings"] = nlohmann::json::array();
  for (const auto& c : timings)
    j["timings"].push_back({{"query", c.query_id},
                            {"repo", c.repo},
                            {"seconds", c.seconds},
                            {"timed_out", c.timed_out},
                            {"error", c.error}});
  return j.dump(2);
}

std::string BenchReport::to_text() const {
  std::ostringstream out;

  if (!equivalence.empty()) {
    out << "Workload equivalence: direct CONSTRUCT vs stored view\n";
    std::size_t passed = 0;
    for (const auto& r : equivalence) {
      out << "  q" << r.id << (r.id < 10 ? "  " : " ") << r.group << "  ";
      out << r.kind;
      for (std::size_t i = r.kind.size(); i < 17; ++i) out << ' ';
      if (r.pass) {
        out << "pass (" << r.direct_size << " triples)";
        ++passed;
      } else if (!r.error.empty()) {
        out << "error: " << r.error;
      } else {
        out << "FAIL (direct " << r.direct_size << ", view "
            << r.via_view_size << ", diff " << r.diff << ")";
      }
      out << '\n';
    }
    out << "  passed " << passed << "/" << equivalence.size() << "\n\n";
  }

  if (!inference.empty()) {
    out << "Inference checks\n";
    for (const auto& r : inference) {
      out << "  [" << (r.entailment ? "rhodf" : "plain") << "] " << r.name;
      for (std::size_t i = r.name.size(); i < 20; ++i) out << ' ';
      out << (r.pass ? "pass" : "FAIL") << " (" << r.obtained_rows << "/"
          << r.expected_rows << " rows)";
      if (!r.note.empty()) out << "  -- " << r.note;
      out << '\n';
    }
    out << '\n';
  }

  if (timings.empty()) return out.str();

  const std::size_t nsizes = sizes.size();
  std::vector<std::string> nat_cols, mem_cols;
  for (std::size_t i = 1; i <= nsizes; ++i) nat_cols.push_back("NAT_" + std::to_string(i));
  nat_cols.push_back("NATR_1");
  for (std::size_t i = 1; i <= nsizes; ++i) mem_cols.push_back("MEM_" + std::to_string(i));

  std::map<std::pair<int, std::string>, const TimingCell*> by_key;
  for (const auto& c : timings) by_key[{c.query_id, c.repo}] = &c;

  auto family_tables = [&](const std::vector<std::string>& cols,
                           const std::string& title) {
    out << title << '\n';
    print_row(out, "Query", cols);
    for (const auto& cq : corpus::reference_queries()) {
      std::vector<std::string> cells;
      bool any = false;
      for (const auto& col : cols) {
        auto it = by_key.find({cq.id, col});
        if (it == by_key.end()) {
          cells.push_back("-");
        } else {
          cells.push_back(cell_text(*it->second));
          any = true;
        }
      }
      if (any) print_row(out, "NG_" + std::to_string(cq.id), cells);
    }
    out << '\n';

    out << "Average by query group" << '\n';
    for (char g : {'A', 'B', 'C', 'D'}) {
      std::vector<std::string> cells;
      for (const auto& col : cols) {
        Agg agg;
        for (const auto& cq : corpus::reference_queries()) {
          if (cq.group != g) continue;
          auto it = by_key.find({cq.id, col});
          if (it != by_key.end()) agg.add(*it->second);
        }
        cells.push_back(agg.text());
      }
      print_row(out, std::string("group ") + g, cells);
    }
    out << '\n';

    out << "Average by pattern kind" << '\n';
    for (auto kind :
         {corpus::PatternKind::Bgp, corpus::PatternKind::Group,
          corpus::PatternKind::Optional, corpus::PatternKind::Union,
          corpus::PatternKind::NamedGraph}) {
      std::vector<std::string> cells;
      for (const auto& col : cols) {
        Agg agg;
        for (const auto& cq : corpus::reference_queries()) {
          if (cq.kind != kind) continue;
          auto it = by_key.find({cq.id, col});
          if (it != by_key.end()) agg.add(*it->second);
        }
        cells.push_back(agg.text());
      }
      print_row(out, std::string(corpus::kind_name(kind)), cells);
    }
    out << '\n';
  };

  family_tables(nat_cols, "Execution time (seconds), native repositories");
  family_tables(mem_cols, "Execution time (seconds), in-memory repositories");
  return out.str();
}

}  // namespace rdfview::bench
