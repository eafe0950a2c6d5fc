#include "rdfview/repository.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "rdfview/entailment.hpp"
#include "rdfview/ntriples.hpp"
#include "rdfview/syntax.hpp"
#include "rdfview/trig.hpp"

namespace rdfview {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kConfigFile = "config.json";
constexpr const char* kViewsFile = "views.trig";

// Relabels blank nodes consistently across a whole document's graphs, in
// first-appearance order: default graph first, then named graphs in name
// order.
Dataset standardize_document(const Dataset& in, const std::string& prefix) {
  bool any_blanks = !in.default_graph.ground();
  for (const auto& [_, g] : in.named) any_blanks = any_blanks || !g.ground();
  if (!any_blanks) return in;

  std::unordered_map<uint32_t, Term> map;
  std::size_t next = 0;
  auto relabel = [&](Term t) {
    if (!t.is_blank()) return t;
    auto [it, inserted] = map.try_emplace(t.id(), Term{});
    if (inserted) it->second = Term::blank(prefix + std::to_string(next++));
    return it->second;
  };
  auto relabel_graph = [&](const Graph& g) {
    if (g.ground()) return g;
    Graph::Builder b;
    for (const Triple& t : g.triples()) b.add(relabel(t.s), relabel(t.p), relabel(t.o));
    return b.build();
  };

  Dataset out;
  out.default_graph = relabel_graph(in.default_graph);
  for (const auto& [name, g] : in.named) out.named.emplace(name, relabel_graph(g));
  return out;
}

std::string regime_name(EntailmentRegime r) {
  return r == EntailmentRegime::RhoDf ? "rhodf" : "none";
}

EntailmentRegime regime_from(const std::string& s) {
  if (s == "rhodf") return EntailmentRegime::RhoDf;
  if (s == "none") return EntailmentRegime::None;
  throw RepoError("unknown entailment regime in config: " + s);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw RepoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw RepoError("cannot write " + p.string());
  out << content;
  if (!out) throw RepoError("write failed: " + p.string());
}

void append_file(const fs::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::app);
  if (!out) throw RepoError("cannot append to " + p.string());
  out << content;
  if (!out) throw RepoError("write failed: " + p.string());
}

}  // namespace

struct Repository::Impl {
  StorageKind storage = StorageKind::Memory;
  EntailmentRegime regime = EntailmentRegime::None;
  fs::path dir;

  Dataset raw;  // stored graphs, unclosed
  ViewRegistry views;
  mutable ClosureCache closures;

  // Lazily built query-facing dataset; reset on every mutation.
  mutable std::mutex qds_mu;
  mutable std::optional<Dataset> qds;

  std::size_t doc_counter = 0;                  // blank-prefix scope per document
  std::map<Term, std::string, TermOrder> segment;  // named graph -> file name
  std::size_t segment_counter = 0;

  void invalidate() {
    std::lock_guard lk(qds_mu);
    qds.reset();
    views.invalidate_all();
  }

  const Dataset& query_dataset() const {
    std::lock_guard lk(qds_mu);
    if (!qds) {
      Dataset d;
      Graph merged = raw.default_graph;
      for (const auto& [_, g] : raw.named) merged = merged.union_with(g);
      if (regime == EntailmentRegime::RhoDf) {
        d.default_graph = rho_closure(merged);
        for (const auto& [name, g] : raw.named) d.named.emplace(name, closures.closed(g));
      } else {
        d.default_graph = merged;
        d.named = raw.named;
      }
      qds = std::move(d);
    }
    return *qds;
  }

  EvalOptions options(std::optional<std::chrono::steady_clock::time_point> deadline) const {
    EvalOptions o;
    o.deadline = deadline;
    if (regime == EntailmentRegime::RhoDf)
      o.close_background = [](const Graph& g) { return rho_closure(g); };
    return o;
  }

  // --- persistence ----------------------------------------------------

  void save_config() const {
    if (storage != StorageKind::File) return;
    json graphs = json::array();
    graphs.push_back({{"file", "default.nt"}});
    for (const auto& [name, file] : segment) graphs.push_back({{"iri", name.text()}, {"file", file}});
    json cfg = {{"version", 1},
                {"entailment", regime_name(regime)},
                {"doc_counter", doc_counter},
                {"segment_counter", segment_counter},
                {"graphs", graphs}};
    write_file(dir / kConfigFile, cfg.dump(2) + "\n");
  }

  void save_views() const {
    if (storage != StorageKind::File) return;
    write_file(dir / kViewsFile, views.to_trig());
  }

  std::string& segment_for(const Term& name) {
    auto it = segment.find(name);
    if (it == segment.end())
      it = segment.emplace(name, "g" + std::to_string(segment_counter++) + ".nt").first;
    return it->second;
  }

  void append_triples(const std::optional<Term>& name, const Graph& g) {
    if (storage != StorageKind::File || g.empty()) return;
    fs::path file = dir / (name ? segment_for(*name) : std::string("default.nt"));
    append_file(file, serialize_ntriples(g));
    save_config();
  }

  // --- mutations ------------------------------------------------------

  void check_name_free_for_graph(const Term& name) {
    if (views.has_view(name))
      throw RepoError("a view is already defined under <" + name.text() + ">");
  }

  void merge_graph(const std::optional<Term>& name, const Graph& g) {
    if (name) {
      check_name_free_for_graph(*name);
      Graph& slot = raw.named[*name];
      slot = slot.union_with(g);
    } else {
      raw.default_graph = raw.default_graph.union_with(g);
    }
    append_triples(name, g);
    invalidate();
  }
};

Repository::Repository(EntailmentRegime regime) : impl_(std::make_unique<Impl>()) {
  impl_->regime = regime;
}
Repository::~Repository() = default;
Repository::Repository(Repository&&) noexcept = default;
Repository& Repository::operator=(Repository&&) noexcept = default;

Repository Repository::create(const fs::path& dir, EntailmentRegime regime) {
  if (fs::exists(dir / kConfigFile))
    throw RepoError(dir.string() + " already holds a repository");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RepoError("cannot create " + dir.string() + ": " + ec.message());
  Repository r(regime);
  r.impl_->storage = StorageKind::File;
  r.impl_->dir = dir;
  r.impl_->save_config();
  write_file(dir / "default.nt", "");
  r.impl_->save_views();
  return r;
}

Repository Repository::open(const fs::path& dir) {
  if (!fs::exists(dir / kConfigFile))
    throw RepoError(dir.string() + " is not a repository (missing config.json)");
  json cfg;
  try {
    cfg = json::parse(read_file(dir / kConfigFile));
  } catch (const json::exception& e) {
    throw RepoError("malformed config.json: " + std::string(e.what()));
  }
  Repository r(regime_from(cfg.at("entailment").get<std::string>()));
  Impl& im = *r.impl_;
  im.storage = StorageKind::File;
  im.dir = dir;
  im.doc_counter = cfg.value("doc_counter", 0);
  im.segment_counter = cfg.value("segment_counter", 0);
  for (const json& g : cfg.at("graphs")) {
    std::string file = g.at("file").get<std::string>();
    fs::path p = dir / file;
    Graph parsed = fs::exists(p) ? parse_ntriples(read_file(p)) : Graph{};
    if (g.contains("iri")) {
      Term name = Term::iri(g.at("iri").get<std::string>());
      im.segment.emplace(name, file);
      im.raw.named[name] = parsed;
    } else {
      im.raw.default_graph = parsed;
    }
  }
  if (fs::exists(dir / kViewsFile)) {
    std::string text = read_file(dir / kViewsFile);
    if (!text.empty()) im.views.load_trig(parse_trig(text));
  }
  return r;
}

StorageKind Repository::storage() const { return impl_->storage; }
EntailmentRegime Repository::regime() const { return impl_->regime; }
fs::path Repository::path() const { return impl_->dir; }

std::size_t Repository::load_ntriples(std::string_view text, std::optional<Term> graph) {
  Graph g = parse_ntriples(text);
  if (!g.ground()) {
    g = g.standardized_apart("d" + std::to_string(impl_->doc_counter++) + "_");
    impl_->save_config();
  }
  impl_->merge_graph(graph, g);
  return g.size();
}

std::size_t Repository::load_trig(std::string_view text) {
  TrigDocument doc = parse_trig(text);
  std::vector<ViewDef> defs = parse_view_defs(doc);

  Dataset data;
  data.default_graph = doc.dataset.default_graph;
  for (const auto& [name, g] : doc.dataset.named) {
    bool is_view = false;
    for (const ViewDef& d : defs) is_view = is_view || d.name == name;
    if (!is_view) data.named.emplace(name, g);
  }
  data = standardize_document(data, "d" + std::to_string(impl_->doc_counter++) + "_");

  std::size_t added = 0;
  if (!data.default_graph.empty()) {
    impl_->merge_graph(std::nullopt, data.default_graph);
    added += data.default_graph.size();
  }
  for (const auto& [name, g] : data.named) {
    impl_->merge_graph(name, g);
    added += g.size();
  }
  for (ViewDef& d : defs) define_view(std::move(d));
  impl_->save_config();
  return added;
}

void Repository::add_graph(const Term& name, const Graph& g) {
  if (!name.is_iri()) throw RepoError("graph name must be an IRI");
  impl_->merge_graph(name, g);
}

void Repository::add_default(const Graph& g) { impl_->merge_graph(std::nullopt, g); }

std::vector<Term> Repository::graph_names() const {
  std::vector<Term> out;
  for (const auto& [name, _] : impl_->raw.named) out.push_back(name);
  return out;
}

std::optional<Graph> Repository::stored_graph(const Term& name) const {
  auto it = impl_->raw.named.find(name);
  if (it == impl_->raw.named.end()) return std::nullopt;
  return it->second;
}

std::size_t Repository::total_raw_triples() const { return impl_->raw.total_triples(); }

void Repository::define_view(ViewDef def) {
  if (impl_->raw.named.find(def.name) != impl_->raw.named.end())
    throw ViewError("a stored graph already has the name <" + def.name.text() + ">");
  impl_->views.register_view(std::move(def));
  impl_->save_views();
}

void Repository::drop_view(const Term& name) {
  impl_->views.drop_view(name);
  impl_->save_views();
}

void Repository::materialize_view(
    const Term& name, std::optional<std::chrono::steady_clock::time_point> deadline) {
  impl_->views.materialize(name, impl_->query_dataset(), nullptr, impl_->options(deadline));
}

std::vector<Term> Repository::view_names() const { return impl_->views.names(); }

std::optional<ViewDef> Repository::find_view(const Term& name) const {
  return impl_->views.find(name);
}

Graph Repository::view_extent(
    const Term& name, std::optional<std::chrono::steady_clock::time_point> deadline) const {
  return impl_->views.resolve(name, impl_->query_dataset(), nullptr, impl_->options(deadline));
}

QueryResult Repository::query(
    const Query& q, std::optional<std::chrono::steady_clock::time_point> deadline) const {
  const Dataset& ds = impl_->query_dataset();
  EvalOptions opts = impl_->options(deadline);
  ViewSource src = impl_->views.source(ds, nullptr, opts);
  return eval_query(q, ds, &src, opts);
}

QueryResult Repository::query_text(
    std::string_view text, std::optional<std::chrono::steady_clock::time_point> deadline) const {
  return query(parse_query(text), deadline);
}

const Dataset& Repository::query_dataset() const { return impl_->query_dataset(); }

}  // namespace rdfview
