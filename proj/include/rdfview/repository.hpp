#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "rdfview/dataset.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/eval.hpp"
#include "rdfview/views.hpp"

namespace rdfview {

enum class StorageKind { Memory, File };
enum class EntailmentRegime { None, RhoDf };

// Triple store with named graphs, stored views, and an entailment regime
// fixed at creation.
//
// Query semantics: the background (default) graph of every query is the
// union of the stored default graph and all stored named graphs, so
// patterns outside GRAPH see everything, while GRAPH <g> scopes to one
// graph. Under the rhodf regime the background and each named graph are
// closed independently; view extents are served as computed, not closed.
//
// File-backed layout under the repository directory: `config.json`
// (regime, graph-to-segment table, document counter), one append-only
// N-Triples segment per graph, and `views.trig` holding the view
// definitions. Duplicate statements across appends collapse on reload.
//
// Concurrency: one writer; any number of concurrent read-only queries.
class Repository {
 public:
  explicit Repository(EntailmentRegime regime = EntailmentRegime::None);
  ~Repository();
  Repository(Repository&&) noexcept;
  Repository& operator=(Repository&&) noexcept;

  // Throws RepoError when `dir` already holds a repository.
  static Repository create(const std::filesystem::path& dir, EntailmentRegime regime);
  // Throws RepoError when `dir` does not hold one.
  static Repository open(const std::filesystem::path& dir);

  StorageKind storage() const;
  EntailmentRegime regime() const;
  std::filesystem::path path() const;  // empty for memory repositories

  // --- data -----------------------------------------------------------
  // Blank nodes of each loaded document are standardized apart from every
  // other document's. Returns the number of statements parsed.
  std::size_t load_ntriples(std::string_view text, std::optional<Term> graph = std::nullopt);
  // Named blocks carrying ng:definedBy become view definitions; all other
  // content loads as data.
  std::size_t load_trig(std::string_view text);
  void add_graph(const Term& name, const Graph& g);
  void add_default(const Graph& g);

  std::vector<Term> graph_names() const;
  // Raw stored graph, before any closure. nullopt when absent.
  std::optional<Graph> stored_graph(const Term& name) const;
  std::size_t total_raw_triples() const;

  // --- views ----------------------------------------------------------
  // Throws ViewError when the name collides with a stored graph.
  void define_view(ViewDef def);
  void drop_view(const Term& name);
  void materialize_view(
      const Term& name,
      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);
  std::vector<Term> view_names() const;
  std::optional<ViewDef> find_view(const Term& name) const;
  Graph view_extent(
      const Term& name,
      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) const;

  // --- queries --------------------------------------------------------
  QueryResult query(
      const Query& q,
      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) const;
  QueryResult query_text(
      std::string_view text,
      std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) const;

  // The dataset queries run against (background merged, closures applied).
  // The reference stays valid until the next mutation.
  const Dataset& query_dataset() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rdfview
