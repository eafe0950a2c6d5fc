#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rdfview::bench {

// Suite 1: one row per workload query, comparing the directly evaluated
// CONSTRUCT against reading the same query back through a stored view.
struct EquivalenceRow {
  int id = 0;
  char group = 'A';
  std::string kind;
  bool pass = false;
  std::size_t direct_size = 0;
  std::size_t via_view_size = 0;
  std::size_t diff = 0;  // symmetric difference, 0 when isomorphic
  std::string error;
};

// Suite 2: one row per inference case and regime.
struct InferenceRow {
  std::string name;
  bool entailment = false;
  bool pass = false;
  std::size_t expected_rows = 0;
  std::size_t obtained_rows = 0;
  std::string note;
};

// Suite 3: one wall-clock measurement of `SELECT * FROM <view>` per
// (query, repository) pair.
struct TimingCell {
  int query_id = 0;
  std::string repo;  // "MEM_1", "NAT_2", "NATR_1", ...
  double seconds = 0.0;
  bool timed_out = false;
  std::string error;
};

struct BenchOptions {
  // Synthetic dataset size for the equivalence suite.
  std::size_t workload_triples = 10000;
  // Dataset sizes for the scalability suite; index i populates MEM_{i+1}
  // and NAT_{i+1}. NATR_1 always loads the first size with inference on.
  std::vector<std::size_t> sizes = {500000, 1000000, 2000000};
  std::chrono::seconds cell_timeout{300};
  std::uint64_t seed = 1;
  // Directory for file-backed repositories; empty picks a fresh temp dir.
  std::filesystem::path scratch_dir;
  // When set, receives one line per completed step.
  std::ostream* progress = nullptr;
};

struct BenchReport {
  std::vector<EquivalenceRow> equivalence;
  std::vector<InferenceRow> inference;
  std::vector<TimingCell> timings;
  std::vector<std::size_t> sizes;

  std::string to_json() const;
  // Aligned tables: per-query timings for the native and in-memory repo
  // families, then averages by query group and by pattern kind.
  std::string to_text() const;
};

BenchReport run_equivalence(const BenchOptions& opt);
BenchReport run_inference(const BenchOptions& opt);
BenchReport run_scalability(const BenchOptions& opt);

}  // namespace rdfview::bench
