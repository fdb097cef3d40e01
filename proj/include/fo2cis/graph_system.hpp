#ifndef FO2CIS_GRAPH_SYSTEM_HPP
#define FO2CIS_GRAPH_SYSTEM_HPP

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fo2cis/bitset.hpp"

namespace fo2cis {

using VertexSet = Bitset;

// A system of graphs over one vertex set: an undirected conflict graph
// (layer 0, no self-loops) plus m >= 1 directed layers (self-loops allowed).
// Mutable while being built, treated as frozen afterwards; none of the
// solvers modify it.
struct GraphSystem {
  int n = 0;
  int m = 1;
  std::vector<Bitset> conflict;          // n rows, kept symmetric
  std::vector<std::vector<Bitset>> out;  // [layer-1][v] out-neighbours
  std::vector<std::vector<Bitset>> in;   // reverse adjacency, used by pruning

  // optional per-vertex labels attached by the formula compiler
  std::vector<uint64_t> vertex_labels;
  int label_bits = 0;

  GraphSystem() = default;
  GraphSystem(int n_vertices, int layers);

  void add_conflict(int u, int v);         // u != v
  void add_edge(int layer, int u, int v);  // layer in [1, m]
  bool has_conflict(int u, int v) const { return conflict[u].test(v); }
  bool has_edge(int layer, int u, int v) const { return out[layer - 1][u].test(v); }
  VertexSet full_set() const;
};

// structural comparison ignoring labels
bool same_structure(const GraphSystem& a, const GraphSystem& b);

struct GisCertificate {
  VertexSet vertices;
};

enum class Verdict { kSat, kUnsat };

struct SolveReport {
  Verdict verdict;
  std::optional<GisCertificate> certificate;  // present iff verdict == kSat
  std::string algorithm_used;
  int64_t branch_count = 0;
  int64_t pruned_vertex_count = 0;
  std::chrono::duration<double> elapsed{0};
};

struct SolveLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// s is a good independent set: non-empty, independent in the conflict graph,
// and every member has an out-neighbour inside s in every layer
bool verify_gis(const GraphSystem& g, const VertexSet& s);

// goodness fixpoint: repeatedly removes vertices lacking an out-neighbour
// inside the set in some layer; no independence requirement
VertexSet remove_bad_vertices(const GraphSystem& g, VertexSet y,
                              int64_t* removed_count = nullptr);

// y must be independent; the result is the unique maximal GIS inside y
// (possibly empty)
VertexSet prune_to_max_gis(const GraphSystem& g, const VertexSet& y);

// exact solvers; nullopt means the deadline was hit before a verdict
std::optional<SolveReport> solve_a(const GraphSystem& g, const SolveLimits& limits = {});
std::optional<SolveReport> solve_b(const GraphSystem& g, uint64_t rng_seed,
                                   const SolveLimits& limits = {});

// subset enumeration, refuses systems above max_vertices
SolveReport brute_force(const GraphSystem& g, int max_vertices = 20);

struct FragmentFlags {
  bool conflict_free = false;
  bool uniquely_outgoing = false;
};
FragmentFlags classify(const GraphSystem& g);

// polynomial fragment solvers; each checks its precondition
SolveReport solve_conflict_free(const GraphSystem& g);
SolveReport solve_cycle_m1(const GraphSystem& g);
SolveReport solve_uniquely_outgoing(const GraphSystem& g);

// worst-case growth rates: maximal-independent-set enumeration, the branching
// solver's recurrence, and the conditional lower bound for the problem
inline constexpr double kGrowthEnumeration = 1.4423;
inline constexpr double kGrowthBranching = 1.6181;
inline constexpr double kGrowthLowerBound = 1.4142;

// .cis text format
GraphSystem read_cis(std::istream& is);
GraphSystem read_cis_file(const std::string& path);
void write_cis(std::ostream& os, const GraphSystem& g,
               const std::vector<std::string>& comments = {});

}  // namespace fo2cis

#endif
