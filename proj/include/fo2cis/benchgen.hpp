#ifndef FO2CIS_BENCHGEN_HPP
#define FO2CIS_BENCHGEN_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fo2cis/fo2.hpp"
#include "fo2cis/graph_system.hpp"

namespace fo2cis {

// single comment line recording how a file was generated, e.g.
// "family=exp_d n=3 seed=7"
std::string genspec_comment(const std::string& family,
                            const std::vector<std::pair<std::string, std::string>>& params);

// colouring family over {U_1..U_n, V, E}: disjoint non-empty classes, edges
// may only advance the class index cyclically, U_1 inside V, edges flip V;
// satisfiable exactly for even n
SnfNoEq gen_exp_a(int n);  // n >= 2

// 4^n vertices; conflict triangles with one designated vertex each, one
// directed cycle through the designated vertices, leftovers have no out-edge;
// the designated set is the unique GIS
GraphSystem gen_exp_b_graph(int n);  // n >= 1
SnfNoEq gen_exp_b(int n);            // the same system via indicator clauses

// successor chain over the 2^n 1-types with every 1-type realized at most
// once; needs the equality guard, minimum model size 2^n
SnfWithEq gen_exp_c(int n);  // n >= 1

// random system on 2^n vertices (edge probability 1/2) and its exact formula
// encoding; `system` is the drawn instance after dropping layer edges between
// conflicting pairs, which the formula encoding cannot express
struct ExpDInstance {
  SnfNoEq formula;
  GraphSystem system;
};
ExpDInstance gen_exp_d(int n, uint64_t seed);  // n >= 1

// DIMACS-style CNF; literals are +/- 1-based variable indices
struct Cnf {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;
};
Cnf parse_dimacs(std::istream& is);

// SAT-to-CIS: vertices z, x_1..x_n, -x_1..-x_n; variable layers force one
// literal per variable next to z, clause layers force a satisfied literal,
// the last layer forces z itself
GraphSystem from_cnf(const Cnf& cnf);

struct UndirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};
// "p graph <n>" header then "e <u> <v>" lines, 0-based
UndirectedGraph read_graph(std::istream& is);

// independent-set-to-CIS: k copies of V, cliques per copy and per vertex,
// source edges spread across copies, one layer cycling copy i to i+1;
// vertex (v, copy i) is index i*|V| + v
GraphSystem from_independent_set(const UndirectedGraph& g, int k);

struct AlternatingGraph {
  int n = 0;
  std::vector<char> universal;    // per vertex
  std::vector<std::vector<int>> out;
};
// "p agraph <n>" header, "a <u>" universal marks, "e <u> <v>" edges, 0-based
AlternatingGraph read_agraph(std::istream& is);

// alternating-reachability-to-CIS over V x {1..n}; requires every universal
// vertex to have exactly 2 out-edges and t to be existential with none;
// vertex (u, level i) is index (i-1)*|V| + u
GraphSystem from_alternating_graph(const AlternatingGraph& g, int s, int t);

// reproducible fuzz instance: each conflict slot (u < v) then each layer slot
// (layer, u, v) gets one bernoulli draw, in that order
GraphSystem random_cis(int n, int m, double p_conflict, double p_layer, uint64_t seed);

}  // namespace fo2cis

#endif
