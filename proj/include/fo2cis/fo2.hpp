#ifndef FO2CIS_FO2_HPP
#define FO2CIS_FO2_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fo2cis/graph_system.hpp"
#include "fo2cis/qf_formula.hpp"

namespace fo2cis {

struct Vocabulary {
  std::vector<std::string> unary;
  std::vector<std::string> binary;
  int unary_index(const std::string& name) const;   // -1 if absent
  int binary_index(const std::string& name) const;  // -1 if absent
  bool operator==(const Vocabulary&) const = default;
};

// forall x forall y alpha(x,y)  and  for each i: forall x exists y beta_i(x,y)
struct SnfNoEq {
  Vocabulary vocab;
  AtomTable atoms;
  FormulaPtr alpha;
  std::vector<FormulaPtr> betas;
  int m() const { return static_cast<int>(betas.size()); }
};

// forall x gamma(x), forall x forall y (x != y -> alpha), and for each i:
// forall x exists y (beta_i(x,y) and x != y) with beta_i an atomic binary
// predicate; gamma is x-only, alpha is equality-free, no diagonal atoms
struct SnfWithEq {
  Vocabulary vocab;
  AtomTable atoms;
  FormulaPtr gamma;
  FormulaPtr alpha;
  std::vector<int> witnesses;  // binary predicate index per exists conjunct
  int m() const { return static_cast<int>(witnesses.size()); }
};

using SnfFormula = std::variant<SnfNoEq, SnfWithEq>;

// A 1-type assigns the unary atoms (declaration order) then the diagonal
// binary atoms (declaration order); bit i of `bits` is atom i in that order.
struct OneType {
  uint64_t bits = 0;
  auto operator<=>(const OneType&) const = default;
};

// A 2-type assigns the cross atoms; bit 2j is R_j(x,y), bit 2j+1 is R_j(y,x).
struct TwoType {
  uint64_t bits = 0;
  auto operator<=>(const TwoType&) const = default;
};

inline int one_literal_count(const Vocabulary& v) {
  return static_cast<int>(v.unary.size() + v.binary.size());
}
TwoType reverse_two_type(TwoType t, int n_binary);

// largest 1-literal alphabet the type enumeration will sweep
inline constexpr int kMaxOneTypeBits = 26;

struct Fo2ParseError : std::runtime_error {
  Fo2ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

SnfFormula parse_fo2(const std::string& text);
SnfFormula parse_fo2_file(const std::string& path);
std::string print_fo2(const SnfNoEq& phi, const std::vector<std::string>& comments = {});
std::string print_fo2(const SnfWithEq& psi, const std::vector<std::string>& comments = {});
std::string print_fo2(const SnfFormula& f, const std::vector<std::string>& comments = {});
bool snf_equal(const SnfNoEq& a, const SnfNoEq& b);
bool snf_equal(const SnfWithEq& a, const SnfWithEq& b);

// 1-types that survive the diagonal reading of alpha (y replaced by x, cross
// atoms replaced by the diagonal), in ascending numeric order
std::vector<OneType> enumerate_admissible_types(const SnfNoEq& phi);

// smallest 2-type eta such that (p1 on x, p2 on y, eta) satisfies alpha and
// (p2 on x, p1 on y, reverse eta) satisfies alpha; orientation-canonicalised
// so pair_compatible(p2, p1) returns exactly the reverse
std::optional<TwoType> pair_compatible(const SnfNoEq& phi, OneType p1, OneType p2);

// additionally requires beta_layer (1-based) under the forward orientation
std::optional<TwoType> beta_compatible(const SnfNoEq& phi, int layer, OneType p1, OneType p2);

struct PairEval;

// The compiled instance: one vertex per admissible 1-type, conflicts between
// incompatible pairs, layer-i edges between beta_i-compatible pairs. Witness
// 2-types are computed on demand and cached.
class CompiledSystem {
 public:
  GraphSystem system;
  std::vector<OneType> labels;
  std::shared_ptr<const SnfNoEq> phi;

  TwoType witness(int layer, int u, int v) const;  // layer edge's 2-type
  TwoType filler(int u, int v) const;              // smallest symmetric 2-type

 private:
  friend CompiledSystem build_graph_system(const SnfNoEq&);
  std::shared_ptr<const PairEval> eval_;
  mutable std::unordered_map<uint64_t, uint64_t> cache_;
};

CompiledSystem build_graph_system(const SnfNoEq& phi);
FragmentFlags classify_formula(const SnfNoEq& phi);

}  // namespace fo2cis

#endif
