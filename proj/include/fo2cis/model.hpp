#ifndef FO2CIS_MODEL_HPP
#define FO2CIS_MODEL_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fo2cis/bitset.hpp"
#include "fo2cis/fo2.hpp"

namespace fo2cis {

// Finite structure over a vocabulary. Binary tables are row bitsets:
// binary[p][a] holds the b's with R_p(a, b).
struct FiniteModel {
  Vocabulary vocab;
  int size = 0;
  std::vector<Bitset> unary;
  std::vector<std::vector<Bitset>> binary;

  FiniteModel() = default;
  FiniteModel(Vocabulary v, int n);
  bool unary_fact(int pred, int a) const { return unary[pred].test(a); }
  bool binary_fact(int pred, int a, int b) const { return binary[pred][a].test(b); }
};

struct CheckResult {
  bool ok = true;
  int conjunct = 0;  // 0 = the forall-forall matrix, i >= 1 = exists conjunct i
  int a = -1, b = -1;  // violating pair; b = -1 when a lacks any witness
};

// universe = certificate vertices x {0,1,2} x {1..m}; every element gets its
// vertex's 1-type, witnesses point one cyclic level up, remaining pairs take
// the smallest symmetric 2-type
FiniteModel extract_model(const CompiledSystem& cs, const GisCertificate& gis);

// alpha over all ordered pairs including the diagonal, every beta_i witnessed
CheckResult check_model(const SnfNoEq& phi, const FiniteModel& mdl);

enum class SearchStatus { kFound, kNoModel, kInconclusive };

struct SearchResult {
  SearchStatus status = SearchStatus::kInconclusive;
  std::optional<FiniteModel> model;
};

// exhaustive structure enumeration by ascending size then table bits; the
// work cap bounds (structures tried) x size^2 and turns the result
// inconclusive rather than ever guessing a verdict
SearchResult bounded_model_search(const SnfFormula& psi, int max_size,
                                  uint64_t work_cap = 200'000'000);

void print_model(std::ostream& os, const FiniteModel& mdl);
FiniteModel parse_model(std::istream& is, const Vocabulary& vocab);

}  // namespace fo2cis

#endif
