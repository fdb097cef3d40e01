#ifndef FO2CIS_EQ_ELIM_HPP
#define FO2CIS_EQ_ELIM_HPP

#include <cstdint>

#include "fo2cis/fo2.hpp"

namespace fo2cis {

struct StarCounts {
  int unary = 0;
  int binary = 0;
  int exists_conjuncts = 0;
};

// smallest t with 2^t >= v; v >= 1
int ceil_log2(uint64_t v);

// predicate and conjunct counts of the extended vocabulary, without building:
// unary = 2 + 2n + 4k + p with p = n + ceil_log2(3m), binary = k, exists = m+1
StarCounts count_star_predicates(const SnfWithEq& psi);

// Rewrites an equality formula into an equisatisfiable equality-free one over
// the pair vocabulary: elements of a model of the output stand for the
// witness pairs of a model of the input. Source/target copies of the unary
// predicates, forward/backward pair predicates, self-filler bits, king
// markers and id bits are added under the reserved "__" prefix; the binary
// predicates carry over.
SnfNoEq eliminate_equality(const SnfWithEq& psi);

}  // namespace fo2cis

#endif
