#ifndef FO2CIS_QF_FORMULA_HPP
#define FO2CIS_QF_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fo2cis {

// Atoms of a quantifier-free matrix over variables x and y. `pred` indexes the
// owning vocabulary's unary or binary predicate list (-1 for equality).
enum class AtomKind : uint8_t {
  kUnaryX,   // U(x)
  kUnaryY,   // U(y)
  kDiagXX,   // R(x,x)
  kDiagYY,   // R(y,y)
  kCrossXY,  // R(x,y)
  kCrossYX,  // R(y,x)
  kEquality  // x = y
};

struct Atom {
  AtomKind kind;
  int pred;
  auto operator<=>(const Atom&) const = default;
};

inline bool is_one_literal(AtomKind k) {
  return k == AtomKind::kUnaryX || k == AtomKind::kUnaryY || k == AtomKind::kDiagXX ||
         k == AtomKind::kDiagYY;
}
inline bool is_cross(AtomKind k) {
  return k == AtomKind::kCrossXY || k == AtomKind::kCrossYX;
}

// Interned atom list; formulas refer to atoms by index.
class AtomTable {
 public:
  int intern(Atom a) {
    auto it = index_.find(a);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(a);
    index_.emplace(a, id);
    return id;
  }
  int find(Atom a) const {
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
  }
  const Atom& atom(int i) const { return atoms_[i]; }
  int size() const { return static_cast<int>(atoms_.size()); }

 private:
  std::vector<Atom> atoms_;
  std::map<Atom, int> index_;
};

enum class Connective : uint8_t { kAtom, kTrue, kFalse, kNot, kAnd, kOr, kImplies, kIff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Connective kind;
  int atom = -1;                  // kAtom only
  std::vector<FormulaPtr> kids;   // kAnd/kOr variadic, kNot one, kImplies/kIff two
};

FormulaPtr mk_atom(int atom_index);
FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(std::vector<FormulaPtr> kids);  // empty -> true, singleton -> kid
FormulaPtr mk_or(std::vector<FormulaPtr> kids);   // empty -> false, singleton -> kid
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);

int formula_size(const FormulaPtr& f);  // node count
void collect_atoms(const FormulaPtr& f, std::set<int>& out);
// structural equality; atoms compared through their tables so two formulas
// interned in different orders still compare equal
bool formula_equal(const FormulaPtr& a, const AtomTable& ta, const FormulaPtr& b,
                   const AtomTable& tb);

// Partial truth assignment over an atom table. Unset atoms are tracked
// explicitly so three-valued evaluation and completion search can use them.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int n_atoms) : vals_(n_atoms, -1) {}
  void set(int atom, bool v) { vals_[atom] = v ? 1 : 0; }
  void unset(int atom) { vals_[atom] = -1; }
  int get(int atom) const { return vals_[atom]; }  // 0, 1, or -1 when unset
  bool is_set(int atom) const { return vals_[atom] >= 0; }
  int size() const { return static_cast<int>(vals_.size()); }

 private:
  std::vector<int8_t> vals_;
};

// Evaluates f under a total assignment of its atoms; throws std::invalid_argument
// if an atom of f is unset.
bool evaluate(const FormulaPtr& f, const Assignment& a);

// Three-valued evaluation under a partial assignment: 0, 1, or -1 (unknown).
int evaluate3(const FormulaPtr& f, const Assignment& a);

// Searches for a completion of `fixed` over `free_atoms` satisfying f and
// returns the first hit. Free atoms must be cross atoms. Up to 16 free atoms
// the search is exhaustive in ascending numeric order (free_atoms[j] is bit j),
// so the returned completion is the numerically smallest; beyond 16 it is a
// backtracking search with forced-value propagation.
std::optional<Assignment> exists_completion(const FormulaPtr& f, const AtomTable& table,
                                            const Assignment& fixed,
                                            const std::vector<int>& free_atoms);

// Formula compiled to a straight-line program over 64-bit words, one
// assignment per bit lane. The type-pair sweeps and the admissibility filter
// run on this; a single assignment is just a broadcast.
class EvalProgram {
 public:
  // atom_to_lane maps every atom index occurring in f to a lane, or to
  // kConstTrueLane / kConstFalseLane
  static constexpr int kConstTrueLane = -2;
  static constexpr int kConstFalseLane = -3;
  static EvalProgram compile(const FormulaPtr& f, const std::vector<int>& atom_to_lane,
                             int n_lanes);

  uint64_t run(const uint64_t* lanes, std::vector<uint64_t>& scratch) const;
  int n_lanes() const { return n_lanes_; }
  int n_instrs() const { return static_cast<int>(code_.size()); }

 private:
  enum Op : uint8_t { kConstF, kConstT, kLoad, kNot, kAnd, kOr, kXor };
  struct Instr {
    uint8_t op;
    int32_t a = 0, b = 0;
  };
  std::vector<Instr> code_;
  int n_lanes_ = 0;
};

// lane patterns such that bit t of pattern(j) equals bit j of t; with lanes
// 0..5 filled this way one program run covers 64 consecutive assignments
uint64_t lane_pattern(int j);

}  // namespace fo2cis

#endif
