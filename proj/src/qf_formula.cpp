#include "fo2cis/qf_formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace fo2cis {

FormulaPtr mk_atom(int atom_index) {
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kAtom;
  n->atom = atom_index;
  return n;
}

FormulaPtr mk_true() {
  static const FormulaPtr t = [] {
    auto n = std::make_shared<Formula>();
    n->kind = Connective::kTrue;
    return n;
  }();
  return t;
}

FormulaPtr mk_false() {
  static const FormulaPtr f = [] {
    auto n = std::make_shared<Formula>();
    n->kind = Connective::kFalse;
    return n;
  }();
  return f;
}

FormulaPtr mk_not(FormulaPtr f) {
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kNot;
  n->kids.push_back(std::move(f));
  return n;
}

FormulaPtr mk_and(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return mk_true();
  if (kids.size() == 1) return kids[0];
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kAnd;
  n->kids = std::move(kids);
  return n;
}

FormulaPtr mk_or(std::vector<FormulaPtr> kids) {
  if (kids.empty()) return mk_false();
  if (kids.size() == 1) return kids[0];
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kOr;
  n->kids = std::move(kids);
  return n;
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kImplies;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  auto n = std::make_shared<Formula>();
  n->kind = Connective::kIff;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

int formula_size(const FormulaPtr& f) {
  int n = 1;
  for (const auto& k : f->kids) n += formula_size(k);
  return n;
}

void collect_atoms(const FormulaPtr& f, std::set<int>& out) {
  if (f->kind == Connective::kAtom) out.insert(f->atom);
  for (const auto& k : f->kids) collect_atoms(k, out);
}

bool formula_equal(const FormulaPtr& a, const AtomTable& ta, const FormulaPtr& b,
                   const AtomTable& tb) {
  if (a->kind != b->kind) return false;
  if (a->kind == Connective::kAtom) return ta.atom(a->atom) == tb.atom(b->atom);
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!formula_equal(a->kids[i], ta, b->kids[i], tb)) return false;
  return true;
}

bool evaluate(const FormulaPtr& f, const Assignment& a) {
  switch (f->kind) {
    case Connective::kTrue:
      return true;
    case Connective::kFalse:
      return false;
    case Connective::kAtom: {
      int v = a.get(f->atom);
      if (v < 0) throw std::invalid_argument("evaluate: atom unset");
      return v != 0;
    }
    case Connective::kNot:
      return !evaluate(f->kids[0], a);
    case Connective::kAnd:
      for (const auto& k : f->kids)
        if (!evaluate(k, a)) return false;
      return true;
    case Connective::kOr:
      for (const auto& k : f->kids)
        if (evaluate(k, a)) return true;
      return false;
    case Connective::kImplies:
      return !evaluate(f->kids[0], a) || evaluate(f->kids[1], a);
    case Connective::kIff:
      return evaluate(f->kids[0], a) == evaluate(f->kids[1], a);
  }
  return false;
}

int evaluate3(const FormulaPtr& f, const Assignment& a) {
  switch (f->kind) {
    case Connective::kTrue:
      return 1;
    case Connective::kFalse:
      return 0;
    case Connective::kAtom:
      return a.get(f->atom);
    case Connective::kNot: {
      int v = evaluate3(f->kids[0], a);
      return v < 0 ? -1 : 1 - v;
    }
    case Connective::kAnd: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        int v = evaluate3(k, a);
        if (v == 0) return 0;
        if (v < 0) unknown = true;
      }
      return unknown ? -1 : 1;
    }
    case Connective::kOr: {
      bool unknown = false;
      for (const auto& k : f->kids) {
        int v = evaluate3(k, a);
        if (v == 1) return 1;
        if (v < 0) unknown = true;
      }
      return unknown ? -1 : 0;
    }
    case Connective::kImplies: {
      int l = evaluate3(f->kids[0], a);
      if (l == 0) return 1;
      int r = evaluate3(f->kids[1], a);
      if (r == 1) return 1;
      if (l == 1 && r == 0) return 0;
      return -1;
    }
    case Connective::kIff: {
      int l = evaluate3(f->kids[0], a);
      int r = evaluate3(f->kids[1], a);
      if (l < 0 || r < 0) return -1;
      return l == r ? 1 : 0;
    }
  }
  return -1;
}

uint64_t lane_pattern(int j) {
  static const uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  assert(j >= 0 && j < 6);
  return kPatterns[j];
}

namespace {

// backtracking with forced-value propagation, used above the exhaustive limit
bool complete_search(const FormulaPtr& f, Assignment& a, const std::vector<int>& free_atoms,
                     size_t depth) {
  int v = evaluate3(f, a);
  if (v == 1) {
    for (size_t j = depth; j < free_atoms.size(); ++j)
      if (!a.is_set(free_atoms[j])) a.set(free_atoms[j], false);
    return true;
  }
  if (v == 0) return false;

  // propagate atoms whose opposite value is already refutable
  std::vector<int> forced;
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t j = depth; j < free_atoms.size(); ++j) {
      int atom = free_atoms[j];
      if (a.is_set(atom)) continue;
      a.set(atom, false);
      int v0 = evaluate3(f, a);
      a.set(atom, true);
      int v1 = evaluate3(f, a);
      a.unset(atom);
      if (v0 == 0 && v1 == 0) {
        for (int g : forced) a.unset(g);
        return false;
      }
      if (v0 == 0) {
        a.set(atom, true);
        forced.push_back(atom);
        progress = true;
      } else if (v1 == 0) {
        a.set(atom, false);
        forced.push_back(atom);
        progress = true;
      }
    }
  }

  size_t next = depth;
  while (next < free_atoms.size() && a.is_set(free_atoms[next])) ++next;
  if (next == free_atoms.size()) {
    bool ok = evaluate3(f, a) == 1;
    if (!ok)
      for (int g : forced) a.unset(g);
    return ok;
  }
  int atom = free_atoms[next];
  for (int val = 0; val < 2; ++val) {
    a.set(atom, val != 0);
    if (complete_search(f, a, free_atoms, next + 1)) return true;
  }
  a.unset(atom);
  for (int g : forced) a.unset(g);
  return false;
}

}  // namespace

std::optional<Assignment> exists_completion(const FormulaPtr& f, const AtomTable& table,
                                            const Assignment& fixed,
                                            const std::vector<int>& free_atoms) {
  for (int atom : free_atoms) {
    if (!is_cross(table.atom(atom).kind))
      throw std::invalid_argument("exists_completion: free atom is not a cross atom");
    if (fixed.is_set(atom))
      throw std::invalid_argument("exists_completion: free atom already fixed");
  }
  std::set<int> used;
  collect_atoms(f, used);
  for (int atom : used) {
    if (!fixed.is_set(atom) &&
        std::find(free_atoms.begin(), free_atoms.end(), atom) == free_atoms.end())
      throw std::invalid_argument("exists_completion: atom neither fixed nor free");
  }

  size_t nf = free_atoms.size();
  if (nf <= 16) {
    Assignment a = fixed;
    for (uint64_t t = 0; t < (uint64_t{1} << nf); ++t) {
      for (size_t j = 0; j < nf; ++j) a.set(free_atoms[j], (t >> j) & 1);
      if (evaluate(f, a)) return a;
    }
    return std::nullopt;
  }
  Assignment a = fixed;
  if (complete_search(f, a, free_atoms, 0)) return a;
  return std::nullopt;
}

EvalProgram EvalProgram::compile(const FormulaPtr& f, const std::vector<int>& atom_to_lane,
                                 int n_lanes) {
  EvalProgram p;
  p.n_lanes_ = n_lanes;

  // iterative postorder to keep stack use independent of formula size
  struct Frame {
    const Formula* node;
    size_t next_kid = 0;
    std::vector<int32_t> kid_slots;
  };
  std::vector<Frame> stack;
  stack.push_back({f.get(), 0, {}});
  int32_t result = -1;

  auto emit = [&p](Op op, int32_t a = 0, int32_t b = 0) {
    p.code_.push_back({static_cast<uint8_t>(op), a, b});
    return static_cast<int32_t>(p.code_.size() - 1);
  };

  while (!stack.empty()) {
    Frame& fr = stack.back();
    const Formula* n = fr.node;
    if (fr.next_kid < n->kids.size()) {
      stack.push_back({n->kids[fr.next_kid].get(), 0, {}});
      continue;
    }
    int32_t slot = -1;
    switch (n->kind) {
      case Connective::kTrue:
        slot = emit(kConstT);
        break;
      case Connective::kFalse:
        slot = emit(kConstF);
        break;
      case Connective::kAtom: {
        int lane = atom_to_lane.at(n->atom);
        if (lane == kConstTrueLane)
          slot = emit(kConstT);
        else if (lane == kConstFalseLane)
          slot = emit(kConstF);
        else {
          if (lane < 0 || lane >= n_lanes)
            throw std::invalid_argument("EvalProgram: atom has no lane");
          slot = emit(kLoad, lane);
        }
        break;
      }
      case Connective::kNot:
        slot = emit(kNot, fr.kid_slots[0]);
        break;
      case Connective::kAnd: {
        slot = fr.kid_slots[0];
        for (size_t i = 1; i < fr.kid_slots.size(); ++i) slot = emit(kAnd, slot, fr.kid_slots[i]);
        break;
      }
      case Connective::kOr: {
        slot = fr.kid_slots[0];
        for (size_t i = 1; i < fr.kid_slots.size(); ++i) slot = emit(kOr, slot, fr.kid_slots[i]);
        break;
      }
      case Connective::kImplies: {
        int32_t na = emit(kNot, fr.kid_slots[0]);
        slot = emit(kOr, na, fr.kid_slots[1]);
        break;
      }
      case Connective::kIff: {
        int32_t x = emit(kXor, fr.kid_slots[0], fr.kid_slots[1]);
        slot = emit(kNot, x);
        break;
      }
    }
    stack.pop_back();
    if (stack.empty()) {
      result = slot;
    } else {
      stack.back().kid_slots.push_back(slot);
      ++stack.back().next_kid;
    }
  }
  (void)result;
  return p;
}

uint64_t EvalProgram::run(const uint64_t* lanes, std::vector<uint64_t>& scratch) const {
  scratch.resize(code_.size());
  uint64_t* s = scratch.data();
  for (size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case kConstF:
        s[i] = 0;
        break;
      case kConstT:
        s[i] = ~uint64_t{0};
        break;
      case kLoad:
        s[i] = lanes[in.a];
        break;
      case kNot:
        s[i] = ~s[in.a];
        break;
      case kAnd:
        s[i] = s[in.a] & s[in.b];
        break;
      case kOr:
        s[i] = s[in.a] | s[in.b];
        break;
      case kXor:
        s[i] = s[in.a] ^ s[in.b];
        break;
    }
  }
  return code_.empty() ? 0 : s[code_.size() - 1];
}

}  // namespace fo2cis
