#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

#include "fo2cis/eq_elim.hpp"

namespace fo2cis {

int ceil_log2(uint64_t v) {
  assert(v >= 1);
  int t = 0;
  while ((uint64_t{1} << t) < v) ++t;
  return t;
}

StarCounts count_star_predicates(const SnfWithEq& psi) {
  int n = static_cast<int>(psi.vocab.unary.size());
  int k = static_cast<int>(psi.vocab.binary.size());
  int m = psi.m();
  int p = n + ceil_log2(3 * static_cast<uint64_t>(m));
  return {2 + 2 * n + 4 * k + p, k, m + 1};
}

namespace {

// star vocabulary layout: Ks, Kt, S_1..S_n, T_1..T_n, P_1..P_k,
// Pbar_1..Pbar_k, F_1..F_k, Fbar_1..Fbar_k, Z_1..Z_p
struct Star {
  int n, k, p;
  AtomTable* atoms;

  int ks() const { return 0; }
  int kt() const { return 1; }
  int s(int i) const { return 2 + i; }
  int t(int i) const { return 2 + n + i; }
  int pp(int j) const { return 2 + 2 * n + j; }
  int pbar(int j) const { return 2 + 2 * n + k + j; }
  int f(int j) const { return 2 + 2 * n + 2 * k + j; }
  int fbar(int j) const { return 2 + 2 * n + 3 * k + j; }
  int z(int i) const { return 2 + 2 * n + 4 * k + i; }

  FormulaPtr ux(int pred) const { return mk_atom(atoms->intern({AtomKind::kUnaryX, pred})); }
  FormulaPtr uy(int pred) const { return mk_atom(atoms->intern({AtomKind::kUnaryY, pred})); }
  FormulaPtr u(int pred, bool on_y) const { return on_y ? uy(pred) : ux(pred); }

  // same S-type, T-type, Z-type, P-type of x and y
  FormulaPtr xi_s() const {
    std::vector<FormulaPtr> c;
    for (int i = 0; i < n; ++i) c.push_back(mk_iff(ux(s(i)), uy(s(i))));
    return mk_and(std::move(c));
  }
  FormulaPtr xi_t() const {
    std::vector<FormulaPtr> c;
    for (int i = 0; i < n; ++i) c.push_back(mk_iff(ux(t(i)), uy(t(i))));
    return mk_and(std::move(c));
  }
  FormulaPtr xi_z() const {
    std::vector<FormulaPtr> c;
    for (int i = 0; i < p; ++i) c.push_back(mk_iff(ux(z(i)), uy(z(i))));
    return mk_and(std::move(c));
  }
  FormulaPtr xi_p() const {
    std::vector<FormulaPtr> c;
    for (int j = 0; j < k; ++j) {
      c.push_back(mk_iff(ux(pp(j)), uy(pp(j))));
      c.push_back(mk_iff(ux(pbar(j)), uy(pbar(j))));
    }
    return mk_and(std::move(c));
  }
  // x is the reverse pair of y
  FormulaPtr xi_rev() const {
    std::vector<FormulaPtr> c;
    for (int j = 0; j < k; ++j) {
      c.push_back(mk_iff(ux(pp(j)), uy(pbar(j))));
      c.push_back(mk_iff(ux(pbar(j)), uy(pp(j))));
    }
    return mk_and(std::move(c));
  }
  // the source 1-type of `a` equals the target 1-type of `b`
  FormulaPtr xi_st(bool a_on_y, bool b_on_y) const {
    std::vector<FormulaPtr> c;
    for (int i = 0; i < n; ++i) c.push_back(mk_iff(u(s(i), a_on_y), u(t(i), b_on_y)));
    return mk_and(std::move(c));
  }
  // x and y have the same source element
  FormulaPtr xi_id() const {
    return mk_and({xi_s(), mk_implies(mk_and({mk_not(uy(ks())), uy(kt())}), xi_z())});
  }
};

// rewrites every atom of f through `map`, interning into the output table
FormulaPtr subst(const FormulaPtr& f, const AtomTable& in, AtomTable& out,
                 const std::function<Atom(const Atom&)>& map) {
  switch (f->kind) {
    case Connective::kTrue:
    case Connective::kFalse:
      return f->kind == Connective::kTrue ? mk_true() : mk_false();
    case Connective::kAtom:
      return mk_atom(out.intern(map(in.atom(f->atom))));
    default: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& kd : f->kids) kids.push_back(subst(kd, in, out, map));
      switch (f->kind) {
        case Connective::kNot:
          return mk_not(kids[0]);
        case Connective::kAnd:
          return mk_and(std::move(kids));
        case Connective::kOr:
          return mk_or(std::move(kids));
        case Connective::kImplies:
          return mk_implies(kids[0], kids[1]);
        case Connective::kIff:
          return mk_iff(kids[0], kids[1]);
        default:
          throw std::logic_error("unreachable");
      }
    }
  }
}

}  // namespace

SnfNoEq eliminate_equality(const SnfWithEq& psi) {
  int n = static_cast<int>(psi.vocab.unary.size());
  int k = static_cast<int>(psi.vocab.binary.size());
  int m = psi.m();
  int p = n + ceil_log2(3 * static_cast<uint64_t>(m));

  SnfNoEq out;
  out.vocab.binary = psi.vocab.binary;
  auto& uv = out.vocab.unary;
  uv.push_back("__Ks");
  uv.push_back("__Kt");
  for (const auto& name : psi.vocab.unary) uv.push_back("__S_" + name);
  for (const auto& name : psi.vocab.unary) uv.push_back("__T_" + name);
  for (const auto& name : psi.vocab.binary) uv.push_back("__P_" + name);
  for (const auto& name : psi.vocab.binary) uv.push_back("__Pbar_" + name);
  for (const auto& name : psi.vocab.binary) uv.push_back("__F_" + name);
  for (const auto& name : psi.vocab.binary) uv.push_back("__Fbar_" + name);
  for (int i = 0; i < p; ++i) uv.push_back("__Z" + std::to_string(i + 1));

  Star st{n, k, p, &out.atoms};

  // every element is a forward or backward pair of some witness predicate
  std::vector<FormulaPtr> pair_kinds;
  std::set<int> seen;
  for (int w : psi.witnesses)
    if (seen.insert(w).second) {
      pair_kinds.push_back(st.ux(st.pp(w)));
      pair_kinds.push_back(st.ux(st.pbar(w)));
    }
  FormulaPtr some_pair = mk_or(std::move(pair_kinds));

  FormulaPtr same_source_kingship = mk_implies(st.xi_s(), mk_iff(st.ux(st.ks()), st.uy(st.ks())));
  FormulaPtr same_target_kingship = mk_implies(st.xi_t(), mk_iff(st.ux(st.kt()), st.uy(st.kt())));
  FormulaPtr loops_not_king =
      mk_implies(st.xi_st(false, false), mk_and({mk_not(st.ux(st.ks())), mk_not(st.ux(st.kt()))}));
  FormulaPtr king_pairs_agree = mk_implies(
      mk_and({st.xi_s(), st.xi_t(), st.xi_z(), st.ux(st.kt())}), st.xi_p());
  std::vector<FormulaPtr> zero_id;
  for (int i = 0; i < p; ++i) zero_id.push_back(mk_not(st.ux(st.z(i))));
  for (int j = 0; j < k; ++j) {
    zero_id.push_back(mk_not(st.ux(st.f(j))));
    zero_id.push_back(mk_not(st.ux(st.fbar(j))));
  }
  FormulaPtr kings_fixed_id = mk_implies(st.ux(st.ks()), mk_and(std::move(zero_id)));

  auto gamma1_map = [&](const Atom& a) -> Atom {
    if (a.kind == AtomKind::kUnaryX) return {AtomKind::kUnaryX, st.s(a.pred)};
    throw std::logic_error("gamma must be x-only unary");
  };
  auto alpha1_map = [&](const Atom& a) -> Atom {
    switch (a.kind) {
      case AtomKind::kUnaryX:
        return {AtomKind::kUnaryX, st.s(a.pred)};
      case AtomKind::kUnaryY:
        return {AtomKind::kUnaryX, st.t(a.pred)};
      case AtomKind::kCrossXY:
        return {AtomKind::kUnaryX, st.pp(a.pred)};
      case AtomKind::kCrossYX:
        return {AtomKind::kUnaryX, st.pbar(a.pred)};
      default:
        throw std::logic_error("alpha may not contain diagonal or equality atoms");
    }
  };
  auto alpha2_map = [&](const Atom& a) -> Atom {
    switch (a.kind) {
      case AtomKind::kUnaryX:
        return {AtomKind::kUnaryX, st.s(a.pred)};
      case AtomKind::kUnaryY:
        return {AtomKind::kUnaryY, st.s(a.pred)};
      case AtomKind::kCrossXY:
      case AtomKind::kCrossYX:
        return a;
      default:
        throw std::logic_error("alpha may not contain diagonal or equality atoms");
    }
  };
  // the F/Fbar bits of a non-king spell out a 2-type eta with
  // pi(x) and eta(x,y) and pi(y) entailing alpha, so a model can repeat that
  // source type; requiring alpha2 on the diagonal instead would collapse
  // R(x,y) and R(y,x) to one bit and wrongly reject types whose only
  // self-fillers are asymmetric
  auto alpha3_map = [&](const Atom& a) -> Atom {
    switch (a.kind) {
      case AtomKind::kUnaryX:
      case AtomKind::kUnaryY:
        return {AtomKind::kUnaryX, st.s(a.pred)};
      case AtomKind::kCrossXY:
        return {AtomKind::kUnaryX, st.f(a.pred)};
      case AtomKind::kCrossYX:
        return {AtomKind::kUnaryX, st.fbar(a.pred)};
      default:
        throw std::logic_error("alpha may not contain diagonal or equality atoms");
    }
  };
  FormulaPtr gamma1 = subst(psi.gamma, psi.atoms, out.atoms, gamma1_map);
  FormulaPtr alpha1 = subst(psi.alpha, psi.atoms, out.atoms, alpha1_map);
  FormulaPtr alpha2 = subst(psi.alpha, psi.atoms, out.atoms, alpha2_map);
  FormulaPtr alpha3 = subst(psi.alpha, psi.atoms, out.atoms, alpha3_map);

  // alpha2 is guarded by "different source types": sources sharing a 1-type
  // never face it (their pair constraints come from the filler bits), and the
  // guard is false at x = y
  out.alpha = mk_and({some_pair, same_source_kingship, same_target_kingship, loops_not_king,
                      king_pairs_agree, kings_fixed_id, gamma1, alpha1,
                      mk_implies(mk_not(st.xi_s()), alpha2),
                      mk_implies(mk_not(st.ux(st.ks())), alpha3)});

  for (int w : psi.witnesses) out.betas.push_back(mk_and({st.xi_id(), st.uy(st.pp(w))}));
  FormulaPtr inverse_pair =
      mk_and({st.xi_st(false, true), st.xi_st(true, false), st.xi_rev(),
              mk_iff(st.ux(st.ks()), st.uy(st.kt())), mk_iff(st.ux(st.kt()), st.uy(st.ks()))});
  out.betas.push_back(inverse_pair);
  return out;
}

}  // namespace fo2cis
