// Independent reference implementations used only by tests. Everything here
// recomputes results from first principles (tree evaluation, exhaustive
// enumeration) rather than calling the library's optimized paths.
#ifndef FO2CIS_TESTS_ORACLES_HPP
#define FO2CIS_TESTS_ORACLES_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fo2cis/benchgen.hpp"
#include "fo2cis/fo2.hpp"
#include "fo2cis/graph_system.hpp"
#include "fo2cis/model.hpp"
#include "fo2cis/rng.hpp"

namespace fo2cis::oracle {

// subset sweep over all non-empty vertex sets
inline bool gis_exists(const GraphSystem& g) {
  if (g.n > 22) throw std::invalid_argument("oracle too slow beyond 22 vertices");
  int n = g.n;
  std::vector<uint64_t> cf(n, 0);
  std::vector<uint64_t> outm(static_cast<size_t>(g.m) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u != v && g.has_conflict(u, v)) cf[u] |= uint64_t{1} << v;
      for (int i = 1; i <= g.m; ++i)
        if (g.has_edge(i, u, v)) outm[static_cast<size_t>(i - 1) * n + u] |= uint64_t{1} << v;
    }
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (uint64_t rest = mask; ok && rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (cf[v] & mask) {
        ok = false;
        break;
      }
      for (int i = 0; i < g.m; ++i)
        if (!(outm[static_cast<size_t>(i) * n + v] & mask)) {
          ok = false;
          break;
        }
    }
    if (ok) return true;
  }
  return false;
}

// bad-vertex elimination that rescans in a shuffled order each pass
inline VertexSet shuffled_prune(const GraphSystem& g, const VertexSet& y, Rng& rng) {
  std::vector<char> in(g.n, 0);
  y.for_each([&](int v) { in[v] = 1; });
  std::vector<int> order;
  for (int v = 0; v < g.n; ++v) order.push_back(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (int v : order) {
      if (!in[v]) continue;
      bool good = true;
      for (int i = 1; i <= g.m && good; ++i) {
        bool has = false;
        for (int w = 0; w < g.n && !has; ++w)
          if (in[w] && g.has_edge(i, v, w)) has = true;
        good = has;
      }
      if (!good) {
        in[v] = 0;
        changed = true;
      }
    }
  }
  VertexSet r(g.n);
  for (int v = 0; v < g.n; ++v)
    if (in[v]) r.set(v);
  return r;
}

inline bool cnf_sat(const Cnf& c) {
  if (c.n_vars > 24) throw std::invalid_argument("oracle too slow beyond 24 variables");
  for (uint32_t asg = 0; asg < (uint32_t{1} << c.n_vars); ++asg) {
    bool all = true;
    for (const auto& cl : c.clauses) {
      bool any = false;
      for (int lit : cl)
        if (lit > 0 ? ((asg >> (lit - 1)) & 1) : !((asg >> (-lit - 1)) & 1)) {
          any = true;
          break;
        }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// least-fixpoint alternating reachability: existential vertices need one
// successor in the winning set, universal vertices need all of them
inline bool alt_reachable(const AlternatingGraph& g, int s, int t) {
  std::vector<char> win(g.n, 0);
  win[t] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < g.n; ++u) {
      if (win[u]) continue;
      bool w;
      if (g.universal[u]) {
        w = !g.out[u].empty();
        for (int v : g.out[u]) w = w && win[v];
      } else {
        w = false;
        for (int v : g.out[u]) w = w || win[v];
      }
      if (w) {
        win[u] = 1;
        changed = true;
      }
    }
  }
  return win[s];
}

inline bool has_indep_set_of_size(const UndirectedGraph& g, int k) {
  if (g.n > 22) throw std::invalid_argument("oracle too slow beyond 22 vertices");
  std::vector<uint64_t> adj(g.n, 0);
  for (auto [u, v] : g.edges) {
    adj[u] |= uint64_t{1} << v;
    adj[v] |= uint64_t{1} << u;
  }
  for (uint64_t mask = 0; mask < (uint64_t{1} << g.n); ++mask) {
    if (std::popcount(mask) != k) continue;
    bool ok = true;
    for (uint64_t rest = mask; ok && rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (adj[v] & mask) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// evaluates a matrix with x bound to 1-type px, y to py, cross atoms to eta
// (bit 2j = R_j(x,y), bit 2j+1 = R_j(y,x))
inline bool eval_pair(const SnfNoEq& phi, const FormulaPtr& f, uint64_t px, uint64_t py,
                      uint64_t eta) {
  int n1 = static_cast<int>(phi.vocab.unary.size());
  Assignment a(phi.atoms.size());
  for (int i = 0; i < phi.atoms.size(); ++i) {
    const Atom& at = phi.atoms.atom(i);
    switch (at.kind) {
      case AtomKind::kUnaryX:
        a.set(i, (px >> at.pred) & 1);
        break;
      case AtomKind::kUnaryY:
        a.set(i, (py >> at.pred) & 1);
        break;
      case AtomKind::kDiagXX:
        a.set(i, (px >> (n1 + at.pred)) & 1);
        break;
      case AtomKind::kDiagYY:
        a.set(i, (py >> (n1 + at.pred)) & 1);
        break;
      case AtomKind::kCrossXY:
        a.set(i, (eta >> (2 * at.pred)) & 1);
        break;
      case AtomKind::kCrossYX:
        a.set(i, (eta >> (2 * at.pred + 1)) & 1);
        break;
      default:
        throw std::invalid_argument("equality atom in oracle");
    }
  }
  return evaluate(f, a);
}

// the matrix with y renamed to x: all atoms read one element's 1-type
inline bool admissible(const SnfNoEq& phi, uint64_t bits) {
  int n1 = static_cast<int>(phi.vocab.unary.size());
  Assignment a(phi.atoms.size());
  for (int i = 0; i < phi.atoms.size(); ++i) {
    const Atom& at = phi.atoms.atom(i);
    switch (at.kind) {
      case AtomKind::kUnaryX:
      case AtomKind::kUnaryY:
        a.set(i, (bits >> at.pred) & 1);
        break;
      case AtomKind::kEquality:
        throw std::invalid_argument("equality atom in oracle");
      default:
        a.set(i, (bits >> (n1 + at.pred)) & 1);
        break;
    }
  }
  return evaluate(phi.alpha, a);
}

// smallest eta satisfying alpha forward, alpha swapped-with-reversed-eta, and
// (when layer > 0) the layer's witness matrix forward
inline std::optional<TwoType> compatible(const SnfNoEq& phi, OneType p1, OneType p2,
                                         int layer = 0) {
  int k = static_cast<int>(phi.vocab.binary.size());
  if (k > 12) throw std::invalid_argument("oracle too slow beyond 12 binary predicates");
  for (uint64_t eta = 0; eta < (uint64_t{1} << (2 * k)); ++eta) {
    uint64_t rev = reverse_two_type(TwoType{eta}, k).bits;
    if (!eval_pair(phi, phi.alpha, p1.bits, p2.bits, eta)) continue;
    if (!eval_pair(phi, phi.alpha, p2.bits, p1.bits, rev)) continue;
    if (layer > 0 && !eval_pair(phi, phi.betas[layer - 1], p1.bits, p2.bits, eta)) continue;
    return TwoType{eta};
  }
  return std::nullopt;
}

inline bool model_atom(const FiniteModel& mdl, const Atom& at, int a, int b) {
  switch (at.kind) {
    case AtomKind::kUnaryX:
      return mdl.unary[at.pred].test(a);
    case AtomKind::kUnaryY:
      return mdl.unary[at.pred].test(b);
    case AtomKind::kDiagXX:
      return mdl.binary[at.pred][a].test(a);
    case AtomKind::kDiagYY:
      return mdl.binary[at.pred][b].test(b);
    case AtomKind::kCrossXY:
      return mdl.binary[at.pred][a].test(b);
    case AtomKind::kCrossYX:
      return mdl.binary[at.pred][b].test(a);
    case AtomKind::kEquality:
      return a == b;
  }
  return false;
}

inline bool eval_in_model(const AtomTable& atoms, const FormulaPtr& f, const FiniteModel& mdl,
                          int a, int b) {
  Assignment asg(atoms.size());
  for (int i = 0; i < atoms.size(); ++i) asg.set(i, model_atom(mdl, atoms.atom(i), a, b));
  return evaluate(f, asg);
}

// plain quadratic model check, no equality guards
inline bool check_noeq(const SnfNoEq& phi, const FiniteModel& mdl) {
  if (mdl.size == 0) return false;
  for (int a = 0; a < mdl.size; ++a)
    for (int b = 0; b < mdl.size; ++b)
      if (!eval_in_model(phi.atoms, phi.alpha, mdl, a, b)) return false;
  for (const auto& beta : phi.betas)
    for (int a = 0; a < mdl.size; ++a) {
      bool found = false;
      for (int b = 0; b < mdl.size && !found; ++b)
        if (eval_in_model(phi.atoms, beta, mdl, a, b)) found = true;
      if (!found) return false;
    }
  return true;
}

// equality semantics: gamma everywhere, alpha on distinct pairs, witnesses
// must be distinct elements
inline bool check_eq(const SnfWithEq& psi, const FiniteModel& mdl) {
  if (mdl.size == 0) return false;
  for (int a = 0; a < mdl.size; ++a)
    if (!eval_in_model(psi.atoms, psi.gamma, mdl, a, a)) return false;
  for (int a = 0; a < mdl.size; ++a)
    for (int b = 0; b < mdl.size; ++b)
      if (a != b && !eval_in_model(psi.atoms, psi.alpha, mdl, a, b)) return false;
  for (int w : psi.witnesses)
    for (int a = 0; a < mdl.size; ++a) {
      bool found = false;
      for (int b = 0; b < mdl.size && !found; ++b)
        if (b != a && mdl.binary[w][a].test(b)) found = true;
      if (!found) return false;
    }
  return true;
}

// random formula tree over the given atom pool
inline FormulaPtr random_formula(Rng& rng, AtomTable& t, const std::vector<Atom>& pool,
                                 int depth) {
  if (depth == 0 || rng.below(3) == 0) {
    if (pool.empty() || rng.below(10) == 0) return rng.below(2) ? mk_true() : mk_false();
    FormulaPtr f = mk_atom(t.intern(pool[rng.below(pool.size())]));
    return rng.below(2) ? mk_not(f) : f;
  }
  FormulaPtr l = random_formula(rng, t, pool, depth - 1);
  FormulaPtr r = random_formula(rng, t, pool, depth - 1);
  switch (rng.below(5)) {
    case 0:
      return mk_and({std::move(l), std::move(r)});
    case 1:
      return mk_or({std::move(l), std::move(r)});
    case 2:
      return mk_implies(std::move(l), std::move(r));
    case 3:
      return mk_iff(std::move(l), std::move(r));
    default:
      return mk_not(std::move(l));
  }
}

inline std::vector<Atom> full_atom_pool(int n_unary, int n_binary) {
  std::vector<Atom> pool;
  for (int p = 0; p < n_unary; ++p) {
    pool.push_back({AtomKind::kUnaryX, p});
    pool.push_back({AtomKind::kUnaryY, p});
  }
  for (int p = 0; p < n_binary; ++p) {
    pool.push_back({AtomKind::kDiagXX, p});
    pool.push_back({AtomKind::kDiagYY, p});
    pool.push_back({AtomKind::kCrossXY, p});
    pool.push_back({AtomKind::kCrossYX, p});
  }
  return pool;
}

inline Vocabulary small_vocab(int n_unary, int n_binary) {
  Vocabulary v;
  for (int i = 0; i < n_unary; ++i) v.unary.push_back("P" + std::to_string(i + 1));
  for (int i = 0; i < n_binary; ++i) v.binary.push_back("R" + std::to_string(i + 1));
  return v;
}

inline SnfNoEq random_snf(Rng& rng, int n_unary, int n_binary, int m, int depth = 3) {
  SnfNoEq phi;
  phi.vocab = small_vocab(n_unary, n_binary);
  std::vector<Atom> pool = full_atom_pool(n_unary, n_binary);
  phi.alpha = random_formula(rng, phi.atoms, pool, depth);
  for (int i = 0; i < m; ++i) phi.betas.push_back(random_formula(rng, phi.atoms, pool, depth - 1));
  return phi;
}

// equality-form instance: gamma over x-only unary atoms, alpha without
// diagonal atoms, atomic witness list
inline SnfWithEq random_snf_eq(Rng& rng, int n_unary, int n_binary, int m, int depth = 2) {
  SnfWithEq psi;
  psi.vocab = small_vocab(n_unary, n_binary);
  std::vector<Atom> gamma_pool;
  for (int p = 0; p < n_unary; ++p) gamma_pool.push_back({AtomKind::kUnaryX, p});
  std::vector<Atom> alpha_pool;
  for (int p = 0; p < n_unary; ++p) {
    alpha_pool.push_back({AtomKind::kUnaryX, p});
    alpha_pool.push_back({AtomKind::kUnaryY, p});
  }
  for (int p = 0; p < n_binary; ++p) {
    alpha_pool.push_back({AtomKind::kCrossXY, p});
    alpha_pool.push_back({AtomKind::kCrossYX, p});
  }
  psi.gamma = random_formula(rng, psi.atoms, gamma_pool, depth);
  psi.alpha = random_formula(rng, psi.atoms, alpha_pool, depth);
  for (int i = 0; i < m; ++i) psi.witnesses.push_back(static_cast<int>(rng.below(n_binary)));
  return psi;
}

inline bool contains_equality(const FormulaPtr& f, const AtomTable& t) {
  if (f->kind == Connective::kAtom) return t.atom(f->atom).kind == AtomKind::kEquality;
  for (const auto& kid : f->kids)
    if (contains_equality(kid, t)) return true;
  return false;
}

}  // namespace fo2cis::oracle

#endif
