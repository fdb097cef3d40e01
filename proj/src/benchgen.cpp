#include <istream>
#include <sstream>
#include <stdexcept>

#include "fo2cis/benchgen.hpp"
#include "fo2cis/rng.hpp"

namespace fo2cis {

std::string genspec_comment(const std::string& family,
                            const std::vector<std::pair<std::string, std::string>>& params) {
  std::string s = "family=" + family;
  for (const auto& [k, v] : params) s += " " + k + "=" + v;
  return s;
}

namespace {

FormulaPtr unary_atom(AtomTable& t, int pred, bool on_y) {
  return mk_atom(t.intern({on_y ? AtomKind::kUnaryY : AtomKind::kUnaryX, pred}));
}

// clause forbidding 1-type u on x together with 1-type v on y, one negated
// indicator literal per bit
FormulaPtr forbid_pair(AtomTable& t, int bits, uint64_t u, uint64_t v) {
  std::vector<FormulaPtr> lits;
  for (int p = 0; p < bits; ++p) {
    FormulaPtr a = unary_atom(t, p, false);
    lits.push_back((u >> p) & 1 ? mk_not(a) : a);
  }
  for (int p = 0; p < bits; ++p) {
    FormulaPtr a = unary_atom(t, p, true);
    lits.push_back((v >> p) & 1 ? mk_not(a) : a);
  }
  return mk_or(std::move(lits));
}

// alpha/beta encoding of a one-layer system over indicator 1-types: one
// clause per conflict edge per orientation, one clause per layer non-edge
SnfNoEq encode_system(int bits, const GraphSystem& g) {
  SnfNoEq phi;
  for (int p = 0; p < bits; ++p) phi.vocab.unary.push_back("U" + std::to_string(p + 1));
  std::vector<FormulaPtr> alpha;
  for (int u = 0; u < g.n; ++u)
    g.conflict[u].for_each([&](int v) {
      if (v <= u) return;
      alpha.push_back(forbid_pair(phi.atoms, bits, u, v));
      alpha.push_back(forbid_pair(phi.atoms, bits, v, u));
    });
  phi.alpha = mk_and(std::move(alpha));
  std::vector<FormulaPtr> beta;
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (!g.has_edge(1, u, v)) beta.push_back(forbid_pair(phi.atoms, bits, u, v));
  phi.betas.push_back(mk_and(std::move(beta)));
  return phi;
}

}  // namespace

SnfNoEq gen_exp_a(int n) {
  if (n < 2) throw std::invalid_argument("exp_a needs n >= 2");
  SnfNoEq phi;
  for (int i = 0; i < n; ++i) phi.vocab.unary.push_back("U" + std::to_string(i + 1));
  phi.vocab.unary.push_back("V");
  phi.vocab.binary.push_back("E");
  AtomTable& t = phi.atoms;
  auto U = [&](int i, bool on_y) { return unary_atom(t, i, on_y); };
  auto V = [&](bool on_y) { return unary_atom(t, n, on_y); };
  FormulaPtr E = mk_atom(t.intern({AtomKind::kCrossXY, 0}));

  std::vector<FormulaPtr> alpha;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) alpha.push_back(mk_not(mk_and({U(i, false), U(j, false)})));
  for (int i = 0; i < n; ++i) {
    int succ = (i + 1) % n;
    for (int j = 0; j < n; ++j)
      if (j != succ) alpha.push_back(mk_not(mk_and({E, U(i, false), U(j, true)})));
  }
  alpha.push_back(mk_implies(U(0, false), V(false)));
  alpha.push_back(mk_implies(E, mk_iff(V(false), mk_not(V(true)))));
  phi.alpha = mk_and(std::move(alpha));

  for (int i = 0; i < n; ++i) phi.betas.push_back(U(i, true));
  std::vector<FormulaPtr> any_class;
  for (int i = 0; i < n; ++i) any_class.push_back(U(i, true));
  phi.betas.push_back(mk_and({E, mk_or(std::move(any_class))}));
  return phi;
}

GraphSystem gen_exp_b_graph(int n) {
  if (n < 1) throw std::invalid_argument("exp_b needs n >= 1");
  int nv = 1 << (2 * n);
  int triangles = nv / 3;
  GraphSystem g(nv, 1);
  for (int t = 0; t < triangles; ++t) {
    g.add_conflict(3 * t, 3 * t + 1);
    g.add_conflict(3 * t, 3 * t + 2);
    g.add_conflict(3 * t + 1, 3 * t + 2);
  }
  for (int t = 0; t < triangles; ++t) g.add_edge(1, 3 * t, 3 * ((t + 1) % triangles));
  return g;
}

SnfNoEq gen_exp_b(int n) { return encode_system(2 * n, gen_exp_b_graph(n)); }

SnfWithEq gen_exp_c(int n) {
  if (n < 1) throw std::invalid_argument("exp_c needs n >= 1");
  SnfWithEq psi;
  for (int i = 0; i < n; ++i) psi.vocab.unary.push_back("U" + std::to_string(i + 1));
  psi.vocab.binary.push_back("S");
  AtomTable& t = psi.atoms;
  psi.gamma = mk_true();

  std::vector<FormulaPtr> same;
  for (int i = 0; i < n; ++i)
    same.push_back(mk_iff(unary_atom(t, i, false), unary_atom(t, i, true)));
  FormulaPtr one_per_type = mk_implies(mk_and(std::move(same)), mk_false());

  // y reads x+1 mod 2^n: bit i flips exactly when all lower bits are set
  std::vector<FormulaPtr> inc;
  for (int i = 0; i < n; ++i) {
    std::vector<FormulaPtr> low;
    for (int j = 0; j < i; ++j) low.push_back(unary_atom(t, j, false));
    FormulaPtr flipped = mk_not(mk_iff(unary_atom(t, i, false), mk_and(std::move(low))));
    inc.push_back(mk_iff(unary_atom(t, i, true), flipped));
  }
  FormulaPtr succ = mk_implies(mk_atom(t.intern({AtomKind::kCrossXY, 0})), mk_and(std::move(inc)));

  psi.alpha = mk_and({one_per_type, succ});
  psi.witnesses.push_back(0);
  return psi;
}

ExpDInstance gen_exp_d(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("exp_d needs n >= 1");
  int nv = 1 << n;
  Rng rng(seed);
  GraphSystem g(nv, 1);
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v)
      if (rng.bernoulli(0.5)) g.add_conflict(u, v);
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v)
      if (rng.bernoulli(0.5) && !(u != v && g.has_conflict(u, v))) g.add_edge(1, u, v);
  return {encode_system(n, g), std::move(g)};
}

Cnf parse_dimacs(std::istream& is) {
  Cnf cnf;
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<int> current;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("dimacs line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      int nc;
      if (header) fail("duplicate header");
      if (!(ss >> kind >> cnf.n_vars >> nc) || kind != "cnf" || cnf.n_vars < 0)
        fail("expected 'p cnf <vars> <clauses>'");
      header = true;
      continue;
    }
    if (!header) fail("clause before header");
    ss.clear();
    ss.str(line);
    int lit;
    while (ss >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else if (std::abs(lit) > cnf.n_vars) {
        fail("literal out of range");
      } else {
        current.push_back(lit);
      }
    }
    if (!ss.eof()) fail("bad token");
  }
  if (!header) throw std::runtime_error("dimacs: missing header");
  if (!current.empty()) throw std::runtime_error("dimacs: unterminated clause");
  return cnf;
}

GraphSystem from_cnf(const Cnf& cnf) {
  int n = cnf.n_vars;
  int m = static_cast<int>(cnf.clauses.size());
  for (const auto& c : cnf.clauses)
    if (c.empty()) throw std::invalid_argument("empty clause");
  GraphSystem g(2 * n + 1, n + m + 1);
  auto lit_vertex = [&](int lit) { return lit > 0 ? lit : n - lit; };
  for (int i = 1; i <= n; ++i) g.add_conflict(i, n + i);
  for (int i = 1; i <= n; ++i) {
    g.add_edge(i, 0, i);
    g.add_edge(i, 0, n + i);
    for (int l = 1; l <= 2 * n; ++l) g.add_edge(i, l, l);
  }
  for (int j = 0; j < m; ++j) {
    for (int lit : cnf.clauses[j]) g.add_edge(n + 1 + j, 0, lit_vertex(lit));
    for (int l = 1; l <= 2 * n; ++l) g.add_edge(n + 1 + j, l, l);
  }
  int last = n + m + 1;
  for (int l = 1; l <= 2 * n; ++l) g.add_edge(last, l, 0);
  g.add_edge(last, 0, 0);
  return g;
}

UndirectedGraph read_graph(std::istream& is) {
  UndirectedGraph g;
  std::string line;
  int lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("graph line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c" || tok == "#") continue;
    if (tok == "p") {
      std::string kind;
      if (header) fail("duplicate header");
      if (!(ss >> kind >> g.n) || kind != "graph" || g.n < 0) fail("expected 'p graph <n>'");
      header = true;
    } else if (tok == "e") {
      int u, v;
      if (!header) fail("edge before header");
      if (!(ss >> u >> v)) fail("expected 'e <u> <v>'");
      if (u < 0 || u >= g.n || v < 0 || v >= g.n) fail("vertex out of range");
      if (u == v) fail("self-loop not allowed");
      g.edges.emplace_back(u, v);
    } else {
      fail("unknown line type '" + tok + "'");
    }
  }
  if (!header) throw std::runtime_error("graph: missing header");
  return g;
}

GraphSystem from_independent_set(const UndirectedGraph& src, int k) {
  if (src.n < 1) throw std::invalid_argument("graph must be non-empty");
  if (k < 1 || k > src.n) throw std::invalid_argument("k must be in [1, |V|]");
  for (auto [u, v] : src.edges)
    if (u < 0 || u >= src.n || v < 0 || v >= src.n || u == v)
      throw std::invalid_argument("bad edge");
  int n = src.n;
  GraphSystem g(n * k, 1);
  auto idx = [&](int v, int copy) { return copy * n + v; };
  for (int i = 0; i < k; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_conflict(idx(u, i), idx(v, i));
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) g.add_conflict(idx(v, i), idx(v, j));
  for (auto [u, v] : src.edges)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j) g.add_conflict(idx(u, i), idx(v, j));
  for (int i = 0; i < k; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) g.add_edge(1, idx(u, i), idx(v, (i + 1) % k));
  return g;
}

AlternatingGraph read_agraph(std::istream& is) {
  AlternatingGraph g;
  std::string line;
  int lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("agraph line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c" || tok == "#") continue;
    if (tok == "p") {
      std::string kind;
      if (header) fail("duplicate header");
      if (!(ss >> kind >> g.n) || kind != "agraph" || g.n < 0) fail("expected 'p agraph <n>'");
      g.universal.assign(g.n, 0);
      g.out.assign(g.n, {});
      header = true;
    } else if (tok == "a") {
      int u;
      if (!header) fail("mark before header");
      if (!(ss >> u) || u < 0 || u >= g.n) fail("vertex out of range");
      g.universal[u] = 1;
    } else if (tok == "e") {
      int u, v;
      if (!header) fail("edge before header");
      if (!(ss >> u >> v)) fail("expected 'e <u> <v>'");
      if (u < 0 || u >= g.n || v < 0 || v >= g.n) fail("vertex out of range");
      g.out[u].push_back(v);
    } else {
      fail("unknown line type '" + tok + "'");
    }
  }
  if (!header) throw std::runtime_error("agraph: missing header");
  return g;
}

GraphSystem from_alternating_graph(const AlternatingGraph& src, int s, int t) {
  int n = src.n;
  if (n < 1) throw std::invalid_argument("graph must be non-empty");
  if (s < 0 || s >= n || t < 0 || t >= n) throw std::invalid_argument("s or t out of range");
  for (int u = 0; u < n; ++u)
    if (src.universal[u] && src.out[u].size() != 2)
      throw std::invalid_argument("universal vertex " + std::to_string(u) +
                                  " must have exactly 2 outgoing edges");
  if (src.universal[t])
    throw std::invalid_argument("target vertex " + std::to_string(t) + " must be existential");
  if (!src.out[t].empty())
    throw std::invalid_argument("target vertex " + std::to_string(t) +
                                " must have no outgoing edge");

  GraphSystem g(n * n, 2);
  auto idx = [&](int u, int level) { return (level - 1) * n + u; };
  g.add_edge(1, idx(t, n), idx(s, 1));
  g.add_edge(2, idx(t, n), idx(s, 1));
  for (int i = 1; i < n; ++i) {
    g.add_edge(1, idx(t, i), idx(t, i + 1));
    g.add_edge(2, idx(t, i), idx(t, i + 1));
  }
  for (int u = 0; u < n; ++u) {
    if (src.universal[u]) {
      for (int i = 1; i < n; ++i) {
        g.add_edge(1, idx(u, i), idx(src.out[u][0], i + 1));
        g.add_edge(2, idx(u, i), idx(src.out[u][1], i + 1));
      }
    } else {
      for (int i = 1; i <= n; ++i) g.add_edge(2, idx(u, i), idx(u, i));
      for (int v : src.out[u])
        for (int i = 1; i < n; ++i) g.add_edge(1, idx(u, i), idx(v, i + 1));
    }
  }
  return g;
}

GraphSystem random_cis(int n, int m, double p_conflict, double p_layer, uint64_t seed) {
  if (p_conflict < 0 || p_conflict > 1 || p_layer < 0 || p_layer > 1)
    throw std::invalid_argument("probabilities must be in [0, 1]");
  Rng rng(seed);
  GraphSystem g(n, m);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p_conflict)) g.add_conflict(u, v);
  for (int i = 1; i <= m; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rng.bernoulli(p_layer)) g.add_edge(i, u, v);
  return g;
}

}  // namespace fo2cis
