#include "fo2cis/graph_system.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fo2cis/rng.hpp"

namespace fo2cis {

GraphSystem::GraphSystem(int n_vertices, int layers) : n(n_vertices), m(layers) {
  if (n < 0) throw std::invalid_argument("GraphSystem: negative vertex count");
  if (m < 1) throw std::invalid_argument("GraphSystem: needs at least one layer");
  conflict.assign(n, Bitset(n));
  out.assign(m, std::vector<Bitset>(n, Bitset(n)));
  in.assign(m, std::vector<Bitset>(n, Bitset(n)));
  vertex_labels.assign(n, 0);
}

void GraphSystem::add_conflict(int u, int v) {
  if (u == v) throw std::invalid_argument("GraphSystem: conflict self-loop");
  conflict[u].set(v);
  conflict[v].set(u);
}

void GraphSystem::add_edge(int layer, int u, int v) {
  if (layer < 1 || layer > m) throw std::invalid_argument("GraphSystem: layer out of range");
  out[layer - 1][u].set(v);
  in[layer - 1][v].set(u);
}

VertexSet GraphSystem::full_set() const {
  VertexSet s(n);
  s.set_all();
  return s;
}

bool same_structure(const GraphSystem& a, const GraphSystem& b) {
  return a.n == b.n && a.m == b.m && a.conflict == b.conflict && a.out == b.out;
}

bool verify_gis(const GraphSystem& g, const VertexSet& s) {
  if (s.width() != g.n) throw std::invalid_argument("verify_gis: width mismatch");
  if (s.none()) return false;
  bool ok = true;
  s.for_each([&](int v) {
    if (!ok) return;
    if (g.conflict[v].intersects(s)) {
      ok = false;
      return;
    }
    for (int i = 0; i < g.m; ++i)
      if (!g.out[i][v].intersects(s)) {
        ok = false;
        return;
      }
  });
  return ok;
}

VertexSet remove_bad_vertices(const GraphSystem& g, VertexSet y, int64_t* removed_count) {
  // per-vertex, per-layer counts of out-neighbours still present; a removal
  // only touches the counters of its in-neighbours
  std::vector<int> counters(static_cast<size_t>(g.m) * g.n, 0);
  std::vector<int> queue;
  std::vector<char> queued(g.n, 0);
  y.for_each([&](int v) {
    for (int i = 0; i < g.m; ++i) {
      int c = (g.out[i][v] & y).count();
      counters[static_cast<size_t>(i) * g.n + v] = c;
      if (c == 0 && !queued[v]) {
        queued[v] = 1;
        queue.push_back(v);
      }
    }
  });
  int64_t removed = 0;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    if (!y.test(u)) continue;
    y.reset(u);
    ++removed;
    for (int i = 0; i < g.m; ++i) {
      (g.in[i][u] & y).for_each([&](int w) {
        if (--counters[static_cast<size_t>(i) * g.n + w] == 0 && !queued[w]) {
          queued[w] = 1;
          queue.push_back(w);
        }
      });
    }
  }
  if (removed_count) *removed_count += removed;
  return y;
}

VertexSet prune_to_max_gis(const GraphSystem& g, const VertexSet& y) {
  if (y.width() != g.n) throw std::invalid_argument("prune_to_max_gis: width mismatch");
  bool independent = true;
  y.for_each([&](int v) {
    if (g.conflict[v].intersects(y)) independent = false;
  });
  if (!independent) throw std::invalid_argument("prune_to_max_gis: input set is not independent");
  return remove_bad_vertices(g, y);
}

namespace {

struct DeadlineHit {};

inline void check_deadline(const SolveLimits& limits) {
  if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline) throw DeadlineHit{};
}

// maximal independent sets of the conflict graph == maximal cliques of its
// complement; standard pivoting enumeration over bitsets
struct MisEnumerator {
  const GraphSystem& g;
  const SolveLimits& limits;
  std::vector<Bitset> comp;  // complement adjacency, no self-bit
  int64_t n_maximal = 0;
  int64_t pruned = 0;
  std::optional<VertexSet> found;

  MisEnumerator(const GraphSystem& gs, const SolveLimits& lim) : g(gs), limits(lim) {
    comp.reserve(g.n);
    for (int v = 0; v < g.n; ++v) {
      Bitset row = g.conflict[v].complement();
      row.reset(v);
      comp.push_back(std::move(row));
    }
  }

  bool expand(VertexSet& r, VertexSet p, VertexSet x) {
    check_deadline(limits);
    if (p.none() && x.none()) {
      ++n_maximal;
      VertexSet gis = remove_bad_vertices(g, r, &pruned);
      if (gis.any()) {
        found = std::move(gis);
        return true;
      }
      return false;
    }
    int pivot = -1, best = -1;
    VertexSet pux = p | x;
    pux.for_each([&](int u) {
      int c = (p & comp[u]).count();
      if (c > best) {
        best = c;
        pivot = u;
      }
    });
    VertexSet cands = p - comp[pivot];
    bool hit = false;
    cands.for_each([&](int v) {
      if (hit || !p.test(v)) return;
      r.set(v);
      if (expand(r, p & comp[v], x & comp[v])) {
        hit = true;
        return;
      }
      r.reset(v);
      p.reset(v);
      x.set(v);
    });
    return hit;
  }
};

}  // namespace

std::optional<SolveReport> solve_a(const GraphSystem& g, const SolveLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.algorithm_used = "a";
  if (g.n == 0) {
    rep.verdict = Verdict::kUnsat;
    rep.elapsed = std::chrono::steady_clock::now() - t0;
    return rep;
  }
  MisEnumerator e(g, limits);
  VertexSet r(g.n);
  try {
    bool sat = e.expand(r, g.full_set(), VertexSet(g.n));
    rep.verdict = sat ? Verdict::kSat : Verdict::kUnsat;
    if (sat) rep.certificate = GisCertificate{*e.found};
  } catch (const DeadlineHit&) {
    return std::nullopt;
  }
  rep.branch_count = e.n_maximal;
  rep.pruned_vertex_count = e.pruned;
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

namespace {

struct BranchSolver {
  const GraphSystem& g;
  const SolveLimits& limits;
  Rng rng;
  int64_t calls = 0;
  int64_t pruned = 0;
  std::optional<VertexSet> found;

  BranchSolver(const GraphSystem& gs, uint64_t seed, const SolveLimits& lim)
      : g(gs), limits(lim), rng(seed) {}

  bool independent(const VertexSet& s) const {
    bool ok = true;
    s.for_each([&](int v) {
      if (ok && g.conflict[v].intersects(s)) ok = false;
    });
    return ok;
  }

  // search for a GIS between x and y; the second branch is a tail call
  bool run(VertexSet x, VertexSet y) {
    for (;;) {
      check_deadline(limits);
      ++calls;
      if (!independent(x)) return false;
      x.for_each([&](int v) { y -= g.conflict[v]; });  // x itself survives: x is independent
      y = remove_bad_vertices(g, y, &pruned);
      if (y.none()) return false;
      // a pruned, independent, non-empty y is itself a GIS; this must be
      // checked before the no-progress test or a y that shrank to exactly x
      // would be rejected even when x is a GIS
      if (independent(y)) {
        found = y;
        return true;
      }
      if (y.is_subset_of(x)) return false;
      // uniform conflict edge inside y: count, draw, locate
      int64_t n_edges = 0;
      y.for_each([&](int v) {
        Bitset row = g.conflict[v] & y;
        int vw = v >> 6;
        for (int w = 0; w <= vw && w < row.n_words(); ++w) {
          uint64_t bits = row.word(w);
          if (w == vw) bits &= (uint64_t{1} << (v & 63)) - 1;  // count pairs once, u < v
          n_edges += std::popcount(bits);
        }
      });
      int64_t pick = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n_edges)));
      int eu = -1, ev = -1;
      y.for_each([&](int v) {
        if (ev >= 0) return;
        Bitset row = g.conflict[v] & y;
        row.for_each([&](int u) {
          if (ev >= 0 || u >= v) return;
          if (pick-- == 0) {
            eu = u;
            ev = v;
          }
        });
      });
      if (rng.below(2)) std::swap(eu, ev);
      VertexSet y1 = y;
      y1.reset(eu);
      if (run(x, std::move(y1))) return true;
      x.set(eu);
      y.reset(ev);
    }
  }
};

}  // namespace

std::optional<SolveReport> solve_b(const GraphSystem& g, uint64_t rng_seed,
                                   const SolveLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.algorithm_used = "b";
  BranchSolver s(g, rng_seed, limits);
  if (g.n == 0) {
    rep.verdict = Verdict::kUnsat;
    rep.elapsed = std::chrono::steady_clock::now() - t0;
    return rep;
  }
  try {
    bool sat = s.run(VertexSet(g.n), g.full_set());
    rep.verdict = sat ? Verdict::kSat : Verdict::kUnsat;
    if (sat) rep.certificate = GisCertificate{prune_to_max_gis(g, *s.found)};
  } catch (const DeadlineHit&) {
    return std::nullopt;
  }
  rep.branch_count = s.calls;
  rep.pruned_vertex_count = s.pruned;
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

SolveReport brute_force(const GraphSystem& g, int max_vertices) {
  auto t0 = std::chrono::steady_clock::now();
  if (g.n > max_vertices || g.n > 30)
    throw std::invalid_argument("brute_force: vertex cap exceeded");
  SolveReport rep;
  rep.algorithm_used = "brute_force";
  rep.verdict = Verdict::kUnsat;

  std::vector<uint64_t> cmask(g.n, 0);
  std::vector<std::vector<uint64_t>> omask(g.m, std::vector<uint64_t>(g.n, 0));
  for (int v = 0; v < g.n; ++v) {
    g.conflict[v].for_each([&](int u) { cmask[v] |= uint64_t{1} << u; });
    for (int i = 0; i < g.m; ++i)
      g.out[i][v].for_each([&](int u) { omask[i][v] |= uint64_t{1} << u; });
  }
  for (uint64_t mask = 1; mask < (uint64_t{1} << g.n); ++mask) {
    bool ok = true;
    for (uint64_t rest = mask; rest && ok; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (cmask[v] & mask) {
        ok = false;
        break;
      }
      for (int i = 0; i < g.m; ++i)
        if (!(omask[i][v] & mask)) {
          ok = false;
          break;
        }
    }
    if (ok) {
      rep.verdict = Verdict::kSat;
      VertexSet s(g.n);
      for (uint64_t rest = mask; rest; rest &= rest - 1) s.set(std::countr_zero(rest));
      rep.certificate = GisCertificate{std::move(s)};
      break;
    }
  }
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

FragmentFlags classify(const GraphSystem& g) {
  FragmentFlags f;
  f.conflict_free = true;
  for (int v = 0; v < g.n && f.conflict_free; ++v)
    if (g.conflict[v].any()) f.conflict_free = false;
  f.uniquely_outgoing = true;
  for (int i = 0; i < g.m && f.uniquely_outgoing; ++i)
    for (int v = 0; v < g.n; ++v)
      if (g.out[i][v].count() > 1) {
        f.uniquely_outgoing = false;
        break;
      }
  return f;
}

SolveReport solve_conflict_free(const GraphSystem& g) {
  auto t0 = std::chrono::steady_clock::now();
  if (!classify(g).conflict_free)
    throw std::invalid_argument("solve_conflict_free: system has conflicts");
  SolveReport rep;
  rep.algorithm_used = "conflict_free";
  VertexSet gis = remove_bad_vertices(g, g.full_set(), &rep.pruned_vertex_count);
  rep.verdict = gis.any() ? Verdict::kSat : Verdict::kUnsat;
  if (gis.any()) rep.certificate = GisCertificate{std::move(gis)};
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

SolveReport solve_cycle_m1(const GraphSystem& g) {
  auto t0 = std::chrono::steady_clock::now();
  FragmentFlags f = classify(g);
  if (!f.conflict_free || g.m != 1)
    throw std::invalid_argument("solve_cycle_m1: needs a conflict-free single-layer system");
  SolveReport rep;
  rep.algorithm_used = "cycle_m1";
  rep.verdict = Verdict::kUnsat;

  // iterative DFS; a back edge closes a directed cycle, which is a GIS
  std::vector<int> color(g.n, 0);  // 0 white, 1 on path, 2 done
  std::vector<int> path;
  std::vector<std::pair<int, int>> stack;  // (vertex, next out index)
  std::vector<std::vector<int>> adj(g.n);
  for (int v = 0; v < g.n; ++v) adj[v] = g.out[0][v].to_vector();

  for (int s = 0; s < g.n && rep.verdict == Verdict::kUnsat; ++s) {
    if (color[s] != 0) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    path.push_back(s);
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < static_cast<int>(adj[v].size())) {
        int w = adj[v][idx++];
        if (color[w] == 1) {
          // cycle w .. v along the current path
          VertexSet cyc(g.n);
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            cyc.set(*it);
            if (*it == w) break;
          }
          rep.verdict = Verdict::kSat;
          rep.certificate = GisCertificate{std::move(cyc)};
          break;
        }
        if (color[w] == 0) {
          color[w] = 1;
          path.push_back(w);
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        path.pop_back();
        stack.pop_back();
      }
    }
    stack.clear();
    path.clear();
  }
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

SolveReport solve_uniquely_outgoing(const GraphSystem& g) {
  auto t0 = std::chrono::steady_clock::now();
  if (!classify(g).uniquely_outgoing)
    throw std::invalid_argument("solve_uniquely_outgoing: a vertex has out-degree > 1");
  SolveReport rep;
  rep.algorithm_used = "uniquely_outgoing";
  rep.verdict = Verdict::kUnsat;

  std::vector<Bitset> next(g.n, Bitset(g.n));  // union of all layers
  for (int v = 0; v < g.n; ++v)
    for (int i = 0; i < g.m; ++i) next[v] |= g.out[i][v];

  for (int u = 0; u < g.n; ++u) {
    // forward closure of u
    VertexSet reach(g.n);
    std::vector<int> work{u};
    reach.set(u);
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      (next[v] - reach).for_each([&](int w) {
        reach.set(w);
        work.push_back(w);
      });
    }
    if (verify_gis(g, reach)) {
      rep.verdict = Verdict::kSat;
      rep.certificate = GisCertificate{std::move(reach)};
      break;
    }
    ++rep.branch_count;
  }
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

GraphSystem read_cis(std::istream& is) {
  std::string line;
  int lineno = 0;
  bool have_header = false;
  GraphSystem g;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("cis line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      int n = -1, m = -1;
      if (!(ss >> kind >> n >> m) || kind != "cis") fail("expected 'p cis <n> <m>'");
      if (have_header) fail("duplicate header");
      if (n < 0 || m < 1) fail("invalid sizes");
      g = GraphSystem(n, m);
      have_header = true;
      continue;
    }
    if (tok == "e") {
      if (!have_header) fail("edge before header");
      int layer, u, v;
      if (!(ss >> layer >> u >> v)) fail("expected 'e <layer> <u> <v>'");
      if (layer < 0 || layer > g.m) fail("layer out of range");
      if (u < 0 || u >= g.n || v < 0 || v >= g.n) fail("vertex out of range");
      if (layer == 0) {
        if (u == v) fail("self-loop in conflict graph");
        g.add_conflict(u, v);
      } else {
        g.add_edge(layer, u, v);
      }
      continue;
    }
    fail("unknown line type '" + tok + "'");
  }
  if (!have_header) throw std::runtime_error("cis: missing 'p cis' header");
  return g;
}

GraphSystem read_cis_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_cis(f);
}

void write_cis(std::ostream& os, const GraphSystem& g, const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "c " << c << "\n";
  if (g.label_bits > 0) {
    for (int v = 0; v < g.n; ++v) {
      os << "c label " << v << " ";
      for (int b = 0; b < g.label_bits; ++b) os << ((g.vertex_labels[v] >> b) & 1);
      os << "\n";
    }
  }
  os << "p cis " << g.n << " " << g.m << "\n";
  for (int u = 0; u < g.n; ++u)
    g.conflict[u].for_each([&](int v) {
      if (u < v) os << "e 0 " << u << " " << v << "\n";
    });
  for (int i = 1; i <= g.m; ++i)
    for (int u = 0; u < g.n; ++u)
      g.out[i - 1][u].for_each([&](int v) { os << "e " << i << " " << u << " " << v << "\n"; });
}

}  // namespace fo2cis
