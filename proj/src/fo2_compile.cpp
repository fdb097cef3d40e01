#include <bit>
#include <cassert>
#include <stdexcept>

#include "fo2cis/fo2.hpp"

namespace fo2cis {

namespace {

constexpr uint64_t broadcast(uint64_t bit) { return bit ? ~uint64_t{0} : 0; }

[[noreturn]] void unexpected_equality() {
  throw std::logic_error("equality atom in a no-eq formula");
}

// lane map for the diagonal reading: both variables collapse to one element,
// cross atoms fall onto the diagonal, lanes are exactly the 1-type bits
std::vector<int> diag_lane_map(const SnfNoEq& phi) {
  int n1 = static_cast<int>(phi.vocab.unary.size());
  std::vector<int> map(phi.atoms.size());
  for (int i = 0; i < phi.atoms.size(); ++i) {
    const Atom& a = phi.atoms.atom(i);
    switch (a.kind) {
      case AtomKind::kUnaryX:
      case AtomKind::kUnaryY:
        map[i] = a.pred;
        break;
      case AtomKind::kDiagXX:
      case AtomKind::kDiagYY:
      case AtomKind::kCrossXY:
      case AtomKind::kCrossYX:
        map[i] = n1 + a.pred;
        break;
      case AtomKind::kEquality:
        unexpected_equality();
    }
  }
  return map;
}

}  // namespace

TwoType reverse_two_type(TwoType t, int n_binary) {
  uint64_t out = 0;
  for (int j = 0; j < n_binary; ++j) {
    out |= ((t.bits >> (2 * j)) & 1) << (2 * j + 1);
    out |= ((t.bits >> (2 * j + 1)) & 1) << (2 * j);
  }
  return {out};
}

std::vector<OneType> enumerate_admissible_types(const SnfNoEq& phi) {
  int L = one_literal_count(phi.vocab);
  if (L > kMaxOneTypeBits)
    throw std::invalid_argument("vocabulary exceeds " + std::to_string(kMaxOneTypeBits) +
                                " one-literal atoms");
  EvalProgram prog = EvalProgram::compile(phi.alpha, diag_lane_map(phi), L);
  uint64_t total = uint64_t{1} << L;
  std::vector<uint64_t> lanes(L), scratch;
  std::vector<OneType> out;
  for (uint64_t base = 0; base < total; base += 64) {
    for (int j = 0; j < L; ++j)
      lanes[j] = j < 6 ? lane_pattern(j) : broadcast((base >> j) & 1);
    uint64_t word = prog.run(lanes.data(), scratch);
    if (total - base < 64) word &= (uint64_t{1} << (total - base)) - 1;
    while (word) {
      int t = std::countr_zero(word);
      word &= word - 1;
      out.push_back(OneType{base + static_cast<uint64_t>(t)});
    }
  }
  return out;
}

// Pair-space evaluator: one lane per literal over a pair (x, y). Layout is
// [x-unary][y-unary][x-diag][y-diag][cross pairs]. The swapped program reads
// the same lanes but through the renaming x<->y, so a single lane fill
// answers alpha in both orientations.
struct PairEval {
  int n1, n2, cc;  // cc = number of cross lanes = 2 * n2
  int total_lanes;
  EvalProgram alpha_fwd, alpha_swp;
  std::vector<EvalProgram> betas;  // forward orientation
  mutable std::vector<uint64_t> lanes, scratch;

  int x_unary(int p) const { return p; }
  int y_unary(int p) const { return n1 + p; }
  int x_diag(int p) const { return 2 * n1 + p; }
  int y_diag(int p) const { return 2 * n1 + n2 + p; }
  int cross(int c) const { return 2 * n1 + 2 * n2 + c; }

  explicit PairEval(const SnfNoEq& phi) {
    n1 = static_cast<int>(phi.vocab.unary.size());
    n2 = static_cast<int>(phi.vocab.binary.size());
    cc = 2 * n2;
    if (n2 > 16)
      throw std::invalid_argument("2-type sweep supports at most 16 binary predicates");
    total_lanes = 2 * n1 + 2 * n2 + cc;
    std::vector<int> fwd(phi.atoms.size()), swp(phi.atoms.size());
    for (int i = 0; i < phi.atoms.size(); ++i) {
      const Atom& a = phi.atoms.atom(i);
      switch (a.kind) {
        case AtomKind::kUnaryX:
          fwd[i] = x_unary(a.pred);
          swp[i] = y_unary(a.pred);
          break;
        case AtomKind::kUnaryY:
          fwd[i] = y_unary(a.pred);
          swp[i] = x_unary(a.pred);
          break;
        case AtomKind::kDiagXX:
          fwd[i] = x_diag(a.pred);
          swp[i] = y_diag(a.pred);
          break;
        case AtomKind::kDiagYY:
          fwd[i] = y_diag(a.pred);
          swp[i] = x_diag(a.pred);
          break;
        case AtomKind::kCrossXY:
          fwd[i] = cross(2 * a.pred);
          swp[i] = cross(2 * a.pred + 1);
          break;
        case AtomKind::kCrossYX:
          fwd[i] = cross(2 * a.pred + 1);
          swp[i] = cross(2 * a.pred);
          break;
        case AtomKind::kEquality:
          unexpected_equality();
      }
    }
    alpha_fwd = EvalProgram::compile(phi.alpha, fwd, total_lanes);
    alpha_swp = EvalProgram::compile(phi.alpha, swp, total_lanes);
    betas.reserve(phi.betas.size());
    for (const auto& b : phi.betas) betas.push_back(EvalProgram::compile(b, fwd, total_lanes));
    lanes.resize(total_lanes);
  }

  void fill_sides(OneType p1, OneType p2) const {
    for (int p = 0; p < n1; ++p) {
      lanes[x_unary(p)] = broadcast((p1.bits >> p) & 1);
      lanes[y_unary(p)] = broadcast((p2.bits >> p) & 1);
    }
    for (int p = 0; p < n2; ++p) {
      lanes[x_diag(p)] = broadcast((p1.bits >> (n1 + p)) & 1);
      lanes[y_diag(p)] = broadcast((p2.bits >> (n1 + p)) & 1);
    }
  }

  // smallest eta with alpha holding in both orientations, and beta (forward)
  // when given; eta bits are swept 64 per program run
  std::optional<uint64_t> smallest_eta(OneType p1, OneType p2, const EvalProgram* beta) const {
    fill_sides(p1, p2);
    uint64_t n_eta = uint64_t{1} << cc;
    for (uint64_t base = 0; base < n_eta; base += 64) {
      for (int c = 0; c < cc; ++c)
        lanes[cross(c)] = c < 6 ? lane_pattern(c) : broadcast((base >> c) & 1);
      uint64_t word = alpha_fwd.run(lanes.data(), scratch);
      if (word) word &= alpha_swp.run(lanes.data(), scratch);
      if (word && beta) word &= beta->run(lanes.data(), scratch);
      if (n_eta - base < 64) word &= (uint64_t{1} << (n_eta - base)) - 1;
      if (word) return base + static_cast<uint64_t>(std::countr_zero(word));
    }
    return std::nullopt;
  }
};

std::optional<TwoType> pair_compatible(const SnfNoEq& phi, OneType p1, OneType p2) {
  int n2 = static_cast<int>(phi.vocab.binary.size());
  if (p2 < p1) {
    auto r = pair_compatible(phi, p2, p1);
    if (!r) return std::nullopt;
    return reverse_two_type(*r, n2);
  }
  auto eta = PairEval(phi).smallest_eta(p1, p2, nullptr);
  if (!eta) return std::nullopt;
  return TwoType{*eta};
}

std::optional<TwoType> beta_compatible(const SnfNoEq& phi, int layer, OneType p1, OneType p2) {
  if (layer < 1 || layer > phi.m()) throw std::out_of_range("layer out of range");
  PairEval pe(phi);
  auto eta = pe.smallest_eta(p1, p2, &pe.betas[layer - 1]);
  if (!eta) return std::nullopt;
  return TwoType{*eta};
}

CompiledSystem build_graph_system(const SnfNoEq& phi) {
  std::vector<OneType> types = enumerate_admissible_types(phi);
  int nv = static_cast<int>(types.size());
  int m = phi.m();
  CompiledSystem cs;
  cs.phi = std::make_shared<const SnfNoEq>(phi);
  cs.labels = types;
  auto eval = std::make_shared<PairEval>(phi);
  cs.eval_ = eval;

  GraphSystem g(nv, m);
  int L = one_literal_count(phi.vocab);
  g.label_bits = L;
  for (int v = 0; v < nv; ++v) g.vertex_labels[v] = types[v].bits;

  const PairEval& pe = *eval;
  if (nv > 0 && pe.cc <= 12) {
    // bulk sweep: for each x-side vertex u and each eta, evaluate all
    // y-side vertices 64 at a time through per-atom vertex rows
    int words = (nv + 63) / 64;
    uint64_t tail = (nv & 63) ? (uint64_t{1} << (nv & 63)) - 1 : ~uint64_t{0};
    std::vector<Bitset> row(L, Bitset(nv));
    for (int v = 0; v < nv; ++v)
      for (int a = 0; a < L; ++a)
        if ((types[v].bits >> a) & 1) row[a].set(v);

    std::vector<uint64_t>& lanes = pe.lanes;
    std::vector<uint64_t> scratch;
    Bitset compat(nv);
    std::vector<Bitset> layer_hit(m, Bitset(nv));
    for (int u = 0; u < nv; ++u) {
      pe.fill_sides(types[u], OneType{0});
      compat.clear();
      for (auto& h : layer_hit) h.clear();
      for (uint64_t eta = 0; eta < (uint64_t{1} << pe.cc); ++eta) {
        for (int c = 0; c < pe.cc; ++c) lanes[pe.cross(c)] = broadcast((eta >> c) & 1);
        for (int b = 0; b < words; ++b) {
          for (int p = 0; p < pe.n1; ++p) lanes[pe.y_unary(p)] = row[p].word(b);
          for (int p = 0; p < pe.n2; ++p) lanes[pe.y_diag(p)] = row[pe.n1 + p].word(b);
          uint64_t ok = pe.alpha_fwd.run(lanes.data(), scratch);
          if (ok) ok &= pe.alpha_swp.run(lanes.data(), scratch);
          if (!ok) continue;
          compat.word(b) |= ok;
          for (int i = 0; i < m; ++i) {
            uint64_t hit = ok & pe.betas[i].run(lanes.data(), scratch);
            layer_hit[i].word(b) |= hit;
          }
        }
      }
      if (words) {
        compat.word(words - 1) &= tail;
        for (auto& h : layer_hit) h.word(words - 1) &= tail;
      }
      if (!compat.test(u))
        throw std::logic_error("internal error: admissible type incompatible with itself");
      for (int v = u + 1; v < nv; ++v)
        if (!compat.test(v)) g.add_conflict(u, v);
      for (int i = 0; i < m; ++i)
        layer_hit[i].for_each([&](int v) { g.add_edge(i + 1, u, v); });
    }
  } else if (nv > 0) {
    for (int u = 0; u < nv; ++u) {
      for (int v = 0; v < nv; ++v) {
        if (!pe.smallest_eta(types[u], types[v], nullptr)) {
          if (v == u)
            throw std::logic_error("internal error: admissible type incompatible with itself");
          if (v > u) g.add_conflict(u, v);
          continue;
        }
        for (int i = 0; i < m; ++i)
          if (pe.smallest_eta(types[u], types[v], &pe.betas[i])) g.add_edge(i + 1, u, v);
      }
    }
  }
  cs.system = std::move(g);
  return cs;
}

TwoType CompiledSystem::witness(int layer, int u, int v) const {
  if (layer < 1 || layer > system.m) throw std::out_of_range("layer out of range");
  if (!system.has_edge(layer, u, v))
    throw std::logic_error("witness requested for a missing layer edge");
  uint64_t nv = static_cast<uint64_t>(system.n);
  uint64_t key = (static_cast<uint64_t>(layer) * nv + u) * nv + v;
  auto it = cache_.find(key);
  if (it != cache_.end()) return {it->second};
  auto eta = eval_->smallest_eta(labels[u], labels[v], &eval_->betas[layer - 1]);
  assert(eta);
  cache_.emplace(key, *eta);
  return {*eta};
}

TwoType CompiledSystem::filler(int u, int v) const {
  if (system.has_conflict(u, v)) throw std::logic_error("filler requested for a conflict pair");
  uint64_t nv = static_cast<uint64_t>(system.n);
  uint64_t key = (static_cast<uint64_t>(u)) * nv + v;
  auto it = cache_.find(key);
  if (it != cache_.end()) return {it->second};
  auto eta = eval_->smallest_eta(labels[u], labels[v], nullptr);
  assert(eta);
  cache_.emplace(key, *eta);
  return {*eta};
}

FragmentFlags classify_formula(const SnfNoEq& phi) {
  return classify(build_graph_system(phi).system);
}

}  // namespace fo2cis
