#include <bit>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fo2cis/model.hpp"

namespace fo2cis {

FiniteModel::FiniteModel(Vocabulary v, int n) : vocab(std::move(v)), size(n) {
  unary.assign(vocab.unary.size(), Bitset(n));
  binary.assign(vocab.binary.size(), std::vector<Bitset>(n, Bitset(n)));
}

namespace {

constexpr uint64_t broadcast(uint64_t bit) { return bit ? ~uint64_t{0} : 0; }

// lane layout shared by the pair sweeps: x-unary, y-unary, x-diagonal,
// y-diagonal, then the cross pairs (R(x,y), R(y,x)) per binary predicate
struct PairLanes {
  int n1, n2;
  int x_unary(int p) const { return p; }
  int y_unary(int p) const { return n1 + p; }
  int x_diag(int p) const { return 2 * n1 + p; }
  int y_diag(int p) const { return 2 * n1 + n2 + p; }
  int cross_xy(int j) const { return 2 * n1 + 2 * n2 + 2 * j; }
  int cross_yx(int j) const { return 2 * n1 + 2 * n2 + 2 * j + 1; }
  int total() const { return 2 * n1 + 4 * n2; }

  std::vector<int> fwd_map(const AtomTable& atoms) const {
    std::vector<int> map(atoms.size());
    for (int i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms.atom(i);
      switch (a.kind) {
        case AtomKind::kUnaryX:
          map[i] = x_unary(a.pred);
          break;
        case AtomKind::kUnaryY:
          map[i] = y_unary(a.pred);
          break;
        case AtomKind::kDiagXX:
          map[i] = x_diag(a.pred);
          break;
        case AtomKind::kDiagYY:
          map[i] = y_diag(a.pred);
          break;
        case AtomKind::kCrossXY:
          map[i] = cross_xy(a.pred);
          break;
        case AtomKind::kCrossYX:
          map[i] = cross_yx(a.pred);
          break;
        case AtomKind::kEquality:
          throw std::logic_error("equality atom in a no-eq formula");
      }
    }
    return map;
  }
};

}  // namespace

FiniteModel extract_model(const CompiledSystem& cs, const GisCertificate& gis) {
  const GraphSystem& g = cs.system;
  if (!verify_gis(g, gis.vertices)) throw std::invalid_argument("certificate is not a GIS");
  std::vector<int> gamma = gis.vertices.to_vector();
  int m = g.m;
  int ng = static_cast<int>(gamma.size());
  int sz = 3 * m * ng;
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < ng; ++i) pos[gamma[i]] = i;

  const Vocabulary& vocab = cs.phi->vocab;
  int n1 = static_cast<int>(vocab.unary.size());
  int n2 = static_cast<int>(vocab.binary.size());
  FiniteModel mdl(vocab, sz);

  auto elem = [&](int gp, int c, int r) { return (gp * 3 + c) * m + r; };
  for (int e = 0; e < sz; ++e) {
    uint64_t bits = cs.labels[gamma[e / (3 * m)]].bits;
    for (int p = 0; p < n1; ++p)
      if ((bits >> p) & 1) mdl.unary[p].set(e);
    for (int p = 0; p < n2; ++p)
      if ((bits >> (n1 + p)) & 1) mdl.binary[p][e].set(e);
  }

  auto apply = [&](int a, int b, TwoType eta) {
    for (int j = 0; j < n2; ++j) {
      if ((eta.bits >> (2 * j)) & 1) mdl.binary[j][a].set(b);
      if ((eta.bits >> (2 * j + 1)) & 1) mdl.binary[j][b].set(a);
    }
  };
  auto key = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<uint64_t>(a) * sz + b;
  };

  // witnesses: the layer-i request of (g, c, r) lands on level c+1 mod 3 with
  // requirement coordinate i-1, so no pair is ever assigned twice
  std::unordered_set<uint64_t> assigned;
  for (int a = 0; a < sz; ++a) {
    int gp = a / (3 * m), c = a / m % 3;
    int u = gamma[gp];
    for (int i = 1; i <= m; ++i) {
      int w = (g.out[i - 1][u] & gis.vertices).find_first();
      assert(w >= 0);
      int b = elem(pos[w], (c + 1) % 3, i - 1);
      apply(a, b, cs.witness(i, u, w));
      assigned.insert(key(a, b));
    }
  }
  for (int a = 0; a < sz; ++a) {
    int va = gamma[a / (3 * m)];
    for (int b = a + 1; b < sz; ++b) {
      if (assigned.count(key(a, b))) continue;
      apply(a, b, cs.filler(va, gamma[b / (3 * m)]));
    }
  }
  return mdl;
}

CheckResult check_model(const SnfNoEq& phi, const FiniteModel& mdl) {
  if (!(phi.vocab == mdl.vocab)) throw std::invalid_argument("vocabulary mismatch");
  int N = mdl.size;
  if (N == 0) return {false, 0, -1, -1};
  PairLanes lay{static_cast<int>(phi.vocab.unary.size()),
                static_cast<int>(phi.vocab.binary.size())};
  std::vector<int> map = lay.fwd_map(phi.atoms);
  EvalProgram alpha = EvalProgram::compile(phi.alpha, map, lay.total());
  std::vector<EvalProgram> betas;
  for (const auto& b : phi.betas) betas.push_back(EvalProgram::compile(b, map, lay.total()));
  int m = phi.m();

  // column views and the diagonal, so the inner loop reads whole words
  std::vector<std::vector<Bitset>> cols(lay.n2, std::vector<Bitset>(N, Bitset(N)));
  std::vector<Bitset> diag(lay.n2, Bitset(N));
  for (int j = 0; j < lay.n2; ++j)
    for (int a = 0; a < N; ++a) {
      mdl.binary[j][a].for_each([&](int b) { cols[j][b].set(a); });
      if (mdl.binary[j][a].test(a)) diag[j].set(a);
    }

  int words = (N + 63) / 64;
  uint64_t tail = (N & 63) ? (uint64_t{1} << (N & 63)) - 1 : ~uint64_t{0};
  std::vector<uint64_t> lanes(lay.total()), scratch;
  std::vector<char> found(m);
  for (int a = 0; a < N; ++a) {
    for (int p = 0; p < lay.n1; ++p)
      lanes[lay.x_unary(p)] = broadcast(mdl.unary[p].test(a));
    for (int p = 0; p < lay.n2; ++p)
      lanes[lay.x_diag(p)] = broadcast(mdl.binary[p][a].test(a));
    std::fill(found.begin(), found.end(), 0);
    for (int w = 0; w < words; ++w) {
      for (int p = 0; p < lay.n1; ++p) lanes[lay.y_unary(p)] = mdl.unary[p].word(w);
      for (int p = 0; p < lay.n2; ++p) lanes[lay.y_diag(p)] = diag[p].word(w);
      for (int j = 0; j < lay.n2; ++j) {
        lanes[lay.cross_xy(j)] = mdl.binary[j][a].word(w);
        lanes[lay.cross_yx(j)] = cols[j][a].word(w);
      }
      uint64_t valid = (w == words - 1) ? tail : ~uint64_t{0};
      uint64_t bad = ~alpha.run(lanes.data(), scratch) & valid;
      if (bad) return {false, 0, a, w * 64 + std::countr_zero(bad)};
      for (int i = 0; i < m; ++i)
        if (!found[i] && (betas[i].run(lanes.data(), scratch) & valid)) found[i] = 1;
    }
    for (int i = 0; i < m; ++i)
      if (!found[i]) return {false, i + 1, a, -1};
  }
  return {};
}

namespace {

// candidate structures are read straight off the counter: unary fact (p, e)
// is bit p*s + e, binary fact (j, u, v) is bit n1*s + j*s*s + u*s + v
struct Candidate {
  uint64_t code;
  int s, n1;
  bool unary_fact(int p, int e) const { return (code >> (p * s + e)) & 1; }
  bool binary_fact(int j, int u, int v) const {
    return (code >> (n1 * s + j * s * s + u * s + v)) & 1;
  }
};

void fill_assignment(Assignment& asg, const AtomTable& atoms, const Candidate& st, int a, int b) {
  for (int i = 0; i < atoms.size(); ++i) {
    const Atom& at = atoms.atom(i);
    bool v = false;
    switch (at.kind) {
      case AtomKind::kUnaryX:
        v = st.unary_fact(at.pred, a);
        break;
      case AtomKind::kUnaryY:
        v = st.unary_fact(at.pred, b);
        break;
      case AtomKind::kDiagXX:
        v = st.binary_fact(at.pred, a, a);
        break;
      case AtomKind::kDiagYY:
        v = st.binary_fact(at.pred, b, b);
        break;
      case AtomKind::kCrossXY:
        v = st.binary_fact(at.pred, a, b);
        break;
      case AtomKind::kCrossYX:
        v = st.binary_fact(at.pred, b, a);
        break;
      case AtomKind::kEquality:
        v = a == b;
        break;
    }
    asg.set(i, v);
  }
}

bool satisfies_noeq(const SnfNoEq& phi, const Candidate& st) {
  Assignment asg(phi.atoms.size());
  for (int a = 0; a < st.s; ++a)
    for (int b = 0; b < st.s; ++b) {
      fill_assignment(asg, phi.atoms, st, a, b);
      if (!evaluate(phi.alpha, asg)) return false;
    }
  for (int a = 0; a < st.s; ++a)
    for (const auto& beta : phi.betas) {
      bool ok = false;
      for (int b = 0; b < st.s && !ok; ++b) {
        fill_assignment(asg, phi.atoms, st, a, b);
        ok = evaluate(beta, asg);
      }
      if (!ok) return false;
    }
  return true;
}

bool satisfies_eq(const SnfWithEq& psi, const Candidate& st) {
  Assignment asg(psi.atoms.size());
  for (int a = 0; a < st.s; ++a) {
    fill_assignment(asg, psi.atoms, st, a, a);
    if (!evaluate(psi.gamma, asg)) return false;
  }
  for (int a = 0; a < st.s; ++a)
    for (int b = 0; b < st.s; ++b) {
      if (a == b) continue;
      fill_assignment(asg, psi.atoms, st, a, b);
      if (!evaluate(psi.alpha, asg)) return false;
    }
  for (int a = 0; a < st.s; ++a)
    for (int w : psi.witnesses) {
      bool ok = false;
      for (int b = 0; b < st.s && !ok; ++b) ok = b != a && st.binary_fact(w, a, b);
      if (!ok) return false;
    }
  return true;
}

FiniteModel materialize(const Vocabulary& vocab, const Candidate& st) {
  FiniteModel mdl(vocab, st.s);
  for (int p = 0; p < static_cast<int>(vocab.unary.size()); ++p)
    for (int e = 0; e < st.s; ++e)
      if (st.unary_fact(p, e)) mdl.unary[p].set(e);
  for (int j = 0; j < static_cast<int>(vocab.binary.size()); ++j)
    for (int u = 0; u < st.s; ++u)
      for (int v = 0; v < st.s; ++v)
        if (st.binary_fact(j, u, v)) mdl.binary[j][u].set(v);
  return mdl;
}

}  // namespace

SearchResult bounded_model_search(const SnfFormula& psi, int max_size, uint64_t work_cap) {
  const Vocabulary& vocab =
      std::holds_alternative<SnfNoEq>(psi) ? std::get<SnfNoEq>(psi).vocab
                                           : std::get<SnfWithEq>(psi).vocab;
  int n1 = static_cast<int>(vocab.unary.size());
  int n2 = static_cast<int>(vocab.binary.size());
  uint64_t used = 0;
  for (int s = 1; s <= max_size; ++s) {
    int bits = n1 * s + n2 * s * s;
    if (bits >= 62) return {SearchStatus::kInconclusive, {}};
    uint64_t structures = uint64_t{1} << bits;
    uint64_t per = static_cast<uint64_t>(s) * s;
    if (structures > (work_cap - used) / per) return {SearchStatus::kInconclusive, {}};
    used += structures * per;
    for (uint64_t code = 0; code < structures; ++code) {
      Candidate st{code, s, n1};
      bool ok = std::holds_alternative<SnfNoEq>(psi)
                    ? satisfies_noeq(std::get<SnfNoEq>(psi), st)
                    : satisfies_eq(std::get<SnfWithEq>(psi), st);
      if (ok) return {SearchStatus::kFound, materialize(vocab, st)};
    }
  }
  return {SearchStatus::kNoModel, {}};
}

void print_model(std::ostream& os, const FiniteModel& mdl) {
  os << "model " << mdl.size << "\n";
  for (size_t p = 0; p < mdl.vocab.unary.size(); ++p) {
    os << "u " << mdl.vocab.unary[p];
    mdl.unary[p].for_each([&](int e) { os << " " << e; });
    os << "\n";
  }
  for (size_t j = 0; j < mdl.vocab.binary.size(); ++j)
    for (int u = 0; u < mdl.size; ++u)
      mdl.binary[j][u].for_each(
          [&](int v) { os << "b " << mdl.vocab.binary[j] << " " << u << " " << v << "\n"; });
}

FiniteModel parse_model(std::istream& is, const Vocabulary& vocab) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("model line " + std::to_string(lineno) + ": " + msg);
  };
  std::optional<FiniteModel> mdl;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head) || head[0] == '#') continue;
    if (head == "model") {
      int n;
      if (mdl) fail("duplicate model header");
      if (!(ss >> n) || n < 0) fail("bad size");
      mdl.emplace(vocab, n);
      continue;
    }
    if (!mdl) fail("facts before 'model' header");
    if (head == "u") {
      std::string name;
      if (!(ss >> name)) fail("missing predicate name");
      int p = vocab.unary_index(name);
      if (p < 0) fail("unknown unary predicate '" + name + "'");
      int e;
      while (ss >> e) {
        if (e < 0 || e >= mdl->size) fail("element out of range");
        mdl->unary[p].set(e);
      }
      if (!ss.eof()) fail("bad element list");
    } else if (head == "b") {
      std::string name;
      int u, v;
      if (!(ss >> name)) fail("missing predicate name");
      int p = vocab.binary_index(name);
      if (p < 0) fail("unknown binary predicate '" + name + "'");
      if (!(ss >> u >> v)) fail("expected two elements");
      if (u < 0 || u >= mdl->size || v < 0 || v >= mdl->size) fail("element out of range");
      mdl->binary[p][u].set(v);
    } else {
      fail("unknown line type '" + head + "'");
    }
  }
  if (!mdl) throw std::runtime_error("model: missing 'model' header");
  return *mdl;
}

}  // namespace fo2cis
