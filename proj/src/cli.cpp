#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "fo2cis/benchgen.hpp"
#include "fo2cis/cli.hpp"
#include "fo2cis/eq_elim.hpp"
#include "fo2cis/fo2.hpp"
#include "fo2cis/graph_system.hpp"
#include "fo2cis/model.hpp"

namespace fo2cis {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// loaded solve/classify input: a bare system, or a compiled formula
struct LoadedInput {
  GraphSystem system{0, 1};
  std::optional<CompiledSystem> compiled;
  std::optional<SnfNoEq> formula;
  bool eliminated_equality = false;
};

LoadedInput load_input(const std::string& path) {
  LoadedInput in;
  if (has_suffix(path, ".cis")) {
    in.system = read_cis_file(path);
    return in;
  }
  if (!has_suffix(path, ".fo2"))
    throw std::runtime_error("unsupported input extension (expected .fo2 or .cis): " + path);
  SnfFormula parsed = parse_fo2_file(path);
  if (std::holds_alternative<SnfWithEq>(parsed)) {
    in.formula = eliminate_equality(std::get<SnfWithEq>(parsed));
    in.eliminated_equality = true;
  } else {
    in.formula = std::move(std::get<SnfNoEq>(parsed));
  }
  in.compiled = build_graph_system(*in.formula);
  in.system = in.compiled->system;
  return in;
}

std::string auto_algorithm(const GraphSystem& g) {
  FragmentFlags flags = classify(g);
  if (flags.conflict_free && g.m == 1) return "cycle_m1";
  if (flags.conflict_free) return "conflict_free";
  if (flags.uniquely_outgoing) return "uniquely_outgoing";
  return "b";
}

// writes to the path, or to fallback when the path is empty
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  fn(f);
}

VertexSet read_certificate(const std::string& path, int n_vertices) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open certificate file: " + path);
  VertexSet s(n_vertices);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok == "c") continue;
    ss.clear();
    ss.str(line);
    int v;
    while (ss >> v) {
      if (v < 0 || v >= n_vertices)
        throw std::runtime_error("certificate line " + std::to_string(lineno) +
                                 ": vertex out of range: " + std::to_string(v));
      s.set(v);
    }
    if (!ss.eof())
      throw std::runtime_error("certificate line " + std::to_string(lineno) + ": bad token");
  }
  return s;
}

struct SolveOpts {
  std::string input;
  std::string alg = "auto";
  uint64_t seed = 0;
  double budget = 0;
  bool machine = false;
  std::string emit_model;
  std::string emit_cis;
  bool verify_cert = false;
};

int cmd_solve(const SolveOpts& opt, std::ostream& out, std::ostream& err) {
  LoadedInput in = load_input(opt.input);
  const GraphSystem& g = in.system;

  if (!opt.emit_model.empty() && !in.compiled)
    throw std::runtime_error("--emit-model requires a .fo2 input");
  if (!opt.emit_cis.empty() && !in.compiled)
    throw std::runtime_error("--emit-cis requires a .fo2 input");

  SolveLimits limits;
  if (opt.budget > 0)
    limits.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(opt.budget));

  std::optional<SolveReport> report;
  if (opt.alg == "a") {
    report = solve_a(g, limits);
  } else if (opt.alg == "b") {
    report = solve_b(g, opt.seed, limits);
  } else {
    std::string pick = auto_algorithm(g);
    if (pick == "cycle_m1")
      report = solve_cycle_m1(g);
    else if (pick == "conflict_free")
      report = solve_conflict_free(g);
    else if (pick == "uniquely_outgoing")
      report = solve_uniquely_outgoing(g);
    else
      report = solve_b(g, opt.seed, limits);
  }

  if (!report) {
    out << "BUDGET-EXCEEDED\n";
    return kExitBudget;
  }

  bool sat = report->verdict == Verdict::kSat;
  out << (sat ? "SAT" : "UNSAT") << "\n";
  if (opt.machine) {
    out << "algorithm=" << report->algorithm_used << "\n";
    out << "n=" << g.n << "\n";
    out << "m=" << g.m << "\n";
    out << "branch_count=" << report->branch_count << "\n";
    out << "pruned_vertex_count=" << report->pruned_vertex_count << "\n";
    if (sat) out << "certificate_size=" << report->certificate->vertices.count() << "\n";
    if (in.compiled) out << "eliminated_equality=" << (in.eliminated_equality ? 1 : 0) << "\n";
  } else {
    out << "algorithm: " << report->algorithm_used << "\n";
    out << "vertices: " << g.n << "\n";
    out << "layers: " << g.m << "\n";
    out << "branches: " << report->branch_count << "\n";
    out << "pruned: " << report->pruned_vertex_count << "\n";
    if (sat) out << "certificate size: " << report->certificate->vertices.count() << "\n";
    if (in.eliminated_equality) out << "equality eliminated: yes\n";
    out << "elapsed: " << report->elapsed.count() * 1000.0 << " ms\n";
  }

  if (sat && opt.verify_cert) {
    if (!verify_gis(g, report->certificate->vertices)) {
      err << "internal error: reported certificate failed verification\n";
      return kExitError;
    }
    out << (opt.machine ? "certificate_verified=1" : "certificate: verified") << "\n";
  }
  if (sat && !opt.emit_model.empty()) {
    FiniteModel mdl = extract_model(*in.compiled, *report->certificate);
    CheckResult chk = check_model(*in.formula, mdl);
    if (!chk.ok) {
      err << "internal error: extracted model failed verification\n";
      return kExitError;
    }
    with_output(opt.emit_model, out, [&](std::ostream& os) { print_model(os, mdl); });
    out << (opt.machine ? "model_size=" + std::to_string(mdl.size)
                        : "model: size " + std::to_string(mdl.size) + ", verified, written to " +
                              opt.emit_model)
        << "\n";
  }
  if (!opt.emit_cis.empty())
    with_output(opt.emit_cis, out, [&](std::ostream& os) { write_cis(os, g); });
  return sat ? kExitSat : kExitUnsat;
}

struct ReduceOpts {
  std::string input;
  std::string to;
  std::string out_path;
};

int cmd_reduce(const ReduceOpts& opt, std::ostream& out, std::ostream& err) {
  SnfFormula parsed = parse_fo2_file(opt.input);
  if (opt.to == "noeq") {
    SnfNoEq star;
    if (std::holds_alternative<SnfNoEq>(parsed)) {
      err << "warning: input is already equality-free; output unchanged\n";
      star = std::move(std::get<SnfNoEq>(parsed));
    } else {
      star = eliminate_equality(std::get<SnfWithEq>(parsed));
    }
    with_output(opt.out_path, out, [&](std::ostream& os) { os << print_fo2(star); });
    return kExitOk;
  }
  SnfNoEq phi = std::holds_alternative<SnfNoEq>(parsed)
                    ? std::move(std::get<SnfNoEq>(parsed))
                    : eliminate_equality(std::get<SnfWithEq>(parsed));
  CompiledSystem cs = build_graph_system(phi);
  with_output(opt.out_path, out, [&](std::ostream& os) { write_cis(os, cs.system); });
  return kExitOk;
}

int cmd_check(const std::string& input, const std::string& witness, std::ostream& out,
              std::ostream& err) {
  if (has_suffix(input, ".cis")) {
    GraphSystem g = read_cis_file(input);
    VertexSet s = read_certificate(witness, g.n);
    if (s.none()) {
      out << "REFUTED: GIS must be non-empty\n";
      return kExitRefuted;
    }
    if (verify_gis(g, s)) {
      out << "certificate verified\n";
      return kExitOk;
    }
    std::vector<int> members = s.to_vector();
    for (int u : members)
      for (int v : members)
        if (u < v && g.has_conflict(u, v)) {
          out << "REFUTED: vertices " << u << " and " << v << " conflict\n";
          return kExitRefuted;
        }
    for (int u : members)
      for (int i = 1; i <= g.m; ++i)
        if (!g.out[i - 1][u].intersects(s)) {
          out << "REFUTED: vertex " << u << " has no out-neighbour in the set in layer " << i
              << "\n";
          return kExitRefuted;
        }
    err << "internal error: verify_gis failed without a witnessable reason\n";
    return kExitError;
  }
  SnfFormula parsed = parse_fo2_file(input);
  if (!std::holds_alternative<SnfNoEq>(parsed))
    throw std::runtime_error("check requires an equality-free formula; run reduce --to noeq first");
  const SnfNoEq& phi = std::get<SnfNoEq>(parsed);
  std::ifstream mf(witness);
  if (!mf) throw std::runtime_error("cannot open model file: " + witness);
  FiniteModel mdl = parse_model(mf, phi.vocab);
  CheckResult res = check_model(phi, mdl);
  if (res.ok) {
    out << "model verified\n";
    return kExitOk;
  }
  if (res.conjunct == 0)
    out << "REFUTED: matrix violated by pair (" << res.a << ", " << res.b << ")\n";
  else
    out << "REFUTED: element " << res.a << " has no witness for existential conjunct "
        << res.conjunct << "\n";
  return kExitRefuted;
}

int cmd_classify(const std::string& input, bool machine, std::ostream& out) {
  LoadedInput in = load_input(input);
  FragmentFlags flags = classify(in.system);
  std::string pick = auto_algorithm(in.system);
  if (machine) {
    out << "n=" << in.system.n << "\n";
    out << "m=" << in.system.m << "\n";
    out << "conflict_free=" << (flags.conflict_free ? 1 : 0) << "\n";
    out << "uniquely_outgoing=" << (flags.uniquely_outgoing ? 1 : 0) << "\n";
    out << "auto_algorithm=" << pick << "\n";
  } else {
    out << "vertices: " << in.system.n << "\n";
    out << "layers: " << in.system.m << "\n";
    out << "conflict-free: " << (flags.conflict_free ? "yes" : "no") << "\n";
    out << "uniquely-outgoing: " << (flags.uniquely_outgoing ? "yes" : "no") << "\n";
    out << "auto algorithm: " << pick << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FO2 satisfiability via conditional independent sets"};
  app.require_subcommand(1);

  SolveOpts solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "decide satisfiability of a .fo2 or .cis input");
  solve->add_option("input", solve_opt.input, "input file (.fo2 or .cis)")->required();
  solve->add_option("--alg", solve_opt.alg, "solver: auto, a, or b")
      ->check(CLI::IsMember({"auto", "a", "b"}));
  solve->add_option("--seed", solve_opt.seed, "seed for the branching solver");
  solve->add_option("--budget", solve_opt.budget, "time budget in seconds (0 = none)");
  solve->add_flag("--machine", solve_opt.machine, "machine-readable output");
  solve->add_option("--emit-model", solve_opt.emit_model, "write the extracted model here");
  solve->add_option("--emit-cis", solve_opt.emit_cis, "write the compiled system here");
  solve->add_flag("--verify-cert", solve_opt.verify_cert, "re-verify the certificate");

  ReduceOpts reduce_opt;
  CLI::App* reduce = app.add_subcommand("reduce", "rewrite a formula (eliminate equality, compile)");
  reduce->add_option("input", reduce_opt.input, "input .fo2 file")->required();
  reduce->add_option("--to", reduce_opt.to, "target form: noeq or cis")
      ->required()
      ->check(CLI::IsMember({"noeq", "cis"}));
  reduce->add_option("--out", reduce_opt.out_path, "output file (default: stdout)");

  std::string check_input, check_witness;
  CLI::App* check = app.add_subcommand("check", "verify a model against a formula, or a certificate against a system");
  check->add_option("input", check_input, "formula (.fo2) or system (.cis)")->required();
  check->add_option("witness", check_witness, "model file or certificate file")->required();

  std::string classify_input;
  bool classify_machine = false;
  CLI::App* cls = app.add_subcommand("classify", "report fragment membership of an input");
  cls->add_option("input", classify_input, "input file (.fo2 or .cis)")->required();
  cls->add_flag("--machine", classify_machine, "machine-readable output");

  CLI::App* gen = app.add_subcommand("gen", "generate benchmark instances");
  gen->require_subcommand(1);
  gen->fallthrough();
  std::string gen_out;
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  int a_n = 0;
  CLI::App* g_a = gen->add_subcommand("exp_a", "cyclic class-partition family (.fo2)");
  g_a->add_option("--n", a_n, "number of classes")->required();

  int b_n = 0;
  bool b_graph = false;
  CLI::App* g_b = gen->add_subcommand("exp_b", "triangle-cycle family (.fo2)");
  g_b->add_option("--n", b_n, "half the number of unary predicates")->required();
  g_b->add_flag("--graph", b_graph, "emit the source system (.cis) instead");

  int c_n = 0;
  CLI::App* g_c = gen->add_subcommand("exp_c", "binary counter family with equality (.fo2)");
  g_c->add_option("--n", c_n, "counter width")->required();

  int d_n = 0;
  uint64_t d_seed = 0;
  bool d_graph = false;
  CLI::App* g_d = gen->add_subcommand("exp_d", "random one-layer system family (.fo2)");
  g_d->add_option("--n", d_n, "number of unary predicates")->required();
  g_d->add_option("--seed", d_seed, "random seed");
  g_d->add_flag("--graph", d_graph, "emit the drawn system (.cis) instead");

  std::string cnf_in;
  CLI::App* g_cnf = gen->add_subcommand("from_cnf", "reduce a DIMACS CNF to a system (.cis)");
  g_cnf->add_option("--in", cnf_in, "DIMACS .cnf file")->required();

  std::string is_in;
  int is_k = 1;
  CLI::App* g_is = gen->add_subcommand("from_indep", "reduce independent-set(k) to a system (.cis)");
  g_is->add_option("--in", is_in, "graph file")->required();
  g_is->add_option("--k", is_k, "target independent-set size")->required();

  std::string ag_in;
  int ag_s = 0, ag_t = 0;
  CLI::App* g_ag = gen->add_subcommand("from_altgraph",
                                       "reduce alternating-graph reachability to a system (.cis)");
  g_ag->add_option("--in", ag_in, "alternating graph file")->required();
  g_ag->add_option("--s", ag_s, "source vertex")->required();
  g_ag->add_option("--t", ag_t, "target vertex")->required();

  int r_n = 0, r_m = 1;
  double r_pc = 0.5, r_pl = 0.5;
  uint64_t r_seed = 0;
  CLI::App* g_r = gen->add_subcommand("random_cis", "random system (.cis)");
  g_r->add_option("--n", r_n, "number of vertices")->required();
  g_r->add_option("--m", r_m, "number of layers")->required();
  g_r->add_option("--p-conflict", r_pc, "conflict edge probability");
  g_r->add_option("--p-layer", r_pl, "layer edge probability");
  g_r->add_option("--seed", r_seed, "random seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt, out, err);
    if (reduce->parsed()) return cmd_reduce(reduce_opt, out, err);
    if (check->parsed()) return cmd_check(check_input, check_witness, out, err);
    if (cls->parsed()) return cmd_classify(classify_input, classify_machine, out);
    if (gen->parsed()) {
      auto emit_fo2 = [&](const auto& phi, const std::string& comment) {
        with_output(gen_out, out, [&](std::ostream& os) { os << print_fo2(phi, {comment}); });
      };
      auto emit_cis = [&](const GraphSystem& g, const std::string& comment) {
        with_output(gen_out, out, [&](std::ostream& os) { write_cis(os, g, {comment}); });
      };
      if (g_a->parsed()) {
        emit_fo2(gen_exp_a(a_n), genspec_comment("exp_a", {{"n", std::to_string(a_n)}}));
      } else if (g_b->parsed()) {
        std::string spec = genspec_comment("exp_b", {{"n", std::to_string(b_n)}});
        if (b_graph)
          emit_cis(gen_exp_b_graph(b_n), spec);
        else
          emit_fo2(gen_exp_b(b_n), spec);
      } else if (g_c->parsed()) {
        emit_fo2(gen_exp_c(c_n), genspec_comment("exp_c", {{"n", std::to_string(c_n)}}));
      } else if (g_d->parsed()) {
        ExpDInstance inst = gen_exp_d(d_n, d_seed);
        std::string spec = genspec_comment(
            "exp_d", {{"n", std::to_string(d_n)}, {"seed", std::to_string(d_seed)}});
        if (d_graph)
          emit_cis(inst.system, spec);
        else
          emit_fo2(inst.formula, spec);
      } else if (g_cnf->parsed()) {
        std::ifstream f(cnf_in);
        if (!f) throw std::runtime_error("cannot open input file: " + cnf_in);
        Cnf cnf = parse_dimacs(f);
        emit_cis(from_cnf(cnf),
                 genspec_comment("from_cnf", {{"vars", std::to_string(cnf.n_vars)},
                                              {"clauses", std::to_string(cnf.clauses.size())}}));
      } else if (g_is->parsed()) {
        std::ifstream f(is_in);
        if (!f) throw std::runtime_error("cannot open input file: " + is_in);
        UndirectedGraph g = read_graph(f);
        emit_cis(from_independent_set(g, is_k),
                 genspec_comment("from_indep", {{"vertices", std::to_string(g.n)},
                                                {"edges", std::to_string(g.edges.size())},
                                                {"k", std::to_string(is_k)}}));
      } else if (g_ag->parsed()) {
        std::ifstream f(ag_in);
        if (!f) throw std::runtime_error("cannot open input file: " + ag_in);
        AlternatingGraph g = read_agraph(f);
        emit_cis(from_alternating_graph(g, ag_s, ag_t),
                 genspec_comment("from_altgraph", {{"vertices", std::to_string(g.n)},
                                                   {"s", std::to_string(ag_s)},
                                                   {"t", std::to_string(ag_t)}}));
      } else if (g_r->parsed()) {
        std::ostringstream pc, pl;
        pc << r_pc;
        pl << r_pl;
        emit_cis(random_cis(r_n, r_m, r_pc, r_pl, r_seed),
                 genspec_comment("random_cis",
                                 {{"n", std::to_string(r_n)},
                                  {"m", std::to_string(r_m)},
                                  {"p_conflict", pc.str()},
                                  {"p_layer", pl.str()},
                                  {"seed", std::to_string(r_seed)}}));
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no subcommand\n";
  return kExitError;
}

}  // namespace fo2cis
