// Acceptance suite: every release criterion, one pass/fail line each.
// Exact integer equality throughout; there are no tolerances to tune.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "cwcount/circuit.hpp"
#include "cwcount/counting.hpp"
#include "cwcount/dp.hpp"
#include "cwcount/oracle.hpp"
#include "cwcount/pipeline.hpp"
#include "expr_gen.hpp"
#include "test_support.hpp"

using namespace cwc;

namespace {

int failures = 0;

void criterion(const char* name, const std::function<long()>& body) {
  auto start = std::chrono::steady_clock::now();
  try {
    long checks = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("PASS  %-28s (%ld checks, %.1fs)\n", name, checks, secs);
  } catch (const std::exception& e) {
    ++failures;
    std::printf("FAIL  %-28s %s\n", name, e.what());
  }
}

[[noreturn]] void reject(const std::string& msg) { throw std::runtime_error(msg); }

// ---- the expression suite shared by several criteria ----

// All union-tree shapes with up to 7 leaves over 3 labels, each decorated
// with a deterministic schedule of joins and relabels, plus expressions for
// a family of named graphs, plus 500 seeded random expressions on up to 10
// leaves. Every expression is irredundant by construction.
std::vector<CwExpr> expression_suite() {
  std::vector<CwExpr> suite;
  for (int leaves = 1; leaves <= 7; ++leaves) {
    unsigned variants = leaves <= 5 ? 8 : 5;
    for (auto& x : test::systematic_exprs(leaves, 3, variants, 14))
      suite.push_back(std::move(x));
  }
  for (const Graph& g :
       {test::complete_graph(4), test::complete_graph(5), test::cycle_graph(5),
        test::cycle_graph(6), test::cycle_graph(7), test::path_graph(6),
        test::path_graph(7), test::star_graph(5), test::star_graph(6),
        test::bowtie_graph()})
    suite.push_back(cw_expr_for_graph(g));
  std::mt19937_64 rng(20240901);
  for (int t = 0; t < 500; ++t)
    suite.push_back(test::random_expr(rng, 2 + static_cast<int>(rng() % 9), 3, 14));
  return suite;
}

const std::vector<CwExpr>& suite() {
  static std::vector<CwExpr> s = expression_suite();
  return s;
}

// ---- graph families ----

std::vector<Graph> build_euler_suite() {
  std::vector<Graph> out;
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : test::connected_graphs_up_to_iso(n, 10, /*even=*/true))
      out.push_back(g);
  out.push_back(test::cycle_graph(3));  // named: triangle
  out.push_back(test::bowtie_graph());  // named: bowtie
  std::mt19937_64 rng(7777);
  int accepted = 0;
  while (accepted < 8) {  // random Eulerian cases on 8 vertices
    Graph g = test::random_graph(rng, 8, 0.4);
    bool even = true;
    for (int d : g.degrees())
      if (d % 2) even = false;
    if (!even || !g.connected() || g.m() > 10 || g.m() == 0) continue;
    out.push_back(g);
    ++accepted;
  }
  return out;
}

const std::vector<Graph>& euler_suite() {
  static std::vector<Graph> s = build_euler_suite();
  return s;
}

std::vector<Graph> theorem2_suite() {
  std::vector<Graph> out;
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : test::connected_graphs_up_to_iso(n, 10))
      out.push_back(g);
  // named members on 6..8 vertices
  out.push_back(test::complete_graph(6));
  out.push_back(test::cycle_graph(7));
  out.push_back(test::cycle_graph(8));
  out.push_back(test::path_graph(8));
  out.push_back(test::star_graph(7));
  out.push_back(Graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                          {2, 3}, {2, 4}, {2, 5}}));  // K3,3
  out.push_back(Graph(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7},
                          {4, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}}));  // cube
  std::mt19937_64 rng(31337);
  int accepted = 0;
  while (accepted < 20) {
    int n = 6 + static_cast<int>(rng() % 3);
    Graph g = test::random_graph(rng, n, 0.4);
    if (g.m() > 16) continue;
    out.push_back(g);
    ++accepted;
  }
  return out;
}

// ---- criteria ----

long dp_oracle_equivalence() {
  long checks = 0;
  for (const auto& x : suite()) {
    auto trace = run_dp_trace(x, EtaBackend::Direct);
    for (const auto& nt : trace) {
      StateTable want = oracle::census_path_cycle_covers(eval_cw_node(*nt.node, x.k));
      if (!(nt.table == want))
        reject("dp/census mismatch on " + print_cw(x));
      nt.table.validate();
      ++checks;
    }
  }
  return checks;
}

long backend_agreement() {
  long checks = 0;
  for (const auto& x : suite()) {
    auto direct = run_dp_trace(x, EtaBackend::Direct);
    auto interp = run_dp_trace(x, EtaBackend::Interp);
    if (direct.size() != interp.size()) reject("trace length mismatch");
    for (size_t i = 0; i < direct.size(); ++i) {
      if (!(direct[i].table == interp[i].table))
        reject("backend disagreement on " + print_cw(x));
      ++checks;
    }
  }
  return checks;
}

long euler_end_to_end() {
  long checks = 0;
  for (const auto& g : euler_suite()) {
    for (bool directed : {false, true}) {
      Count got = count_euler_tours(g, std::nullopt, directed).value;
      Count want = oracle::brute_euler_tours(
          g, directed ? oracle::EulerConvention::Directed
                      : oracle::EulerConvention::Undirected);
      if (got != want)
        reject("euler mismatch on n=" + std::to_string(g.n) +
               " m=" + std::to_string(g.m()) + ": got " + got.str() + ", oracle " +
               want.str());
      ++checks;
    }
  }
  return checks;
}

long theorem2_queries() {
  long checks = 0;
  for (const auto& g : theorem2_suite()) {
    CwExpr x = cw_expr_for_graph(g);
    auto tag = [&](const char* q) {
      return std::string(q) + " mismatch on n=" + std::to_string(g.n) +
             " m=" + std::to_string(g.m());
    };
    if (count_ham_cycles(x).value != oracle::brute_ham(g, oracle::HamKind::Cycle))
      reject(tag("ham-cycles"));
    if (count_ham_paths(x).value != oracle::brute_ham(g, oracle::HamKind::Path))
      reject(tag("ham-paths"));
    auto lp = count_longest(x, LongestKind::Path);
    auto lpo = oracle::brute_longest(g, oracle::HamKind::Path);
    if (*lp.length != lpo.length || lp.value != lpo.count) reject(tag("longest-path"));
    auto lc = count_longest(x, LongestKind::Cycle);
    auto lco = oracle::brute_longest(g, oracle::HamKind::Cycle);
    if (*lc.length != lco.length || lc.value != lco.count) reject(tag("longest-cycle"));
    if (g.m() <= 20) {
      StateTable census = oracle::census_path_cycle_covers(
          LabeledGraph(g, std::vector<int>(g.n, 1), 1), 20);
      Count want = 0;
      for (const auto& [key, c] : census.rows()) {
        bool cyc = !key.alloc.empty();
        for (const auto& [t, cnt] : key.alloc.parts())
          if (t.kind != PathType::Kind::Cycle) cyc = false;
        if (cyc) want += c;
      }
      if (count_cycle_covers(x).value != want) reject(tag("cycle-covers"));
      ++checks;
    }
    checks += 4;
  }

  // perfect matchings: every 3x3 matrix, then random 4x4 and 5x5
  for (int mask = 0; mask < 512; ++mask) {
    BitMatrix m(3, std::vector<int>(3));
    for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = (mask >> i) & 1;
    if (count_bipartite_pm(m).value != oracle::permanent(m))
      reject("pm mismatch on 3x3 mask " + std::to_string(mask));
    ++checks;
  }
  std::mt19937_64 rng(99991);
  for (int t = 0; t < 80; ++t) {
    int n = t < 60 ? 4 : 5;
    BitMatrix m(n, std::vector<int>(n));
    for (auto& row : m)
      for (auto& x : row) x = rng() % 2;
    if (count_bipartite_pm(m).value != oracle::permanent(m))
      reject("pm mismatch on a random " + std::to_string(n) + "x" + std::to_string(n));
    ++checks;
  }
  // structured 5x5 members
  BitMatrix eye5(5, std::vector<int>(5, 0)), ones5(5, std::vector<int>(5, 1));
  for (int i = 0; i < 5; ++i) eye5[i][i] = 1;
  BitMatrix zrow = ones5;
  zrow[2] = std::vector<int>(5, 0);
  if (count_bipartite_pm(eye5).value != 1) reject("pm mismatch on the 5x5 identity");
  if (count_bipartite_pm(ones5).value != 120) reject("pm mismatch on the all-ones 5x5");
  if (count_bipartite_pm(zrow).value != 0) reject("pm mismatch on a zero-row 5x5");
  checks += 3;
  return checks;
}

long pipeline_structure() {
  long checks = 0;
  for (const auto& g : euler_suite()) {
    if (g.m() == 0) continue;  // nothing to preprocess
    TreeDecomposition td = td_min_fill(g);
    EulerPrep prep = euler_preprocess(g, td);
    LabeledGraph value = eval_cw(prep.expr);
    LineGraphResult lg = line_graph(prep.subdivided);
    if (value.graph.n != lg.graph.n) reject("line-graph vertex count mismatch");
    // adjacency equality through the maintained leaf map
    std::map<Edge, int> index;
    for (int i = 0; i < lg.graph.n; ++i) index[lg.vertex_edge[i]] = i;
    for (int i = 0; i < value.graph.n; ++i)
      for (int j = i + 1; j < value.graph.n; ++j) {
        bool expect = lg.graph.has_edge(index.at(prep.leaf_edges[i]),
                                        index.at(prep.leaf_edges[j]));
        if (value.graph.has_edge(i, j) != expect)
          reject("adjacency mismatch in the preprocessed expression");
        ++checks;
      }
    // elimination machinery invariants on the same chordal completion
    SubdivisionResult sub = subdivide3(g);
    TreeDecomposition td2 = lift_td(g, td, sub.map);
    auto [gc, added] = chordal_complete(sub.graph, td2);
    Peo peo = compute_peo(gc, td2);
    if (!is_peo(gc, peo)) reject("peo property violated");
    ElimTree et = build_elim_tree(gc, peo);
    auto adj = gc.adjacency();
    for (int v = 0; v < gc.n; ++v) {
      int best = -1;
      for (int w : adj[v])
        if (peo.pos[w] > peo.pos[v] && (best == -1 || peo.pos[w] < peo.pos[best]))
          best = w;
      if (et.parent[v] != best) reject("elimination tree parent mismatch");
      ++checks;
    }
  }
  return checks;
}

long circuit_checks() {
  long checks = 0;
  for (const auto& x : suite()) {
    CircuitEmission em = emit_circuit(x);
    auto val = eval_circuit(em.circuit);
    auto trace = run_dp_trace(x, EtaBackend::Direct);
    if (trace.size() != em.node_gates.size()) reject("circuit node count mismatch");
    for (size_t i = 0; i < trace.size(); ++i) {
      if (em.node_gates[i].size() != trace[i].table.rows().size())
        reject("circuit table size mismatch");
      for (const auto& [key, gate] : em.node_gates[i])
        if (val[gate] != trace[i].table.at(key)) reject("circuit value mismatch");
    }
    for (const auto& gate : em.circuit.gates)
      if (gate.kind != Circuit::Gate::Kind::Input &&
          gate.kind != Circuit::Gate::Kind::Const &&
          gate.kind != Circuit::Gate::Kind::Mul && gate.kind != Circuit::Gate::Kind::Add)
        reject("unexpected gate kind");
    CircuitStats st = circuit_stats(em.circuit);
    if (st.max_degree > x.root->leaf_count()) reject("formal degree exceeds leaf count");
    ++checks;
  }
  return checks;
}

long calibration_ledger() {
  // frozen rows of docs/calibration.md; the oracle must rederive each one
  struct Row {
    std::vector<oracle::Block> blocks;
    PathType target;
    long expect;
  };
  const PathType cyc = PathType::cycle();
  const PathType mix = PathType::mixed_pair(1, 2);
  const oracle::Block mixed3{mix, 3};
  const oracle::Block path_a{PathType::same_pair(1), 2};
  const oracle::Block path_b{PathType::same_pair(2), 2};
  const oracle::Block sing_a{PathType::singleton(1), 1};
  const oracle::Block sing_b{PathType::singleton(2), 1};
  const std::vector<Row> frozen = {
      {{mixed3}, cyc, 1},
      {{mixed3, mixed3}, cyc, 1},
      {{mixed3, mixed3}, mix, 2},
      {{mixed3, mixed3, mixed3}, cyc, 2},
      {{sing_a, sing_b}, mix, 1},
      {{sing_a, sing_b}, cyc, 0},
      {{path_a, path_b}, cyc, 2},
      {{sing_a, path_b}, cyc, 1},
      {{path_a, mixed3}, PathType::same_pair(1), 2},
      {{sing_a, sing_a, sing_b, sing_b}, cyc, 1},
  };
  long checks = 0;
  for (const auto& row : frozen) {
    Allocation alpha;
    for (const auto& b : row.blocks) alpha.add(b.type, 1);
    Count reproduced = oracle::merge_oracle(row.blocks, 1, 2, row.target, 4);
    if (reproduced != row.expect) reject("calibration drifted: " + alpha.str());
    if (w_alpha(alpha, row.target, 1, 2) != row.expect)
      reject("frozen constant disagrees with w_alpha: " + alpha.str());
    ++checks;
  }
  return checks;
}

}  // namespace

int main() {
  std::printf("acceptance suite (%zu expressions)\n", suite().size());
  criterion("dp-oracle-equivalence", dp_oracle_equivalence);
  criterion("backend-agreement", backend_agreement);
  criterion("euler-end-to-end", euler_end_to_end);
  criterion("theorem2-queries", theorem2_queries);
  criterion("pipeline-structure", pipeline_structure);
  criterion("circuit-checks", circuit_checks);
  criterion("calibration-ledger", calibration_ledger);
  return failures;
}
