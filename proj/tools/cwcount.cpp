#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cwcount/circuit.hpp"
#include "cwcount/counting.hpp"
#include "cwcount/dp.hpp"
#include "cwcount/expr.hpp"
#include "cwcount/graph.hpp"
#include "cwcount/oracle.hpp"
#include "cwcount/pipeline.hpp"

namespace {

struct Options {
  std::string backend = "direct";
  std::string format = "text";
  bool check_oracle = false;

  cwc::EtaBackend eta() const {
    return backend == "interp" ? cwc::EtaBackend::Interp : cwc::EtaBackend::Direct;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cwc::CwExpr load_cw(const std::string& path) { return cwc::parse_cw(slurp(path)); }

void print_report(const Options& opt, const cwc::CountReport& r) {
  if (opt.format == "json")
    std::cout << cwc::report_json(r) << '\n';
  else
    std::cout << cwc::report_text(r) << '\n';
}

// exit code 2 on an oracle mismatch
void cross_check(const std::string& what, const cwc::Count& got, const cwc::Count& want) {
  if (got == want) return;
  std::cerr << "oracle mismatch for " << what << ": engine " << got << ", oracle "
            << want << '\n';
  std::exit(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counting for bounded clique-width graphs"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--backend", opt.backend, "join backend")
      ->check(CLI::IsMember({"direct", "interp"}));
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--check-oracle", opt.check_oracle,
               "re-count with the brute-force oracle and fail on mismatch");

  std::string cw_path, graph_path, td_path, matrix_path, out_path;
  bool directed = false;

  auto add_sub = [](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto add_cw = [&](CLI::App* c) {
    c->add_option("--cw", cw_path, "clique-width term file")->required();
  };

  auto* hc = add_sub(&app, "ham-cycles", "count Hamiltonian cycles");
  add_cw(hc);
  auto* hp = add_sub(&app, "ham-paths", "count Hamiltonian paths");
  add_cw(hp);
  auto* lp = add_sub(&app, "longest-path", "count longest paths");
  add_cw(lp);
  auto* lc = add_sub(&app, "longest-cycle", "count longest cycles");
  add_cw(lc);
  auto* cc = add_sub(&app, "cycle-covers", "count spanning cycle covers");
  add_cw(cc);

  auto* eu = add_sub(&app, "euler", "count Euler tours");
  eu->add_option("--graph", graph_path, "graph file")->required();
  eu->add_option("--td", td_path, "tree decomposition file");
  eu->add_flag("--directed", directed, "count directed edge sequences");

  auto* pm = add_sub(&app, "pm", "count bipartite perfect matchings");
  pm->add_option("--matrix", matrix_path, "0/1 matrix file")->required();

  auto* comp = add_sub(&app, "compile", "emit the counting circuit");
  add_cw(comp);
  comp->add_option("--out", out_path, "circuit output file")->required();

  auto* pipe = add_sub(&app, "pipeline", "preprocess an Eulerian graph");
  pipe->add_option("--graph", graph_path, "graph file")->required();
  pipe->add_option("--td", td_path, "tree decomposition file");
  pipe->add_option("--out", out_path, "clique-width term output file")->required();

  auto* orc = add_sub(&app, "oracle", "brute-force reference counts");
  orc->require_subcommand(1);
  std::string ocw_path, ograph_path;
  auto add_oracle_inputs = [&](CLI::App* c) {
    c->add_option("--cw", ocw_path, "clique-width term file");
    c->add_option("--graph", ograph_path, "graph file");
  };
  auto* ohc = add_sub(orc, "ham-cycles", "");
  add_oracle_inputs(ohc);
  auto* ohp = add_sub(orc, "ham-paths", "");
  add_oracle_inputs(ohp);
  auto* olp = add_sub(orc, "longest-path", "");
  add_oracle_inputs(olp);
  auto* olc = add_sub(orc, "longest-cycle", "");
  add_oracle_inputs(olc);
  auto* occ = add_sub(orc, "cycle-covers", "");
  add_oracle_inputs(occ);
  auto* oeu = add_sub(orc, "euler", "");
  oeu->add_option("--graph", ograph_path, "graph file")->required();
  oeu->add_flag("--directed", directed, "");
  auto* opm = add_sub(orc, "pm", "");
  opm->add_option("--matrix", matrix_path, "0/1 matrix file")->required();
  auto* ocen = add_sub(orc, "census", "path-cycle cover census");
  ocen->add_option("--cw", ocw_path, "clique-width term file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto oracle_graph = [&]() {
      if (!ograph_path.empty()) return cwc::read_graph_file(ograph_path);
      if (ocw_path.empty()) throw std::runtime_error("need --cw or --graph");
      return cwc::eval_cw(load_cw(ocw_path)).graph;
    };

    if (*hc) {
      auto x = load_cw(cw_path);
      auto r = cwc::count_ham_cycles(x, opt.eta());
      if (opt.check_oracle)
        cross_check("ham-cycles", r.value,
                    cwc::oracle::brute_ham(cwc::eval_cw(x).graph, cwc::oracle::HamKind::Cycle));
      print_report(opt, r);
    } else if (*hp) {
      auto x = load_cw(cw_path);
      auto r = cwc::count_ham_paths(x, opt.eta());
      if (opt.check_oracle)
        cross_check("ham-paths", r.value,
                    cwc::oracle::brute_ham(cwc::eval_cw(x).graph, cwc::oracle::HamKind::Path));
      print_report(opt, r);
    } else if (*lp || *lc) {
      auto x = load_cw(cw_path);
      auto kind = *lp ? cwc::LongestKind::Path : cwc::LongestKind::Cycle;
      auto r = cwc::count_longest(x, kind, opt.eta());
      if (opt.check_oracle) {
        auto o = cwc::oracle::brute_longest(
            cwc::eval_cw(x).graph,
            *lp ? cwc::oracle::HamKind::Path : cwc::oracle::HamKind::Cycle);
        cross_check(r.quantity + " length", *r.length, o.length);
        cross_check(r.quantity, r.value, o.count);
      }
      print_report(opt, r);
    } else if (*cc) {
      auto x = load_cw(cw_path);
      auto r = cwc::count_cycle_covers(x, opt.eta());
      if (opt.check_oracle) {
        auto census = cwc::oracle::census_path_cycle_covers(cwc::eval_cw(x));
        cwc::Count want = 0;
        for (const auto& [key, c] : census.rows()) {
          bool cyc = !key.alloc.empty();
          for (const auto& [t, cnt] : key.alloc.parts())
            if (t.kind != cwc::PathType::Kind::Cycle) cyc = false;
          if (cyc) want += c;
        }
        cross_check("cycle-covers", r.value, want);
      }
      print_report(opt, r);
    } else if (*eu) {
      auto g = cwc::read_graph_file(graph_path);
      std::optional<cwc::TreeDecomposition> td;
      if (!td_path.empty()) td = cwc::read_td_file(td_path);
      auto r = cwc::count_euler_tours(g, td, directed, opt.eta());
      if (opt.check_oracle)
        cross_check("euler-tours", r.value,
                    cwc::oracle::brute_euler_tours(
                        g, directed ? cwc::oracle::EulerConvention::Directed
                                    : cwc::oracle::EulerConvention::Undirected));
      print_report(opt, r);
    } else if (*pm) {
      auto m = cwc::read_matrix_file(matrix_path);
      auto r = cwc::count_bipartite_pm(m, opt.eta());
      if (opt.check_oracle) cross_check("perfect-matchings", r.value, cwc::oracle::permanent(m));
      print_report(opt, r);
    } else if (*comp) {
      auto x = load_cw(cw_path);
      auto em = cwc::emit_circuit(x);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open " + out_path);
      cwc::write_circuit(out, em.circuit);
      auto st = cwc::circuit_stats(em.circuit);
      std::cout << "wrote " << out_path << ": degree " << st.max_degree << " depth "
                << st.depth << " gates " << st.gate_count << '\n';
    } else if (*pipe) {
      auto g = cwc::read_graph_file(graph_path);
      cwc::TreeDecomposition td =
          td_path.empty() ? cwc::td_min_fill(g) : cwc::read_td_file(td_path);
      auto prep = cwc::euler_preprocess(g, td);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open " + out_path);
      out << cwc::print_cw(prep.expr) << '\n';
      std::ofstream map(out_path + ".map");
      if (!map) throw std::runtime_error("cannot open " + out_path + ".map");
      for (size_t i = 0; i < prep.leaf_edges.size(); ++i)
        map << i << ' ' << prep.leaf_edges[i].first + 1 << ' '
            << prep.leaf_edges[i].second + 1 << '\n';
      std::cout << "wrote " << out_path << " (" << prep.leaf_edges.size()
                << " leaves) and " << out_path << ".map\n";
    } else if (*orc) {
      cwc::CountReport r;
      if (*ohc)
        r = {"ham-cycles", cwc::oracle::brute_ham(oracle_graph(), cwc::oracle::HamKind::Cycle),
             "edge sets", std::nullopt};
      else if (*ohp)
        r = {"ham-paths", cwc::oracle::brute_ham(oracle_graph(), cwc::oracle::HamKind::Path),
             "edge sets", std::nullopt};
      else if (*olp || *olc) {
        auto o = cwc::oracle::brute_longest(oracle_graph(),
                                            *olp ? cwc::oracle::HamKind::Path
                                                 : cwc::oracle::HamKind::Cycle);
        r = {*olp ? "longest-path" : "longest-cycle", o.count, "edge sets", o.length};
      } else if (*occ) {
        auto census = cwc::oracle::census_path_cycle_covers(cwc::eval_cw(load_cw(ocw_path)));
        cwc::Count want = 0;
        for (const auto& [key, c] : census.rows()) {
          bool cyc = !key.alloc.empty();
          for (const auto& [t, cnt] : key.alloc.parts())
            if (t.kind != cwc::PathType::Kind::Cycle) cyc = false;
          if (cyc) want += c;
        }
        r = {"cycle-covers", want, "edge sets", std::nullopt};
      } else if (*oeu) {
        r = {"euler-tours",
             cwc::oracle::brute_euler_tours(cwc::read_graph_file(ograph_path),
                                            directed
                                                ? cwc::oracle::EulerConvention::Directed
                                                : cwc::oracle::EulerConvention::Undirected),
             directed ? "edge sequences anchored at the least edge, directed"
                      : "tours up to rotation and reversal",
             std::nullopt};
      } else if (*opm) {
        r = {"perfect-matchings", cwc::oracle::permanent(cwc::read_matrix_file(matrix_path)),
             "edge sets", std::nullopt};
      } else if (*ocen) {
        auto census = cwc::oracle::census_path_cycle_covers(cwc::eval_cw(load_cw(ocw_path)));
        for (const auto& [key, c] : census.rows())
          std::cout << key.alloc.str() << " v" << key.vertices << " -> " << c << '\n';
        return 0;
      }
      print_report(opt, r);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
