#include "cwcount/counting.hpp"

#include <json.hpp>

#include "cwcount/pipeline.hpp"

namespace cwc {

namespace {

const char* kEdgeSets = "edge sets";
const char* kEulerUndirected = "tours up to rotation and reversal";
const char* kEulerDirected = "edge sequences anchored at the least edge, directed";

bool all_cycles(const Allocation& al) {
  if (al.empty()) return false;
  for (const auto& [t, c] : al.parts())
    if (t.kind != PathType::Kind::Cycle) return false;
  return true;
}

int singleton_blocks(const Allocation& al) {
  int s = 0;
  for (const auto& [t, c] : al.parts())
    if (t.kind == PathType::Kind::Singleton) s += c;
  return s;
}

}  // namespace

CountReport count_ham_cycles(const CwExpr& x, EtaBackend backend) {
  StateTable t = run_dp(x, backend, DpGoal::SingleCycle);
  Allocation want;
  want.add(PathType::cycle(), 1);
  return {"ham-cycles", t.at({want, t.vertices()}), kEdgeSets, std::nullopt};
}

CountReport count_ham_paths(const CwExpr& x, EtaBackend backend) {
  StateTable t = run_dp(x, backend);
  Count total = 0;
  for (const auto& [key, c] : t.rows()) {
    if (key.alloc.total_blocks() != 1) continue;
    if (key.alloc.parts()[0].first.kind == PathType::Kind::Cycle) continue;
    total += c;  // one spanning path; a lone singleton only exists when n = 1
  }
  return {"ham-paths", total, kEdgeSets, std::nullopt};
}

CountReport count_euler_tours(const Graph& g,
                              const std::optional<TreeDecomposition>& td,
                              bool directed, EtaBackend backend) {
  const char* convention = directed ? kEulerDirected : kEulerUndirected;
  if (g.m() == 0) {
    if (g.n > 1) throw std::runtime_error("disconnected");
    return {"euler-tours", 1, convention, std::nullopt};  // the empty tour
  }
  TreeDecomposition use = td ? *td : td_min_fill(g);
  EulerPrep prep = euler_preprocess(g, use);
  StateTable t = run_dp(prep.expr, backend, DpGoal::SingleCycle);
  Allocation want;
  want.add(PathType::cycle(), 1);
  Count tours = t.at({want, t.vertices()});
  if (directed) tours *= 2;  // both traversal directions; m >= 3 here
  return {"euler-tours", tours, convention, std::nullopt};
}

CountReport count_longest(const CwExpr& x, LongestKind kind, EtaBackend backend) {
  StateTable t = run_dp(x, backend);
  const int n = t.vertices();
  const char* name = kind == LongestKind::Path ? "longest-path" : "longest-cycle";
  int best = 0;
  Count count = 0;
  for (const auto& [key, c] : t.rows()) {
    int singles = singleton_blocks(key.alloc);
    int others = key.alloc.total_blocks() - singles;
    if (others != 1) continue;
    PathType::Kind want = PathType::Kind::Cycle;
    bool match = false;
    for (const auto& [u, cnt] : key.alloc.parts()) {
      if (u.kind == PathType::Kind::Singleton) continue;
      match = kind == LongestKind::Cycle ? u.kind == want
                                         : u.kind != want;
    }
    if (!match) continue;
    int len = n - singles;
    if (len > best) {
      best = len;
      count = 0;
    }
    if (len == best) count += c;
  }
  if (kind == LongestKind::Path && best == 0 && n >= 1) {
    // no multi-vertex path anywhere: every vertex is a one-vertex path
    best = 1;
    count = n;
  }
  CountReport r{name, count, kEdgeSets, best};
  return r;
}

CountReport count_cycle_covers(const CwExpr& x, EtaBackend backend) {
  StateTable t = run_dp(x, backend, DpGoal::AllCycles);
  Count total = 0;
  for (const auto& [key, c] : t.rows())
    if (all_cycles(key.alloc)) total += c;
  return {"cycle-covers", total, kEdgeSets, std::nullopt};
}

CountReport count_bipartite_pm(const BitMatrix& adj, EtaBackend backend) {
  SplitGadget gadget = split_digraph_gadget(adj);
  if (gadget.original_n == 0) return {"perfect-matchings", 1, kEdgeSets, std::nullopt};
  CwExpr x = cw_expr_for_graph(gadget.graph);
  StateTable t = run_dp(x, backend, DpGoal::AllCycles);
  Count total = 0;
  for (const auto& [key, c] : t.rows())
    if (all_cycles(key.alloc)) total += c;
  return {"perfect-matchings", total, kEdgeSets, std::nullopt};
}

std::string report_text(const CountReport& r) {
  std::string s = r.quantity + " = " + r.value.str();
  if (r.length) s += "  (length " + std::to_string(*r.length) + ")";
  s += "  [" + r.convention + "]";
  return s;
}

std::string report_json(const CountReport& r) {
  nlohmann::json j;
  j["quantity"] = r.quantity;
  j["value"] = r.value.str();
  j["convention"] = r.convention;
  if (r.length) j["length"] = *r.length;
  return j.dump();
}

}  // namespace cwc
