#include "cwcount/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cwc::oracle {

namespace {

// Classifies the components of (V, chosen edges) and returns their census.
// Kept self-contained: this is the ground truth the dp is measured against.
Allocation classify_components(const LabeledGraph& g, const std::vector<Edge>& chosen) {
  const int n = g.graph.n;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : chosen) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Allocation census;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (comp.size() == 1) {
      census.add(PathType::singleton(g.lab[comp[0]]), 1);
      continue;
    }
    std::vector<int> ends;
    for (int v : comp)
      if (adj[v].size() <= 1) ends.push_back(v);
    if (ends.empty()) {
      census.add(PathType::cycle(), 1);
    } else {
      census.add(PathType::path_ends(g.lab[ends[0]], g.lab[ends[1]]), 1);
    }
  }
  return census;
}

void census_rec(const LabeledGraph& g, size_t next, std::vector<int>& deg,
                std::vector<Edge>& chosen, StateTable& out) {
  if (next == g.graph.edges.size()) {
    out.add({classify_components(g, chosen), g.graph.n}, 1);
    return;
  }
  auto [u, v] = g.graph.edges[next];
  census_rec(g, next + 1, deg, chosen, out);
  if (deg[u] < 2 && deg[v] < 2) {
    ++deg[u];
    ++deg[v];
    chosen.push_back(g.graph.edges[next]);
    census_rec(g, next + 1, deg, chosen, out);
    chosen.pop_back();
    --deg[u];
    --deg[v];
  }
}

}  // namespace

StateTable census_path_cycle_covers(const LabeledGraph& g, int max_edges) {
  if (g.graph.m() > max_edges) throw std::runtime_error("oracle edge bound exceeded");
  StateTable out(g.k, g.graph.n);
  std::vector<int> deg(g.graph.n, 0);
  std::vector<Edge> chosen;
  census_rec(g, 0, deg, chosen, out);
  return out;
}

namespace {

Count directed_tours_from(const Graph& g, const std::vector<std::vector<std::pair<int, int>>>& inc,
                          std::vector<char>& used, int at, int home, int left) {
  if (left == 0) return at == home ? 1 : 0;
  Count total = 0;
  for (auto [w, ei] : inc[at]) {
    if (used[ei]) continue;
    used[ei] = 1;
    total += directed_tours_from(g, inc, used, w, home, left - 1);
    used[ei] = 0;
  }
  return total;
}

}  // namespace

Count brute_euler_tours(const Graph& g, EulerConvention convention, int max_edges) {
  if (g.m() > max_edges) throw std::runtime_error("oracle edge bound exceeded");
  if (g.m() == 0) return g.n <= 1 ? 1 : 0;
  for (int d : g.degrees())
    if (d % 2) return 0;
  // isolated vertices aside, the edge-touched part must be connected
  {
    auto deg = g.degrees();
    auto adj = g.adjacency();
    int start = -1, active = 0;
    for (int v = 0; v < g.n; ++v)
      if (deg[v] > 0) {
        ++active;
        if (start < 0) start = v;
      }
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack = {start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != active) return 0;
  }
  std::vector<std::vector<std::pair<int, int>>> inc(g.n);  // (other end, edge index)
  for (int i = 0; i < g.m(); ++i) {
    auto [u, v] = g.edges[i];
    inc[u].push_back({v, i});
    inc[v].push_back({u, i});
  }
  // anchor at the least edge; two directed sequences per traversal direction
  auto [u0, v0] = g.edges[0];
  std::vector<char> used(g.m(), 0);
  used[0] = 1;
  Count directed = directed_tours_from(g, inc, used, v0, u0, g.m() - 1) +
                   directed_tours_from(g, inc, used, u0, v0, g.m() - 1);
  if (convention == EulerConvention::Directed) return directed;
  // m >= 3 for any simple Eulerian graph, so reversal pairs sequences up
  return directed / 2;
}

Count brute_ham(const Graph& g, HamKind kind) {
  const int n = g.n;
  if (n > 10) throw std::runtime_error("oracle vertex bound exceeded");
  if (n == 0) return 0;
  if (kind == HamKind::Cycle && n < 3) return 0;
  if (n == 1) return 1;  // single-vertex path
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Count total = 0;
  do {
    bool ok = true;
    for (int i = 0; ok && i + 1 < n; ++i)
      if (!g.has_edge(perm[i], perm[i + 1])) ok = false;
    if (!ok) continue;
    if (kind == HamKind::Cycle) {
      // fix rotation and reflection: least vertex first, neighbor order
      if (perm[0] != 0 || perm[1] > perm[n - 1]) continue;
      if (g.has_edge(perm[n - 1], perm[0])) total += 1;
    } else {
      if (perm[0] > perm[n - 1]) continue;  // one orientation per edge set
      total += 1;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

void longest_paths_rec(const Graph& g, const std::vector<std::vector<int>>& adj,
                       std::vector<char>& onpath, std::vector<int>& path,
                       LongestResult& best) {
  int len = static_cast<int>(path.size());
  if (path.front() < path.back() || len == 1) {
    if (len > best.length) {
      best.length = len;
      best.count = 0;
    }
    if (len == best.length) best.count += 1;
  }
  for (int w : adj[path.back()]) {
    if (onpath[w]) continue;
    onpath[w] = 1;
    path.push_back(w);
    longest_paths_rec(g, adj, onpath, path, best);
    path.pop_back();
    onpath[w] = 0;
  }
}

void longest_cycles_rec(const Graph& g, const std::vector<std::vector<int>>& adj,
                        std::vector<char>& onpath, std::vector<int>& path,
                        LongestResult& best) {
  int len = static_cast<int>(path.size());
  if (len >= 3 && g.has_edge(path.back(), path.front()) && path[1] < path.back()) {
    if (len > best.length) {
      best.length = len;
      best.count = 0;
    }
    if (len == best.length) best.count += 1;
  }
  for (int w : adj[path.back()]) {
    if (onpath[w] || w < path.front()) continue;  // anchor: least vertex first
    onpath[w] = 1;
    path.push_back(w);
    longest_cycles_rec(g, adj, onpath, path, best);
    path.pop_back();
    onpath[w] = 0;
  }
}

}  // namespace

LongestResult brute_longest(const Graph& g, HamKind kind) {
  if (g.n > 10) throw std::runtime_error("oracle vertex bound exceeded");
  LongestResult best;
  if (g.n == 0) return best;
  auto adj = g.adjacency();
  std::vector<char> onpath(g.n, 0);
  std::vector<int> path;
  for (int s = 0; s < g.n; ++s) {
    onpath[s] = 1;
    path = {s};
    if (kind == HamKind::Path)
      longest_paths_rec(g, adj, onpath, path, best);
    else
      longest_cycles_rec(g, adj, onpath, path, best);
    onpath[s] = 0;
  }
  return best;
}

Count permanent(const BitMatrix& adj) {
  const int n = static_cast<int>(adj.size());
  if (n > 9) throw std::runtime_error("oracle size bound exceeded");
  for (const auto& row : adj)
    if (static_cast<int>(row.size()) != n) throw std::runtime_error("matrix not square");
  if (n == 0) return 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Count total = 0;
  do {
    int prod = 1;
    for (int i = 0; i < n && prod; ++i) prod *= adj[i][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

void merge_rec(const LabeledGraph& g, const std::vector<Edge>& candidates, size_t next,
               std::vector<int>& deg, std::vector<Edge>& chosen, const PathType& target,
               Count& total) {
  if (next == candidates.size()) {
    Allocation census = classify_components(g, chosen);
    Allocation want;
    want.add(target, 1);
    if (census == want) total += 1;
    return;
  }
  merge_rec(g, candidates, next + 1, deg, chosen, target, total);
  auto [u, v] = candidates[next];
  if (deg[u] < 2 && deg[v] < 2) {
    ++deg[u];
    ++deg[v];
    chosen.push_back(candidates[next]);
    merge_rec(g, candidates, next + 1, deg, chosen, target, total);
    chosen.pop_back();
    --deg[u];
    --deg[v];
  }
}

}  // namespace

Count merge_oracle(const std::vector<Block>& blocks, int a, int b,
                   const PathType& target, int k) {
  // lay the blocks out as concrete disjoint fragments
  std::vector<int> lab;
  std::vector<Edge> edges;
  int filler = 0;  // interior label, cycled over [1, k]
  for (const auto& blk : blocks) {
    if (blk.vertices < blk.type.min_vertices())
      throw std::runtime_error("block too small for its type");
    int base = static_cast<int>(lab.size());
    int sz = blk.vertices;
    for (int i = 0; i < sz; ++i) lab.push_back(1 + (filler++ % k));
    switch (blk.type.kind) {
      case PathType::Kind::Singleton:
        lab[base] = blk.type.a;
        break;
      case PathType::Kind::SamePair:
      case PathType::Kind::MixedPair:
        for (int i = 0; i + 1 < sz; ++i) edges.push_back({base + i, base + i + 1});
        lab[base] = blk.type.a;
        lab[base + sz - 1] = blk.type.b;
        break;
      case PathType::Kind::Cycle:
        for (int i = 0; i < sz; ++i)
          edges.push_back({std::min(base + i, base + (i + 1) % sz),
                           std::max(base + i, base + (i + 1) % sz)});
        break;
    }
  }
  const int n = static_cast<int>(lab.size());
  if (n > 12) throw std::runtime_error("oracle vertex bound exceeded");
  LabeledGraph g(Graph(n, edges), lab, k);
  std::vector<Edge> candidates;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u >= v) continue;
      bool ab = (g.lab[u] == a && g.lab[v] == b) || (g.lab[u] == b && g.lab[v] == a);
      if (ab && !g.graph.has_edge(u, v)) candidates.push_back({u, v});
    }
  std::vector<int> deg(n, 0);
  for (auto [u, v] : g.graph.edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<Edge> chosen = g.graph.edges;
  Count total = 0;
  merge_rec(g, candidates, 0, deg, chosen, target, total);
  return total;
}

}  // namespace cwc::oracle
