#ifndef CWCOUNT_TEST_SUPPORT_HPP
#define CWCOUNT_TEST_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cwcount/graph.hpp"

namespace cwc::test {

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph(n, std::move(e));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, std::move(e));
}

// two triangles sharing vertex 0
inline Graph bowtie_graph() {
  return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::vector<Edge> e;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) e.push_back({i, j});
  return Graph(n, std::move(e));
}

// canonical form by minimizing the adjacency bitmask over all permutations;
// only usable for small n
inline std::vector<Edge> canonical_edges(const Graph& g) {
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Edge> best;
  bool first = true;
  do {
    std::vector<Edge> mapped;
    for (auto [u, v] : g.edges)
      mapped.push_back({std::min(perm[u], perm[v]), std::max(perm[u], perm[v])});
    std::sort(mapped.begin(), mapped.end());
    if (first || mapped < best) {
      best = mapped;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// all connected graphs on n vertices with m <= max_edges, one per iso class
inline std::vector<Graph> connected_graphs_up_to_iso(int n, int max_edges,
                                                     bool even_degrees_only = false) {
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  std::vector<Graph> out;
  std::set<std::vector<Edge>> seen;
  for (unsigned long mask = 0; mask < (1ul << all.size()); ++mask) {
    if (__builtin_popcountl(mask) > max_edges) continue;
    std::vector<Edge> edges;
    for (size_t i = 0; i < all.size(); ++i)
      if (mask & (1ul << i)) edges.push_back(all[i]);
    Graph g(n, edges);
    if (!g.connected()) continue;
    if (even_degrees_only) {
      bool ok = true;
      for (int d : g.degrees())
        if (d % 2) ok = false;
      if (!ok) continue;
    }
    auto canon = canonical_edges(g);
    if (seen.insert(canon).second) out.push_back(g);
  }
  return out;
}

}  // namespace cwc::test

#endif
