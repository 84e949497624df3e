#include "cwcount/pipeline.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cwc {

std::pair<Graph, std::vector<Edge>> chordal_complete(const Graph& g,
                                                     const TreeDecomposition& td) {
  if (!validate_td(g, td)) throw std::runtime_error("invalid tree decomposition");
  std::set<Edge> all(g.edges.begin(), g.edges.end());
  for (const auto& bag : td.bags)
    for (size_t i = 0; i < bag.size(); ++i)
      for (size_t j = i + 1; j < bag.size(); ++j)
        all.insert({bag[i], bag[j]});
  Graph gc(g.n, std::vector<Edge>(all.begin(), all.end()));
  std::vector<Edge> added;
  for (const auto& e : gc.edges)
    if (!g.has_edge(e.first, e.second)) added.push_back(e);
  return {std::move(gc), std::move(added)};
}

bool is_peo(const Graph& g, const Peo& peo) {
  if (static_cast<int>(peo.order.size()) != g.n) return false;
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> later;
    for (int w : adj[v])
      if (peo.pos[w] > peo.pos[v]) later.push_back(w);
    for (size_t i = 0; i < later.size(); ++i)
      for (size_t j = i + 1; j < later.size(); ++j)
        if (!g.has_edge(later[i], later[j])) return false;
  }
  return true;
}

Peo compute_peo(const Graph& gc, const TreeDecomposition& td) {
  const int n = gc.n;
  Peo peo;
  peo.pos.assign(n, -1);
  if (n == 0) return peo;
  // bag rank steers the pick order inside a round, nothing else
  std::vector<int> bag_rank(n, 0);
  for (int b = static_cast<int>(td.bags.size()) - 1; b >= 0; --b)
    for (int v : td.bags[b]) bag_rank[v] = b;

  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : gc.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> gone(n, 0);
  int remaining = n;
  auto simplicial = [&](int v) {
    for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
      for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
        if (!adj[*it].count(*jt)) return false;
    return true;
  };
  while (remaining > 0) {
    std::vector<int> round;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && simplicial(v)) round.push_back(v);
    if (round.empty()) throw std::runtime_error("graph is not chordal");
    std::sort(round.begin(), round.end(), [&](int u, int v) {
      return std::pair(bag_rank[u], u) < std::pair(bag_rank[v], v);
    });
    for (int v : round) {
      peo.pos[v] = static_cast<int>(peo.order.size());
      peo.order.push_back(v);
      gone[v] = 1;
      --remaining;
    }
    for (int v : round) {
      for (int w : adj[v]) adj[w].erase(v);
      adj[v].clear();
    }
    peo.layers.push_back(std::move(round));
  }
  return peo;
}

ElimTree build_elim_tree(const Graph& gc, const Peo& peo) {
  const int n = gc.n;
  ElimTree et;
  et.parent.assign(n, -1);
  auto adj = gc.adjacency();
  for (int v = 0; v < n; ++v) {
    int best = -1;
    for (int w : adj[v])
      if (peo.pos[w] > peo.pos[v] && (best == -1 || peo.pos[w] < peo.pos[best]))
        best = w;
    et.parent[v] = best;
    if (best == -1) et.roots.push_back(v);
  }
  std::vector<int> depth(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    int v = peo.order[i];
    int p = et.parent[v];
    depth[v] = p == -1 ? 1 : depth[p] + 1;
    et.height = std::max(et.height, depth[v]);
  }
  return et;
}

Coloring greedy_coloring(const Graph& gc, const Peo& peo, int k) {
  const int n = gc.n;
  Coloring c;
  c.col.assign(n, 0);
  auto adj = gc.adjacency();
  for (int i = n - 1; i >= 0; --i) {
    int v = peo.order[i];
    std::set<int> used;
    for (int w : adj[v])
      if (c.col[w] > 0) used.insert(c.col[w]);
    int color = 1;
    while (used.count(color)) ++color;
    if (color > k + 1) throw std::runtime_error("clique number exceeds color bound");
    c.col[v] = color;
    c.colors_used = std::max(c.colors_used, color);
  }
  return c;
}

namespace {

std::unique_ptr<NlcNode> nlc_leaf(int a) {
  auto n = std::make_unique<NlcNode>();
  n->op = NlcNode::Op::Leaf;
  n->a = a;
  return n;
}

std::unique_ptr<NlcNode> nlc_product(std::vector<std::pair<int, int>> s,
                                     std::unique_ptr<NlcNode> l,
                                     std::unique_ptr<NlcNode> r) {
  auto n = std::make_unique<NlcNode>();
  n->op = NlcNode::Op::Product;
  n->pairs = std::move(s);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

std::unique_ptr<NlcNode> nlc_rename(std::vector<std::pair<int, int>> r,
                                    std::unique_ptr<NlcNode> child) {
  auto n = std::make_unique<NlcNode>();
  n->op = NlcNode::Op::Rename;
  n->pairs = std::move(r);
  n->left = std::move(child);
  return n;
}

struct Built {
  std::unique_ptr<NlcNode> node;
  std::vector<Edge> leaf_edges;
};

}  // namespace

LineNlc build_line_nlc(const Graph& gc, const Peo& peo, const ElimTree& et,
                       const Coloring& col) {
  const int n = gc.n;
  const int colors = col.colors_used;
  const int spare = colors + 1;
  auto adj = gc.adjacency();
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v)
    if (et.parent[v] != -1) children[et.parent[v]].push_back(v);
  for (auto& ch : children)
    std::sort(ch.begin(), ch.end(), [&](int u, int v) { return peo.pos[u] < peo.pos[v]; });

  // per processed vertex, the expression for the line graph of the edges
  // introduced below it in the elimination tree
  std::vector<Built> built(n);

  for (int idx = 0; idx < n; ++idx) {
    const int v = peo.order[idx];
    std::vector<int> uppers;  // later neighbors, the edges introduced at v
    for (int w : adj[v])
      if (peo.pos[w] > peo.pos[v]) uppers.push_back(w);
    std::sort(uppers.begin(), uppers.end(), [&](int a, int b) {
      return peo.pos[a] < peo.pos[b];
    });

    Built y;
    for (int c : children[v]) {
      Built& cb = built[c];
      if (!cb.node) continue;
      if (!y.node) {
        y = std::move(cb);
        continue;
      }
      // same active label means same upper endpoint, so connect across
      std::vector<std::pair<int, int>> same;
      for (int s = 1; s <= colors; ++s) same.push_back({s, s});
      y.node = nlc_product(std::move(same), std::move(y.node), std::move(cb.node));
      y.leaf_edges.insert(y.leaf_edges.end(), cb.leaf_edges.begin(),
                          cb.leaf_edges.end());
    }

    Built z;
    for (size_t i = 0; i < uppers.size(); ++i) {
      int w = uppers[i];
      auto leaf = nlc_leaf(col.col[w]);
      Edge e{std::min(v, w), std::max(v, w)};
      if (!z.node) {
        z.node = std::move(leaf);
      } else {
        // edges at v pairwise share v: complete the new leaf to everything
        std::vector<std::pair<int, int>> s;
        for (size_t j = 0; j < i; ++j) s.push_back({col.col[uppers[j]], col.col[w]});
        z.node = nlc_product(std::move(s), std::move(z.node), std::move(leaf));
      }
      z.leaf_edges.push_back(e);
    }

    Built x;
    if (y.node && z.node) {
      std::vector<std::pair<int, int>> s;
      for (int c = 1; c <= colors; ++c)
        if (c != col.col[v]) s.push_back({c, c});
      for (int c = 1; c <= colors; ++c) s.push_back({col.col[v], c});
      x.node = nlc_product(std::move(s), std::move(y.node), std::move(z.node));
      x.leaf_edges = std::move(y.leaf_edges);
      x.leaf_edges.insert(x.leaf_edges.end(), z.leaf_edges.begin(), z.leaf_edges.end());
      x.node = nlc_rename({{col.col[v], spare}}, std::move(x.node));
    } else if (z.node) {
      x = std::move(z);
    } else if (y.node) {
      x.node = nlc_rename({{col.col[v], spare}}, std::move(y.node));
      x.leaf_edges = std::move(y.leaf_edges);
    }
    built[v] = std::move(x);
  }

  // stitch the components together without adding edges
  Built all;
  for (int r : et.roots) {
    Built& rb = built[r];
    if (!rb.node) continue;
    if (!all.node) {
      all = std::move(rb);
      continue;
    }
    all.node = nlc_product({}, std::move(all.node), std::move(rb.node));
    all.leaf_edges.insert(all.leaf_edges.end(), rb.leaf_edges.begin(),
                          rb.leaf_edges.end());
  }
  if (!all.node) throw std::runtime_error("no edges");

  LineNlc out;
  out.expr.k = spare;
  out.expr.root = std::move(all.node);
  out.leaf_edges = std::move(all.leaf_edges);
  return out;
}

EulerPrep euler_preprocess(const Graph& g, const TreeDecomposition& td) {
  if (g.m() == 0) throw std::runtime_error("no edges");
  for (int d : g.degrees())
    if (d % 2) throw std::runtime_error("graph has odd-degree vertex");
  if (!g.connected()) throw std::runtime_error("disconnected");
  if (!validate_td(g, td)) throw std::runtime_error("invalid tree decomposition");

  SubdivisionResult sub = subdivide3(g);
  TreeDecomposition td2 = lift_td(g, td, sub.map);
  auto [gc, added] = chordal_complete(sub.graph, td2);
  Peo peo = compute_peo(gc, td2);
  ElimTree et = build_elim_tree(gc, peo);
  Coloring col = greedy_coloring(gc, peo, td2.width());
  LineNlc ln = build_line_nlc(gc, peo, et, col);
  CwExpr cw = nlc_to_cw(ln.expr);

  std::set<int> keep;
  for (size_t i = 0; i < ln.leaf_edges.size(); ++i)
    if (sub.graph.has_edge(ln.leaf_edges[i].first, ln.leaf_edges[i].second))
      keep.insert(static_cast<int>(i));

  EulerPrep out;
  out.expr = restrict_induced(cw, keep);
  for (int i : keep) out.leaf_edges.push_back(ln.leaf_edges[i]);
  out.subdivided = std::move(sub.graph);
  out.em = std::move(sub.map);
  return out;
}

TreeDecomposition td_min_fill(const Graph& g) {
  const int n = g.n;
  TreeDecomposition td;
  if (n == 0) return td;
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> gone(n, 0);
  std::vector<int> order, when(n, 0);
  std::vector<std::vector<int>> bags;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long fill = 0;
      for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
        for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
          if (!adj[*it].count(*jt)) ++fill;
      if (best == -1 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bags.push_back(std::move(bag));
    when[best] = step;
    order.push_back(best);
    for (auto it = adj[best].begin(); it != adj[best].end(); ++it)
      for (auto jt = std::next(it); jt != adj[best].end(); ++jt) {
        adj[*it].insert(*jt);
        adj[*jt].insert(*it);
      }
    for (int w : adj[best]) adj[w].erase(best);
    adj[best].clear();
    gone[best] = 1;
  }
  td.bags = bags;
  // attach each bag to the bag of its earliest-eliminated later member
  for (int i = 0; i < n; ++i) {
    int next = -1;
    for (int v : bags[i])
      if (when[v] > i && (next == -1 || when[v] < when[next])) next = v;
    if (next != -1)
      td.tree_edges.push_back({i, when[next]});
    else if (i + 1 < n)
      td.tree_edges.push_back({i, i + 1});  // keep isolated parts in one tree
  }
  if (!validate_td(g, td)) throw std::logic_error("heuristic produced an invalid decomposition");
  return td;
}

}  // namespace cwc
