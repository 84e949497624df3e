#ifndef CWCOUNT_PIPELINE_HPP
#define CWCOUNT_PIPELINE_HPP

#include <utility>
#include <vector>

#include "cwcount/expr.hpp"
#include "cwcount/graph.hpp"

namespace cwc {

// Perfect elimination ordering obtained by simplicial peeling. layers[r]
// holds the vertices removed in round r, in pick order (bags scanned in
// index order, lowest vertex first within a bag).
struct Peo {
  std::vector<int> order;                // elimination order
  std::vector<int> pos;                  // vertex -> position in order
  std::vector<std::vector<int>> layers;
};

// Later neighborhoods induce cliques under the ordering.
bool is_peo(const Graph& g, const Peo& peo);

// parent of v = its earliest later neighbor in the ordering; -1 at roots.
struct ElimTree {
  std::vector<int> parent;
  std::vector<int> roots;
  int height = 0;  // vertices on the longest root-to-leaf chain
};

struct Coloring {
  std::vector<int> col;  // vertex -> color in [1, colors_used]
  int colors_used = 0;
};

// Turns every bag into a clique. The result is chordal since its bags form
// a clique tree; returns the edges that were added.
std::pair<Graph, std::vector<Edge>> chordal_complete(const Graph& g,
                                                     const TreeDecomposition& td);

// Throws "graph is not chordal" when peeling gets stuck.
Peo compute_peo(const Graph& gc, const TreeDecomposition& td);

ElimTree build_elim_tree(const Graph& gc, const Peo& peo);

// Greedy in reverse elimination order; proper, and optimal on chordal
// inputs. Throws when more than k+1 colors would be needed.
Coloring greedy_coloring(const Graph& gc, const Peo& peo, int k);

struct LineNlc {
  NlcExpr expr;
  std::vector<Edge> leaf_edges;  // leaf i of expr <-> this edge of gc
};

// NLC expression for the line graph of a chordal graph, assembled along the
// elimination tree. Vertices of the value are the edges of gc; a vertex
// stays joinable (labeled with the color of its upper endpoint) until that
// endpoint is processed, then retires to the spare label colors_used + 1.
LineNlc build_line_nlc(const Graph& gc, const Peo& peo, const ElimTree& et,
                       const Coloring& col);

struct EulerPrep {
  CwExpr expr;                   // value is the line graph of `subdivided`
  std::vector<Edge> leaf_edges;  // leaf i <-> this edge of `subdivided`
  Graph subdivided;
  EdgeMap em;
};

// Full preprocessing chain: subdivide, lift the decomposition, chordalize,
// peel, color, build the line-graph expression, convert to clique-width and
// cut the completion surplus back out.
EulerPrep euler_preprocess(const Graph& g, const TreeDecomposition& td);

// Min-fill elimination heuristic; valid but not necessarily optimal.
TreeDecomposition td_min_fill(const Graph& g);

}  // namespace cwc

#endif
