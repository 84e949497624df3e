#ifndef CWCOUNT_GRAPH_HPP
#define CWCOUNT_GRAPH_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cwc {

using Edge = std::pair<int, int>;  // stored normalized, first < second

// Simple undirected graph. Vertices are 0-indexed internally; file formats
// are 1-indexed. The edge list is kept sorted so iteration order is canonical.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  Graph(int n_, std::vector<Edge> raw);  // normalizes; throws on bad input

  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);  // throws on duplicates and self-loops
  int m() const { return static_cast<int>(edges.size()); }
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
  bool connected() const;  // vacuously true for n <= 1

  bool operator==(const Graph&) const = default;
};

// Vertex labeling into [1, k] on top of a Graph.
struct LabeledGraph {
  Graph graph;
  std::vector<int> lab;  // size n, values in [1, k]
  int k = 0;

  LabeledGraph() = default;
  LabeledGraph(Graph g, std::vector<int> lab_, int k_);

  bool operator==(const LabeledGraph&) const = default;
};

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // each sorted
  std::vector<Edge> tree_edges;        // edges between bag indices (0-based)

  int width() const;  // max bag size - 1; -1 when there are no bags
};

// Checks vertex coverage, edge coverage, occurrence connectivity, and that
// the bag graph is a tree (connected and acyclic).
bool validate_td(const Graph& g, const TreeDecomposition& td);

struct LineGraphResult {
  Graph graph;
  std::vector<Edge> vertex_edge;  // line-graph vertex i <-> this edge of g
};

// L(g): one vertex per edge of g (in canonical edge order), adjacency iff the
// two edges share an endpoint. Throws "no edges" on an edgeless graph.
LineGraphResult line_graph(const Graph& g);

// Records how subdivide3 rewrote the graph.
struct EdgeMap {
  enum class Role { Original, SubdivisionX, SubdivisionY };
  struct Origin {
    Role role = Role::Original;
    int original_vertex = -1;  // for Role::Original
    Edge source_edge;          // for subdivision vertices
  };
  // original edge (u,v) -> the path (u,x_e), (x_e,y_e), (y_e,v)
  std::map<Edge, std::array<Edge, 3>> forward;
  std::vector<Origin> vertex_origin;  // indexed by subdivided-graph vertex

  bool is_original_edge(const Edge& e) const;
};

struct SubdivisionResult {
  Graph graph;
  EdgeMap map;
};

// Replaces every edge by a path of three edges. Original vertices keep their
// ids; the two fresh vertices of edge i are n + 2i and n + 2i + 1.
SubdivisionResult subdivide3(const Graph& g);

// Extends a decomposition of g to one of subdivide3(g): one fresh bag
// {u, x_e, y_e, v} per original edge, attached to the lowest-index bag
// containing both endpoints. Width of the result is <= max(width, 3).
TreeDecomposition lift_td(const Graph& g, const TreeDecomposition& td,
                          const EdgeMap& em);

// Square 0/1 matrix, row-major.
using BitMatrix = std::vector<std::vector<int>>;

struct SplitGadget {
  Graph graph;    // 3n vertices: in/mid/out per matrix index
  int original_n = 0;
  int in(int v) const { return 3 * v; }
  int mid(int v) const { return 3 * v + 1; }
  int out(int v) const { return 3 * v + 2; }
};

// Encodes a digraph given by an adjacency matrix as an undirected graph whose
// cycle covers correspond one-to-one to permutations sigma with
// adj[v][sigma(v)] = 1. Every vertex v becomes the path in(v)-mid(v)-out(v)
// and every arc u->v becomes the edge (out(u), in(v)); the mid vertices force
// both path edges into any cover, so each cover picks exactly one incoming
// and one outgoing arc per vertex.
SplitGadget split_digraph_gadget(const BitMatrix& adj);

// File formats. Graph files (.gr): "p cwc <n> <m>" then "e <u> <v>" lines,
// 1-indexed, "c" comments. Decomposition files (.td): "s td <#bags>
// <max-bag-size> <n>", "b <id> <v...>" bag lines, then "<id1> <id2>" bag-tree
// edges. Matrix files: "<n>" then n rows of 0/1.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);
BitMatrix read_matrix(std::istream& in);
BitMatrix read_matrix_file(const std::string& path);

}  // namespace cwc

#endif
