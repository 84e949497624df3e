#include "cwcount/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cwc {

namespace {

Edge norm_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  return {u, v};
}

std::runtime_error fail(const std::string& msg) { return std::runtime_error(msg); }

}  // namespace

Graph::Graph(int n_, std::vector<Edge> raw) : n(n_) {
  if (n < 0) throw fail("negative vertex count");
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    if (u == v) throw fail("self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n) throw fail("edge endpoint out of range");
    edges.push_back(norm_edge(u, v));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw fail("parallel edge");
}

bool Graph::has_edge(int u, int v) const {
  return std::binary_search(edges.begin(), edges.end(), norm_edge(u, v));
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw fail("self-loop");
  if (u < 0 || v < 0 || u >= n || v >= n) throw fail("edge endpoint out of range");
  Edge e = norm_edge(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) throw fail("parallel edge");
  edges.insert(it, e);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool Graph::connected() const {
  if (n <= 1) return true;
  auto adj = adjacency();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
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
  return reached == n;
}

LabeledGraph::LabeledGraph(Graph g, std::vector<int> lab_, int k_)
    : graph(std::move(g)), lab(std::move(lab_)), k(k_) {
  if (static_cast<int>(lab.size()) != graph.n) throw fail("label vector size mismatch");
  for (int l : lab)
    if (l < 1 || l > k) throw fail("label out of range");
}

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
  return w - 1;
}

bool validate_td(const Graph& g, const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) return g.n == 0;
  // bag graph is a tree
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) return false;
  {
    std::vector<std::vector<int>> badj(nb);
    for (auto [a, b] : td.tree_edges) {
      if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return false;
      badj[a].push_back(b);
      badj[b].push_back(a);
    }
    std::vector<char> seen(nb, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : badj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != nb) return false;  // with nb-1 edges this also rules out cycles
  }
  // vertex coverage and bounds
  std::vector<char> covered(g.n, 0);
  for (const auto& b : td.bags)
    for (int v : b) {
      if (v < 0 || v >= g.n) return false;
      covered[v] = 1;
    }
  for (int v = 0; v < g.n; ++v)
    if (!covered[v]) return false;
  // edge coverage
  for (auto [u, v] : g.edges) {
    bool ok = false;
    for (const auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) &&
          std::binary_search(b.begin(), b.end(), v)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  // occurrence connectivity: bags containing v induce a connected subtree
  std::vector<std::vector<int>> badj(nb);
  for (auto [a, b] : td.tree_edges) {
    badj[a].push_back(b);
    badj[b].push_back(a);
  }
  for (int v = 0; v < g.n; ++v) {
    int start = -1, total = 0;
    std::vector<char> holds(nb, 0);
    for (int i = 0; i < nb; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
        holds[i] = 1;
        ++total;
        start = i;
      }
    if (total == 0) return false;
    std::vector<char> seen(nb, 0);
    std::vector<int> stack = {start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (int c : badj[b])
        if (holds[c] && !seen[c]) {
          seen[c] = 1;
          ++reached;
          stack.push_back(c);
        }
    }
    if (reached != total) return false;
  }
  return true;
}

LineGraphResult line_graph(const Graph& g) {
  if (g.edges.empty()) throw fail("no edges");
  LineGraphResult r;
  r.vertex_edge = g.edges;  // canonical (sorted) order
  const int m = g.m();
  std::vector<Edge> le;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto [a, b] = g.edges[i];
      auto [c, d] = g.edges[j];
      if (a == c || a == d || b == c || b == d) le.push_back({i, j});
    }
  r.graph = Graph(m, std::move(le));
  return r;
}

bool EdgeMap::is_original_edge(const Edge& e) const {
  return forward.count(e) > 0;
}

SubdivisionResult subdivide3(const Graph& g) {
  SubdivisionResult r;
  const int n = g.n;
  const int m = g.m();
  std::vector<Edge> edges;
  edges.reserve(3 * m);
  r.map.vertex_origin.resize(n + 2 * m);
  for (int v = 0; v < n; ++v)
    r.map.vertex_origin[v] = {EdgeMap::Role::Original, v, {}};
  for (int i = 0; i < m; ++i) {
    auto [u, v] = g.edges[i];
    int x = n + 2 * i, y = n + 2 * i + 1;
    r.map.vertex_origin[x] = {EdgeMap::Role::SubdivisionX, -1, g.edges[i]};
    r.map.vertex_origin[y] = {EdgeMap::Role::SubdivisionY, -1, g.edges[i]};
    std::array<Edge, 3> path = {norm_edge(u, x), norm_edge(x, y), norm_edge(y, v)};
    r.map.forward[g.edges[i]] = path;
    for (const auto& e : path) edges.push_back(e);
  }
  r.graph = Graph(n + 2 * m, std::move(edges));
  return r;
}

TreeDecomposition lift_td(const Graph& g, const TreeDecomposition& td,
                          const EdgeMap& em) {
  if (!validate_td(g, td)) throw fail("invalid tree decomposition");
  TreeDecomposition out = td;
  for (int i = 0; i < g.m(); ++i) {
    auto [u, v] = g.edges[i];
    int host = -1;
    for (int b = 0; b < static_cast<int>(td.bags.size()); ++b)
      if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), u) &&
          std::binary_search(td.bags[b].begin(), td.bags[b].end(), v)) {
        host = b;
        break;
      }
    if (host < 0) throw fail("invalid tree decomposition");  // unreachable after validate
    const auto& path = em.forward.at(g.edges[i]);
    int x = path[1].first, y = path[1].second;
    std::vector<int> bag = {u, x, y, v};
    std::sort(bag.begin(), bag.end());
    out.bags.push_back(bag);
    out.tree_edges.push_back({host, static_cast<int>(out.bags.size()) - 1});
  }
  return out;
}

SplitGadget split_digraph_gadget(const BitMatrix& adj) {
  const int n = static_cast<int>(adj.size());
  for (const auto& row : adj) {
    if (static_cast<int>(row.size()) != n) throw fail("matrix not square");
    for (int x : row)
      if (x != 0 && x != 1) throw fail("matrix entry not 0/1");
  }
  SplitGadget r;
  r.original_n = n;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    edges.push_back({r.in(v), r.mid(v)});
    edges.push_back({r.mid(v), r.out(v)});
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (adj[u][v]) edges.push_back(norm_edge(r.out(u), r.in(v)));
  r.graph = Graph(3 * n, std::move(edges));
  return r;
}

namespace {

// Strips "c" comment lines and blank lines.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c' && (line.size() == 1 || line[1] == ' ')) continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw fail("missing graph header");
  std::istringstream hs(line);
  std::string p, fmt;
  int n = 0, m = 0;
  if (!(hs >> p >> fmt >> n >> m) || p != "p")
    throw fail("bad graph header: " + line);
  std::vector<Edge> edges;
  while (static_cast<int>(edges.size()) < m) {
    if (!next_content_line(in, line)) throw fail("unexpected end of graph file");
    std::istringstream es(line);
    std::string tag;
    int u = 0, v = 0;
    if (!(es >> tag >> u >> v) || tag != "e") throw fail("bad edge line: " + line);
    edges.push_back({u - 1, v - 1});
  }
  return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fail("cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p cwc " << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

TreeDecomposition read_td(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw fail("missing td header");
  std::istringstream hs(line);
  std::string s, td;
  int nb = 0, maxbag = 0, n = 0;
  if (!(hs >> s >> td >> nb >> maxbag >> n) || s != "s" || td != "td")
    throw fail("bad td header: " + line);
  TreeDecomposition out;
  out.bags.resize(nb);
  std::vector<char> seen(nb, 0);
  for (int i = 0; i < nb; ++i) {
    if (!next_content_line(in, line)) throw fail("unexpected end of td file");
    std::istringstream bs(line);
    std::string tag;
    int id = 0;
    if (!(bs >> tag >> id) || tag != "b") throw fail("bad bag line: " + line);
    if (id < 1 || id > nb || seen[id - 1]) throw fail("bad bag id in: " + line);
    seen[id - 1] = 1;
    int v;
    std::vector<int> bag;
    while (bs >> v) bag.push_back(v - 1);
    std::sort(bag.begin(), bag.end());
    out.bags[id - 1] = std::move(bag);
  }
  while (next_content_line(in, line)) {
    std::istringstream es(line);
    int a = 0, b = 0;
    if (!(es >> a >> b)) throw fail("bad td edge line: " + line);
    out.tree_edges.push_back({a - 1, b - 1});
  }
  return out;
}

TreeDecomposition read_td_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fail("cannot open " + path);
  return read_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

BitMatrix read_matrix(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 0) throw fail("bad matrix size");
  BitMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(in >> m[i][j])) throw fail("unexpected end of matrix");
      if (m[i][j] != 0 && m[i][j] != 1) throw fail("matrix entry not 0/1");
    }
  return m;
}

BitMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fail("cannot open " + path);
  return read_matrix(in);
}

}  // namespace cwc
