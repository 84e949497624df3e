#ifndef CWCOUNT_EXPR_HPP
#define CWCOUNT_EXPR_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwcount/graph.hpp"

namespace cwc {

// Clique-width term: leaf (v a), disjoint union (u X Y), relabel (r a b X)
// for a -> b, join (e a b X) adding all edges between label classes a and b.
struct CwNode {
  enum class Op { Leaf, Union, Relabel, Join };
  Op op = Op::Leaf;
  int a = 0, b = 0;  // Leaf: a = label; Relabel: a -> b; Join: classes a, b
  std::unique_ptr<CwNode> left, right;  // Union: both; Relabel/Join: left only

  int leaf_count() const;
  std::unique_ptr<CwNode> clone() const;
};

struct CwExpr {
  int k = 0;  // declared label bound
  std::unique_ptr<CwNode> root;

  CwExpr clone() const;
};

// NLC term: leaf (v a), product (x ((a b) ...) X Y) adding cross edges for
// ordered label pairs in S, rename (o ((a ra) ...) X) applying a total map
// on labels (pairs not listed act as the identity).
struct NlcNode {
  enum class Op { Leaf, Product, Rename };
  Op op = Op::Leaf;
  int a = 0;                                  // Leaf label
  std::vector<std::pair<int, int>> pairs;     // Product: S; Rename: the map
  std::unique_ptr<NlcNode> left, right;

  int leaf_count() const;
  std::unique_ptr<NlcNode> clone() const;
};

struct NlcExpr {
  int k = 0;
  std::unique_ptr<NlcNode> root;

  NlcExpr clone() const;
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int line_, int col_, const std::string& msg);
};

CwExpr parse_cw(const std::string& text);
std::string print_cw(const CwExpr& x);
NlcExpr parse_nlc(const std::string& text);
std::string print_nlc(const NlcExpr& y);

// Vertices of the value are the leaves in left-to-right order.
LabeledGraph eval_cw(const CwExpr& x);
LabeledGraph eval_cw_node(const CwNode& node, int k);
LabeledGraph eval_nlc(const NlcExpr& y);

// Rewrites an NLC term into a clique-width term over the same canonical
// vertex numbering. Labels k+1..2k are used as a scratch block: the right
// side of a product is shifted up before joining, and renames route through
// the scratch block so arbitrary maps apply simultaneously.
CwExpr nlc_to_cw(const NlcExpr& y);

// Keeps exactly the given vertices (leaf positions) and collapses unions
// whose side became empty. Throws on unknown vertices and on an empty keep.
CwExpr restrict_induced(const CwExpr& x, const std::set<int>& keep);

// True iff no Join node adds an edge already present in its child's value.
bool check_irredundant(const CwExpr& x);

// Builds an expression for an arbitrary graph by inserting vertices in index
// order. Each active vertex holds a private label; once all its edges exist
// it is retired to label 1, which no join ever touches. Leaf i is vertex i.
CwExpr cw_expr_for_graph(const Graph& g);

}  // namespace cwc

#endif
