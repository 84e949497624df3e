#include "cwcount/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace cwc {

int CwNode::leaf_count() const {
  switch (op) {
    case Op::Leaf: return 1;
    case Op::Union: return left->leaf_count() + right->leaf_count();
    default: return left->leaf_count();
  }
}

std::unique_ptr<CwNode> CwNode::clone() const {
  auto c = std::make_unique<CwNode>();
  c->op = op;
  c->a = a;
  c->b = b;
  if (left) c->left = left->clone();
  if (right) c->right = right->clone();
  return c;
}

CwExpr CwExpr::clone() const { return {k, root ? root->clone() : nullptr}; }

int NlcNode::leaf_count() const {
  switch (op) {
    case Op::Leaf: return 1;
    case Op::Product: return left->leaf_count() + right->leaf_count();
    default: return left->leaf_count();
  }
}

std::unique_ptr<NlcNode> NlcNode::clone() const {
  auto c = std::make_unique<NlcNode>();
  c->op = op;
  c->a = a;
  c->pairs = pairs;
  if (left) c->left = left->clone();
  if (right) c->right = right->clone();
  return c;
}

NlcExpr NlcExpr::clone() const { return {k, root ? root->clone() : nullptr}; }

ParseError::ParseError(int line_, int col_, const std::string& msg)
    : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + msg),
      line(line_),
      column(col_) {}

namespace {

struct Token {
  enum class Kind { LParen, RParen, Atom, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    Token t{Token::Kind::End, "", line_, col_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(') {
      t.kind = Token::Kind::LParen;
      advance();
      return t;
    }
    if (c == ')') {
      t.kind = Token::Kind::RParen;
      advance();
      return t;
    }
    t.kind = Token::Kind::Atom;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      t.text += text_[pos_];
      advance();
    }
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { bump(); }

  [[noreturn]] void err(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

  void expect(Token::Kind k, const std::string& what) {
    if (tok_.kind != k) err("expected " + what);
    bump();
  }

  std::string atom(const std::string& what) {
    if (tok_.kind != Token::Kind::Atom) err("expected " + what);
    std::string s = tok_.text;
    bump();
    return s;
  }

  int label() {
    Token at = tok_;
    std::string s = atom("label");
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      if (v < 1) throw ParseError(at.line, at.col, "label out of range: " + s);
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError(at.line, at.col, "expected integer label, got '" + s + "'");
    }
  }

  void done() {
    if (tok_.kind != Token::Kind::End) err("trailing input");
  }

  Token tok_;

 private:
  void bump() { tok_ = lex_.next(); }
  Lexer lex_;
};

std::unique_ptr<CwNode> parse_cw_node(Parser& p, int& maxlab) {
  p.expect(Token::Kind::LParen, "'('");
  std::string head = p.atom("operator");
  auto node = std::make_unique<CwNode>();
  if (head == "v") {
    node->op = CwNode::Op::Leaf;
    node->a = p.label();
    maxlab = std::max(maxlab, node->a);
  } else if (head == "u") {
    node->op = CwNode::Op::Union;
    node->left = parse_cw_node(p, maxlab);
    node->right = parse_cw_node(p, maxlab);
  } else if (head == "r" || head == "e") {
    node->op = head == "r" ? CwNode::Op::Relabel : CwNode::Op::Join;
    node->a = p.label();
    node->b = p.label();
    if (node->a == node->b)
      p.err(head == "r" ? "relabel labels must differ" : "join labels must differ");
    maxlab = std::max({maxlab, node->a, node->b});
    node->left = parse_cw_node(p, maxlab);
  } else {
    p.err("unknown operator '" + head + "'");
  }
  p.expect(Token::Kind::RParen, "')'");
  return node;
}

std::vector<std::pair<int, int>> parse_pair_list(Parser& p) {
  std::vector<std::pair<int, int>> out;
  p.expect(Token::Kind::LParen, "'('");
  while (p.tok_.kind == Token::Kind::LParen) {
    p.expect(Token::Kind::LParen, "'('");
    int a = p.label();
    int b = p.label();
    out.push_back({a, b});
    p.expect(Token::Kind::RParen, "')'");
  }
  p.expect(Token::Kind::RParen, "')'");
  return out;
}

std::unique_ptr<NlcNode> parse_nlc_node(Parser& p, int& maxlab) {
  p.expect(Token::Kind::LParen, "'('");
  std::string head = p.atom("operator");
  auto node = std::make_unique<NlcNode>();
  if (head == "v") {
    node->op = NlcNode::Op::Leaf;
    node->a = p.label();
    maxlab = std::max(maxlab, node->a);
  } else if (head == "x") {
    node->op = NlcNode::Op::Product;
    node->pairs = parse_pair_list(p);
    for (auto [a, b] : node->pairs) maxlab = std::max({maxlab, a, b});
    node->left = parse_nlc_node(p, maxlab);
    node->right = parse_nlc_node(p, maxlab);
  } else if (head == "o") {
    node->op = NlcNode::Op::Rename;
    node->pairs = parse_pair_list(p);
    for (auto [a, b] : node->pairs) maxlab = std::max({maxlab, a, b});
    node->left = parse_nlc_node(p, maxlab);
  } else {
    p.err("unknown operator '" + head + "'");
  }
  p.expect(Token::Kind::RParen, "')'");
  return node;
}

void print_cw_node(std::ostream& os, const CwNode& n) {
  switch (n.op) {
    case CwNode::Op::Leaf:
      os << "(v " << n.a << ")";
      break;
    case CwNode::Op::Union:
      os << "(u ";
      print_cw_node(os, *n.left);
      os << ' ';
      print_cw_node(os, *n.right);
      os << ")";
      break;
    case CwNode::Op::Relabel:
    case CwNode::Op::Join:
      os << (n.op == CwNode::Op::Relabel ? "(r " : "(e ") << n.a << ' ' << n.b << ' ';
      print_cw_node(os, *n.left);
      os << ")";
      break;
  }
}

void print_nlc_node(std::ostream& os, const NlcNode& n) {
  auto pairs = [&os](const std::vector<std::pair<int, int>>& ps) {
    os << '(';
    for (size_t i = 0; i < ps.size(); ++i) {
      if (i) os << ' ';
      os << '(' << ps[i].first << ' ' << ps[i].second << ')';
    }
    os << ')';
  };
  switch (n.op) {
    case NlcNode::Op::Leaf:
      os << "(v " << n.a << ")";
      break;
    case NlcNode::Op::Product:
      os << "(x ";
      pairs(n.pairs);
      os << ' ';
      print_nlc_node(os, *n.left);
      os << ' ';
      print_nlc_node(os, *n.right);
      os << ")";
      break;
    case NlcNode::Op::Rename:
      os << "(o ";
      pairs(n.pairs);
      os << ' ';
      print_nlc_node(os, *n.left);
      os << ")";
      break;
  }
}

}  // namespace

CwExpr parse_cw(const std::string& text) {
  Parser p(text);
  int maxlab = 0;
  CwExpr x;
  x.root = parse_cw_node(p, maxlab);
  p.done();
  x.k = maxlab;
  return x;
}

std::string print_cw(const CwExpr& x) {
  std::ostringstream os;
  print_cw_node(os, *x.root);
  return os.str();
}

NlcExpr parse_nlc(const std::string& text) {
  Parser p(text);
  int maxlab = 0;
  NlcExpr y;
  y.root = parse_nlc_node(p, maxlab);
  p.done();
  y.k = maxlab;
  return y;
}

std::string print_nlc(const NlcExpr& y) {
  std::ostringstream os;
  print_nlc_node(os, *y.root);
  return os.str();
}

namespace {

struct EvalState {
  std::vector<int> lab;        // per vertex, vertices are leaves so far
  std::set<Edge> edges;
};

void eval_cw_rec(const CwNode& n, int k, EvalState& st) {
  switch (n.op) {
    case CwNode::Op::Leaf: {
      if (n.a < 1 || n.a > k) throw std::runtime_error("label out of range");
      st.lab.push_back(n.a);
      break;
    }
    case CwNode::Op::Union: {
      EvalState rs;
      eval_cw_rec(*n.left, k, st);
      eval_cw_rec(*n.right, k, rs);
      int off = static_cast<int>(st.lab.size());
      for (int l : rs.lab) st.lab.push_back(l);
      for (auto [u, v] : rs.edges) st.edges.insert({u + off, v + off});
      break;
    }
    case CwNode::Op::Relabel: {
      if (n.a > k || n.b > k) throw std::runtime_error("label out of range");
      eval_cw_rec(*n.left, k, st);
      for (int& l : st.lab)
        if (l == n.a) l = n.b;
      break;
    }
    case CwNode::Op::Join: {
      if (n.a > k || n.b > k) throw std::runtime_error("label out of range");
      eval_cw_rec(*n.left, k, st);
      for (int u = 0; u < static_cast<int>(st.lab.size()); ++u)
        for (int v = 0; v < static_cast<int>(st.lab.size()); ++v)
          if (st.lab[u] == n.a && st.lab[v] == n.b)
            st.edges.insert({std::min(u, v), std::max(u, v)});
      break;
    }
  }
}

}  // namespace

LabeledGraph eval_cw_node(const CwNode& node, int k) {
  EvalState st;
  eval_cw_rec(node, k, st);
  int n = static_cast<int>(st.lab.size());
  Graph g(n, std::vector<Edge>(st.edges.begin(), st.edges.end()));
  return LabeledGraph(std::move(g), st.lab, k);
}

LabeledGraph eval_cw(const CwExpr& x) { return eval_cw_node(*x.root, x.k); }

namespace {

void eval_nlc_rec(const NlcNode& n, int k, EvalState& st) {
  switch (n.op) {
    case NlcNode::Op::Leaf: {
      if (n.a < 1 || n.a > k) throw std::runtime_error("label out of range");
      st.lab.push_back(n.a);
      break;
    }
    case NlcNode::Op::Product: {
      EvalState rs;
      eval_nlc_rec(*n.left, k, st);
      eval_nlc_rec(*n.right, k, rs);
      int off = static_cast<int>(st.lab.size());
      for (auto [u, v] : rs.edges) st.edges.insert({u + off, v + off});
      for (auto [a, b] : n.pairs)
        for (int u = 0; u < off; ++u) {
          if (st.lab[u] != a) continue;
          for (int v = 0; v < static_cast<int>(rs.lab.size()); ++v)
            if (rs.lab[v] == b) st.edges.insert({u, v + off});
        }
      for (int l : rs.lab) st.lab.push_back(l);
      break;
    }
    case NlcNode::Op::Rename: {
      eval_nlc_rec(*n.left, k, st);
      std::map<int, int> r(n.pairs.begin(), n.pairs.end());
      for (int& l : st.lab) {
        auto it = r.find(l);
        if (it != r.end()) l = it->second;
      }
      break;
    }
  }
}

}  // namespace

LabeledGraph eval_nlc(const NlcExpr& y) {
  EvalState st;
  eval_nlc_rec(*y.root, y.k, st);
  int n = static_cast<int>(st.lab.size());
  Graph g(n, std::vector<Edge>(st.edges.begin(), st.edges.end()));
  return LabeledGraph(std::move(g), st.lab, y.k);
}

namespace {

std::unique_ptr<CwNode> cw_leaf(int a) {
  auto n = std::make_unique<CwNode>();
  n->op = CwNode::Op::Leaf;
  n->a = a;
  return n;
}

std::unique_ptr<CwNode> cw_unary(CwNode::Op op, int a, int b,
                                 std::unique_ptr<CwNode> child) {
  auto n = std::make_unique<CwNode>();
  n->op = op;
  n->a = a;
  n->b = b;
  n->left = std::move(child);
  return n;
}

std::unique_ptr<CwNode> cw_union(std::unique_ptr<CwNode> l, std::unique_ptr<CwNode> r) {
  auto n = std::make_unique<CwNode>();
  n->op = CwNode::Op::Union;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

// Returns the converted subtree plus the set of labels present in its value.
std::pair<std::unique_ptr<CwNode>, std::set<int>> nlc_to_cw_rec(const NlcNode& n, int k) {
  switch (n.op) {
    case NlcNode::Op::Leaf:
      return {cw_leaf(n.a), {n.a}};
    case NlcNode::Op::Rename: {
      auto [cx, present] = nlc_to_cw_rec(*n.left, k);
      std::map<int, int> r(n.pairs.begin(), n.pairs.end());
      auto image = [&r](int a) {
        auto it = r.find(a);
        return it == r.end() ? a : it->second;
      };
      std::set<int> moved, targets, result;
      for (int a : present) {
        result.insert(image(a));
        if (image(a) != a) moved.insert(a);
      }
      for (int a : moved) {
        cx = cw_unary(CwNode::Op::Relabel, a, k + image(a), std::move(cx));
        targets.insert(image(a));
      }
      for (int b : targets)
        cx = cw_unary(CwNode::Op::Relabel, k + b, b, std::move(cx));
      return {std::move(cx), std::move(result)};
    }
    case NlcNode::Op::Product: {
      auto [cl, pl] = nlc_to_cw_rec(*n.left, k);
      auto [cr, pr] = nlc_to_cw_rec(*n.right, k);
      for (int b : pr) cr = cw_unary(CwNode::Op::Relabel, b, k + b, std::move(cr));
      auto cu = cw_union(std::move(cl), std::move(cr));
      std::vector<std::pair<int, int>> pairs = n.pairs;
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      for (auto [a, b] : pairs)
        if (pl.count(a) && pr.count(b))
          cu = cw_unary(CwNode::Op::Join, a, k + b, std::move(cu));
      for (int b : pr) cu = cw_unary(CwNode::Op::Relabel, k + b, b, std::move(cu));
      std::set<int> present = pl;
      present.insert(pr.begin(), pr.end());
      return {std::move(cu), std::move(present)};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

CwExpr nlc_to_cw(const NlcExpr& y) {
  CwExpr x;
  x.k = 2 * y.k;
  x.root = nlc_to_cw_rec(*y.root, y.k).first;
  return x;
}

namespace {

// nullptr result means every leaf below was dropped.
std::unique_ptr<CwNode> restrict_rec(const CwNode& n, const std::set<int>& keep,
                                     int& next_leaf) {
  switch (n.op) {
    case CwNode::Op::Leaf: {
      bool kept = keep.count(next_leaf) > 0;
      ++next_leaf;
      return kept ? n.clone() : nullptr;
    }
    case CwNode::Op::Union: {
      auto l = restrict_rec(*n.left, keep, next_leaf);
      auto r = restrict_rec(*n.right, keep, next_leaf);
      if (l && r) return cw_union(std::move(l), std::move(r));
      if (l) return l;
      return r;
    }
    default: {
      auto c = restrict_rec(*n.left, keep, next_leaf);
      if (!c) return nullptr;
      return cw_unary(n.op, n.a, n.b, std::move(c));
    }
  }
}

}  // namespace

CwExpr restrict_induced(const CwExpr& x, const std::set<int>& keep) {
  int n = x.root->leaf_count();
  for (int v : keep)
    if (v < 0 || v >= n) throw std::runtime_error("unknown vertex in keep set");
  if (keep.empty()) throw std::runtime_error("empty restriction");
  int next_leaf = 0;
  auto r = restrict_rec(*x.root, keep, next_leaf);
  return {x.k, std::move(r)};
}

namespace {

bool irredundant_rec(const CwNode& n, EvalState& st) {
  switch (n.op) {
    case CwNode::Op::Leaf:
      st.lab.push_back(n.a);
      return true;
    case CwNode::Op::Union: {
      EvalState rs;
      if (!irredundant_rec(*n.left, st)) return false;
      if (!irredundant_rec(*n.right, rs)) return false;
      int off = static_cast<int>(st.lab.size());
      for (int l : rs.lab) st.lab.push_back(l);
      for (auto [u, v] : rs.edges) st.edges.insert({u + off, v + off});
      return true;
    }
    case CwNode::Op::Relabel: {
      if (!irredundant_rec(*n.left, st)) return false;
      for (int& l : st.lab)
        if (l == n.a) l = n.b;
      return true;
    }
    case CwNode::Op::Join: {
      if (!irredundant_rec(*n.left, st)) return false;
      for (int u = 0; u < static_cast<int>(st.lab.size()); ++u)
        for (int v = 0; v < static_cast<int>(st.lab.size()); ++v) {
          if (st.lab[u] != n.a || st.lab[v] != n.b) continue;
          Edge e{std::min(u, v), std::max(u, v)};
          if (st.edges.count(e)) return false;
          st.edges.insert(e);
        }
      return true;
    }
  }
  return true;
}

}  // namespace

bool check_irredundant(const CwExpr& x) {
  EvalState st;
  return irredundant_rec(*x.root, st);
}

CwExpr cw_expr_for_graph(const Graph& g) {
  if (g.n == 0) throw std::runtime_error("empty graph");
  auto adj = g.adjacency();
  std::vector<int> last_use(g.n, -1);  // largest neighbor index
  for (int v = 0; v < g.n; ++v)
    for (int w : adj[v]) last_use[v] = std::max(last_use[v], w);

  std::set<int> free_labels;
  int max_label = 1;
  std::vector<int> lab(g.n, 0);
  auto take_label = [&]() {
    if (free_labels.empty()) free_labels.insert(++max_label);
    int l = *free_labels.begin();
    free_labels.erase(free_labels.begin());
    return l;
  };

  std::unique_ptr<CwNode> x;
  for (int v = 0; v < g.n; ++v) {
    lab[v] = take_label();
    auto leaf = cw_leaf(lab[v]);
    x = x ? cw_union(std::move(x), std::move(leaf)) : std::move(leaf);
    std::vector<int> back;
    for (int w : adj[v])
      if (w < v) back.push_back(w);
    std::sort(back.begin(), back.end());
    for (int w : back) x = cw_unary(CwNode::Op::Join, lab[w], lab[v], std::move(x));
    for (int u = 0; u <= v; ++u)
      if (lab[u] != 1 && last_use[u] <= v) {
        x = cw_unary(CwNode::Op::Relabel, lab[u], 1, std::move(x));
        free_labels.insert(lab[u]);
        lab[u] = 1;
      }
  }
  return {max_label, std::move(x)};
}

}  // namespace cwc
