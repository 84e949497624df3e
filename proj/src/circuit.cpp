#include "cwcount/circuit.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace cwc {

namespace {

class Emitter {
 public:
  Circuit circuit;

  int input() { return push({Circuit::Gate::Kind::Input, 0, {}}); }

  int constant(const Count& v) {
    auto it = const_ids_.find(v);
    if (it != const_ids_.end()) return it->second;
    int id = push({Circuit::Gate::Kind::Const, v, {}});
    const_ids_.emplace(v, id);
    return id;
  }

  int mul(int a, int b) { return push({Circuit::Gate::Kind::Mul, 0, {a, b}}); }

  // A one-term sum is wiring, not a gate.
  int add(std::vector<int> args) {
    if (args.empty()) throw std::logic_error("empty sum");
    if (args.size() == 1) return args[0];
    return push({Circuit::Gate::Kind::Add, 0, std::move(args)});
  }

  std::map<CoverKey, int> emit(const CwNode& n, int k, CircuitEmission& em) {
    std::map<CoverKey, int> table;
    switch (n.op) {
      case CwNode::Op::Leaf: {
        Allocation al;
        al.add(PathType::singleton(n.a), 1);
        table[{al, 1}] = input();
        break;
      }
      case CwNode::Op::Union: {
        auto t1 = emit(*n.left, k, em);
        auto t2 = emit(*n.right, k, em);
        std::map<CoverKey, std::vector<int>> sums;
        for (const auto& [k1, g1] : t1)
          for (const auto& [k2, g2] : t2) {
            Allocation al = k1.alloc;
            for (const auto& [t, c] : k2.alloc.parts()) al.add(t, c);
            sums[{std::move(al), k1.vertices + k2.vertices}].push_back(mul(g1, g2));
          }
        for (auto& [key, args] : sums) table[key] = add(std::move(args));
        break;
      }
      case CwNode::Op::Relabel: {
        auto t1 = emit(*n.left, k, em);
        std::map<CoverKey, std::vector<int>> sums;
        for (const auto& [key, g] : t1) {
          StateTable one(k, key.vertices);
          one.add(key, 1);
          StateTable renamed = rho_state(one, n.a, n.b);
          sums[renamed.rows().begin()->first].push_back(g);
        }
        for (auto& [key, args] : sums) table[key] = add(std::move(args));
        break;
      }
      case CwNode::Op::Join: {
        auto t1 = emit(*n.left, k, em);
        std::map<CoverKey, std::vector<int>> sums;
        std::map<Allocation, std::map<Allocation, Count>> cache;
        for (const auto& [key, g] : t1) {
          Allocation relevant, inert;
          for (const auto& [t, c] : key.alloc.parts())
            (join_touches(t, n.a, n.b) ? relevant : inert).add(t, c);
          auto it = cache.find(relevant);
          if (it == cache.end())
            it = cache.emplace(relevant, eta_rows(relevant, n.a, n.b, EtaBackend::Direct))
                     .first;
          for (const auto& [delta, coeff] : it->second) {
            Allocation al = inert;
            for (const auto& [t, c] : delta.parts()) al.add(t, c);
            int term = coeff == 1 ? g : mul(g, constant(coeff));
            sums[{std::move(al), key.vertices}].push_back(term);
          }
        }
        for (auto& [key, args] : sums) table[key] = add(std::move(args));
        break;
      }
    }
    em.nodes.push_back(&n);
    em.node_gates.push_back(table);
    return table;
  }

 private:
  int push(Circuit::Gate g) {
    circuit.gates.push_back(std::move(g));
    return static_cast<int>(circuit.gates.size()) - 1;
  }

  std::map<Count, int> const_ids_;
};

}  // namespace

CircuitEmission emit_circuit(const CwExpr& x) {
  if (!check_irredundant(x)) throw std::runtime_error("redundant join detected");
  CircuitEmission em;
  Emitter e;
  auto root = e.emit(*x.root, x.k, em);
  em.circuit = std::move(e.circuit);
  for (const auto& [key, gate] : root) em.circuit.outputs.push_back({gate, key});
  return em;
}

std::vector<Count> eval_circuit(const Circuit& c) {
  std::vector<Count> val(c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    switch (g.kind) {
      case Circuit::Gate::Kind::Input:
        val[i] = 1;
        break;
      case Circuit::Gate::Kind::Const:
        val[i] = g.constant;
        break;
      case Circuit::Gate::Kind::Mul:
        val[i] = val[g.args[0]] * val[g.args[1]];
        break;
      case Circuit::Gate::Kind::Add: {
        Count s = 0;
        for (int a : g.args) s += val[a];
        val[i] = s;
        break;
      }
    }
  }
  return val;
}

std::vector<long long> circuit_degrees(const Circuit& c) {
  std::vector<long long> deg(c.gates.size(), 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    switch (g.kind) {
      case Circuit::Gate::Kind::Input:
        deg[i] = 1;
        break;
      case Circuit::Gate::Kind::Const:
        deg[i] = 0;
        break;
      case Circuit::Gate::Kind::Mul:
        deg[i] = deg[g.args[0]] + deg[g.args[1]];
        break;
      case Circuit::Gate::Kind::Add: {
        long long m = 0;
        for (int a : g.args) m = std::max(m, deg[a]);
        deg[i] = m;
        break;
      }
    }
  }
  return deg;
}

CircuitStats circuit_stats(const Circuit& c) {
  CircuitStats st;
  st.gate_count = static_cast<int>(c.gates.size());
  auto deg = circuit_degrees(c);
  for (long long d : deg) st.max_degree = std::max(st.max_degree, d);
  std::vector<int> depth(c.gates.size(), 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    for (int a : c.gates[i].args) depth[i] = std::max(depth[i], depth[a] + 1);
    st.depth = std::max(st.depth, depth[i]);
  }
  return st;
}

namespace {

std::string key_descriptor(const CoverKey& key) {
  std::string s = "v" + std::to_string(key.vertices);
  for (const auto& [t, c] : key.alloc.parts())
    s += "," + t.str() + ":" + std::to_string(c);
  return s;
}

}  // namespace

void write_circuit(std::ostream& out, const Circuit& c) {
  CircuitStats st = circuit_stats(c);
  out << "c degree " << st.max_degree << " depth " << st.depth << " gates "
      << st.gate_count << '\n';
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    switch (g.kind) {
      case Circuit::Gate::Kind::Input:
        out << "i " << i << '\n';
        break;
      case Circuit::Gate::Kind::Const:
        out << "k " << i << ' ' << g.constant << '\n';
        break;
      case Circuit::Gate::Kind::Mul:
        out << "* " << i << ' ' << g.args[0] << ' ' << g.args[1] << '\n';
        break;
      case Circuit::Gate::Kind::Add: {
        out << "+ " << i;
        for (int a : g.args) out << ' ' << a;
        out << '\n';
        break;
      }
    }
  }
  for (const auto& o : c.outputs)
    out << "o " << o.gate << ' ' << key_descriptor(o.key) << '\n';
}

}  // namespace cwc
