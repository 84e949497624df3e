#ifndef CWCOUNT_CIRCUIT_HPP
#define CWCOUNT_CIRCUIT_HPP

#include <iosfwd>
#include <map>
#include <vector>

#include "cwcount/dp.hpp"

namespace cwc {

// Monotone arithmetic circuit over nonnegative integers: constant-1 inputs
// at the leaves, transition constants, fan-in-2 products, unbounded fan-in
// sums. Gates are stored in topological order.
struct Circuit {
  struct Gate {
    enum class Kind { Input, Const, Mul, Add };
    Kind kind = Kind::Input;
    Count constant;          // Const only
    std::vector<int> args;   // Mul: 2; Add: >= 2
  };
  struct Output {
    int gate = 0;
    CoverKey key;
  };
  std::vector<Gate> gates;
  std::vector<Output> outputs;
};

// Formal degree: inputs count 1, constants 0, products add, sums take the
// maximum. Depth is edges on the longest input-to-gate path.
struct CircuitStats {
  long long max_degree = 0;
  int depth = 0;
  int gate_count = 0;
};

struct CircuitEmission {
  Circuit circuit;
  // gate per table entry, per parse-tree node in post-order
  std::vector<const CwNode*> nodes;
  std::vector<std::map<CoverKey, int>> node_gates;
};

// Unrolls the dynamic program into gates: the designated outputs evaluate to
// the root state table of run_dp.
CircuitEmission emit_circuit(const CwExpr& x);

std::vector<Count> eval_circuit(const Circuit& c);
std::vector<long long> circuit_degrees(const Circuit& c);
CircuitStats circuit_stats(const Circuit& c);

void write_circuit(std::ostream& out, const Circuit& c);

}  // namespace cwc

#endif
