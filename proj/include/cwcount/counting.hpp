#ifndef CWCOUNT_COUNTING_HPP
#define CWCOUNT_COUNTING_HPP

#include <optional>
#include <string>

#include "cwcount/dp.hpp"
#include "cwcount/graph.hpp"

namespace cwc {

struct CountReport {
  std::string quantity;
  Count value = 0;
  std::string convention;
  std::optional<int> length;  // longest-path/cycle queries only
};

// All quantities count edge sets; Euler tours are counted up to rotation and
// reversal unless the directed convention is requested.

CountReport count_ham_cycles(const CwExpr& x, EtaBackend backend = EtaBackend::Direct);
CountReport count_ham_paths(const CwExpr& x, EtaBackend backend = EtaBackend::Direct);

CountReport count_euler_tours(const Graph& g,
                              const std::optional<TreeDecomposition>& td,
                              bool directed, EtaBackend backend = EtaBackend::Direct);

enum class LongestKind { Path, Cycle };
CountReport count_longest(const CwExpr& x, LongestKind kind,
                          EtaBackend backend = EtaBackend::Direct);

CountReport count_cycle_covers(const CwExpr& x, EtaBackend backend = EtaBackend::Direct);

// Permanent of a 0/1 matrix, evaluated as the number of cycle covers of the
// split gadget through the dynamic program.
CountReport count_bipartite_pm(const BitMatrix& adj,
                               EtaBackend backend = EtaBackend::Direct);

std::string report_text(const CountReport& r);
std::string report_json(const CountReport& r);

}  // namespace cwc

#endif
