#ifndef CWCOUNT_DP_HPP
#define CWCOUNT_DP_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cwcount/count.hpp"
#include "cwcount/expr.hpp"
#include "cwcount/graph.hpp"

namespace cwc {

// Endpoint-label signature of one component of a path-cycle cover:
//   Cycle                 closed cycle, no endpoints
//   Singleton(i)          isolated vertex labeled i
//   SamePair(i)           path with >= 2 vertices, both endpoints labeled i
//   MixedPair(i,j), i<j   path with endpoints labeled i and j
struct PathType {
  enum class Kind : int { Cycle = 0, Singleton = 1, SamePair = 2, MixedPair = 3 };
  Kind kind = Kind::Cycle;
  int a = 0, b = 0;

  static PathType cycle() { return {Kind::Cycle, 0, 0}; }
  static PathType singleton(int i) { return {Kind::Singleton, i, i}; }
  static PathType same_pair(int i) { return {Kind::SamePair, i, i}; }
  static PathType mixed_pair(int i, int j);
  // Path endpoints (i, j): SamePair when i == j, sorted MixedPair otherwise.
  static PathType path_ends(int i, int j);

  // Least number of vertices a component of this type can have.
  int min_vertices() const;
  std::string str() const;

  auto operator<=>(const PathType&) const = default;
};

// Number of distinct types for label bound k: C(k,2) + 2k + 1.
int type_count(int k);
std::vector<PathType> all_types(int k);

// Sparse vector over PathType with positive entries; a multiset of types.
class Allocation {
 public:
  Allocation() = default;

  int count(const PathType& t) const;
  void add(const PathType& t, int delta);  // erases entries that reach zero
  int total_blocks() const;
  int min_vertices() const;
  bool empty() const { return parts_.empty(); }
  const std::vector<std::pair<PathType, int>>& parts() const { return parts_; }
  std::string str() const;

  auto operator<=>(const Allocation&) const = default;

 private:
  std::vector<std::pair<PathType, int>> parts_;  // sorted by type
};

// Table key: the census of component types plus the exact number of vertices
// the cover uses. Every vertex of the producing node's value lies in exactly
// one component (isolated vertices included), so vertices always equals the
// leaf count below that node; carrying it per key makes the invariant
// checkable and keeps spanning queries exact.
struct CoverKey {
  Allocation alloc;
  int vertices = 0;

  auto operator<=>(const CoverKey&) const = default;
};

// Sparse #X map: census -> number of path-cycle covers with that census.
class StateTable {
 public:
  StateTable() = default;
  StateTable(int labels, int vertices) : labels_(labels), vertices_(vertices) {}

  int labels() const { return labels_; }
  int vertices() const { return vertices_; }
  const std::map<CoverKey, Count>& rows() const { return rows_; }
  void add(const CoverKey& key, const Count& c);
  Count at(const CoverKey& key) const;  // 0 when absent

  // All counts positive, every key's vertices equal to the table's, and the
  // minimum vertex usage of each census within budget.
  void validate() const;

  bool operator==(const StateTable&) const = default;

 private:
  int labels_ = 0;
  int vertices_ = 0;
  std::map<CoverKey, Count> rows_;
};

// Number of distinct sets of new a-b endpoint edges that link the blocks in
// `alpha` into exactly one component of type `target`, when a join on labels
// (a, b) is applied. Blocks whose endpoints avoid both a and b can only pass
// through unchanged; at most two blocks may carry an endpoint outside {a, b}
// and those must surface as the target's ends.
Count w_alpha(const Allocation& alpha, const PathType& target, int a, int b);

enum class EtaBackend { Direct, Interp };

// True when a block of this type can gain a join edge on labels (a, b).
bool join_touches(const PathType& t, int a, int b);

// The replacement censuses reachable from a census of joinable blocks, with
// the number of distinct new-edge sets realizing each. Inert blocks are
// split off by the caller and pass through unchanged.
std::map<Allocation, Count> eta_rows(const Allocation& relevant, int a, int b,
                                     EtaBackend backend);

StateTable leaf_state(int a, int k);
StateTable union_state(const StateTable& s1, const StateTable& s2);
StateTable rho_state(const StateTable& s, int a, int b);
StateTable eta_state_direct(const StateTable& s, int a, int b);
// Same contract as the direct backend, computed by assembling the generating
// polynomial of group structures, Kronecker-substituting it into a single
// variable over exact arithmetic, and reading coefficients back off.
StateTable eta_state_interp(const StateTable& s, int a, int b);
StateTable eta_state(const StateTable& s, int a, int b, EtaBackend backend);

// What the caller will read off the root table. FullCensus keeps everything.
// The other goals prune, at every node, keys that provably cannot evolve
// into the goal census: a block whose endpoint label can never be joined
// again stays a path or isolated vertex forever, and a closed cycle never
// reopens. Pruned runs are only valid for reading the goal entries.
enum class DpGoal { FullCensus, SingleCycle, AllCycles };

// Bottom-up evaluation of all transitions. Requires an irredundant
// expression; the result maps every census to the exact number of
// path-cycle covers of val(x) realizing it.
StateTable run_dp(const CwExpr& x, EtaBackend backend = EtaBackend::Direct,
                  DpGoal goal = DpGoal::FullCensus);

struct NodeTrace {
  const CwNode* node;
  StateTable table;
};

// Tables for every parse-tree node, post-order.
std::vector<NodeTrace> run_dp_trace(const CwExpr& x,
                                    EtaBackend backend = EtaBackend::Direct);

}  // namespace cwc

#endif
