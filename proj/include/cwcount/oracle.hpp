#ifndef CWCOUNT_ORACLE_HPP
#define CWCOUNT_ORACLE_HPP

#include <vector>

#include "cwcount/count.hpp"
#include "cwcount/dp.hpp"
#include "cwcount/graph.hpp"

// Independent brute-force ground truth. Everything here enumerates concrete
// combinatorial objects; none of it shares logic with the dp transitions.
namespace cwc::oracle {

// Exhaustive census of path-cycle covers: walks all edge subsets whose
// induced degrees stay at most 2 and classifies every component (isolated
// vertices included) by its endpoint labels. Throws when |E| > max_edges.
StateTable census_path_cycle_covers(const LabeledGraph& g, int max_edges = 24);

enum class EulerConvention { Directed, Undirected };

// Backtracking count of Euler tours. Directed: edge sequences anchored at
// the least edge, one per traversal direction. Undirected: classes under
// rotation and reversal. Returns 0 for non-Eulerian graphs; the one-vertex
// graph counts 1 (the empty tour). Requires m <= max_edges; the default
// bound suits branchy graphs, subdivided ones backtrack far less.
Count brute_euler_tours(const Graph& g, EulerConvention convention,
                        int max_edges = 12);

enum class HamKind { Cycle, Path };

// Counts Hamiltonian cycles/paths as distinct edge sets via vertex
// permutations. Requires n <= 10.
Count brute_ham(const Graph& g, HamKind kind);

struct LongestResult {
  int length = 0;  // vertices in the longest path/cycle; 0 when none exists
  Count count = 0;
};

// Longest paths (>= 1 vertex) or cycles (>= 3 vertices) counted as distinct
// edge sets, by depth-first enumeration of vertex sequences. n <= 10.
LongestResult brute_longest(const Graph& g, HamKind kind);

// Sum over permutations of products of entries. n <= 9.
Count permanent(const BitMatrix& adj);

// A concrete path/cycle fragment for the merge oracle.
struct Block {
  PathType type;
  int vertices = 0;  // >= type.min_vertices(); interior labels are irrelevant
};

// Builds the blocks as disjoint labeled fragments, enumerates every set of
// new edges between a-labeled and b-labeled vertices (skipping pairs already
// adjacent), and counts the sets that turn the whole arrangement into exactly
// one component of the target type. Total vertices <= 12.
Count merge_oracle(const std::vector<Block>& blocks, int a, int b,
                   const PathType& target, int k);

}  // namespace cwc::oracle

#endif
