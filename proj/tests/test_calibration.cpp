#include <doctest.h>

#include <vector>

#include "cwcount/dp.hpp"
#include "cwcount/oracle.hpp"

using namespace cwc;
using oracle::Block;
using oracle::merge_oracle;

namespace {

constexpr int kA = 1, kB = 2, kLabels = 4;

Allocation alloc_of(const std::vector<Block>& blocks) {
  Allocation a;
  for (const auto& b : blocks) a.add(b.type, 1);
  return a;
}

Count oracle_w(const std::vector<Block>& blocks, const PathType& target) {
  return merge_oracle(blocks, kA, kB, target, kLabels);
}

}  // namespace

// The linking constants are frozen in docs/calibration.md; every row there
// corresponds to one assertion here, so re-running this suite re-derives
// the table from the merge oracle.
TEST_CASE("frozen linking constants") {
  const PathType cyc = PathType::cycle();
  const PathType mix = PathType::mixed_pair(kA, kB);
  const Block mixed3{mix, 3};
  const Block path_a{PathType::same_pair(kA), 2};
  const Block path_b{PathType::same_pair(kB), 2};
  const Block sing_a{PathType::singleton(kA), 1};
  const Block sing_b{PathType::singleton(kB), 1};

  struct Row {
    std::vector<Block> blocks;
    PathType target;
    long expect;
  };
  const std::vector<Row> frozen = {
      {{mixed3}, cyc, 1},                                   // close one path
      {{mixed3}, mix, 1},                                   // unchanged
      {{sing_a, sing_b}, mix, 1},                           // one bridge edge
      {{path_a, path_b}, cyc, 2},                           // two end pairings
      {{mixed3, mixed3}, cyc, 1},                           // cyclic, not linear
      {{mixed3, mixed3}, mix, 2},                           // two chains
      {{mixed3, mixed3, mixed3}, cyc, 2},                   // (p-1)!
      {{sing_a, sing_b}, cyc, 0},                           // would double an edge
      {{sing_a, path_b}, cyc, 1},                           // singleton closes a path
      {{sing_a, sing_a, sing_b, sing_b}, cyc, 1},           // the 4-cycle
      {{path_a, mixed3}, PathType::same_pair(kA), 2},       // attach at either end
      {{sing_a, mixed3}, PathType::same_pair(kA), 1},
      {{sing_a, sing_b, sing_b}, PathType::same_pair(kB), 1},
      {{sing_a, sing_b, mixed3}, cyc, 1},
      {{sing_a, sing_b, mixed3, mixed3}, cyc, 3},
      {{sing_a, sing_b, mixed3}, mix, 3},
  };
  for (const auto& row : frozen) {
    CAPTURE(alloc_of(row.blocks).str());
    CAPTURE(row.target.str());
    CHECK(oracle_w(row.blocks, row.target) == row.expect);
    CHECK(w_alpha(alloc_of(row.blocks), row.target, kA, kB) == row.expect);
  }
}

TEST_CASE("w_alpha matches the merge oracle across all small profiles") {
  // block kinds; paths appear in two sizes so the count's size-independence
  // is exercised too
  const std::vector<Block> kinds = {
      {PathType::mixed_pair(kA, kB), 3},
      {PathType::same_pair(kA), 2},
      {PathType::same_pair(kA), 3},
      {PathType::singleton(kA), 1},
      {PathType::same_pair(kB), 2},
      {PathType::singleton(kB), 1},
      {PathType::mixed_pair(3, kA), 2},
      {PathType::mixed_pair(3, kB), 2},
      {PathType::mixed_pair(4, kB), 2},
      {PathType::same_pair(3), 2},
      {PathType::cycle(), 3},
  };
  std::vector<PathType> targets = {
      PathType::cycle(),          PathType::singleton(kA),
      PathType::singleton(kB),    PathType::same_pair(kA),
      PathType::same_pair(kB),    PathType::mixed_pair(kA, kB),
      PathType::mixed_pair(3, kA), PathType::mixed_pair(3, kB),
      PathType::mixed_pair(4, kB), PathType::mixed_pair(3, 4),
      PathType::same_pair(3),     PathType::same_pair(4),
  };

  long checked = 0;
  // all multisets of up to three kinds
  const int nk = static_cast<int>(kinds.size());
  for (int i = 0; i < nk; ++i)
    for (int j = i; j <= nk; ++j)
      for (int l = j; l <= nk; ++l) {
        std::vector<Block> blocks = {kinds[i]};
        if (j < nk) blocks.push_back(kinds[j]);
        if (l < nk) blocks.push_back(kinds[l]);
        if (j == nk && l < nk) continue;  // skip duplicated shapes
        int verts = 0;
        for (const auto& b : blocks) verts += b.vertices;
        if (verts > 10) continue;
        Allocation alpha = alloc_of(blocks);
        for (const auto& t : targets) {
          CAPTURE(alpha.str());
          CAPTURE(t.str());
          Count want = oracle_w(blocks, t);
          Count got = w_alpha(alpha, t, kA, kB);
          CHECK(got == want);
          ++checked;
        }
      }
  CHECK(checked > 2000);

  // a few size-four and size-five stress profiles
  const std::vector<std::vector<int>> heavy = {
      {0, 0, 1, 4}, {1, 1, 4, 4}, {0, 0, 0, 0}, {3, 5, 1, 4},
      {0, 3, 5, 4}, {6, 7, 0, 0}, {6, 6, 4, 4}, {1, 4, 4, 5},
      {0, 0, 3, 5, 1}, {1, 3, 4, 5, 0},
  };
  for (const auto& pick : heavy) {
    std::vector<Block> blocks;
    int verts = 0;
    for (int idx : pick) {
      blocks.push_back(kinds[idx]);
      verts += kinds[idx].vertices;
    }
    if (verts > 12) continue;
    Allocation alpha = alloc_of(blocks);
    for (const auto& t : targets) {
      CAPTURE(alpha.str());
      CAPTURE(t.str());
      CHECK(w_alpha(alpha, t, kA, kB) == oracle_w(blocks, t));
    }
  }
}

TEST_CASE("w_alpha is label-symmetric") {
  // the same profile expressed on join pair (2,3) instead of (1,2)
  Allocation on12, on23;
  on12.add(PathType::mixed_pair(1, 2), 2);
  on12.add(PathType::singleton(1), 1);
  on23.add(PathType::mixed_pair(2, 3), 2);
  on23.add(PathType::singleton(2), 1);
  for (auto [t12, t23] : std::vector<std::pair<PathType, PathType>>{
           {PathType::same_pair(1), PathType::same_pair(2)},
           {PathType::mixed_pair(1, 2), PathType::mixed_pair(2, 3)},
           {PathType::cycle(), PathType::cycle()}})
    CHECK(w_alpha(on12, t12, 1, 2) == w_alpha(on23, t23, 2, 3));
}
