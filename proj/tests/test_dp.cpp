#include <doctest.h>

#include <random>

#include "cwcount/dp.hpp"
#include "cwcount/oracle.hpp"
#include "expr_gen.hpp"
#include "test_support.hpp"

using namespace cwc;

namespace {

Allocation alloc(std::initializer_list<std::pair<PathType, int>> parts) {
  Allocation a;
  for (const auto& [t, c] : parts) a.add(t, c);
  return a;
}

// full dp-vs-census comparison at every parse-tree node
void check_expr_against_census(const CwExpr& x, EtaBackend backend) {
  auto trace = run_dp_trace(x, backend);
  for (const auto& nt : trace) {
    LabeledGraph g = eval_cw_node(*nt.node, x.k);
    StateTable want = oracle::census_path_cycle_covers(g);
    CAPTURE(print_cw(x));
    REQUIRE(nt.table == want);
    nt.table.validate();
  }
}

}  // namespace

TEST_CASE("path type bookkeeping") {
  CHECK(type_count(2) == 6);
  CHECK(type_count(3) == 10);
  CHECK(all_types(3).size() == 10);
  CHECK(PathType::path_ends(2, 2) == PathType::same_pair(2));
  CHECK(PathType::path_ends(3, 1) == PathType::mixed_pair(1, 3));
}

TEST_CASE("leaf_state") {
  StateTable t = leaf_state(1, 2);
  CHECK(t.rows().size() == 1);
  CHECK(t.at({alloc({{PathType::singleton(1), 1}}), 1}) == 1);
  StateTable t2 = leaf_state(2, 2);
  CHECK(t2.at({alloc({{PathType::singleton(2), 1}}), 1}) == 1);
  CHECK_THROWS(leaf_state(3, 2));
}

TEST_CASE("union_state convolves censuses") {
  StateTable s = union_state(leaf_state(1, 2), leaf_state(2, 2));
  CHECK(s.rows().size() == 1);
  CHECK(s.at({alloc({{PathType::singleton(1), 1}, {PathType::singleton(2), 1}}), 2}) == 1);

  StateTable twice = union_state(leaf_state(1, 2), leaf_state(1, 2));
  CHECK(twice.at({alloc({{PathType::singleton(1), 2}}), 2}) == 1);

  // random small tables against a naive double loop
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    StateTable a(3, 3), b(3, 2);
    auto types = all_types(3);
    for (int i = 0; i < 3; ++i) {
      Allocation al;
      al.add(types[rng() % types.size()], 1 + rng() % 2);
      a.add({al, 3}, Count(1 + rng() % 5));
      Allocation bl;
      bl.add(types[rng() % types.size()], 1);
      b.add({bl, 2}, Count(1 + rng() % 5));
    }
    StateTable u = union_state(a, b);
    std::map<CoverKey, Count> naive;
    for (const auto& [k1, c1] : a.rows())
      for (const auto& [k2, c2] : b.rows()) {
        Allocation al = k1.alloc;
        for (const auto& [t, c] : k2.alloc.parts()) al.add(t, c);
        naive[{al, 5}] += c1 * c2;
      }
    CHECK(u.rows() == naive);
  }
}

TEST_CASE("rho_state rewrites types and merges collisions") {
  StateTable s(3, 1);
  s.add({alloc({{PathType::singleton(1), 1}}), 1}, 1);
  StateTable r = rho_state(s, 1, 2);
  CHECK(r.at({alloc({{PathType::singleton(2), 1}}), 1}) == 1);

  StateTable s2(3, 4);
  s2.add({alloc({{PathType::mixed_pair(1, 2), 1}}), 4}, 1);
  s2.add({alloc({{PathType::same_pair(2), 1}}), 4}, 1);
  StateTable r2 = rho_state(s2, 1, 2);
  CHECK(r2.rows().size() == 1);
  CHECK(r2.at({alloc({{PathType::same_pair(2), 1}}), 4}) == 2);

  // relabeling an absent label changes nothing
  StateTable r3 = rho_state(s, 3, 1);
  CHECK(r3.rows() == s.rows());

  CHECK_THROWS(rho_state(s, 2, 2));
}

TEST_CASE("eta on two isolated vertices") {
  StateTable s = union_state(leaf_state(1, 2), leaf_state(2, 2));
  for (auto backend : {EtaBackend::Direct, EtaBackend::Interp}) {
    StateTable t = eta_state(s, 1, 2, backend);
    CHECK(t.rows().size() == 2);
    CHECK(t.at({alloc({{PathType::singleton(1), 1}, {PathType::singleton(2), 1}}), 2}) == 1);
    CHECK(t.at({alloc({{PathType::mixed_pair(1, 2), 1}}), 2}) == 1);
  }
}

TEST_CASE("eta on labels absent from every key") {
  StateTable s = union_state(leaf_state(1, 3), leaf_state(1, 3));
  StateTable t = eta_state_direct(s, 2, 3);
  CHECK(t.rows() == s.rows());
  StateTable ti = eta_state_interp(s, 2, 3);
  CHECK(ti.rows() == s.rows());
}

TEST_CASE("redundant joins are rejected") {
  CwExpr bad = parse_cw("(e 1 2 (e 1 2 (u (v 1) (v 2))))");
  CHECK_THROWS_WITH(run_dp(bad), "redundant join detected");
}

TEST_CASE("K3 expression reproduces the full census") {
  CwExpr k3 = parse_cw("(e 1 2 (u (v 1) (r 1 2 (e 1 2 (u (v 1) (v 2))))))");
  StateTable t = run_dp(k3);
  CHECK(t.at({alloc({{PathType::cycle(), 1}}), 3}) == 1);
  check_expr_against_census(k3, EtaBackend::Direct);
  check_expr_against_census(k3, EtaBackend::Interp);
}

TEST_CASE("dp equals census on named graph expressions") {
  std::vector<Graph> graphs = {test::path_graph(2),     test::path_graph(4),
                               test::cycle_graph(4),    test::cycle_graph(5),
                               test::complete_graph(4), test::star_graph(3),
                               test::bowtie_graph()};
  for (const auto& g : graphs) {
    CwExpr x = cw_expr_for_graph(g);
    check_expr_against_census(x, EtaBackend::Direct);
  }
}

TEST_CASE("dp equals census on systematic small expressions") {
  for (int leaves = 1; leaves <= 4; ++leaves)
    for (const auto& x : test::systematic_exprs(leaves, 3, 4, 12))
      check_expr_against_census(x, EtaBackend::Direct);
}

TEST_CASE("dp equals census on random expressions, both backends agree") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    CwExpr x = test::random_expr(rng, 2 + static_cast<int>(rng() % 6), 3, 12);
    auto direct = run_dp_trace(x, EtaBackend::Direct);
    auto interp = run_dp_trace(x, EtaBackend::Interp);
    REQUIRE(direct.size() == interp.size());
    for (size_t i = 0; i < direct.size(); ++i) REQUIRE(direct[i].table == interp[i].table);
    check_expr_against_census(x, EtaBackend::Direct);
  }
}

TEST_CASE("conservation: the empty cover is always present") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    CwExpr x = test::random_expr(rng, 2 + static_cast<int>(rng() % 7), 3, 12);
    StateTable t = run_dp(x);
    LabeledGraph g = eval_cw(x);
    Allocation empty_cover;
    for (int v = 0; v < g.graph.n; ++v) empty_cover.add(PathType::singleton(g.lab[v]), 1);
    CHECK(t.at({empty_cover, g.graph.n}) == 1);
    for (const auto& [key, c] : t.rows()) {
      CHECK(c > 0);
      CHECK(key.alloc.min_vertices() <= key.vertices);
      CHECK(key.vertices == g.graph.n);
    }
  }
}

TEST_CASE("interp backend refuses oversized tables") {
  CwExpr x = cw_expr_for_graph(test::star_graph(25));
  CHECK_THROWS_WITH(run_dp(x, EtaBackend::Interp), "interp backend limit");
}
