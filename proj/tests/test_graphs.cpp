#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "midlevels/construction.hpp"
#include "midlevels/flips.hpp"
#include "midlevels/graphs.hpp"
#include "midlevels/trees.hpp"
#include "midlevels/two_factor.hpp"

using namespace midlevels;
using boost::multiprecision::cpp_int;

namespace {

// Embedded tree counts by edge number, computed once by hand from the first
// few coefficients of their generating function and frozen here.
const std::vector<int> kTreeCounts = {1, 1, 2, 3, 6, 14, 34, 95, 280, 854};

PlaneTree path_tree(int n) {
  LatticePath p;
  for (int i = 0; i < n; ++i) p.push_back(Step::UP);
  for (int i = 0; i < n; ++i) p.push_back(Step::DOWN);
  return canonicalize(plane_of(from_dyck(p)));
}

PlaneTree star_tree(int n) {
  LatticePath p;
  for (int i = 0; i < n; ++i) {
    p.push_back(Step::UP);
    p.push_back(Step::DOWN);
  }
  return canonicalize(plane_of(from_dyck(p)));
}

int leaf_count(const PlaneTree& t) { return (int)t.leaves().size(); }

// Exhaustive spanning tree count over all (node_count-1)-subsets of non-loop
// edges; only usable for very small graphs.
std::uint64_t brute_tree_count(int node_count, const std::vector<std::pair<int, int>>& es) {
  std::vector<std::pair<int, int>> e2;
  for (const auto& e : es)
    if (e.first != e.second) e2.push_back(e);
  const int need = node_count - 1;
  if (need == 0) return 1;
  if ((int)e2.size() < need) return 0;
  std::uint64_t total = 0;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if ((int)pick.size() == need) {
      std::vector<int> parent(node_count);
      for (int i = 0; i < node_count; ++i) parent[i] = i;
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      bool ok = true;
      for (int id : pick) {
        int a = find(e2[id].first), b = find(e2[id].second);
        if (a == b) {
          ok = false;
          break;
        }
        parent[a] = b;
      }
      total += ok;
      return;
    }
    for (int i = start; i + (need - (int)pick.size()) <= (int)e2.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return total;
}

std::vector<std::pair<int, int>> endpoint_pairs(const FlipGraph& g) {
  std::vector<std::pair<int, int>> es;
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return es;
}

std::vector<std::pair<int, int>> endpoint_pairs(const TreeMoveGraph& g) {
  std::vector<std::pair<int, int>> es;
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return es;
}

// Checks that the listed move-graph edges form a tree exactly on `nodes`.
bool spans_exactly(const TreeMoveGraph& g, const std::vector<int>& nodes,
                   const std::vector<int>& edge_ids) {
  std::map<int, int> id_of;
  for (int v : nodes) id_of[v] = (int)id_of.size();
  if (edge_ids.size() + 1 != nodes.size()) return false;
  std::vector<int> parent(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int id : edge_ids) {
    auto fa = id_of.find(g.edges[id].from), fb = id_of.find(g.edges[id].to);
    if (fa == id_of.end() || fb == id_of.end()) return false;
    int a = find(fa->second), b = find(fb->second);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// No directed cycle among the edges of one kind (Kahn peeling).
bool kind_subgraph_acyclic(const TreeMoveGraph& g, int kind) {
  std::vector<int> indeg(g.node_count(), 0);
  std::vector<std::vector<int>> out(g.node_count());
  for (const auto& e : g.edges)
    if (e.kind == kind) {
      out[e.from].push_back(e.to);
      ++indeg[e.to];
    }
  std::vector<int> stack;
  for (int v = 0; v < g.node_count(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int peeled = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++peeled;
    for (int w : out[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return peeled == g.node_count();
}

void check_reduction(const PlaneTree& input) {
  const int n = input.edge_count();
  CAPTURE(n);
  const BitWord goal = canonical_code(path_tree(n));
  std::vector<ReduceStep> steps = reduce_to_path(input);
  if (canonical_code(input) == goal) {
    CHECK(steps.empty());
    return;
  }
  REQUIRE(!steps.empty());
  BitWord cur = canonical_code(input);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ReduceStep& s = steps[i];
    CAPTURE(i);
    REQUIRE(canonical_code(s.before) == cur);
    if (s.inverse) {
      CHECK(i == 0);
      REQUIRE(s.kind == 1);
      LeafRef lr = leaf_ref(s.after, s.leaf);
      REQUIRE(lr.thin());
      CHECK(canonical_code(tau1_embedded(s.after, lr)) == canonical_code(s.before));
      CHECK(leaf_count(s.after) == leaf_count(s.before) - 1);
    } else {
      LeafRef lr = leaf_ref(s.before, s.leaf);
      if (s.kind == 1) {
        REQUIRE(lr.thin());
        CHECK(canonical_code(tau1_embedded(s.before, lr)) == canonical_code(s.after));
        CHECK(leaf_count(s.after) == leaf_count(s.before) + 1);
      } else {
        REQUIRE(s.kind == 2);
        REQUIRE(lr.thick());
        REQUIRE(leaf_ref(s.before, clockwise_next_leaf(s.before, s.leaf)).thin());
        CHECK(canonical_code(tau2_embedded(s.before, lr)) == canonical_code(s.after));
        CHECK(leaf_count(s.after) == leaf_count(s.before) - 1);
      }
    }
    cur = canonical_code(s.after);
  }
  CHECK(cur == goal);
  CHECK((int)steps.size() <= 3 * n + 8);
}

}  // namespace

TEST_CASE("cycle graph mirrors where each flippable pair lives") {
  for (int n = 2; n <= 6; ++n) {
    for (const char* preset : {"zero", "one-then-zero"}) {
      CAPTURE(n);
      CAPTURE(preset);
      Pipeline pl = run_pipeline(ParamSeq::preset(preset, n), n);
      const LayerPathSet& bottom = pl.st.layer(n, n);
      const FlipSet& x = pl.fs.at(n, n);
      FlipGraph g = flip_graph(pl.c, bottom, x);
      CHECK(g.n == n);
      CHECK(g.node_count == (int)pl.c.cycles.size());
      REQUIRE(g.edges.size() == x.pairs.size());
      CHECK(g.edges.size() == catalan(n - 1));
      for (std::size_t t = 0; t < g.edges.size(); ++t) {
        CHECK(g.edges[t].pair == (int)t);
        CHECK(g.edges[t].from == pl.c.cycle_of_path[x.pairs[t].p_idx]);
        CHECK(g.edges[t].to == pl.c.cycle_of_path[x.pairs[t].pp_idx]);
        CHECK(g.edges[t].from >= 0);
        CHECK(g.edges[t].from < g.node_count);
        CHECK(g.edges[t].to >= 0);
        CHECK(g.edges[t].to < g.node_count);
      }
    }
  }

  SUBCASE("the smallest instance has one cycle and no pairs") {
    Pipeline pl = run_pipeline(ParamSeq::zeros(1), 1);
    FlipGraph g = flip_graph(pl.c, pl.st.layer(1, 1), FlipSet{1, 1, {}});
    CHECK(g.node_count == 1);
    CHECK(g.edges.empty());
    CHECK(is_weakly_connected(g));
  }
}

TEST_CASE("move graph nodes enumerate the embedded trees") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    TreeMoveGraph g = tree_move_graph(n);
    CHECK(g.node_count() == kTreeCounts[n - 1]);
    REQUIRE(g.codes.size() == g.nodes.size());
    for (int i = 0; i < g.node_count(); ++i) {
      CHECK(g.nodes[i].edge_count() == n);
      CHECK(canonical_code(g.nodes[i]) == g.codes[i]);
      CHECK(g.index.at(g.codes[i]) == i);
      if (i + 1 < g.node_count()) CHECK(g.codes[i] < g.codes[i + 1]);
    }
  }
}

TEST_CASE("move graph edges are exactly the legal leaf moves") {
  CHECK(tree_move_graph(1).edges.empty());
  CHECK(tree_move_graph(2).edges.empty());

  for (int n = 3; n <= 8; ++n) {
    CAPTURE(n);
    TreeMoveGraph g = tree_move_graph(n);
    std::set<std::tuple<int, int, int>> seen;
    for (const TreeMoveEdge& e : g.edges) {
      CHECK(e.from != e.to);
      CHECK(seen.insert({e.from, e.to, e.kind}).second);
      const PlaneTree& t = g.nodes[e.from];
      REQUIRE(t.is_leaf(e.leaf));
      LeafRef lr = leaf_ref(t, e.leaf);
      if (e.kind == 1) {
        REQUIRE(lr.thin());
        CHECK(canonical_code(tau1_embedded(t, lr)) == g.codes[e.to]);
        CHECK(leaf_count(g.nodes[e.to]) == leaf_count(t) + 1);
      } else {
        REQUIRE(e.kind == 2);
        REQUIRE(lr.thick());
        REQUIRE(leaf_ref(t, clockwise_next_leaf(t, e.leaf)).thin());
        CHECK(canonical_code(tau2_embedded(t, lr)) == g.codes[e.to]);
        CHECK(leaf_count(g.nodes[e.to]) == leaf_count(t) - 1);
      }
    }
    // every legal move appears: recount from scratch
    std::set<std::tuple<int, int, int>> expected;
    for (int id = 0; id < g.node_count(); ++id) {
      const PlaneTree& t = g.nodes[id];
      for (int u = 0; u < t.vertex_count(); ++u) {
        if (!t.is_leaf(u)) continue;
        LeafRef lr = leaf_ref(t, u);
        if (lr.thin())
          expected.insert({id, g.index.at(canonical_code(tau1_embedded(t, lr))), 1});
        else if (leaf_ref(t, clockwise_next_leaf(t, u)).thin())
          expected.insert({id, g.index.at(canonical_code(tau2_embedded(t, lr))), 2});
      }
    }
    CHECK(seen == expected);
    CHECK(kind_subgraph_acyclic(g, 1));
    CHECK(kind_subgraph_acyclic(g, 2));
  }
}

TEST_CASE("small move graphs match their drawn shape") {
  SUBCASE("three edges: a single move from the path to the star") {
    TreeMoveGraph g = tree_move_graph(3);
    REQUIRE(g.node_count() == 2);
    int path_id = g.index.at(canonical_code(path_tree(3)));
    int star_id = g.index.at(canonical_code(star_tree(3)));
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].from == path_id);
    CHECK(g.edges[0].to == star_id);
    CHECK(g.edges[0].kind == 1);
  }

  SUBCASE("six edges: fourteen trees in leaf-count layers") {
    TreeMoveGraph g = tree_move_graph(6);
    REQUIRE(g.node_count() == 14);
    std::map<int, int> histogram;
    for (const PlaneTree& t : g.nodes) ++histogram[leaf_count(t)];
    std::map<int, int> expected = {{2, 1}, {3, 4}, {4, 6}, {5, 2}, {6, 1}};
    CHECK(histogram == expected);
    for (const TreeMoveEdge& e : g.edges) {
      int lf = leaf_count(g.nodes[e.from]);
      int lt = leaf_count(g.nodes[e.to]);
      CHECK(lt == lf + (e.kind == 1 ? 1 : -1));
    }
    CHECK(is_weakly_connected(g));
  }
}

TEST_CASE("move graphs are connected for every size tried") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(is_weakly_connected(tree_move_graph(n)));
  }
}

TEST_CASE("every tree reduces to the path by validated moves") {
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    TreeMoveGraph g = tree_move_graph(n);
    for (const PlaneTree& t : g.nodes) check_reduction(t);
    CHECK(reduce_to_path(path_tree(n)).empty());
  }

  SUBCASE("all-thick inputs start with the single backward move") {
    for (int n = 3; n <= 8; ++n) {
      CAPTURE(n);
      std::vector<ReduceStep> steps = reduce_to_path(star_tree(n));
      REQUIRE(!steps.empty());
      CHECK(steps.front().inverse);
      for (std::size_t i = 1; i < steps.size(); ++i) CHECK(!steps[i].inverse);
    }
  }
}

TEST_CASE("the indexed spanning tree family") {
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    CHECK_THROWS_AS(gray_tree_family(tree_move_graph(n)), std::invalid_argument);
    CHECK_THROWS_AS(gray_family_size(n), std::invalid_argument);
  }

  SUBCASE("size formula: a quarter of a tower of two") {
    for (int n = 7; n <= 14; ++n) {
      CAPTURE(n);
      unsigned tower = 1u << ((n + 1) / 4);  // 2^floor((n+1)/4)
      CHECK(gray_family_size(n) == (std::uint64_t{1} << tower) / 4);
    }
    CHECK(gray_family_size(7) == 4);
    CHECK(gray_family_size(11) == 64);
  }

  SUBCASE("seven and eight edges: one quadrilateral, four members") {
    for (int n : {7, 8}) {
      CAPTURE(n);
      TreeMoveGraph g = tree_move_graph(n);
      GrayTreeFamily fam = gray_tree_family(g);
      CHECK(fam.k == 1);
      CHECK(fam.ell == n - 7);
      REQUIRE(fam.diamonds.size() == 1);
      CHECK(fam.nodes.size() == 4);
      CHECK(std::set<int>(fam.nodes.begin(), fam.nodes.end()).size() == 4);
      CHECK(fam.size() == 4);
      std::set<std::vector<int>> members;
      for (std::uint64_t idx = 0; idx < fam.size(); ++idx) {
        std::vector<int> edges = fam.member_edges(idx);
        CHECK(edges.size() == 3);
        CHECK(spans_exactly(g, fam.nodes, edges));
        std::sort(edges.begin(), edges.end());
        members.insert(edges);
      }
      CHECK(members.size() == 4);
    }
  }

  SUBCASE("eleven edges: three chained quadrilaterals, sixty-four members") {
    TreeMoveGraph g = tree_move_graph(11);
    CHECK(g.node_count() == 2694);
    GrayTreeFamily fam = gray_tree_family(g);
    CHECK(fam.k == 2);
    CHECK(fam.ell == 0);
    REQUIRE(fam.diamonds.size() == 3);
    for (std::size_t i = 0; i + 1 < fam.diamonds.size(); ++i)
      CHECK(fam.diamonds[i].d == fam.diamonds[i + 1].a);
    CHECK(fam.nodes.size() == 10);
    CHECK(std::set<int>(fam.nodes.begin(), fam.nodes.end()).size() == 10);
    REQUIRE(fam.size() == 64);
    std::set<std::vector<int>> members;
    for (std::uint64_t idx = 0; idx < 64; ++idx) {
      std::vector<int> edges = fam.member_edges(idx);
      CHECK(edges.size() == 9);
      CHECK(spans_exactly(g, fam.nodes, edges));
      std::sort(edges.begin(), edges.end());
      members.insert(edges);
    }
    CHECK(members.size() == 64);
    CHECK_THROWS_AS(fam.member_edges(64), std::invalid_argument);
  }
}

TEST_CASE("all-one instances give connected cycle graphs") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    FlipSystem sys = make_flip_system(n);
    CHECK(sys.graph.node_count == kTreeCounts[n - 1]);
    CHECK(is_weakly_connected(sys.graph));
  }
}

TEST_CASE("all-zero instances leave some cycle graphs disconnected") {
  std::vector<int> disconnected;
  for (int n = 2; n <= 8; ++n) {
    Pipeline pl = run_pipeline(ParamSeq::zeros(n), n);
    FlipGraph g = flip_graph(pl.c, pl.st.layer(n, n), pl.fs.at(n, n));
    if (!is_weakly_connected(g)) disconnected.push_back(n);
  }
  CAPTURE(disconnected);
  CHECK(!disconnected.empty());
  MESSAGE("all-zero cycle graph disconnected for n in: ", [&] {
    std::string s;
    for (int n : disconnected) s += std::to_string(n) + " ";
    return s;
  }());
}

TEST_CASE("the move graph embeds onto the cycle graph") {
  for (int n = 3; n <= 8; ++n) {
    CAPTURE(n);
    TreeMoveGraph g = tree_move_graph(n);
    FlipSystem sys = make_flip_system(n);
    TreeMoveEmbedding emb = embed_tree_moves(g, sys);

    REQUIRE(emb.cycle_of_node.size() == (std::size_t)g.node_count());
    REQUIRE(emb.node_of_cycle.size() == sys.pl.c.cycles.size());
    for (int v = 0; v < g.node_count(); ++v) {
      CHECK(emb.node_of_cycle[emb.cycle_of_node[v]] == v);
    }
    REQUIRE(emb.edge_map.size() == g.edges.size());
    std::set<int> pairs(emb.edge_map.begin(), emb.edge_map.end());
    CHECK(pairs.size() == g.edges.size());
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const FlipGraphEdge& ae = sys.graph.edges[emb.edge_map[ei]];
      CHECK(ae.from == emb.cycle_of_node[g.edges[ei].from]);
      CHECK(ae.to == emb.cycle_of_node[g.edges[ei].to]);
    }
    if (n >= 4)
      CHECK(std::count_if(g.edges.begin(), g.edges.end(),
                          [](const TreeMoveEdge& e) { return e.kind == 2; }) > 0);
  }

  SUBCASE("the single three-edge move lands on the window-prefix pair") {
    TreeMoveGraph g = tree_move_graph(3);
    FlipSystem sys = make_flip_system(3);
    TreeMoveEmbedding emb = embed_tree_moves(g, sys);
    REQUIRE(emb.edge_map.size() == 1);
    const FlippablePair& pr = sys.lookup.x.pairs[emb.edge_map[0]];
    CHECK(path_to_string(to_path(sys.lookup.paths.paths[pr.p_idx].F())) == "UUDDUD");
    CHECK(path_to_string(to_path(sys.lookup.paths.paths[pr.pp_idx].F())) == "UDUDUD");
  }
}

TEST_CASE("spanning trees of the cycle graph by all three routes") {
  for (int n = 3; n <= 8; ++n) {
    CAPTURE(n);
    TreeMoveGraph g = tree_move_graph(n);
    FlipSystem sys = make_flip_system(n);
    TreeMoveEmbedding emb = embed_tree_moves(g, sys);

    SpanningTree direct = bfs_spanning_tree(sys.graph);
    CHECK(direct.node_count == sys.graph.node_count);
    CHECK((int)direct.edge_ids.size() == sys.graph.node_count - 1);
    CHECK(is_spanning_tree(direct));
    for (int id : direct.edge_ids)
      CHECK(sys.graph.edges[id].from != sys.graph.edges[id].to);
    SpanningTree again = bfs_spanning_tree(sys.graph);
    CHECK(again.edge_ids == direct.edge_ids);

    SpanningTree moves = bfs_spanning_tree(g);
    CHECK(is_spanning_tree(moves));
    SpanningTree carried = translate_tree(emb, moves, sys.graph);
    CHECK(is_spanning_tree(carried));
    CHECK(carried.edge_ids.size() == moves.edge_ids.size());
  }

  SUBCASE("family members complete to distinct spanning trees") {
    for (int n : {7, 8}) {
      CAPTURE(n);
      TreeMoveGraph g = tree_move_graph(n);
      FlipSystem sys = make_flip_system(n);
      TreeMoveEmbedding emb = embed_tree_moves(g, sys);
      GrayTreeFamily fam = gray_tree_family(g);
      std::set<std::vector<int>> carried_sets;
      for (std::uint64_t idx = 0; idx < fam.size(); ++idx) {
        SpanningTree full = completed_family_tree(g, fam, idx);
        CHECK(is_spanning_tree(full));
        CHECK((int)full.edge_ids.size() == g.node_count() - 1);
        std::set<int> in_tree(full.edge_ids.begin(), full.edge_ids.end());
        for (int id : fam.member_edges(idx)) CHECK(in_tree.count(id) == 1);
        SpanningTree rerun = completed_family_tree(g, fam, idx);
        CHECK(rerun.edge_ids == full.edge_ids);
        SpanningTree carried = translate_tree(emb, full, sys.graph);
        CHECK(is_spanning_tree(carried));
        std::vector<int> key = carried.edge_ids;
        std::sort(key.begin(), key.end());
        carried_sets.insert(key);
      }
      CHECK(carried_sets.size() == fam.size());
    }
  }
}

TEST_CASE("matrix-tree counts match exhaustive enumeration and exceed the family") {
  SUBCASE("degenerate sizes count one tree") {
    FlipSystem s1 = make_flip_system(1);
    CHECK(spanning_tree_count(s1.graph) == 1);
    FlipSystem s2 = make_flip_system(2);
    CHECK(s2.graph.node_count == 1);  // the lone pair is a loop
    CHECK(spanning_tree_count(s2.graph) == 1);
  }

  SUBCASE("small cycle graphs, checked edge subset by edge subset") {
    for (int n = 3; n <= 5; ++n) {
      CAPTURE(n);
      FlipSystem sys = make_flip_system(n);
      cpp_int exact = spanning_tree_count(sys.graph);
      CHECK(exact == brute_tree_count(sys.graph.node_count, endpoint_pairs(sys.graph)));
      CHECK(exact > 0);
    }
  }

  SUBCASE("small move graphs, same cross-check") {
    for (int n = 3; n <= 5; ++n) {
      CAPTURE(n);
      TreeMoveGraph g = tree_move_graph(n);
      cpp_int exact = spanning_tree_count(g);
      CHECK(exact == brute_tree_count(g.node_count(), endpoint_pairs(g)));
      CHECK(exact > 0);
    }
  }

  SUBCASE("the exact counts dominate the family size where it applies") {
    for (int n = 6; n <= 7; ++n) {
      CAPTURE(n);
      FlipSystem sys = make_flip_system(n);
      cpp_int cycles_exact = spanning_tree_count(sys.graph);
      cpp_int moves_exact = spanning_tree_count(tree_move_graph(n));
      CHECK(cycles_exact > 0);
      CHECK(moves_exact > 0);
      if (n >= 7) {
        CHECK(cycles_exact >= gray_family_size(n));
        CHECK(moves_exact >= gray_family_size(n));
      }
    }
  }
}

TEST_CASE("graph exports carry the tree names") {
  TreeMoveGraph g = tree_move_graph(4);
  FlipSystem sys = make_flip_system(4);
  std::vector<BitWord> labels = cycle_tree_labels(sys.pl.c, sys.bottom());
  REQUIRE((int)labels.size() == sys.graph.node_count);

  SUBCASE("dot output lists every node and edge") {
    std::string dot = to_dot(g);
    CHECK(dot.find("digraph tree_moves") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++arrows;
    CHECK(arrows == g.edges.size());
    for (const BitWord& code : g.codes)
      CHECK(dot.find(path_to_string(to_path(code))) != std::string::npos);

    std::string cdot = to_dot(sys.graph, labels);
    CHECK(cdot.find("digraph cycle_flips") != std::string::npos);
    arrows = 0;
    for (std::size_t pos = 0; (pos = cdot.find("->", pos)) != std::string::npos; ++pos) ++arrows;
    CHECK(arrows == sys.graph.edges.size());
  }

  SUBCASE("json output parses back with the right shape") {
    nlohmann::json jm = nlohmann::json::parse(to_json_string(g));
    CHECK(jm["format_version"] == 1);
    CHECK(jm["graph"] == "tree_moves");
    CHECK(jm["n"] == 4);
    REQUIRE(jm["nodes"].size() == (std::size_t)g.node_count());
    REQUIRE(jm["edges"].size() == g.edges.size());
    for (std::size_t i = 0; i < jm["nodes"].size(); ++i) {
      std::string label = jm["nodes"][i]["label"];
      CHECK(label.size() == 8);  // 2n letters
      CHECK(label == path_to_string(to_path(g.codes[i])));
    }
    for (std::size_t i = 0; i < jm["edges"].size(); ++i) {
      CHECK(jm["edges"][i]["from"] == g.edges[i].from);
      CHECK(jm["edges"][i]["to"] == g.edges[i].to);
      CHECK(jm["edges"][i]["kind"] == g.edges[i].kind);
    }

    nlohmann::json jc = nlohmann::json::parse(to_json_string(sys.graph, labels));
    CHECK(jc["graph"] == "cycle_flips");
    REQUIRE(jc["nodes"].size() == (std::size_t)sys.graph.node_count);
    REQUIRE(jc["edges"].size() == sys.graph.edges.size());
    for (std::size_t i = 0; i < jc["edges"].size(); ++i)
      CHECK(jc["edges"][i]["pair"] == (int)i);
  }

  SUBCASE("labelled exports refuse a label list of the wrong length") {
    std::vector<BitWord> bad = labels;
    bad.pop_back();
    CHECK_THROWS_AS(to_dot(sys.graph, bad), std::invalid_argument);
    CHECK_THROWS_AS(to_json_string(sys.graph, bad), std::invalid_argument);
  }
}

TEST_CASE("mismatched inputs are rejected") {
  Pipeline p3 = run_pipeline(ParamSeq::zeros(3), 3);
  Pipeline p4 = run_pipeline(ParamSeq::zeros(4), 4);
  CHECK_THROWS_AS(flip_graph(p4.c, p4.st.layer(4, 4), p3.fs.at(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(tree_move_graph(0), std::invalid_argument);

  TreeMoveGraph g3 = tree_move_graph(3);
  FlipSystem sys3 = make_flip_system(3);
  TreeMoveEmbedding emb3 = embed_tree_moves(g3, sys3);
  FlipSystem sys4 = make_flip_system(4);
  SpanningTree moves3 = bfs_spanning_tree(g3);
  CHECK_THROWS_AS(translate_tree(emb3, moves3, sys4.graph), std::invalid_argument);
}
