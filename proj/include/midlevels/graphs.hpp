#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "midlevels/flips.hpp"
#include "midlevels/trees.hpp"
#include "midlevels/two_factor.hpp"

namespace midlevels {

// ---------------------------------------------------------------------------
// Two graphs drive the final splice.  The cycle graph has one node per cycle
// of a 2-factor and one directed edge per flippable pair, joining the cycles
// that hold the pair's two paths; applying the pairs of any spanning tree of
// it merges all cycles into a single Hamilton cycle.  The tree move graph has
// one node per embedded tree and an edge per legal leaf move; it mirrors the
// cycle graph of the all-one instance node for node and edge for edge, which
// is how large structured families of spanning trees are found.
// ---------------------------------------------------------------------------

// One edge of the cycle graph: the flippable pair at index `pair` of the set
// the graph was built from has its first path on cycle `from` and its second
// on cycle `to`.  Loops (from == to) and parallel edges are kept; they simply
// cannot appear in a spanning tree.
struct FlipGraphEdge {
  int from = -1;
  int to = -1;
  int pair = -1;
};

struct FlipGraph {
  int n = 0;
  int node_count = 0;
  std::vector<FlipGraphEdge> edges;  // one per pair, in pair order
};

// Builds the cycle graph of `c` under the flippable pairs `x`.  `bottom` is
// the path set both refer to; the pair set is validated against it.
FlipGraph flip_graph(const TwoFactor& c, const LayerPathSet& bottom, const FlipSet& x);

// One edge of the tree move graph.  kind 1 detaches a thin leaf and re-hangs
// it one vertex further out, raising the leaf count by one; kind 2 re-hangs a
// thick leaf onto its clockwise-next (thin) leaf, lowering the leaf count by
// one.  `leaf` is the first witness in vertex order of the source tree; other
// witnesses may produce the same ordered edge, which is recorded only once.
struct TreeMoveEdge {
  int from = -1;
  int to = -1;
  int kind = 0;
  int leaf = -1;
};

struct TreeMoveGraph {
  int n = 0;
  std::vector<PlaneTree> nodes;  // canonical embeddings, sorted by code
  std::vector<BitWord> codes;    // parallel to nodes
  std::vector<TreeMoveEdge> edges;
  std::unordered_map<BitWord, int, BitWordHash> index;  // code -> node id

  int node_count() const { return static_cast<int>(nodes.size()); }
};

// All embedded trees with n edges and every legal leaf move between them.
// kind-1 moves need at least 3 edges, so the graphs for n = 1, 2 have no
// edges at all.
TreeMoveGraph tree_move_graph(int n);

// Connectivity of the underlying undirected graph.
bool is_weakly_connected(const FlipGraph& g);
bool is_weakly_connected(const TreeMoveGraph& g);

// One step of the reduction of an embedded tree to the path.  Forward steps
// apply the move of the given kind to `leaf` (a vertex of `before`) and yield
// `after`.  The single possible inverse step, used when every leaf of the
// input is thick, runs a kind-1 move backwards: there `leaf` lives in `after`
// and moving it yields `before`.
struct ReduceStep {
  int kind = 0;
  bool inverse = false;
  int leaf = -1;
  PlaneTree before;
  PlaneTree after;
};

// A deterministic sequence of leaf moves turning `t` into the path with the
// same number of edges.  Returns the empty sequence iff `t` is already the
// path.  At most the first step is inverse; the rest walk a designated thin
// leaf's counterclockwise-next leaf inward until only the path remains.
std::vector<ReduceStep> reduce_to_path(const PlaneTree& t);

// A spanning tree of one of the graphs above, as edge indices into that
// graph's edge list together with their endpoints.
struct SpanningTree {
  int node_count = 0;
  std::vector<int> edge_ids;
  std::vector<std::pair<int, int>> endpoints;  // parallel to edge_ids
};

bool is_spanning_tree(const SpanningTree& t);

// Breadth-first spanning tree from node 0, scanning edges in index order;
// fully deterministic.  Throws std::logic_error if the graph is disconnected.
SpanningTree bfs_spanning_tree(const FlipGraph& g);
SpanningTree bfs_spanning_tree(const TreeMoveGraph& g);

// ---------------------------------------------------------------------------
// An indexed family of pairwise distinct spanning trees inside the tree move
// graph, of size 4^(2^k - 1) with k = floor((n-3)/4).  Nodes are built by
// gluing chains of two-edge gadgets onto two adjacent leaves of a small star;
// a reflected binary code orders the gadget strings so that consecutive trees
// differ in a single kind-1 move.  The covered nodes form a chain of
// quadrilaterals; dropping one of the four edges of each quadrilateral
// independently yields the family.
// ---------------------------------------------------------------------------
struct GrayTreeFamily {
  int n = 0;
  int k = 0;    // number of glued gadgets per side
  int ell = 0;  // extra plain star edges beyond 3

  std::vector<int> nodes;  // distinct move-graph node ids covered

  struct Diamond {
    int a = -1, b = -1, c = -1, d = -1;          // node ids; d chains to the next a
    int e_ab = -1, e_bd = -1, e_ac = -1, e_cd = -1;  // kind-1 edge ids
  };
  std::vector<Diamond> diamonds;  // 2^k - 1 of them

  // 4^(2^k - 1): the number of members.
  std::uint64_t size() const;

  // Member `idx` as move-graph edge ids: three edges of each quadrilateral,
  // the dropped one selected by the idx digit in base 4.  Spans `nodes`.
  std::vector<int> member_edges(std::uint64_t idx) const;
};

// Requires n >= 7 (below that the family would not beat a single tree) and
// throws std::invalid_argument otherwise.
GrayTreeFamily gray_tree_family(const TreeMoveGraph& g);

// 4^(2^k - 1) for k = floor((n-3)/4); throws std::invalid_argument for n < 7.
std::uint64_t gray_family_size(int n);

// Extends family member `idx` to a spanning tree of the whole move graph by a
// breadth-first search seeded with all covered nodes at once (in sorted
// order), so every member is completed by the same deterministic edge set.
SpanningTree completed_family_tree(const TreeMoveGraph& g, const GrayTreeFamily& fam,
                                   std::uint64_t idx);

// ---------------------------------------------------------------------------
// The fully assembled all-one instance: its 2-factor, an independently
// pattern-verified copy of the middle flip set, and the cycle graph built
// from them.  The two internal constructions are checked against each other
// path by path before the bundle is returned.
// ---------------------------------------------------------------------------
struct FlipSystem {
  int n = 0;
  Pipeline pl;        // all-one parameters with the final twist zeroed
  FlipLookup lookup;  // same bottom layer and flip set, plus the pattern index
  FlipGraph graph;

  const LayerPathSet& bottom() const { return pl.st.layer(n, n); }
};

FlipSystem make_flip_system(int n);

// Node-for-node, edge-for-edge embedding of the move graph into the cycle
// graph of the all-one instance.  Nodes correspond through the untwisted tree
// label of each cycle.  Each move edge is rooted at a vertex pair determined
// by its kind, the two rootings are read as lattice paths, and the twisted
// images of those paths name the first vertices of the flippable pair the
// edge maps to.  Construction throws std::logic_error if any edge fails to
// land on a pair joining the matching cycles.
struct TreeMoveEmbedding {
  std::vector<int> cycle_of_node;  // move-graph node -> cycle-graph node
  std::vector<int> node_of_cycle;  // inverse
  std::vector<int> edge_map;       // move-graph edge -> pair index (= cycle-graph edge)
};

TreeMoveEmbedding embed_tree_moves(const TreeMoveGraph& g, const FlipSystem& sys);

// Carries a spanning tree of the move graph over to the cycle graph through
// the embedding.
SpanningTree translate_tree(const TreeMoveEmbedding& emb, const SpanningTree& move_tree,
                            const FlipGraph& target);

// Exact number of spanning trees via the matrix-tree determinant, evaluated
// fraction-free in exact integers.  Loops are ignored; parallel edges count.
boost::multiprecision::cpp_int spanning_tree_count(const FlipGraph& g);
boost::multiprecision::cpp_int spanning_tree_count(const TreeMoveGraph& g);

// ---------------------------------------------------------------------------
// Exports.  Node names are the canonical tree codes written as U/D words: for
// the move graph the node's own tree, for the cycle graph the untwisted tree
// label of the cycle (see cycle_tree_labels).
// ---------------------------------------------------------------------------
std::vector<BitWord> cycle_tree_labels(const TwoFactor& c, const LayerPathSet& bottom);

std::string to_dot(const TreeMoveGraph& g);
std::string to_dot(const FlipGraph& g, const std::vector<BitWord>& labels);
std::string to_json_string(const TreeMoveGraph& g);
std::string to_json_string(const FlipGraph& g, const std::vector<BitWord>& labels);

}  // namespace midlevels
