#pragma once

#include <vector>

#include "midlevels/words.hpp"

namespace midlevels {

// An ordered rooted tree: children listed left to right.  Vertex ids are
// arbitrary non-negative integers (from_dyck assigns preorder ids with the
// root at 0); equality compares structure only, via the Dyck encoding.
struct OrderedRootedTree {
  std::vector<std::vector<int>> children;
  int root = 0;

  int vertex_count() const { return static_cast<int>(children.size()); }
  int edge_count() const { return vertex_count() - 1; }
  bool operator==(const OrderedRootedTree& o) const;
};

// Bijection between balanced non-negative lattice paths and ordered rooted
// trees: every upstep descends to a new child, every downstep climbs back up.
OrderedRootedTree from_dyck(const LatticePath& p);
LatticePath to_dyck(const OrderedRootedTree& t);

// Shift the root to its first child: the first child becomes the new root and
// inherits the old root as its rightmost child.  Applying this 2n times walks
// around the tree once and returns to the start.
OrderedRootedTree rot(const OrderedRootedTree& t);

// A tree embedded in the plane: for each vertex, all neighbors in
// counterclockwise cyclic order.  Two embedded trees are considered equal iff
// their canonical codes coincide.
struct PlaneTree {
  std::vector<std::vector<int>> nbr;

  int vertex_count() const { return static_cast<int>(nbr.size()); }
  int edge_count() const { return vertex_count() - 1; }
  int degree(int v) const { return static_cast<int>(nbr.at(v).size()); }
  bool is_leaf(int v) const { return degree(v) == 1; }
  std::vector<int> leaves() const;
};

// Forget the root: neighbors of each vertex in counterclockwise order are its
// parent followed by its children left to right.
PlaneTree plane_of(const OrderedRootedTree& t);

// Pull out r as the root with u as its leftmost child; inverse of plane_of
// for the matching edge choice.
OrderedRootedTree root_at(const PlaneTree& t, int r, int u);

// Smallest Dyck word over all 2n rootings; equality test for embedded trees.
BitWord canonical_code(const PlaneTree& t);

// Relabel to the embedding induced by the canonical code.
PlaneTree canonicalize(const PlaneTree& t);

// A leaf together with the degree of its unique neighbor: the leaf is thin if
// that degree is 2 and thick if it is at least 3.
struct LeafRef {
  int v = -1;
  int neighbor_degree = 0;
  bool thin() const { return neighbor_degree == 2; }
  bool thick() const { return neighbor_degree >= 3; }
};

LeafRef leaf_ref(const PlaneTree& t, int u);

// The unique leaf v such that every edge off the u-v path lies to the right
// (respectively left) of it; the two maps are mutually inverse.
int clockwise_next_leaf(const PlaneTree& t, int u);
int counterclockwise_next_leaf(const PlaneTree& t, int u);

// Leaf moves.  tau1 detaches a thin leaf u from its degree-2 neighbor u' and
// reattaches it to the second neighbor v of u', placing u so that it becomes
// the clockwise-next leaf from u'; it raises the leaf count by one.  tau2
// reattaches a thick leaf u to its (thin) clockwise-next leaf v, lowering the
// leaf count by one.  The *_embedded variants keep the input vertex ids fixed,
// which callers tracking specific vertices across moves rely on; the plain
// variants return the canonicalized tree.
PlaneTree tau1_embedded(const PlaneTree& t, LeafRef u);
PlaneTree tau2_embedded(const PlaneTree& t, LeafRef u);
PlaneTree tau1(const PlaneTree& t, LeafRef u);
PlaneTree tau2(const PlaneTree& t, LeafRef u);

// Bijections on balanced non-negative paths, defined through the standard
// first-return factorization p = (up, l(p), down, r(p)).
LatticePath g0(const LatticePath& p);   // rotation: l, up, r, down
LatticePath g1(const LatticePath& p);   // rotation with both parts twisted
LatticePath h_map(const LatticePath& p);
LatticePath h_inv(const LatticePath& p);

// Abscissa of the distinguished peak reached by descending alternately into
// the first/last irreducible factor; defined for non-negative paths touching
// zero with at least half upsteps.  Steps x, x+1 form an up-down peak.
int lr_abscissa(const LatticePath& p);

// Grow a path by an up-down pair just after (add1) or just before (add2) step
// lr_abscissa(p); in tree terms, attach an edge at or beside that leaf.
LatticePath add1(const LatticePath& p);
LatticePath add2(const LatticePath& p);

}  // namespace midlevels
