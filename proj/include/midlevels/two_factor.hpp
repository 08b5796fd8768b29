#pragma once

#include <vector>

#include "midlevels/trees.hpp"
#include "midlevels/words.hpp"

namespace midlevels {

struct LayerPathSet;

// A disjoint union of cycles covering both middle levels of the cube of odd
// dimension 2n+1.  Cycles are stored in a reproducible form: each starts at
// its lexicographically smallest vertex and runs in the orientation induced by
// the source paths (first vertex towards second vertex).
struct TwoFactor {
  int n = 0;
  ParamSeq params;  // the sequence the construction was run with
  std::vector<std::vector<BitWord>> cycles;
  // index of the cycle containing source path j of the bottom layer, appended
  // with 0; parallel to that layer's path list
  std::vector<int> cycle_of_path;

  std::size_t vertex_count() const {
    std::size_t total = 0;
    for (const auto& c : cycles) total += c.size();
    return total;
  }
};

// One cycle's cyclic sequence of first-vertices together with the embedded
// tree that names the cycle.
struct CycleLabel {
  int cycle = -1;
  std::vector<BitWord> fvertex_seq;  // rotated to start at the smallest member
  PlaneTree tree;
};

// The two analyzed instances: all-zero parameters, and all-one parameters
// with an all-zero final twist.
TwoFactor build_c0(int n);
TwoFactor build_c1(int n);

// First-vertices of the given cycle in traversal order.  Consecutive entries
// are linked through the lower-level image of a common source path; a broken
// link means the 2-factor is corrupt.
std::vector<BitWord> f_sequence(const TwoFactor& c, int cycle, const LayerPathSet& bottom);

// Label a cycle with its embedded tree: variant 0 reads the tree straight off
// any first-vertex, variant 1 untwists it first.  Every first-vertex of the
// cycle must yield the same label.
CycleLabel label_cycle(const TwoFactor& c, int cycle, const LayerPathSet& bottom, int variant);

// Applying the twist map elementwise to the cyclic first-vertex sequences of
// the all-zero instance must reproduce exactly those of the all-one instance.
bool h_bijection_check(int n);

}  // namespace midlevels
