#pragma once

// Flippable pairs of dangling paths.
//
// A flippable pair is a pair of vertex-disjoint dangling paths (P, P') in one
// layer together with a replacement pair (R, R') that covers exactly the same
// vertices but swaps the last endpoints: F(R) = F(P), F(R') = F(P'),
// L(R) = L(P'), L(R') = L(P).  Replacing P, P' by R, R' inside a two-factor
// ("flipping" the pair) rewires the cycles through those vertices while
// keeping every gluing edge intact, so any subset of pairs can be flipped
// independently.  The pairs are built inductively alongside the dangling-path
// layers themselves and are the raw material for joining cycles of the
// two-factor into a single Hamilton cycle.

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "midlevels/construction.hpp"
#include "midlevels/two_factor.hpp"
#include "midlevels/words.hpp"

namespace midlevels {

// One flippable pair: indices of P and P' in the owning layer's path list,
// plus the realized replacement paths R (same first vertex as P) and
// R' (same first vertex as P').
struct FlippablePair {
  int p_idx = -1;
  int pp_idx = -1;
  DanglingPath r, rp;

  // Checks the defining identities against the owning layer: distinct valid
  // indices, R and R' are vertex-disjoint dangling paths on the same vertex
  // set as P and P', and the four endpoint identities hold.
  void validate(const LayerPathSet& ps) const;
};

// All flippable pairs attached to one layer of dangling paths (words of
// length 2n, lower weight k).  No path index may appear in two pairs.
struct FlipSet {
  int n = 0;
  int k = 0;
  std::vector<FlippablePair> pairs;

  void validate(const LayerPathSet& ps) const;
};

// Flip sets for every retained layer, keyed by (half word length, lower
// weight) exactly like ConstructionState::layers.  Defined from half
// length 2 upward.
struct FlipState {
  std::map<std::pair<int, int>, FlipSet> xsets;

  bool has(int m, int k) const { return xsets.count({m, k}) != 0; }
  const FlipSet& at(int m, int k) const;
};

// The hand-built seed: the single flippable pair in the middle layer of the
// 4-bit words.  `mid4` must be that layer; the pair's indices are resolved
// against it and the replacement paths are fixed constants.
FlipSet base_x4(const LayerPathSet& mid4);

// Extension step for an upper layer (k >= m + 2): pairs of the four source
// flip sets carried over by the same suffix rule as the paths themselves,
// with indices shifted to the target layer's group offsets.
FlipSet step_upper_x(const FlipState& fs, const ConstructionState& st, int m, int k);

// Pairs of the new middle layer induced by flippable pairs of the previous
// middle layer: the pair (P-hat, P-hat') maps to the pair of extended paths
// whose twisted segments are the images of P-hat and P-hat'; the replacement
// paths swap in the images of the replacement pair.  `xmid` is the flip set
// of layer (m, m).
FlipSet step_star_x(const ConstructionState& st, int m, const FlipSet& xmid);

// Full middle-layer step: carried-over pairs from layers (m, m+1) and (m, m)
// plus the induced pairs from step_star_x, indices shifted per group.
FlipSet step_middle_x(const FlipState& fs, const ConstructionState& st, int m);

// Dangling-path layers and flip sets built in lockstep up to half length
// n_target, plus the middle-level two-factor of the target size.
struct Pipeline {
  ConstructionState st;
  FlipState fs;
  TwoFactor c;
};

// Runs the whole inductive construction with the given parameter sequence.
// With keep_all = false only layers and flip sets of the target size are
// retained (plus everything needed along the way); the two-factor is
// assembled from the final middle layer.  n_target = 1 yields an empty flip
// state (pairs exist from half length 2 up).
Pipeline run_pipeline(const ParamSeq& params, int n_target, bool keep_all = false);

// The first vertices (F(P), F(P')) of each pair, in pair order.
std::vector<std::pair<BitWord, BitWord>> first_pairs(const FlipSet& x, const LayerPathSet& ps);

// Pattern pairs of lattice paths whose realizing flippable pairs drive the
// cycle-joining moves.  Both lists enumerate pairs (p, p') of Dyck paths with
// n ups that differ in one four-step window: the window reads up-up-down-down
// in p and up-down-up-down in p'.
//
// Prefix shape: the window opens the path.  p = (UUDD) q, p' = (UDUD) q.
std::vector<std::pair<LatticePath, LatticePath>> prefix_patterns(int n);
// Nested shape: the window hangs one level down inside an up/down bracket.
// p = (U) q1 (UUDD)(D) q2, p' = (U) q1 (UDUD)(D) q2 over all splits
// |q1|/2 + |q2|/2 = n - 3 with q1, q2 Dyck.
std::vector<std::pair<LatticePath, LatticePath>> nested_patterns(int n);

// Index of the middle-layer flippable pairs (one-parameter preset) by the
// concatenated first vertices F(P) F(P') of the pair.
struct FlipLookup {
  int n = 0;
  LayerPathSet paths;  // the middle layer the pairs live in
  FlipSet x;
  std::unordered_map<BitWord, int, BitWordHash> index;

  bool has(const BitWord& f1, const BitWord& f2) const;
  const FlippablePair& pair_for(const BitWord& f1, const BitWord& f2) const;
  // Resolves a pattern pair: f1 and f2 are the words of the two lattice
  // paths.  Throws if no pair realizes the pattern.
  const FlippablePair& pair_for_pattern(const LatticePath& p, const LatticePath& pp) const;
};

// Builds the one-parameter middle layer of half length n with its flip set
// and verifies that every prefix-shape and nested-shape pattern resolves to
// an actual flippable pair (throws otherwise).
FlipLookup pattern_pair_lookup(int n);

// Replaces the paths of the chosen pairs (indices into x.pairs) by their
// replacement paths and re-threads the two-factor across the unchanged
// gluing edges.  Returns the resulting disjoint cycles, each rotated to its
// lexicographically least vertex; together they cover the same vertex set as
// the input two-factor.  `bottom` must be the middle layer the two-factor
// was assembled from.
std::vector<std::vector<BitWord>> apply_flips(const TwoFactor& c, const LayerPathSet& bottom,
                                              const FlipSet& x, const std::vector<int>& chosen);

}  // namespace midlevels
