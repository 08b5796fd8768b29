#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "midlevels/words.hpp"

namespace midlevels {

// An oriented path in the layer graph of some even-length cube, alternating
// between weight-k and weight-(k+1) words, starting and ending on weight k.
// The path "dangles": its end vertices keep their upward neighbors free.
struct DanglingPath {
  std::vector<BitWord> v;

  const BitWord& F() const { return v.front(); }  // first vertex
  const BitWord& S() const { return v[1]; }       // second vertex
  const BitWord& L() const { return v.back(); }   // last vertex
  int length() const { return (int)v.size(); }

  // Checks odd length, alternating weights k / k+1 with both ends on k, and
  // single-bit steps.
  void validate(int k) const;
};

// All paths of one layer pair (weights k, k+1) in the cube of size 2n.  The
// paths are vertex-disjoint and jointly cover both layers.  Paths produced by
// the extension step fall into ordered groups by construction rule;
// group_offsets marks where each group starts (last entry = paths.size()).
struct LayerPathSet {
  int n = 0;
  int k = 0;
  std::vector<DanglingPath> paths;
  std::vector<std::size_t> group_offsets;

  // Checks every path, mutual disjointness, and exact coverage of both
  // layers.
  void validate() const;
};

// The three endpoint sets of a layer path set, aligned by path index.
struct FSLSets {
  std::vector<BitWord> F, S, L;
};

FSLSets fsl_sets(const LayerPathSet& ps);

// The path with (a, b) appended to every vertex.
DanglingPath append_suffix(const DanglingPath& p, bool a, bool b);

// Full inductive state: layer path sets for cube sizes 2m, m = 1..n_target,
// keyed by (m, k).  By default only the layers still needed for larger cubes
// are retained; keep_all retains everything for inspection.
struct ConstructionState {
  ParamSeq params;
  int n_target = 0;
  bool keep_all = false;
  std::map<std::pair<int, int>, LayerPathSet> layers;

  bool has_layer(int m, int k) const { return layers.count({m, k}) != 0; }
  const LayerPathSet& layer(int m, int k) const;
};

// The single-path seed in the 2-cube: ((1,0),(1,1),(0,1)).
LayerPathSet build_base();

// Extension to the next cube size for an upper layer pair (k >= m+1 in the
// 2m-cube): the four-way suffix union.  Source layers outside the valid band
// contribute nothing.
LayerPathSet step_upper(const ConstructionState& st, int m, int k);

// Weave the middle layer path set of the 2m-cube into a 2-factor of the two
// middle levels of the (2m+1)-cube, twisting the upper copy by the parameter
// for this size.  Throws std::logic_error if the twist fails to preserve the
// endpoint sets.
struct TwoFactor;
TwoFactor assemble_middle_two_factor(const ConstructionState& st, int m);

// Cut each cycle of the middle 2-factor open at its seam to obtain the
// distinguished dangling path set of the (2m+2)-cube middle layer pair.
// Returns the paths in cycle order along with which source path index of
// `bottom` each came from.
LayerPathSet split_two_factor(const TwoFactor& c, const LayerPathSet& bottom);

// One full middle-layer induction step: from the 2m-cube middle layer to the
// (2m+2)-cube middle layer (three-way union: two shifted copies plus the
// split 2-factor).
LayerPathSet step_middle(const ConstructionState& st, int m);

// Run the whole induction up to the 2*n_target-cube.
ConstructionState build_construction(const ParamSeq& params, int n_target, bool keep_all = false);

// Verifies disjointness + coverage for every retained layer of size 2m.
// On failure, `why` receives a description.
bool layer_conditions_hold(const ConstructionState& st, int m, std::string* why);

}  // namespace midlevels
