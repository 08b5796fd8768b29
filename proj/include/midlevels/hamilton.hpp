#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "midlevels/graphs.hpp"

namespace midlevels {

// A Hamilton cycle of the two middle levels of the cube of odd dimension
// 2n+1, stored in canonical orientation: the first word is the
// lexicographically smallest vertex of the cycle and the second is the
// smaller of its two neighbors, so equal cycles serialize identically.
struct HamiltonCycle {
  int n = 0;
  std::vector<BitWord> seq;
};

// Canonical rotation and direction of a raw cyclic vertex sequence.
HamiltonCycle orient_cycle(int n, const std::vector<BitWord>& cycle);

// Applies the flippable pairs selected by a spanning tree of the cycle graph
// and weaves the modified path set back together.  A spanning tree merges all
// cycles into one; anything else is reported by throwing std::logic_error.
HamiltonCycle splice(const FlipSystem& sys, const SpanningTree& tree);

// Streams pairwise distinct Hamilton cycles, one per spanning tree of an
// indexed family.  For n >= 7 the trees come from the quadrilateral-chain
// family completed over the move graph; `count` may go up to its size.  Below
// that the family degenerates, so a single breadth-first tree cycle is
// produced and `status` explains the fallback; `count` must then be at most
// one.  Construction is eager (the instance pipeline runs up front) but each
// cycle is spliced only when requested.
class FamilyGenerator {
 public:
  FamilyGenerator(int n, std::uint64_t count);

  int n() const { return n_; }
  std::uint64_t count() const { return count_; }
  std::uint64_t produced() const { return produced_; }
  bool family_used() const { return family_used_; }
  const std::string& status() const { return status_; }
  const FlipSystem& system() const { return sys_; }
  bool done() const { return produced_ >= count_; }

  // The next member; throws std::out_of_range once done() is true.
  HamiltonCycle next();

 private:
  int n_ = 0;
  std::uint64_t count_ = 0;
  std::uint64_t produced_ = 0;
  bool family_used_ = false;
  std::string status_;
  FlipSystem sys_;
  TreeMoveGraph moves_;
  TreeMoveEmbedding emb_;
  GrayTreeFamily fam_;
};

// The cycle as a restricted Gray code: one 1-based coordinate per step, the
// bit flipped between consecutive vertices, wrap-around step included, so the
// stream length equals the cycle length.
std::vector<int> gray_stream(const HamiltonCycle& h);

// Replays a flip stream from `start`, returning the full vertex sequence
// (length = stream length; applying the final flip leads back to `start`,
// which the caller can confirm).
std::vector<BitWord> replay_stream(const BitWord& start, const std::vector<int>& positions);

// Occurrences of each coordinate 1..word_len in the stream.
std::vector<std::uint64_t> flip_histogram(const std::vector<int>& stream, int word_len);

}  // namespace midlevels
