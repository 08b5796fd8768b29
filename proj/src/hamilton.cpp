#include "midlevels/hamilton.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace midlevels {

namespace {

int diff_position(const BitWord& a, const BitWord& b) {
  if (a.len != b.len) throw std::invalid_argument("words of different length never touch");
  std::uint64_t x = a.bits ^ b.bits;
  if (x == 0 || (x & (x - 1)) != 0)
    throw std::invalid_argument("consecutive cycle vertices must differ in exactly one bit");
  return std::countr_zero(x) + 1;
}

}  // namespace

HamiltonCycle orient_cycle(int n, const std::vector<BitWord>& cycle) {
  if (cycle.size() < 3) throw std::invalid_argument("a cycle needs at least three vertices");
  const std::size_t N = cycle.size();
  const std::size_t mi = std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
  const BitWord& before = cycle[(mi + N - 1) % N];
  const BitWord& after = cycle[(mi + 1) % N];
  HamiltonCycle h;
  h.n = n;
  h.seq.reserve(N);
  if (after < before)
    for (std::size_t i = 0; i < N; ++i) h.seq.push_back(cycle[(mi + i) % N]);
  else
    for (std::size_t i = 0; i < N; ++i) h.seq.push_back(cycle[(mi + N - i) % N]);
  return h;
}

HamiltonCycle splice(const FlipSystem& sys, const SpanningTree& tree) {
  if (tree.node_count != sys.graph.node_count)
    throw std::invalid_argument("tree does not belong to this instance's cycle graph");
  std::vector<std::vector<BitWord>> cycles =
      apply_flips(sys.pl.c, sys.bottom(), sys.lookup.x, tree.edge_ids);
  if (cycles.size() != 1)
    throw std::logic_error("splice left " + std::to_string(cycles.size()) +
                           " cycles instead of one");
  return orient_cycle(sys.n, cycles.front());
}

FamilyGenerator::FamilyGenerator(int n, std::uint64_t count)
    : n_(n), count_(count), sys_(make_flip_system(n)) {
  if (n >= 7) {
    family_used_ = true;
    moves_ = tree_move_graph(n);
    emb_ = embed_tree_moves(moves_, sys_);
    fam_ = gray_tree_family(moves_);
    if (count_ > fam_.size())
      throw std::invalid_argument("requested more cycles than the family holds");
    status_ = "indexed family of size " + std::to_string(fam_.size());
  } else {
    if (count_ > 1)
      throw std::invalid_argument("requested more cycles than the family holds");
    status_ = "family bound is trivial below seven; using the single breadth-first tree";
  }
}

HamiltonCycle FamilyGenerator::next() {
  if (done()) throw std::out_of_range("family exhausted");
  const std::uint64_t idx = produced_++;
  if (!family_used_) return splice(sys_, bfs_spanning_tree(sys_.graph));
  SpanningTree full = completed_family_tree(moves_, fam_, idx);
  return splice(sys_, translate_tree(emb_, full, sys_.graph));
}

std::vector<int> gray_stream(const HamiltonCycle& h) {
  const std::size_t N = h.seq.size();
  std::vector<int> out;
  out.reserve(N);
  for (std::size_t i = 0; i < N; ++i) out.push_back(diff_position(h.seq[i], h.seq[(i + 1) % N]));
  return out;
}

std::vector<BitWord> replay_stream(const BitWord& start, const std::vector<int>& positions) {
  std::vector<BitWord> seq;
  seq.reserve(positions.size());
  BitWord cur = start;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    seq.push_back(cur);
    cur = cur.flipped(positions[i]);
  }
  if (!positions.empty() && !(cur == start))
    throw std::invalid_argument("flip stream does not return to its start vertex");
  return seq;
}

std::vector<std::uint64_t> flip_histogram(const std::vector<int>& stream, int word_len) {
  std::vector<std::uint64_t> h(word_len + 1, 0);  // index 0 unused
  for (int p : stream) {
    if (p < 1 || p > word_len) throw std::invalid_argument("flip position out of range");
    ++h[p];
  }
  return h;
}

}  // namespace midlevels
