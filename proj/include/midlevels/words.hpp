#pragma once

// Bit words and lattice paths: the shared vocabulary of the whole library.
//
// Conventions used everywhere: position 1 is the leftmost bit/step, x∘y appends
// y on the right, and lexicographic order reads positions left to right with
// 0 < 1 for bits and UP < DOWN for steps.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace midlevels {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Fixed-length 0/1 word packed into a single machine word. Position i
// (1-based, leftmost) lives at bit i-1, so low bits come first in lex order.
struct BitWord {
  std::uint64_t bits = 0;
  std::uint8_t len = 0;

  static constexpr int max_len = 64;

  BitWord() = default;
  BitWord(std::uint64_t b, int n) : bits(b), len(static_cast<std::uint8_t>(n)) {
    require(n >= 0 && n <= max_len, "BitWord length out of range");
    if (n < 64) require((b >> n) == 0, "BitWord has bits beyond its length");
  }

  static BitWord of(std::initializer_list<int> digits) {
    BitWord w;
    for (int d : digits) w = w.append(d != 0);
    return w;
  }
  static BitWord from_string(std::string_view s);

  int size() const { return len; }
  bool empty() const { return len == 0; }

  bool get(int i) const {  // 1-based
    require(i >= 1 && i <= len, "BitWord index out of range");
    return (bits >> (i - 1)) & 1u;
  }
  BitWord with_bit(int i, bool v) const {
    require(i >= 1 && i <= len, "BitWord index out of range");
    BitWord w = *this;
    if (v)
      w.bits |= (std::uint64_t{1} << (i - 1));
    else
      w.bits &= ~(std::uint64_t{1} << (i - 1));
    return w;
  }
  BitWord flipped(int i) const {
    require(i >= 1 && i <= len, "BitWord index out of range");
    BitWord w = *this;
    w.bits ^= (std::uint64_t{1} << (i - 1));
    return w;
  }

  int weight() const { return __builtin_popcountll(bits); }

  BitWord append(bool b) const {
    require(len < max_len, "BitWord overflow");
    BitWord w = *this;
    if (b) w.bits |= (std::uint64_t{1} << len);
    w.len = static_cast<std::uint8_t>(len + 1);
    return w;
  }
  // x∘y: this word followed by y.
  BitWord concat(const BitWord& y) const {
    require(len + y.len <= max_len, "BitWord overflow");
    return BitWord(bits | (y.bits << len), len + y.len);
  }

  // The first m positions.
  BitWord prefix(int m) const {
    require(m >= 0 && m <= len, "BitWord prefix length out of range");
    std::uint64_t mask = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    return BitWord(bits & mask, m);
  }

  BitWord reversed() const;
  BitWord complemented() const {
    std::uint64_t mask = (len == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
    return BitWord((~bits) & mask, len);
  }

  bool operator==(const BitWord& o) const { return len == o.len && bits == o.bits; }
  // Lexicographic: at the first differing position, 0 < 1.
  bool operator<(const BitWord& o) const {
    require(len == o.len, "BitWord length mismatch in comparison");
    std::uint64_t d = bits ^ o.bits;
    if (d == 0) return false;
    std::uint64_t low = d & (~d + 1);
    return (bits & low) == 0;
  }

  std::string to_string() const {
    std::string s(len, '0');
    for (int i = 0; i < len; ++i)
      if ((bits >> i) & 1u) s[i] = '1';
    return s;
  }
};

struct BitWordHash {
  std::size_t operator()(const BitWord& w) const {
    std::uint64_t x = w.bits * 0x9e3779b97f4a7c15ull + w.len;
    x ^= x >> 32;
    x *= 0xd6e8feb86659fd93ull;
    x ^= x >> 32;
    return static_cast<std::size_t>(x);
  }
};

// rev followed by complement; an involution. On balanced-ending lattice paths
// it acts as the mirror about the vertical through the midpoint.
inline BitWord rev_complement(const BitWord& w) { return w.reversed().complemented(); }

bool differ_in_one_bit(const BitWord& u, const BitWord& v);

// Swaps bits at positions (2i, 2i+1) for i = 1..n-1 whenever a(i) = 1; the
// first and last bit never move. Requires len(w) = 2n and len(a) = n-1.
BitWord pi_alpha(const BitWord& w, const BitWord& a);

// The layer map w ↦ rev_complement(pi_alpha(w, a)); sends weight k to 2n-k and
// preserves adjacency.
BitWord f_alpha(const BitWord& w, const BitWord& a);
// Inverse of f_alpha for the same a: w ↦ pi_alpha(rev_complement(w), a).
BitWord f_alpha_inv(const BitWord& w, const BitWord& a);

// ---------------------------------------------------------------------------
// Lattice paths

enum class Step : std::uint8_t { UP, DOWN };

using LatticePath = std::vector<Step>;

// φ: 1 ↦ UP, 0 ↦ DOWN, positionwise.
LatticePath to_path(const BitWord& w);
BitWord from_path(const LatticePath& p);

// Accepts a compact literal like "UUDD".
LatticePath path_of(std::string_view s);
std::string path_to_string(const LatticePath& p);

LatticePath rev_complement(const LatticePath& p);

// Swaps steps (2i, 2i+1) for i = 1..n-1 on a path of even length 2n; the empty
// path maps to itself. Odd lengths are rejected.
LatticePath pi_one(const LatticePath& p);

enum class PathTag : std::uint8_t { EQ0, GT0, MINUS, OTHER };

struct PathClass {
  PathTag tag = PathTag::OTHER;
  int upsteps = 0;
  bool operator==(const PathClass&) const = default;
};

// Height-profile classification:
//   EQ0:   never below 0 and returns to 0 at some x ≥ 1 (the empty path counts);
//   GT0:   strictly above 0 at every 1 ≤ x ≤ m;
//   MINUS: exactly one point at height -1 and none lower;
//   OTHER: everything else.
PathClass classify(const LatticePath& p);

// All length-m paths with k upsteps in the given class, in lexicographic order
// with UP < DOWN.
std::vector<LatticePath> enumerate_class(int m, int k, PathTag tag);

// Splits p into the class-specific (ell, r) parts:
//   EQ0:   p = (UP)∘ell∘(DOWN)∘r, cut at the first return to height 0;
//   GT0:   p = (UP)∘ell∘(UP)∘r, cut after the last touch of height 1;
//   MINUS: p = ell∘(DOWN,UP)∘r, cut around the unique -1 point.
std::pair<LatticePath, LatticePath> ell_r_split(const LatticePath& p);

// ---------------------------------------------------------------------------
// Parameter sequences

// The α-sequence steering the inductive construction: at(i) = α_{2i}, a bit
// word of length i-1 (so α₂ is always empty), for i = 1..n.
struct ParamSeq {
  std::vector<BitWord> alpha;

  int n() const { return static_cast<int>(alpha.size()); }
  const BitWord& at(int i) const {  // 1-based
    require(i >= 1 && i <= n(), "ParamSeq index out of range");
    return alpha[i - 1];
  }
  void validate() const {
    for (int i = 1; i <= n(); ++i)
      require(alpha[i - 1].size() == i - 1, "ParamSeq: alpha_{2i} must have length i-1");
  }

  static ParamSeq zeros(int n);
  static ParamSeq ones(int n);
  // All-one up to i = n-1, all-zero at i = n.
  static ParamSeq ones_then_zero(int n);
  static ParamSeq preset(std::string_view name, int n);
};

std::uint64_t binomial(int n, int k);
std::uint64_t catalan(int n);

}  // namespace midlevels
