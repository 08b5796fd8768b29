#include "midlevels/words.hpp"

#include <algorithm>

namespace midlevels {

BitWord BitWord::from_string(std::string_view s) {
  BitWord w;
  for (char c : s) {
    require(c == '0' || c == '1', "BitWord literal must be 0/1");
    w = w.append(c == '1');
  }
  return w;
}

BitWord BitWord::reversed() const {
  std::uint64_t v = bits;
  v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
  v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
  v = ((v >> 4) & 0x0f0f0f0f0f0f0f0full) | ((v & 0x0f0f0f0f0f0f0f0full) << 4);
  v = ((v >> 8) & 0x00ff00ff00ff00ffull) | ((v & 0x00ff00ff00ff00ffull) << 8);
  v = ((v >> 16) & 0x0000ffff0000ffffull) | ((v & 0x0000ffff0000ffffull) << 16);
  v = (v >> 32) | (v << 32);
  if (len > 0) v >>= (64 - len);
  return BitWord(len == 0 ? 0 : v, len);
}

bool differ_in_one_bit(const BitWord& u, const BitWord& v) {
  require(u.len == v.len, "differ_in_one_bit: length mismatch");
  return __builtin_popcountll(u.bits ^ v.bits) == 1;
}

BitWord pi_alpha(const BitWord& w, const BitWord& a) {
  require(w.len % 2 == 0, "pi_alpha: word length must be even");
  int n = w.len / 2;
  require(a.len == (n == 0 ? 0 : n - 1), "pi_alpha: alpha length must be n-1");
  std::uint64_t out = w.bits;
  for (int i = 1; i <= a.len; ++i) {
    if (!a.get(i)) continue;
    // positions 2i and 2i+1 sit at stored bits 2i-1 and 2i
    std::uint64_t pair = (out >> (2 * i - 1)) & 3u;
    if (pair == 1 || pair == 2) out ^= (std::uint64_t{3} << (2 * i - 1));
  }
  return BitWord(out, w.len);
}

BitWord f_alpha(const BitWord& w, const BitWord& a) {
  return rev_complement(pi_alpha(w, a));
}

BitWord f_alpha_inv(const BitWord& w, const BitWord& a) {
  return pi_alpha(rev_complement(w), a);
}

LatticePath to_path(const BitWord& w) {
  LatticePath p(w.len);
  for (int i = 1; i <= w.len; ++i) p[i - 1] = w.get(i) ? Step::UP : Step::DOWN;
  return p;
}

BitWord from_path(const LatticePath& p) {
  BitWord w;
  for (Step s : p) w = w.append(s == Step::UP);
  return w;
}

LatticePath path_of(std::string_view s) {
  LatticePath p;
  p.reserve(s.size());
  for (char c : s) {
    require(c == 'U' || c == 'D', "path literal must use U/D");
    p.push_back(c == 'U' ? Step::UP : Step::DOWN);
  }
  return p;
}

std::string path_to_string(const LatticePath& p) {
  std::string s;
  s.reserve(p.size());
  for (Step st : p) s.push_back(st == Step::UP ? 'U' : 'D');
  return s;
}

LatticePath rev_complement(const LatticePath& p) {
  LatticePath q(p.rbegin(), p.rend());
  for (Step& s : q) s = (s == Step::UP) ? Step::DOWN : Step::UP;
  return q;
}

LatticePath pi_one(const LatticePath& p) {
  require(p.size() % 2 == 0, "pi_one: path length must be even");
  LatticePath q = p;
  int n = static_cast<int>(p.size()) / 2;
  for (int i = 1; i <= n - 1; ++i) std::swap(q[2 * i - 1], q[2 * i]);
  return q;
}

PathClass classify(const LatticePath& p) {
  int y = 0, ups = 0;
  int minus_ones = 0;
  bool below_minus1 = false, touched_zero = false, nonneg = true;
  for (Step s : p) {
    y += (s == Step::UP) ? 1 : -1;
    ups += (s == Step::UP);
    if (y == 0) touched_zero = true;
    if (y < 0) nonneg = false;
    if (y == -1) ++minus_ones;
    if (y < -1) below_minus1 = true;
  }
  PathClass c;
  c.upsteps = ups;
  if (p.empty()) {
    c.tag = PathTag::EQ0;  // the unit convention: the empty path is balanced
  } else if (nonneg && touched_zero) {
    c.tag = PathTag::EQ0;
  } else if (nonneg) {
    c.tag = PathTag::GT0;
  } else if (!below_minus1 && minus_ones == 1) {
    c.tag = PathTag::MINUS;
  } else {
    c.tag = PathTag::OTHER;
  }
  return c;
}

namespace {

// Recursive lexicographic generation (UP first) with per-class feasibility
// pruning; final membership is re-checked with classify so the pruning only
// needs to be sound, not exact.
void enumerate_rec(int m, int k, PathTag tag, LatticePath& pre, int y, int ups,
                   int minus_ones, std::vector<LatticePath>& out) {
  int placed = static_cast<int>(pre.size());
  if (placed == m) {
    if (classify(pre) == PathClass{tag, k}) out.push_back(pre);
    return;
  }
  int rem = m - placed;
  if (k - ups > rem || ups > k) return;
  auto try_step = [&](Step s) {
    int ny = y + (s == Step::UP ? 1 : -1);
    int nminus = minus_ones + (ny == -1 ? 1 : 0);
    switch (tag) {
      case PathTag::EQ0:
        if (ny < 0) return;
        break;
      case PathTag::GT0:
        if (ny <= 0) return;  // may never touch 0 after the start
        break;
      case PathTag::MINUS:
        if (ny < -1 || nminus > 1) return;
        break;
      case PathTag::OTHER:
        break;
    }
    pre.push_back(s);
    enumerate_rec(m, k, tag, pre, ny, ups + (s == Step::UP), nminus, out);
    pre.pop_back();
  };
  try_step(Step::UP);
  try_step(Step::DOWN);
}

}  // namespace

std::vector<LatticePath> enumerate_class(int m, int k, PathTag tag) {
  require(m >= 0 && m % 2 == 0, "enumerate_class: length must be even and nonnegative");
  require(k >= 0 && k <= m, "enumerate_class: upstep count out of range");
  std::vector<LatticePath> out;
  LatticePath pre;
  pre.reserve(m);
  enumerate_rec(m, k, tag, pre, 0, 0, 0, out);
  return out;
}

std::pair<LatticePath, LatticePath> ell_r_split(const LatticePath& p) {
  PathClass c = classify(p);
  require(c.tag != PathTag::OTHER, "ell_r_split: path class OTHER has no split");
  require(!p.empty(), "ell_r_split: empty path has no split");
  int m = static_cast<int>(p.size());
  switch (c.tag) {
    case PathTag::EQ0: {
      int x = 0, y = 0;
      for (int i = 0; i < m; ++i) {
        y += (p[i] == Step::UP) ? 1 : -1;
        if (y == 0) { x = i + 1; break; }
      }
      // p = (UP)∘ell∘(DOWN)∘r with ell = steps 2..x-1, r = steps x+1..m
      return {LatticePath(p.begin() + 1, p.begin() + (x - 1)),
              LatticePath(p.begin() + x, p.end())};
    }
    case PathTag::GT0: {
      int x = 0, y = 0;
      for (int i = 0; i < m; ++i) {
        y += (p[i] == Step::UP) ? 1 : -1;
        if (y == 1) x = i + 1;
      }
      // p = (UP)∘ell∘(UP)∘r with ell = steps 2..x, r = steps x+2..m
      require(p[x] == Step::UP, "ell_r_split: malformed GT0 path");
      return {LatticePath(p.begin() + 1, p.begin() + x),
              LatticePath(p.begin() + x + 1, p.end())};
    }
    case PathTag::MINUS: {
      int x = 0, y = 0;
      for (int i = 0; i < m; ++i) {
        y += (p[i] == Step::UP) ? 1 : -1;
        if (y == -1) { x = i + 1; break; }
      }
      require(x < m, "ell_r_split: -1 point must not be terminal");
      // p = ell∘(DOWN,UP)∘r with ell = steps 1..x-1, r = steps x+2..m
      require(p[x - 1] == Step::DOWN && p[x] == Step::UP, "ell_r_split: malformed MINUS path");
      return {LatticePath(p.begin(), p.begin() + (x - 1)),
              LatticePath(p.begin() + x + 1, p.end())};
    }
    default:
      throw std::logic_error("unreachable");
  }
}

ParamSeq ParamSeq::zeros(int n) {
  require(n >= 1, "ParamSeq: n must be positive");
  ParamSeq s;
  for (int i = 1; i <= n; ++i) s.alpha.push_back(BitWord(0, i - 1));
  return s;
}

ParamSeq ParamSeq::ones(int n) {
  require(n >= 1, "ParamSeq: n must be positive");
  ParamSeq s;
  for (int i = 1; i <= n; ++i) {
    std::uint64_t mask = (i - 1 == 0) ? 0 : ((std::uint64_t{1} << (i - 1)) - 1);
    s.alpha.push_back(BitWord(mask, i - 1));
  }
  return s;
}

ParamSeq ParamSeq::ones_then_zero(int n) {
  ParamSeq s = ParamSeq::ones(n);
  s.alpha.back() = BitWord(0, n - 1);
  return s;
}

ParamSeq ParamSeq::preset(std::string_view name, int n) {
  if (name == "zero") return zeros(n);
  if (name == "one") return ones(n);
  if (name == "one-then-zero") return ones_then_zero(n);
  throw std::invalid_argument("unknown parameter preset: " + std::string(name));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t catalan(int n) { return binomial(2 * n, n) / (n + 1); }

}  // namespace midlevels
