#include "midlevels/flips.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace midlevels {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string set_name(int m, int k) {
  return "flip set (" + std::to_string(m) + "," + std::to_string(k) + ")";
}

using WordSet = std::unordered_set<BitWord, BitWordHash>;
using WordIndex = std::unordered_map<BitWord, int, BitWordHash>;

// Flip set feeding an extension step: out-of-band indices contribute nothing;
// an in-band set that was trimmed away is a driver bug.
const FlipSet* xset_or_empty(const FlipState& fs, int m, int k) {
  if (k < m || k > 2 * m - 1) return nullptr;
  auto it = fs.xsets.find({m, k});
  if (it == fs.xsets.end())
    throw std::logic_error(set_name(m, k) + " needed by the extension step but not retained");
  return &it->second;
}

DanglingPath path_of_words(std::initializer_list<const char*> words) {
  DanglingPath p;
  for (const char* w : words) p.v.push_back(BitWord::from_string(w));
  return p;
}

// Index of the layer path with the given first vertex (first vertices are
// pairwise distinct across a layer of disjoint paths).
int index_by_first(const LayerPathSet& ps, const BitWord& f) {
  for (std::size_t i = 0; i < ps.paths.size(); ++i)
    if (ps.paths[i].F() == f) return (int)i;
  throw std::logic_error("no path with first vertex " + f.to_string() + " in " +
                         set_name(ps.n, ps.k));
}

}  // namespace

void FlippablePair::validate(const LayerPathSet& ps) const {
  int sz = (int)ps.paths.size();
  if (p_idx < 0 || p_idx >= sz || pp_idx < 0 || pp_idx >= sz || p_idx == pp_idx)
    fail("flippable pair has invalid path indices");
  const DanglingPath& p = ps.paths[p_idx];
  const DanglingPath& pp = ps.paths[pp_idx];
  r.validate(ps.k);
  rp.validate(ps.k);
  if (r.v.front().size() != 2 * ps.n || rp.v.front().size() != 2 * ps.n)
    fail("replacement paths have the wrong word length");
  if (!(r.F() == p.F()) || !(rp.F() == pp.F()))
    fail("replacement paths do not keep the first vertices");
  if (!(r.L() == pp.L()) || !(rp.L() == p.L()))
    fail("replacement paths do not swap the last vertices");
  WordSet orig, repl;
  for (const BitWord& x : p.v) orig.insert(x);
  for (const BitWord& x : pp.v) orig.insert(x);
  for (const BitWord& x : r.v) repl.insert(x);
  for (const BitWord& x : rp.v) repl.insert(x);
  if (orig.size() != p.v.size() + pp.v.size()) fail("paired paths share a vertex");
  if (repl.size() != r.v.size() + rp.v.size()) fail("replacement paths share a vertex");
  if (orig != repl) fail("replacement paths do not cover the same vertex set");
}

void FlipSet::validate(const LayerPathSet& ps) const {
  if (n != ps.n || k != ps.k) fail(set_name(n, k) + " validated against the wrong layer");
  std::unordered_set<int> used;
  for (const FlippablePair& pr : pairs) {
    pr.validate(ps);
    if (!used.insert(pr.p_idx).second || !used.insert(pr.pp_idx).second)
      fail(set_name(n, k) + " uses a path in two pairs");
  }
}

const FlipSet& FlipState::at(int m, int k) const {
  auto it = xsets.find({m, k});
  if (it == xsets.end()) throw std::out_of_range(set_name(m, k) + " is not retained");
  return it->second;
}

FlipSet base_x4(const LayerPathSet& mid4) {
  if (mid4.n != 2 || mid4.k != 2) fail("seed flip set must attach to the 4-bit middle layer");
  const DanglingPath p =
      path_of_words({"1100", "1101", "0101", "0111", "0011", "1011", "1001"});
  const DanglingPath pp = path_of_words({"1010", "1110", "0110"});
  FlippablePair pr;
  pr.p_idx = index_by_first(mid4, p.F());
  pr.pp_idx = index_by_first(mid4, pp.F());
  if (!(mid4.paths[pr.p_idx].v == p.v) || !(mid4.paths[pr.pp_idx].v == pp.v))
    throw std::logic_error("4-bit middle layer does not hold the expected seed paths");
  pr.r = path_of_words({"1100", "1110", "0110"});
  pr.rp = path_of_words({"1010", "1011", "0011", "0111", "0101", "1101", "1001"});
  FlipSet out;
  out.n = 2;
  out.k = 2;
  out.pairs.push_back(std::move(pr));
  return out;
}

FlipSet step_upper_x(const FlipState& fs, const ConstructionState& st, int m, int k) {
  const LayerPathSet& target = st.layer(m + 1, k);
  FlipSet out;
  out.n = m + 1;
  out.k = k;
  struct Rule {
    int src_k;
    bool a, b;
  } rules[4] = {{k, 0, 0}, {k - 1, 1, 0}, {k - 1, 0, 1}, {k - 2, 1, 1}};
  for (int g = 0; g < 4; ++g) {
    int base = (int)target.group_offsets[g];
    if (const FlipSet* src = xset_or_empty(fs, m, rules[g].src_k))
      for (const FlippablePair& pr : src->pairs) {
        FlippablePair q;
        q.p_idx = pr.p_idx + base;
        q.pp_idx = pr.pp_idx + base;
        q.r = append_suffix(pr.r, rules[g].a, rules[g].b);
        q.rp = append_suffix(pr.rp, rules[g].a, rules[g].b);
        out.pairs.push_back(std::move(q));
      }
  }
  return out;
}

FlipSet step_star_x(const ConstructionState& st, int m, const FlipSet& xmid) {
  const LayerPathSet& bottom = st.layer(m, m);
  const BitWord a = st.params.at(m);

  // Which extended path consumes the twisted copy of bottom path j: the one
  // whose last vertex is the image of L(P_j).
  WordIndex twisted_last;
  for (std::size_t j = 0; j < bottom.paths.size(); ++j)
    twisted_last[f_alpha(bottom.paths[j].L(), a)] = (int)j;
  std::vector<int> consumer(bottom.paths.size(), -1);
  for (std::size_t i = 0; i < bottom.paths.size(); ++i)
    consumer[twisted_last.at(bottom.paths[i].L())] = (int)i;

  // Extended path of source i with the twisted tail replaced by the image of
  // `tail` (the untouched prefix is the one the splitting step produces).
  auto realize = [&](int i, const DanglingPath& tail) {
    const DanglingPath& p = bottom.paths[i];
    if (!(f_alpha(tail.L(), a) == p.L()))
      throw std::logic_error("replacement segment does not meet the host path at the seam");
    DanglingPath q;
    q.v.reserve(p.v.size() + tail.v.size() + 1);
    q.v.push_back(p.S().append(0).append(0));
    for (std::size_t s = 1; s < p.v.size(); ++s) q.v.push_back(p.v[s].append(0).append(1));
    for (auto it = tail.v.rbegin(); it != tail.v.rend(); ++it)
      q.v.push_back(f_alpha(*it, a).append(1).append(1));
    q.v.push_back(f_alpha(tail.F(), a).append(0).append(1));
    return q;
  };

  FlipSet out;
  out.n = m + 1;
  out.k = m + 1;
  for (const FlippablePair& pr : xmid.pairs) {
    FlippablePair q;
    q.p_idx = consumer[pr.p_idx];
    q.pp_idx = consumer[pr.pp_idx];
    // The replacement paths swap the twisted tails: the host of P-hat's image
    // receives the image of R-hat' (which ends where P-hat ends), and vice
    // versa, so the last vertices of the extended pair swap as required.
    q.r = realize(q.p_idx, pr.rp);
    q.rp = realize(q.pp_idx, pr.r);
    out.pairs.push_back(std::move(q));
  }
  return out;
}

FlipSet step_middle_x(const FlipState& fs, const ConstructionState& st, int m) {
  const LayerPathSet& target = st.layer(m + 1, m + 1);
  FlipSet out;
  out.n = m + 1;
  out.k = m + 1;
  if (const FlipSet* src = xset_or_empty(fs, m, m + 1)) {
    int base = (int)target.group_offsets[0];
    for (const FlippablePair& pr : src->pairs) {
      FlippablePair q;
      q.p_idx = pr.p_idx + base;
      q.pp_idx = pr.pp_idx + base;
      q.r = append_suffix(pr.r, 0, 0);
      q.rp = append_suffix(pr.rp, 0, 0);
      out.pairs.push_back(std::move(q));
    }
  }
  {
    const FlipSet& src = fs.at(m, m);
    int base = (int)target.group_offsets[1];
    for (const FlippablePair& pr : src.pairs) {
      FlippablePair q;
      q.p_idx = pr.p_idx + base;
      q.pp_idx = pr.pp_idx + base;
      q.r = append_suffix(pr.r, 1, 0);
      q.rp = append_suffix(pr.rp, 1, 0);
      out.pairs.push_back(std::move(q));
    }
  }
  {
    FlipSet star = step_star_x(st, m, fs.at(m, m));
    int base = (int)target.group_offsets[2];
    for (FlippablePair& pr : star.pairs) {
      pr.p_idx += base;
      pr.pp_idx += base;
      out.pairs.push_back(std::move(pr));
    }
  }
  return out;
}

Pipeline run_pipeline(const ParamSeq& params, int n_target, bool keep_all) {
  if (n_target < 1) throw std::out_of_range("pipeline target must be at least 1");
  params.validate();
  if (params.n() < n_target)
    throw std::out_of_range("parameter sequence too short for the pipeline target");

  Pipeline pl;
  pl.st.params = params;
  pl.st.n_target = n_target;
  pl.st.keep_all = keep_all;
  pl.st.layers[{1, 1}] = build_base();
  for (int m = 1; m < n_target; ++m) {
    int kmax = keep_all ? 2 * m + 1 : std::min(2 * m + 1, n_target);
    for (int k = m + 2; k <= kmax; ++k) pl.st.layers[{m + 1, k}] = step_upper(pl.st, m, k);
    pl.st.layers[{m + 1, m + 1}] = step_middle(pl.st, m);
    if (m == 1) {
      pl.fs.xsets[{2, 2}] = base_x4(pl.st.layer(2, 2));
      if (kmax >= 3) pl.fs.xsets[{2, 3}] = FlipSet{2, 3, {}};
    } else {
      for (int k = m + 2; k <= kmax; ++k)
        pl.fs.xsets[{m + 1, k}] = step_upper_x(pl.fs, pl.st, m, k);
      pl.fs.xsets[{m + 1, m + 1}] = step_middle_x(pl.fs, pl.st, m);
    }
    if (!keep_all) {
      pl.st.layers.erase(pl.st.layers.lower_bound({m, 0}), pl.st.layers.lower_bound({m + 1, 0}));
      pl.fs.xsets.erase(pl.fs.xsets.lower_bound({m, 0}), pl.fs.xsets.lower_bound({m + 1, 0}));
    }
  }
  pl.c = assemble_middle_two_factor(pl.st, n_target);
  return pl;
}

std::vector<std::pair<BitWord, BitWord>> first_pairs(const FlipSet& x, const LayerPathSet& ps) {
  std::vector<std::pair<BitWord, BitWord>> out;
  out.reserve(x.pairs.size());
  for (const FlippablePair& pr : x.pairs)
    out.emplace_back(ps.paths[pr.p_idx].F(), ps.paths[pr.pp_idx].F());
  return out;
}

std::vector<std::pair<LatticePath, LatticePath>> prefix_patterns(int n) {
  std::vector<std::pair<LatticePath, LatticePath>> out;
  if (n < 2) return out;
  const LatticePath a = path_of("UUDD"), b = path_of("UDUD");
  for (const LatticePath& q : enumerate_class(2 * (n - 2), n - 2, PathTag::EQ0)) {
    LatticePath p = a, pp = b;
    p.insert(p.end(), q.begin(), q.end());
    pp.insert(pp.end(), q.begin(), q.end());
    out.emplace_back(std::move(p), std::move(pp));
  }
  return out;
}

std::vector<std::pair<LatticePath, LatticePath>> nested_patterns(int n) {
  std::vector<std::pair<LatticePath, LatticePath>> out;
  if (n < 3) return out;
  const LatticePath a = path_of("UUDD"), b = path_of("UDUD");
  for (int n1 = 0; n1 <= n - 3; ++n1) {
    int n2 = n - 3 - n1;
    for (const LatticePath& q1 : enumerate_class(2 * n1, n1, PathTag::EQ0))
      for (const LatticePath& q2 : enumerate_class(2 * n2, n2, PathTag::EQ0)) {
        auto build = [&](const LatticePath& win) {
          LatticePath p;
          p.reserve(2 * n);
          p.push_back(Step::UP);
          p.insert(p.end(), q1.begin(), q1.end());
          p.insert(p.end(), win.begin(), win.end());
          p.push_back(Step::DOWN);
          p.insert(p.end(), q2.begin(), q2.end());
          return p;
        };
        out.emplace_back(build(a), build(b));
      }
  }
  return out;
}

bool FlipLookup::has(const BitWord& f1, const BitWord& f2) const {
  return index.count(f1.concat(f2)) != 0;
}

const FlippablePair& FlipLookup::pair_for(const BitWord& f1, const BitWord& f2) const {
  auto it = index.find(f1.concat(f2));
  if (it == index.end())
    throw std::out_of_range("no flippable pair with first vertices " + f1.to_string() + ", " +
                            f2.to_string());
  return x.pairs[it->second];
}

const FlippablePair& FlipLookup::pair_for_pattern(const LatticePath& p,
                                                  const LatticePath& pp) const {
  return pair_for(from_path(p), from_path(pp));
}

FlipLookup pattern_pair_lookup(int n) {
  if (n < 1) throw std::out_of_range("pattern lookup needs a positive half length");
  FlipLookup out;
  out.n = n;
  Pipeline pl = run_pipeline(ParamSeq::ones(n), n, false);
  out.paths = pl.st.layer(n, n);
  out.x = n >= 2 ? pl.fs.at(n, n) : FlipSet{n, n, {}};
  for (std::size_t t = 0; t < out.x.pairs.size(); ++t) {
    const FlippablePair& pr = out.x.pairs[t];
    out.index.emplace(out.paths.paths[pr.p_idx].F().concat(out.paths.paths[pr.pp_idx].F()),
                      (int)t);
  }
  auto check = [&](const std::pair<LatticePath, LatticePath>& pat) {
    if (!out.has(from_path(pat.first), from_path(pat.second)))
      throw std::logic_error("pattern pair " + path_to_string(pat.first) + " / " +
                             path_to_string(pat.second) + " has no realizing flippable pair");
  };
  for (const auto& pat : prefix_patterns(n)) check(pat);
  for (const auto& pat : nested_patterns(n)) check(pat);
  return out;
}

std::vector<std::vector<BitWord>> apply_flips(const TwoFactor& c, const LayerPathSet& bottom,
                                              const FlipSet& x, const std::vector<int>& chosen) {
  if (bottom.n != c.n || x.n != c.n || x.k != bottom.k)
    fail("flip application mixes mismatched layers");

  std::vector<const DanglingPath*> seg(bottom.paths.size());
  for (std::size_t i = 0; i < bottom.paths.size(); ++i) seg[i] = &bottom.paths[i];
  std::vector<char> taken(x.pairs.size(), 0);
  for (int t : chosen) {
    if (t < 0 || t >= (int)x.pairs.size()) fail("chosen flip index out of range");
    if (taken[t]) fail("chosen flip index repeated");
    taken[t] = 1;
    seg[x.pairs[t].p_idx] = &x.pairs[t].r;
    seg[x.pairs[t].pp_idx] = &x.pairs[t].rp;
  }

  const BitWord a = c.params.at(c.n);
  std::vector<std::vector<BitWord>> img(bottom.paths.size());
  WordIndex first_of, twisted_last;
  for (std::size_t j = 0; j < bottom.paths.size(); ++j) {
    img[j].reserve(bottom.paths[j].v.size());
    for (const BitWord& v : bottom.paths[j].v) img[j].push_back(f_alpha(v, a));
    twisted_last[img[j].back()] = (int)j;
    first_of[bottom.paths[j].F()] = (int)j;
  }

  std::vector<std::vector<BitWord>> cycles;
  std::vector<char> visited(bottom.paths.size(), 0);
  for (std::size_t i0 = 0; i0 < bottom.paths.size(); ++i0) {
    if (visited[i0]) continue;
    std::vector<BitWord> cyc;
    int i = (int)i0;
    do {
      visited[i] = 1;
      for (const BitWord& v : seg[i]->v) cyc.push_back(v.append(0));
      int j = twisted_last.at(seg[i]->L());
      for (auto it = img[j].rbegin(); it != img[j].rend(); ++it) cyc.push_back(it->append(1));
      i = first_of.at(img[j].front());
    } while (i != (int)i0);
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace midlevels
