#include "midlevels/construction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "midlevels/two_factor.hpp"

namespace midlevels {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string layer_name(int m, int k) {
  return "layer (" + std::to_string(m) + "," + std::to_string(k) + ")";
}

// Source layer for the extension step: out-of-band indices contribute nothing;
// an in-band layer that was trimmed away is a driver bug.
const LayerPathSet* source_or_empty(const ConstructionState& st, int m, int k) {
  if (k < m || k > 2 * m - 1) return nullptr;
  auto it = st.layers.find({m, k});
  if (it == st.layers.end())
    throw std::logic_error(layer_name(m, k) + " needed by the extension step but not retained");
  return &it->second;
}

using WordSet = std::unordered_set<BitWord, BitWordHash>;
using WordIndex = std::unordered_map<BitWord, int, BitWordHash>;

// Twisted copies of the middle-layer paths plus the gluing maps: the index of
// the path owning each first vertex, and the index of the twisted path whose
// image ends at a given last vertex.
struct TwistTables {
  std::vector<std::vector<BitWord>> img;  // f applied elementwise to path j
  WordIndex first_of;                     // F(P_i) -> i
  WordIndex twisted_last;                 // f(L(P_j)) -> j
};

TwistTables twist_tables(const LayerPathSet& bottom, const BitWord& a) {
  TwistTables t;
  t.img.resize(bottom.paths.size());
  for (std::size_t j = 0; j < bottom.paths.size(); ++j) {
    t.img[j].reserve(bottom.paths[j].v.size());
    for (const BitWord& x : bottom.paths[j].v) t.img[j].push_back(f_alpha(x, a));
    t.twisted_last[t.img[j].back()] = (int)j;
  }
  for (std::size_t i = 0; i < bottom.paths.size(); ++i)
    t.first_of[bottom.paths[i].F()] = (int)i;
  return t;
}

}  // namespace

DanglingPath append_suffix(const DanglingPath& p, bool a, bool b) {
  DanglingPath q;
  q.v.reserve(p.v.size());
  for (const BitWord& x : p.v) q.v.push_back(x.append(a).append(b));
  return q;
}

void DanglingPath::validate(int k) const {
  if (v.size() < 3 || v.size() % 2 == 0) fail("dangling path must have odd vertex count >= 3");
  int width = v.front().size();
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t].size() != width) fail("dangling path mixes word lengths");
    int want = (t % 2 == 0) ? k : k + 1;
    if (v[t].weight() != want)
      fail("dangling path vertex " + std::to_string(t) + " has weight " +
           std::to_string(v[t].weight()) + ", expected " + std::to_string(want));
    if (t > 0 && !differ_in_one_bit(v[t - 1], v[t]))
      fail("dangling path step " + std::to_string(t) + " is not a cube edge");
  }
}

void LayerPathSet::validate() const {
  if (n < 1 || k < n || k > 2 * n - 1) fail(layer_name(n, k) + " is outside the valid band");
  if (group_offsets.empty() || group_offsets.front() != 0 || group_offsets.back() != paths.size() ||
      !std::is_sorted(group_offsets.begin(), group_offsets.end()))
    fail(layer_name(n, k) + " has inconsistent group offsets");
  WordSet seen;
  std::uint64_t lower = 0, upper = 0;
  for (const DanglingPath& p : paths) {
    p.validate(k);
    if (p.v.front().size() != 2 * n) fail(layer_name(n, k) + " holds words of the wrong length");
    for (const BitWord& x : p.v) {
      if (!seen.insert(x).second)
        fail(layer_name(n, k) + ": vertex " + x.to_string() + " covered twice");
      (x.weight() == k ? lower : upper) += 1;
    }
  }
  if (upper != binomial(2 * n, k + 1))
    fail(layer_name(n, k) + " does not cover the upper level: " + std::to_string(upper) +
         " of " + std::to_string(binomial(2 * n, k + 1)));
  if (k == n && lower != binomial(2 * n, n))
    fail(layer_name(n, k) + " does not cover the lower level: " + std::to_string(lower) +
         " of " + std::to_string(binomial(2 * n, n)));
}

FSLSets fsl_sets(const LayerPathSet& ps) {
  FSLSets s;
  s.F.reserve(ps.paths.size());
  s.S.reserve(ps.paths.size());
  s.L.reserve(ps.paths.size());
  for (const DanglingPath& p : ps.paths) {
    s.F.push_back(p.F());
    s.S.push_back(p.S());
    s.L.push_back(p.L());
  }
  return s;
}

const LayerPathSet& ConstructionState::layer(int m, int k) const {
  auto it = layers.find({m, k});
  if (it == layers.end()) throw std::out_of_range(layer_name(m, k) + " is not present");
  return it->second;
}

LayerPathSet build_base() {
  LayerPathSet base;
  base.n = 1;
  base.k = 1;
  DanglingPath seed;
  seed.v = {BitWord::of({1, 0}), BitWord::of({1, 1}), BitWord::of({0, 1})};
  base.paths.push_back(seed);
  base.group_offsets = {0, 1};
  return base;
}

LayerPathSet step_upper(const ConstructionState& st, int m, int k) {
  if (k < m + 2 || k > 2 * m + 1)
    throw std::out_of_range("extension step: k=" + std::to_string(k) + " is not an upper layer of the next cube");
  LayerPathSet out;
  out.n = m + 1;
  out.k = k;
  out.group_offsets.push_back(0);
  const struct {
    int src_k;
    bool a, b;
  } rules[4] = {{k, 0, 0}, {k - 1, 1, 0}, {k - 1, 0, 1}, {k - 2, 1, 1}};
  for (const auto& r : rules) {
    if (const LayerPathSet* src = source_or_empty(st, m, r.src_k))
      for (const DanglingPath& p : src->paths) out.paths.push_back(append_suffix(p, r.a, r.b));
    out.group_offsets.push_back(out.paths.size());
  }
  return out;
}

TwoFactor assemble_middle_two_factor(const ConstructionState& st, int m) {
  const LayerPathSet& bottom = st.layer(m, m);
  const BitWord a = st.params.at(m);

  // The weave is only well defined when the twist maps the first-vertex set
  // and the last-vertex set each onto themselves.
  WordSet fset, lset;
  for (const DanglingPath& p : bottom.paths) {
    fset.insert(p.F());
    lset.insert(p.L());
  }
  for (const BitWord& x : fset)
    if (!fset.count(f_alpha(x, a)))
      throw std::logic_error("twist does not map the first-vertex set onto itself");
  for (const BitWord& x : lset)
    if (!lset.count(f_alpha(x, a)))
      throw std::logic_error("twist does not map the last-vertex set onto itself");

  TwistTables t = twist_tables(bottom, a);

  TwoFactor c;
  c.n = m;
  c.params = st.params;
  c.cycle_of_path.assign(bottom.paths.size(), -1);
  std::vector<char> visited(bottom.paths.size(), 0);
  for (std::size_t i0 = 0; i0 < bottom.paths.size(); ++i0) {
    if (visited[i0]) continue;
    int ci = (int)c.cycles.size();
    std::vector<BitWord> cyc;
    int i = (int)i0;
    do {
      visited[i] = 1;
      c.cycle_of_path[i] = ci;
      for (const BitWord& x : bottom.paths[i].v) cyc.push_back(x.append(0));
      int j = t.twisted_last.at(bottom.paths[i].L());
      for (auto it = t.img[j].rbegin(); it != t.img[j].rend(); ++it) cyc.push_back(it->append(1));
      i = t.first_of.at(t.img[j].front());
    } while (i != (int)i0);
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    c.cycles.push_back(std::move(cyc));
  }
  return c;
}

LayerPathSet split_two_factor(const TwoFactor& c, const LayerPathSet& bottom) {
  const BitWord a = c.params.at(c.n);
  TwistTables t = twist_tables(bottom, a);

  LayerPathSet out;
  out.n = c.n + 1;
  out.k = c.n + 1;
  out.group_offsets.push_back(0);
  for (const DanglingPath& p : bottom.paths) {
    int j = t.twisted_last.at(p.L());
    DanglingPath q;
    q.v.reserve(p.v.size() + t.img[j].size() + 1);
    q.v.push_back(p.S().append(0).append(0));
    for (std::size_t s = 1; s < p.v.size(); ++s) q.v.push_back(p.v[s].append(0).append(1));
    for (auto it = t.img[j].rbegin(); it != t.img[j].rend(); ++it)
      q.v.push_back(it->append(1).append(1));
    q.v.push_back(t.img[j].front().append(0).append(1));
    out.paths.push_back(std::move(q));
  }
  out.group_offsets.push_back(out.paths.size());
  return out;
}

LayerPathSet step_middle(const ConstructionState& st, int m) {
  LayerPathSet out;
  out.n = m + 1;
  out.k = m + 1;
  out.group_offsets.push_back(0);

  if (const LayerPathSet* src = source_or_empty(st, m, m + 1))
    for (const DanglingPath& p : src->paths) out.paths.push_back(append_suffix(p, 0, 0));
  out.group_offsets.push_back(out.paths.size());

  const LayerPathSet& mid = st.layer(m, m);
  for (const DanglingPath& p : mid.paths) out.paths.push_back(append_suffix(p, 1, 0));
  out.group_offsets.push_back(out.paths.size());

  TwoFactor c = assemble_middle_two_factor(st, m);
  LayerPathSet star = split_two_factor(c, mid);
  for (DanglingPath& p : star.paths) out.paths.push_back(std::move(p));
  out.group_offsets.push_back(out.paths.size());
  return out;
}

ConstructionState build_construction(const ParamSeq& params, int n_target, bool keep_all) {
  if (n_target < 1) throw std::out_of_range("construction target must be at least 1");
  params.validate();
  if (params.n() < n_target - 1)
    throw std::out_of_range("parameter sequence too short for the construction target");

  ConstructionState st;
  st.params = params;
  st.n_target = n_target;
  st.keep_all = keep_all;
  st.layers[{1, 1}] = build_base();
  for (int m = 1; m < n_target; ++m) {
    int kmax = keep_all ? 2 * m + 1 : std::min(2 * m + 1, n_target);
    for (int k = m + 2; k <= kmax; ++k) st.layers[{m + 1, k}] = step_upper(st, m, k);
    st.layers[{m + 1, m + 1}] = step_middle(st, m);
    if (!keep_all) st.layers.erase(st.layers.lower_bound({m, 0}), st.layers.lower_bound({m + 1, 0}));
  }
  return st;
}

bool layer_conditions_hold(const ConstructionState& st, int m, std::string* why) {
  auto complain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<int> ks;
  for (auto it = st.layers.lower_bound({m, 0}); it != st.layers.lower_bound({m + 1, 0}); ++it)
    ks.push_back(it->first.second);
  if (ks.empty() || ks.front() != m) return complain(layer_name(m, m) + " is missing");
  for (int k : ks) {
    try {
      st.layer(m, k).validate();
    } catch (const std::exception& e) {
      return complain(e.what());
    }
  }
  // The vertices of the lower level skipped by each upper layer must be
  // exactly the second vertices of the layer below.
  for (int k : ks) {
    if (k == m) continue;
    if (!st.has_layer(m, k - 1))
      return complain(layer_name(m, k - 1) + " is missing below " + layer_name(m, k));
    WordSet visited;
    for (const DanglingPath& p : st.layer(m, k).paths)
      for (const BitWord& x : p.v)
        if (x.weight() == k) visited.insert(x);
    const LayerPathSet& below = st.layer(m, k - 1);
    for (const DanglingPath& p : below.paths)
      if (visited.count(p.S()))
        return complain(layer_name(m, k) + " visits the reserved vertex " + p.S().to_string());
    if (visited.size() + below.paths.size() != binomial(2 * m, k))
      return complain(layer_name(m, k) + " skips vertices other than the reserved ones");
  }
  return true;
}

}  // namespace midlevels
