#include "midlevels/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "midlevels/construction.hpp"
#include "midlevels/flips.hpp"
#include "midlevels/graphs.hpp"
#include "midlevels/trees.hpp"
#include "midlevels/two_factor.hpp"

namespace midlevels {

namespace {

// Number of embedded (plane) trees by edge count, 1..10.
const std::array<std::size_t, 10> kTreeCountByEdges = {1, 1, 2, 3, 6, 14, 34, 95, 280, 854};

std::string position(std::size_t i) { return std::to_string(i); }

}  // namespace

// ---------------------------------------------------------------------------
// Structural validation
// ---------------------------------------------------------------------------

bool is_hamilton_cycle(const std::vector<BitWord>& seq, int n, std::string* diagnostics) {
  auto reject = [&](const std::string& msg) {
    if (diagnostics) *diagnostics = msg;
    return false;
  };

  std::size_t expected = 2 * binomial(2 * n + 1, n);
  if (seq.size() != expected)
    return reject("cardinality: expected " + std::to_string(expected) + " vertices, got " +
                  std::to_string(seq.size()));

  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(seq.size() * 2);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto [it, fresh] = seen.emplace(seq[i].to_string(), i);
    if (!fresh)
      return reject("distinctness: vertex " + seq[i].to_string() + " appears at positions " +
                    position(it->second) + " and " + position(i));
  }

  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::size_t j = (i + 1) % seq.size();
    if (seq[i].size() != seq[j].size())
      return reject("adjacency: vertices at positions " + position(i) + " and " + position(j) +
                    " have different lengths");
    int diff = std::popcount(seq[i].bits ^ seq[j].bits);
    if (diff != 1)
      return reject("adjacency: vertices at positions " + position(i) + " and " + position(j) +
                    " differ in " + std::to_string(diff) + " bits");
  }

  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].size() != 2 * n + 1)
      return reject("levels: vertex at position " + position(i) + " has length " +
                    std::to_string(seq[i].size()) + ", expected " + std::to_string(2 * n + 1));
    int w = seq[i].weight();
    if (w != n && w != n + 1)
      return reject("levels: vertex " + seq[i].to_string() + " has weight " + std::to_string(w) +
                    ", outside {" + std::to_string(n) + ", " + std::to_string(n + 1) + "}");
  }

  if (diagnostics) *diagnostics = "ok";
  return true;
}

bool is_two_factor(const std::vector<std::vector<BitWord>>& cycles, int n,
                   std::string* diagnostics) {
  auto reject = [&](const std::string& msg) {
    if (diagnostics) *diagnostics = msg;
    return false;
  };

  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const std::vector<BitWord>& cyc = cycles[ci];
    if (cyc.size() < 6)
      return reject("cycle " + position(ci) + ": length " + std::to_string(cyc.size()) +
                    " is below six");
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      std::size_t u = (t + 1) % cyc.size();
      if (cyc[t].size() != cyc[u].size() || std::popcount(cyc[t].bits ^ cyc[u].bits) != 1)
        return reject("cycle " + position(ci) + ": vertices at positions " + position(t) +
                      " and " + position(u) + " do not differ in exactly one bit");
      if (cyc[t].size() != 2 * n + 1)
        return reject("cycle " + position(ci) + ": vertex at position " + position(t) +
                      " has length " + std::to_string(cyc[t].size()));
      int w = cyc[t].weight();
      if (w != n && w != n + 1)
        return reject("cycle " + position(ci) + ": vertex " + cyc[t].to_string() +
                      " has weight " + std::to_string(w));
    }
  }

  std::unordered_map<std::string, std::size_t> owner;
  std::size_t total = 0;
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    for (const BitWord& v : cycles[ci]) {
      auto [it, fresh] = owner.emplace(v.to_string(), ci);
      if (!fresh)
        return reject("disjointness: vertex " + v.to_string() + " appears in cycle " +
                      position(it->second) + " and again in cycle " + position(ci));
      ++total;
    }
  }

  std::size_t expected = 2 * binomial(2 * n + 1, n);
  if (total != expected)
    return reject("coverage: the cycles hold " + std::to_string(total) + " of the " +
                  std::to_string(expected) + " vertices on the two middle levels");

  if (diagnostics) *diagnostics = "ok";
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive search oracle
// ---------------------------------------------------------------------------

HamiltonCycle brute_force_hamilton(int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("exhaustive search is limited to sizes one through three");

  // Vertex set: all words of length 2n+1 on the two middle levels, sorted.
  std::vector<BitWord> words;
  int len = 2 * n + 1;
  for (std::uint64_t b = 0; b < (1ull << len); ++b) {
    BitWord w(b, len);
    int wt = w.weight();
    if (wt == n || wt == n + 1) words.push_back(w);
  }
  std::sort(words.begin(), words.end());

  int count = static_cast<int>(words.size());
  std::vector<std::vector<int>> adj(count);
  std::vector<std::vector<char>> amat(count, std::vector<char>(count, 0));
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      if (differ_in_one_bit(words[i], words[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        amat[i][j] = amat[j][i] = 1;
      }

  // Depth-first search from the lexicographically smallest vertex, extending
  // toward scarce vertices first and backing off as soon as some unvisited
  // vertex runs out of usable connections.
  std::vector<int> path{0};
  std::vector<char> used(count, 0);
  used[0] = 1;
  std::vector<int> deg(count, 0);  // unvisited neighbors of each vertex
  for (int v = 0; v < count; ++v)
    for (int u : adj[v])
      if (!used[u]) ++deg[v];

  std::function<bool(int)> extend = [&](int v) -> bool {
    if (static_cast<int>(path.size()) == count) return amat[v][0] != 0;
    std::vector<std::pair<int, int>> cand;
    for (int u : adj[v])
      if (!used[u]) cand.push_back({deg[u], u});
    std::sort(cand.begin(), cand.end());
    for (auto [d, u] : cand) {
      used[u] = 1;
      for (int w : adj[u]) --deg[w];
      path.push_back(u);
      bool feasible = true;
      for (int w = 0; w < count && feasible; ++w) {
        if (used[w]) continue;
        int avail = deg[w] + amat[w][u] + amat[w][0];
        if (avail < 2) feasible = false;
      }
      if (feasible && extend(u)) return true;
      path.pop_back();
      for (int w : adj[u]) ++deg[w];
      used[u] = 0;
    }
    return false;
  };

  if (!extend(0)) throw std::logic_error("exhaustive search found no cycle");

  // Canonical form: start at the smallest vertex (index 0 already is) and
  // walk toward the smaller of its two cycle neighbors.
  std::vector<BitWord> seq;
  seq.reserve(path.size());
  bool forward = words[path[1]] < words[path.back()];
  if (forward)
    for (std::size_t i = 0; i < path.size(); ++i) seq.push_back(words[path[i]]);
  else {
    seq.push_back(words[path[0]]);
    for (std::size_t i = path.size(); i-- > 1;) seq.push_back(words[path[i]]);
  }

  HamiltonCycle out;
  out.n = n;
  out.seq = std::move(seq);
  return out;
}

// ---------------------------------------------------------------------------
// The named check suite
// ---------------------------------------------------------------------------

namespace {

ParamSeq random_param_seq(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ParamSeq ps;
  for (int i = 1; i <= n; ++i) {
    BitWord a;
    for (int t = 0; t < i - 1; ++t) a = a.append(rng() & 1);
    ps.alpha.push_back(a);
  }
  return ps;
}

std::set<std::string> word_set(const std::vector<BitWord>& ws) {
  std::set<std::string> out;
  for (const BitWord& w : ws) out.insert(w.to_string());
  return out;
}

LatticePath cat_paths(std::initializer_list<LatticePath> parts) {
  LatticePath out;
  for (const LatticePath& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

// Everything the checks share, built once per run.  Constructions that can
// legitimately be absent (the tree family below size seven) or whose failure
// is itself a check outcome (the move embedding) are stored as optionals
// with the error kept alongside.
struct SuiteContext {
  int n = 0;
  std::uint64_t seed = 0;
  bool corrupt_swap = false;

  Pipeline zeros;  // all-zero parameters, every layer retained
  Pipeline ones;   // all-one parameters, every layer retained
  ConstructionState rnd;  // seeded random parameters, every layer retained
  FlipSystem sys;         // the assembled one-instance bundle
  TreeMoveGraph moves;

  std::vector<BitWord> twists;  // exhaustive twist vectors plus 100 sampled

  std::optional<GrayTreeFamily> fam;
  std::string fam_error;
  std::optional<TreeMoveEmbedding> emb;
  std::string emb_error;

  std::map<std::tuple<int, int, int>, std::set<std::string>> class_cache;

  // Word strings of the lattice-path class with `len` steps, `k` of them up.
  const std::set<std::string>& cls(int len, int k, PathTag tag) {
    auto key = std::make_tuple(len, k, static_cast<int>(tag));
    auto it = class_cache.find(key);
    if (it != class_cache.end()) return it->second;
    std::set<std::string> out;
    for (const LatticePath& p : enumerate_class(len, k, tag)) out.insert(from_path(p).to_string());
    return class_cache.emplace(key, std::move(out)).first->second;
  }
};

SuiteContext make_context(int n, std::uint64_t seed, bool corrupt_swap) {
  SuiteContext ctx;
  ctx.n = n;
  ctx.seed = seed;
  ctx.corrupt_swap = corrupt_swap;
  ctx.zeros = run_pipeline(ParamSeq::zeros(n), n, true);
  ctx.ones = run_pipeline(ParamSeq::ones(n), n, true);
  ctx.rnd = build_construction(random_param_seq(n, seed), n, true);
  ctx.sys = make_flip_system(n);
  ctx.moves = tree_move_graph(n);

  int bits = n - 1;
  std::uint64_t mask = bits == 0 ? 0 : ((1ull << bits) - 1);
  for (std::uint64_t b = 0; b <= mask; ++b) ctx.twists.push_back(BitWord(b, bits));
  std::mt19937_64 rng(seed ^ 0x517cc1b727220a95ull);
  for (int t = 0; t < 100; ++t) ctx.twists.push_back(BitWord(rng() & mask, bits));

  if (n >= 7) {
    try {
      ctx.fam = gray_tree_family(ctx.moves);
    } catch (const std::exception& e) {
      ctx.fam_error = e.what();
    }
  }
  try {
    ctx.emb = embed_tree_moves(ctx.moves, ctx.sys);
  } catch (const std::exception& e) {
    ctx.emb_error = e.what();
  }
  return ctx;
}

// Runs one check body: the body fills a coverage summary and returns an
// empty string on success or the counterexample on failure.  Exceptions are
// converted into failures so one broken check cannot abort the suite.
CheckResult run_check(const std::string& name,
                      const std::function<std::string(std::string&)>& body) {
  CheckResult r;
  r.name = name;
  std::string coverage;
  try {
    std::string failure = body(coverage);
    r.pass = failure.empty();
    r.detail = r.pass ? coverage : failure;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("unexpected error: ") + e.what();
  }
  return r;
}

std::string layer_name(int m, int k) {
  return "half length " + std::to_string(m) + ", lower weight " + std::to_string(k);
}

VerifyReport run_suite(int n, std::uint64_t seed, bool corrupt_swap) {
  if (n < 1 || n > kLemmaSuiteMaxN)
    throw std::invalid_argument("the check suite runs at sizes one through " +
                                std::to_string(kLemmaSuiteMaxN));

  VerifyReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.mutated = corrupt_swap;

  SuiteContext ctx = make_context(n, seed, corrupt_swap);

  struct BuildRef {
    const char* name;
    const ConstructionState* st;
  };
  const std::vector<BuildRef> builds = {
      {"all-zero", &ctx.zeros.st}, {"all-one", &ctx.ones.st}, {"random", &ctx.rnd}};

  auto add = [&](const std::string& name, const std::function<std::string(std::string&)>& body) {
    rep.checks.push_back(run_check(name, body));
  };

  // The twist permutes the first-vertex and last-vertex sets of the middle
  // layer, whichever parameters built it and whichever twist is applied.
  add("endpoint-sets-fixed-by-twist", [&](std::string& cov) -> std::string {
    for (const BuildRef& b : builds) {
      FSLSets s = fsl_sets(b.st->layer(n, n));
      std::set<std::string> fset = word_set(s.F), lset = word_set(s.L);
      for (const BitWord& a : ctx.twists) {
        std::set<std::string> fi, li;
        for (const BitWord& x : s.F) fi.insert(f_alpha(x, a).to_string());
        for (const BitWord& x : s.L) li.insert(f_alpha(x, a).to_string());
        if (fi != fset)
          return std::string("the first-vertex set moves under twist ") + a.to_string() +
                 " on the " + b.name + " build";
        if (li != lset)
          return std::string("the last-vertex set moves under twist ") + a.to_string() +
                 " on the " + b.name + " build";
      }
    }
    cov = std::to_string(builds.size()) + " builds x " + std::to_string(ctx.twists.size()) +
          " twist vectors";
    return {};
  });

  // Every flip set carried up the ladder still validates against its layer:
  // indices in range, paths disjoint, replacements well formed.
  add("flippable-pairs-propagate", [&](std::string& cov) -> std::string {
    std::size_t sets = 0, pairs = 0;
    const std::vector<std::pair<const char*, const Pipeline*>> pipes = {
        {"all-zero", &ctx.zeros}, {"all-one", &ctx.ones}};
    for (auto [name, pl] : pipes)
      for (const auto& [key, x] : pl->fs.xsets) {
        try {
          x.validate(pl->st.layer(key.first, key.second));
        } catch (const std::exception& e) {
          return std::string("the pair set at ") + layer_name(key.first, key.second) +
                 " of the " + name + " build fails: " + e.what();
        }
        ++sets;
        pairs += x.pairs.size();
      }
    cov = std::to_string(sets) + " pair sets (" + std::to_string(pairs) +
          " pairs) revalidated across two builds";
    if (sets == 0) cov = "no pairs exist at this size";
    return {};
  });

  // The twist permutes the balanced class and the dipping class of lattice
  // paths, for every twist vector.
  add("dyck-classes-fixed-by-twist", [&](std::string& cov) -> std::string {
    std::vector<BitWord> eq0w, minw;
    for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::EQ0))
      eq0w.push_back(from_path(p));
    for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::MINUS))
      minw.push_back(from_path(p));
    std::set<std::string> eq0s = word_set(eq0w), mins = word_set(minw);
    for (const BitWord& a : ctx.twists) {
      std::set<std::string> ei, mi;
      for (const BitWord& w : eq0w) ei.insert(f_alpha(w, a).to_string());
      for (const BitWord& w : minw) mi.insert(f_alpha(w, a).to_string());
      if (ei != eq0s)
        return "the balanced class moves under twist " + a.to_string();
      if (mi != mins)
        return "the dipping class moves under twist " + a.to_string();
    }
    cov = std::to_string(eq0w.size()) + "+" + std::to_string(minw.size()) + " words x " +
          std::to_string(ctx.twists.size()) + " twist vectors";
    return {};
  });

  // First, second and last vertices of every layer realize the three
  // lattice-path families exactly.
  add("endpoint-sets-match-dyck-classes", [&](std::string& cov) -> std::string {
    std::size_t layers = 0;
    for (const BuildRef& b : builds)
      for (int m = 1; m <= n; ++m)
        for (int k = m; k <= 2 * m - 1; ++k) {
          FSLSets s = fsl_sets(b.st->layer(m, k));
          if (word_set(s.F) != ctx.cls(2 * m, k, PathTag::EQ0))
            return std::string("first vertices at ") + layer_name(m, k) + " of the " + b.name +
                   " build miss the balanced class";
          if (word_set(s.S) != ctx.cls(2 * m, k + 1, PathTag::GT0))
            return std::string("second vertices at ") + layer_name(m, k) + " of the " + b.name +
                   " build miss the strictly-positive class";
          if (word_set(s.L) != ctx.cls(2 * m, k, PathTag::MINUS))
            return std::string("last vertices at ") + layer_name(m, k) + " of the " + b.name +
                   " build miss the dipping class";
          ++layers;
        }
    cov = std::to_string(layers) + " layer set triples matched";
    return {};
  });

  // The cycle graph of the assembled one-instance is connected.
  add("auxiliary-graph-connected", [&](std::string& cov) -> std::string {
    if (!is_weakly_connected(ctx.sys.graph))
      return "the cycle graph splits into several components";
    cov = std::to_string(ctx.sys.graph.node_count) + " cycles, " +
          std::to_string(ctx.sys.graph.edges.size()) + " pair edges, one component";
    return {};
  });

  // Distinct spanning trees of the cycle graph splice into distinct Hamilton
  // cycles.
  add("distinct-trees-give-distinct-cycles", [&](std::string& cov) -> std::string {
    std::vector<SpanningTree> trees;
    try {
      trees.push_back(bfs_spanning_tree(ctx.sys.graph));
    } catch (const std::exception& e) {
      return std::string("no spanning tree exists: ") + e.what();
    }
    if (ctx.emb && ctx.fam) {
      std::vector<std::uint64_t> picks = {0};
      if (ctx.fam->size() > 2) picks.push_back(1);
      if (ctx.fam->size() > 1) picks.push_back(ctx.fam->size() - 1);
      for (std::uint64_t idx : picks)
        trees.push_back(
            translate_tree(*ctx.emb, completed_family_tree(ctx.moves, *ctx.fam, idx),
                           ctx.sys.graph));
    }
    std::set<std::vector<int>> edge_sets;
    std::vector<const SpanningTree*> distinct;
    for (const SpanningTree& t : trees) {
      std::vector<int> ids = t.edge_ids;
      std::sort(ids.begin(), ids.end());
      if (edge_sets.insert(ids).second) distinct.push_back(&t);
    }
    std::set<std::string> serials;
    for (const SpanningTree* t : distinct) {
      HamiltonCycle h = splice(ctx.sys, *t);
      std::string why;
      if (!is_hamilton_cycle(h.seq, n, &why))
        return "splicing a spanning tree failed: " + why;
      std::string ser;
      for (const BitWord& w : h.seq) ser += w.to_string();
      if (!serials.insert(ser).second)
        return "two distinct spanning trees spliced into the same cycle";
    }
    cov = std::to_string(distinct.size()) + " distinct spanning trees -> " +
          std::to_string(serials.size()) + " distinct Hamilton cycles";
    return {};
  });

  // Under all-zero parameters, first, second and last vertex of every path
  // split identically.
  add("splits-agree-zero-params", [&](std::string& cov) -> std::string {
    std::size_t paths = 0;
    for (int m = 1; m <= n; ++m)
      for (int k = m; k <= 2 * m - 1; ++k)
        for (const DanglingPath& p : ctx.zeros.st.layer(m, k).paths) {
          auto sf = ell_r_split(to_path(p.F()));
          if (ell_r_split(to_path(p.S())) != sf)
            return "second vertex of a path at " + layer_name(m, k) +
                   " splits differently (first vertex " + p.F().to_string() + ")";
          if (ell_r_split(to_path(p.L())) != sf)
            return "last vertex of a path at " + layer_name(m, k) +
                   " splits differently (first vertex " + p.F().to_string() + ")";
          ++paths;
        }
    cov = std::to_string(paths) + " paths across every layer of the all-zero build";
    return {};
  });

  // Under all-one parameters the last vertex splits like the first up to the
  // pair swap on the left part.
  add("splits-agree-one-params", [&](std::string& cov) -> std::string {
    std::size_t paths = 0;
    for (int m = 1; m <= n; ++m)
      for (int k = m; k <= 2 * m - 1; ++k)
        for (const DanglingPath& p : ctx.ones.st.layer(m, k).paths) {
          auto [lf, rf] = ell_r_split(to_path(p.F()));
          auto [ls, rs] = ell_r_split(to_path(p.S()));
          if (ls != lf || rs != rf)
            return "second vertex of a path at " + layer_name(m, k) +
                   " splits differently (first vertex " + p.F().to_string() + ")";
          auto [ll, rl] = ell_r_split(to_path(p.L()));
          if (lf != pi_one(ll) || rf != rl)
            return "last vertex of a path at " + layer_name(m, k) +
                   " is not the swapped split of the first (first vertex " + p.F().to_string() +
                   ")";
          ++paths;
        }
    cov = std::to_string(paths) + " paths across every layer of the all-one build";
    return {};
  });

  // Along every cycle of the plain instance, consecutive first vertices are
  // related by the plain rotation map.
  add("f-sequence-rotation-zero-params", [&](std::string& cov) -> std::string {
    const LayerPathSet& bottom = ctx.zeros.st.layer(n, n);
    std::size_t steps = 0;
    for (std::size_t ci = 0; ci < ctx.zeros.c.cycles.size(); ++ci) {
      std::vector<BitWord> seq = f_sequence(ctx.zeros.c, static_cast<int>(ci), bottom);
      for (std::size_t t = 0; t < seq.size(); ++t) {
        if (to_path(seq[(t + 1) % seq.size()]) != g0(to_path(seq[t])))
          return "cycle " + position(ci) + ": rotation fails from first vertex " +
                 seq[t].to_string();
        ++steps;
      }
    }
    cov = std::to_string(ctx.zeros.c.cycles.size()) + " cycles, " + std::to_string(steps) +
          " rotation steps";
    return {};
  });

  // The plain instance's cycles are labeled by trees, one distinct tree per
  // cycle, and the labels exhaust all embedded trees.
  add("cycle-labels-zero-exhaust-trees", [&](std::string& cov) -> std::string {
    std::set<std::string> all;
    for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::EQ0))
      all.insert(canonical_code(plane_of(from_dyck(p))).to_string());
    if (ctx.zeros.c.cycles.size() != kTreeCountByEdges[n - 1])
      return "cycle count " + std::to_string(ctx.zeros.c.cycles.size()) +
             " differs from the tree count " + std::to_string(kTreeCountByEdges[n - 1]);
    const LayerPathSet& bottom = ctx.zeros.st.layer(n, n);
    std::set<std::string> got;
    for (std::size_t ci = 0; ci < ctx.zeros.c.cycles.size(); ++ci)
      got.insert(
          canonical_code(label_cycle(ctx.zeros.c, static_cast<int>(ci), bottom, 0).tree)
              .to_string());
    if (got.size() != ctx.zeros.c.cycles.size()) return "two cycles carry the same tree label";
    if (got != all) return "the labels do not exhaust the embedded trees";
    cov = std::to_string(got.size()) + " cycles labeled by " + std::to_string(all.size()) +
          " distinct trees";
    return {};
  });

  // Along every cycle of the one-instance, consecutive first vertices are
  // related by the twisted rotation map.
  add("f-sequence-rotation-one-params", [&](std::string& cov) -> std::string {
    const LayerPathSet& bottom = ctx.sys.bottom();
    const TwoFactor& c = ctx.sys.pl.c;
    std::size_t steps = 0;
    for (std::size_t ci = 0; ci < c.cycles.size(); ++ci) {
      std::vector<BitWord> seq = f_sequence(c, static_cast<int>(ci), bottom);
      for (std::size_t t = 0; t < seq.size(); ++t) {
        if (to_path(seq[(t + 1) % seq.size()]) != g1(to_path(seq[t])))
          return "cycle " + position(ci) + ": twisted rotation fails from first vertex " +
                 seq[t].to_string();
        ++steps;
      }
    }
    cov = std::to_string(c.cycles.size()) + " cycles, " + std::to_string(steps) +
          " rotation steps";
    return {};
  });

  // The twist bijection conjugates the plain rotation into the twisted one.
  // The self-test entry point replaces the pair swap inside the twisted
  // rotation by the identity, which must surface here.
  add("h-conjugates-rotations", [&](std::string& cov) -> std::string {
    auto twisted_rotation = [&](const LatticePath& p) {
      if (!ctx.corrupt_swap) return g1(p);
      auto [l, r] = ell_r_split(p);  // corrupted variant: swap skipped
      LatticePath out;
      out.insert(out.end(), l.begin(), l.end());
      out.push_back(Step::UP);
      out.insert(out.end(), r.begin(), r.end());
      out.push_back(Step::DOWN);
      return out;
    };
    std::size_t paths = 0;
    for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::EQ0)) {
      if (h_map(g0(p)) != twisted_rotation(h_map(p)))
        return "conjugation fails at path " + path_to_string(p);
      ++paths;
    }
    cov = std::to_string(paths) + " balanced paths conjugated";
    return {};
  });

  // The twist map carries the plain cyclic first-vertex sequences onto the
  // twisted ones, cycle for cycle.
  add("h-maps-cycle-sequences", [&](std::string& cov) -> std::string {
    if (!h_bijection_check(n))
      return "no cycle-for-cycle matching between the plain and twisted sequences";
    cov = "plain cyclic sequences map onto twisted ones, cycle for cycle";
    return {};
  });

  // The one-instance's cycles are labeled by trees via the inverse twist,
  // one distinct tree per cycle, exhausting all embedded trees.
  add("cycle-labels-one-exhaust-trees", [&](std::string& cov) -> std::string {
    std::set<std::string> all;
    for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::EQ0))
      all.insert(canonical_code(plane_of(from_dyck(p))).to_string());
    const TwoFactor& c = ctx.sys.pl.c;
    if (c.cycles.size() != kTreeCountByEdges[n - 1])
      return "cycle count " + std::to_string(c.cycles.size()) +
             " differs from the tree count " + std::to_string(kTreeCountByEdges[n - 1]);
    const LayerPathSet& bottom = ctx.sys.bottom();
    std::set<std::string> got;
    for (std::size_t ci = 0; ci < c.cycles.size(); ++ci)
      got.insert(
          canonical_code(label_cycle(c, static_cast<int>(ci), bottom, 1).tree).to_string());
    if (got.size() != c.cycles.size()) return "two cycles carry the same tree label";
    if (got != all) return "the labels do not exhaust the embedded trees";
    cov = std::to_string(got.size()) + " cycles labeled by " + std::to_string(all.size()) +
          " distinct trees";
    return {};
  });

  // The twist map fixes a leading double or split peak and acts on the rest.
  add("h-prefix-shape-law", [&](std::string& cov) -> std::string {
    if (n < 2) {
      cov = "no room for a four-step prefix at this size";
      return {};
    }
    LatticePath hatp = path_of("UUDD"), chkp = path_of("UDUD");
    std::size_t cases = 0;
    for (const LatticePath& q : enumerate_class(2 * n - 4, n - 2, PathTag::EQ0)) {
      LatticePath hq = h_map(q);
      if (h_map(cat_paths({hatp, q})) != cat_paths({hatp, hq}))
        return "double-peak prefix not fixed over " + path_to_string(q);
      if (h_map(cat_paths({chkp, q})) != cat_paths({chkp, hq}))
        return "split-peak prefix not fixed over " + path_to_string(q);
      ++cases;
    }
    cov = std::to_string(cases) + " suffixes under both prefixes";
    return {};
  });

  // The twist map sends each nested-window pattern pair to a prefix-window
  // pattern pair hanging one level down, with a shared middle part.
  add("h-nested-shape-law", [&](std::string& cov) -> std::string {
    if (n < 3) {
      cov = "no room for a nested window at this size";
      return {};
    }
    std::size_t cases = 0;
    std::string failure;
    for (int k = 0; 2 * k + 8 <= 2 * n && failure.empty(); ++k) {
      int budget = 2 * n - 2 * k - 8;
      std::vector<int> sizes(k + 2, 0);
      std::vector<LatticePath> pick(k + 2);
      LatticePath tail_down(static_cast<std::size_t>(k), Step::DOWN);

      std::function<void()> emit = [&]() {
        LatticePath head;
        for (int j = 1; j <= k + 1; ++j) head = cat_paths({head, path_of("U"), pick[j]});
        LatticePath hat = cat_paths(
            {head, path_of("UUDD"), tail_down, path_of("UD"), path_of("D"), pick[0]});
        LatticePath chk = cat_paths({head, path_of("UUUDDD"), tail_down, path_of("D"), pick[0]});
        LatticePath ih = h_map(hat), ic = h_map(chk), h0 = h_map(pick[0]);
        if (ih.size() != ic.size() || ih.size() < h0.size() + 6) {
          failure = "image sizes disagree for the instance " + path_to_string(hat);
          return;
        }
        std::size_t mid = ih.size() - h0.size() - 6;
        LatticePath qp_hat(ih.begin() + 1, ih.begin() + 1 + mid);
        LatticePath qp_chk(ic.begin() + 1, ic.begin() + 1 + mid);
        if (qp_hat != qp_chk || classify(qp_hat).tag != PathTag::EQ0) {
          failure = "the two images do not share a balanced middle for " + path_to_string(hat);
          return;
        }
        if (LatticePath(ih.begin() + 1 + mid, ih.end()) != cat_paths({path_of("UUDDD"), h0}) ||
            LatticePath(ic.begin() + 1 + mid, ic.end()) != cat_paths({path_of("UDUDD"), h0})) {
          failure = "image tails miss the expected window shapes for " + path_to_string(hat);
          return;
        }
        ++cases;
      };

      std::function<void(int)> fill = [&](int i) {
        if (!failure.empty()) return;
        if (i == k + 2) {
          emit();
          return;
        }
        for (const LatticePath& q :
             enumerate_class(sizes[i], sizes[i] / 2, PathTag::EQ0)) {
          pick[i] = q;
          fill(i + 1);
          if (!failure.empty()) return;
        }
      };

      std::function<void(int, int)> distribute = [&](int idx, int left) {
        if (!failure.empty()) return;
        if (idx == k + 1) {
          sizes[idx] = left;
          fill(0);
          return;
        }
        for (int s = 0; s <= left; s += 2) {
          sizes[idx] = s;
          distribute(idx + 1, left - s);
          if (!failure.empty()) return;
        }
      };
      distribute(0, budget);
    }
    if (!failure.empty()) return failure;
    cov = std::to_string(cases) + " nested-window instances";
    return {};
  });

  // The first vertices of the flippable pairs at every layer are exactly the
  // two window insertions into the balanced paths one size down.
  add("first-vertex-pairs-are-add-pairs", [&](std::string& cov) -> std::string {
    std::size_t sets = 0, pairs = 0;
    const std::vector<std::pair<const char*, const Pipeline*>> pipes = {
        {"all-zero", &ctx.zeros}, {"all-one", &ctx.ones}};
    for (auto [name, pl] : pipes)
      for (const auto& [key, x] : pl->fs.xsets) {
        auto [m, k] = key;
        std::set<std::pair<std::string, std::string>> got, want;
        for (const auto& [f1, f2] : first_pairs(x, pl->st.layer(m, k)))
          got.insert({f1.to_string(), f2.to_string()});
        for (const LatticePath& p : enumerate_class(2 * m - 2, k - 1, PathTag::EQ0))
          want.insert({from_path(add1(p)).to_string(), from_path(add2(p)).to_string()});
        if (got != want)
          return std::string("pair first vertices at ") + layer_name(m, k) + " of the " + name +
                 " build differ from the window insertions";
        ++sets;
        pairs += x.pairs.size();
      }
    cov = std::to_string(pairs) + " pairs across " + std::to_string(sets) + " layer sets";
    if (sets == 0) cov = "no pairs exist at this size";
    return {};
  });

  // Every prefix-window and nested-window pattern pair is realized by an
  // actual flippable pair of the one-instance middle layer.
  add("pattern-pairs-realized", [&](std::string& cov) -> std::string {
    const FlipLookup& lk = ctx.sys.lookup;
    if (n == 1) {
      if (!lk.x.pairs.empty()) return "pairs appeared at a size that has none";
      cov = "no pairs exist at this size";
      return {};
    }
    if (lk.x.pairs.size() != catalan(n - 1))
      return "pair count " + std::to_string(lk.x.pairs.size()) + " is not the expected " +
             std::to_string(catalan(n - 1));
    auto pre = prefix_patterns(n);
    auto nest = nested_patterns(n);
    if (n >= 2 && pre.size() != catalan(n - 2)) return "prefix pattern count is off";
    if (n >= 3 && nest.size() != catalan(n - 2)) return "nested pattern count is off";
    auto resolve_all =
        [&](const std::vector<std::pair<LatticePath, LatticePath>>& pats) -> std::string {
      for (const auto& [p, pp] : pats) {
        try {
          const FlippablePair& pr = lk.pair_for_pattern(p, pp);
          if (to_path(lk.paths.paths[pr.p_idx].F()) != p ||
              to_path(lk.paths.paths[pr.pp_idx].F()) != pp)
            return "resolved pair has different first vertices than the pattern " +
                   path_to_string(p) + " / " + path_to_string(pp);
          pr.validate(lk.paths);
        } catch (const std::exception& e) {
          return "pattern " + path_to_string(p) + " / " + path_to_string(pp) +
                 " unrealized: " + e.what();
        }
      }
      return {};
    };
    if (std::string f = resolve_all(pre); !f.empty()) return f;
    if (std::string f = resolve_all(nest); !f.empty()) return f;
    cov = std::to_string(pre.size()) + " prefix and " + std::to_string(nest.size()) +
          " nested patterns resolved among " + std::to_string(lk.x.pairs.size()) + " pairs";
    return {};
  });

  // The tree move graph has one node per embedded tree and is connected.
  add("move-graph-connected", [&](std::string& cov) -> std::string {
    if (ctx.moves.node_count() != static_cast<int>(kTreeCountByEdges[n - 1]))
      return "node count " + std::to_string(ctx.moves.node_count()) +
             " differs from the tree count " + std::to_string(kTreeCountByEdges[n - 1]);
    if (!is_weakly_connected(ctx.moves)) return "the move graph splits into components";
    cov = std::to_string(ctx.moves.node_count()) + " trees, " +
          std::to_string(ctx.moves.edges.size()) + " moves, one component";
    return {};
  });

  // From size seven on, the indexed family inside the move graph consists of
  // pairwise distinct members, each completing to a distinct spanning tree.
  add("move-graph-family-spans", [&](std::string& cov) -> std::string {
    if (n < 7) {
      cov = "a single spanning tree suffices below size seven (family bound is one)";
      return {};
    }
    if (!ctx.fam) return "family construction failed: " + ctx.fam_error;
    const GrayTreeFamily& fam = *ctx.fam;
    if (fam.size() != gray_family_size(n))
      return "family size " + std::to_string(fam.size()) + " is not the promised " +
             std::to_string(gray_family_size(n));
    std::set<std::vector<int>> member_sets, full_sets;
    for (std::uint64_t idx = 0; idx < fam.size(); ++idx) {
      std::vector<int> e = fam.member_edges(idx);
      std::sort(e.begin(), e.end());
      if (!member_sets.insert(e).second)
        return "members collide at index " + std::to_string(idx);
      SpanningTree t = completed_family_tree(ctx.moves, fam, idx);
      if (!is_spanning_tree(t))
        return "completion of member " + std::to_string(idx) + " is not a spanning tree";
      std::vector<int> ids = t.edge_ids;
      std::sort(ids.begin(), ids.end());
      if (!full_sets.insert(ids).second)
        return "completed trees collide at index " + std::to_string(idx);
    }
    cov = std::to_string(fam.size()) + " members, all distinct, all completing to spanning trees";
    return {};
  });

  // The move graph embeds node-for-node, edge-for-edge into the cycle graph.
  add("moves-embed-in-auxiliary", [&](std::string& cov) -> std::string {
    if (!ctx.emb) return "embedding failed: " + ctx.emb_error;
    const TreeMoveEmbedding& emb = *ctx.emb;
    int count = ctx.moves.node_count();
    if (static_cast<int>(emb.cycle_of_node.size()) != count ||
        static_cast<int>(emb.node_of_cycle.size()) != count)
      return "node maps have the wrong size";
    std::vector<char> hit(count, 0);
    for (int v = 0; v < count; ++v) {
      int c = emb.cycle_of_node[v];
      if (c < 0 || c >= count || hit[c]) return "node map is not a bijection";
      hit[c] = 1;
      if (emb.node_of_cycle[c] != v) return "node maps are not mutually inverse";
    }
    std::set<int> images(emb.edge_map.begin(), emb.edge_map.end());
    if (images.size() != emb.edge_map.size()) return "two moves map to the same pair";
    if (emb.edge_map.size() != ctx.moves.edges.size()) return "edge map has the wrong size";
    cov = std::to_string(count) + " nodes matched, " + std::to_string(emb.edge_map.size()) +
          " moves mapped to distinct pairs";
    return {};
  });

  // Every retained layer validates (disjoint paths covering its two levels)
  // and the middle layers are counted by the Catalan numbers.
  add("layer-coverage-conditions", [&](std::string& cov) -> std::string {
    std::size_t layers = 0;
    for (const BuildRef& b : builds)
      for (int m = 1; m <= n; ++m) {
        for (int k = m; k <= 2 * m - 1; ++k) {
          try {
            b.st->layer(m, k).validate();
          } catch (const std::exception& e) {
            return std::string("layer at ") + layer_name(m, k) + " of the " + b.name +
                   " build fails: " + e.what();
          }
          ++layers;
        }
        if (b.st->layer(m, m).paths.size() != catalan(m))
          return std::string("middle path count at half length ") + std::to_string(m) +
                 " of the " + b.name + " build is not the Catalan number";
      }
    cov = std::to_string(layers) + " layers validated across three builds";
    return {};
  });

  // The endpoint sets satisfy the suffix recursion recomputed from scratch
  // on plain string sets, with all unions disjoint.
  add("endpoint-recursion-consistency", [&](std::string& cov) -> std::string {
    // rec[(m, k)] = {first, second, last} vertex sets as strings
    std::map<std::pair<int, int>, std::array<std::set<std::string>, 3>> rec;
    rec[{1, 1}] = {std::set<std::string>{"10"}, std::set<std::string>{"11"},
                   std::set<std::string>{"01"}};
    const std::set<std::string> empty;
    auto get = [&](int m, int k, int which) -> const std::set<std::string>& {
      if (k < m || k > 2 * m - 1) return empty;
      auto it = rec.find({m, k});
      return it == rec.end() ? empty : it->second[which];
    };
    auto suffixed = [](const std::set<std::string>& src, const char* sfx) {
      std::set<std::string> out;
      for (const std::string& s : src) out.insert(s + sfx);
      return out;
    };
    std::string overlap;
    auto unite = [&](std::initializer_list<std::set<std::string>> parts, int m, int k) {
      std::set<std::string> out;
      std::size_t total = 0;
      for (const auto& part : parts) {
        total += part.size();
        out.insert(part.begin(), part.end());
      }
      if (out.size() != total && overlap.empty())
        overlap = "a recursion union overlaps at " + layer_name(m, k);
      return out;
    };

    for (int m = 1; m < n; ++m) {
      // upper layers of the next size
      for (int k = m + 2; k <= 2 * m + 1; ++k)
        for (int w = 0; w < 3; ++w)
          rec[{m + 1, k}][w] =
              unite({suffixed(get(m, k, w), "00"), suffixed(get(m, k - 1, w), "10"),
                     suffixed(get(m, k - 1, w), "01"), suffixed(get(m, k - 2, w), "11")},
                    m + 1, k);
      // the next middle layer
      rec[{m + 1, m + 1}][0] = unite({suffixed(get(m, m + 1, 0), "00"),
                                      suffixed(get(m, m, 0), "10"),
                                      suffixed(get(m, m, 1), "00")},
                                     m + 1, m + 1);
      rec[{m + 1, m + 1}][1] = unite({suffixed(get(m, m + 1, 1), "00"),
                                      suffixed(get(m, m, 1), "10"),
                                      suffixed(get(m, m, 1), "01")},
                                     m + 1, m + 1);
      rec[{m + 1, m + 1}][2] = unite({suffixed(get(m, m + 1, 2), "00"),
                                      suffixed(get(m, m, 2), "10"),
                                      suffixed(get(m, m, 0), "01")},
                                     m + 1, m + 1);
    }
    if (!overlap.empty()) return overlap;

    const char* names[3] = {"first", "second", "last"};
    std::size_t compared = 0;
    const std::vector<std::pair<const char*, const ConstructionState*>> pair_builds = {
        {"all-zero", &ctx.zeros.st}, {"all-one", &ctx.ones.st}};
    for (auto [bname, st] : pair_builds)
      for (int m = 1; m <= n; ++m)
        for (int k = m; k <= 2 * m - 1; ++k) {
          FSLSets s = fsl_sets(st->layer(m, k));
          const std::vector<BitWord>* sets[3] = {&s.F, &s.S, &s.L};
          for (int w = 0; w < 3; ++w) {
            if (word_set(*sets[w]) != get(m, k, w))
              return std::string("recomputed ") + names[w] + "-vertex set at " +
                     layer_name(m, k) + " differs from the " + bname + " build";
            ++compared;
          }
        }
    cov = std::to_string(compared) + " set comparisons against the recomputed recursion";
    return {};
  });

  // Reported, not asserted: the zero-parameter instance's cycle graph is
  // expected to lose connectivity as the size grows; nothing downstream
  // relies on it either way.
  {
    FlipSet none;
    none.n = n;
    none.k = n;
    const FlipSet& x0 = n >= 2 ? ctx.zeros.fs.at(n, n) : none;
    FlipGraph plain = flip_graph(ctx.zeros.c, ctx.zeros.st.layer(n, n), x0);
    rep.observations.push_back(
        std::string("the zero-parameter instance's cycle graph at this size is ") +
        (is_weakly_connected(plain) ? "connected" : "not connected") +
        "; only the one-instance graph is relied on");
  }
  if (corrupt_swap)
    rep.observations.push_back(
        "self-test run: the pair swap inside the twisted rotation is deliberately skipped");

  return rep;
}

}  // namespace

VerifyReport lemma_suite(int n, std::uint64_t seed) { return run_suite(n, seed, false); }

VerifyReport lemma_suite_mutated(int n, std::uint64_t seed) { return run_suite(n, seed, true); }

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

bool VerifyReport::all_pass() const {
  if (checks.empty()) return false;
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult& VerifyReport::check(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

std::string VerifyReport::to_text() const {
  std::string out = "construction support checks at size " + std::to_string(n) + " (seed " +
                    std::to_string(seed) + ")\n";
  if (mutated) out += "self-test run with a corrupted pair swap\n";
  std::size_t passed = 0;
  for (const CheckResult& c : checks) {
    out += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name + " - " + c.detail +
           "\n";
    if (c.pass) ++passed;
  }
  for (const std::string& o : observations) out += "  [note] " + o + "\n";
  out += "result: " + std::to_string(passed) + "/" + std::to_string(checks.size()) +
         " checks passed\n";
  return out;
}

std::string VerifyReport::to_json_string() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["n"] = n;
  j["seed"] = seed;
  j["mutated"] = mutated;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["observations"] = observations;
  return j.dump(2);
}

}  // namespace midlevels
