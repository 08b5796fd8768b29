#include "midlevels/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "json.hpp"
#include "midlevels/construction.hpp"

namespace midlevels {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::logic_error(msg); }

// Undirected reachability from node 0 over the given endpoint pairs.
bool all_reachable(int node_count, const std::vector<std::pair<int, int>>& es) {
  if (node_count <= 1) return true;
  std::vector<std::vector<int>> adj(node_count);
  for (const auto& [a, b] : es) {
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(node_count, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
  }
  return reached == node_count;
}

// Deterministic BFS spanning tree over (endpoint, edge id) adjacency built in
// edge index order.
SpanningTree bfs_tree(int node_count, const std::vector<std::tuple<int, int, int>>& es) {
  SpanningTree t;
  t.node_count = node_count;
  if (node_count <= 1) return t;
  std::vector<std::vector<std::pair<int, int>>> adj(node_count);  // (other, edge id)
  for (const auto& [a, b, id] : es) {
    if (a == b) continue;
    adj[a].push_back({b, id});
    adj[b].push_back({a, id});
  }
  std::vector<char> seen(node_count, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& [w, id] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        t.edge_ids.push_back(id);
        t.endpoints.push_back({v, w});
        q.push_back(w);
      }
  }
  if ((int)t.edge_ids.size() != node_count - 1) fail("spanning tree search: graph disconnected");
  return t;
}

std::vector<std::tuple<int, int, int>> edge_triples(const FlipGraph& g) {
  std::vector<std::tuple<int, int, int>> es;
  es.reserve(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    es.push_back({g.edges[i].from, g.edges[i].to, (int)i});
  return es;
}

std::vector<std::tuple<int, int, int>> edge_triples(const TreeMoveGraph& g) {
  std::vector<std::tuple<int, int, int>> es;
  es.reserve(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    es.push_back({g.edges[i].from, g.edges[i].to, (int)i});
  return es;
}

BitWord path_tree_code(int n) {
  LatticePath p;
  for (int i = 0; i < n; ++i) p.push_back(Step::UP);
  for (int i = 0; i < n; ++i) p.push_back(Step::DOWN);
  return canonical_code(plane_of(from_dyck(p)));
}

bool neighbors(const PlaneTree& t, int a, int b) {
  for (int x : t.nbr[a])
    if (x == b) return true;
  return false;
}

std::string dyck_label(const BitWord& code) { return path_to_string(to_path(code)); }

using boost::multiprecision::cpp_int;

// Spanning tree count of a loopless multigraph via the principal minor of the
// Laplacian, evaluated with fraction-free elimination in exact integers.
cpp_int matrix_tree(int node_count, const std::vector<std::pair<int, int>>& es) {
  if (node_count <= 0) fail("spanning tree count needs at least one node");
  const int d = node_count - 1;
  if (d == 0) return 1;
  std::vector<std::vector<cpp_int>> a(d, std::vector<cpp_int>(d, 0));
  for (const auto& [x, y] : es) {
    if (x == y) continue;
    if (x < d) a[x][x] += 1;
    if (y < d) a[y][y] += 1;
    if (x < d && y < d) {
      a[x][y] -= 1;
      a[y][x] -= 1;
    }
  }
  cpp_int prev = 1;
  int sign = 1;
  for (int k = 0; k < d; ++k) {
    if (a[k][k] == 0) {
      int pick = -1;
      for (int i = k + 1; i < d; ++i)
        if (a[i][k] != 0) {
          pick = i;
          break;
        }
      if (pick < 0) return 0;
      std::swap(a[k], a[pick]);
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i)
      for (int j = k + 1; j < d; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  cpp_int det = a[d - 1][d - 1];
  return sign < 0 ? cpp_int(-det) : det;
}

}  // namespace

FlipGraph flip_graph(const TwoFactor& c, const LayerPathSet& bottom, const FlipSet& x) {
  if (bottom.n != c.n || x.n != c.n || x.k != bottom.k)
    throw std::invalid_argument("cycle graph inputs disagree on the layer");
  if (c.cycle_of_path.size() != bottom.paths.size())
    throw std::invalid_argument("2-factor does not cover the given path set");
  x.validate(bottom);
  FlipGraph g;
  g.n = c.n;
  g.node_count = (int)c.cycles.size();
  g.edges.reserve(x.pairs.size());
  for (std::size_t t = 0; t < x.pairs.size(); ++t) {
    const FlippablePair& pr = x.pairs[t];
    g.edges.push_back({c.cycle_of_path[pr.p_idx], c.cycle_of_path[pr.pp_idx], (int)t});
  }
  return g;
}

TreeMoveGraph tree_move_graph(int n) {
  if (n < 1) throw std::invalid_argument("tree move graph needs at least one edge");
  TreeMoveGraph g;
  g.n = n;
  std::map<BitWord, PlaneTree> found;
  for (const LatticePath& p : enumerate_class(2 * n, n, PathTag::EQ0)) {
    PlaneTree t = plane_of(from_dyck(p));
    BitWord code = canonical_code(t);
    if (!found.count(code)) found.emplace(code, canonicalize(t));
  }
  for (auto& [code, tree] : found) {
    g.index.emplace(code, g.node_count());
    g.codes.push_back(code);
    g.nodes.push_back(std::move(tree));
  }
  std::set<std::tuple<int, int, int>> seen;
  for (int id = 0; id < g.node_count(); ++id) {
    const PlaneTree& t = g.nodes[id];
    for (int u = 0; u < t.vertex_count(); ++u) {
      if (!t.is_leaf(u)) continue;
      LeafRef lr = leaf_ref(t, u);
      if (lr.thin() && n >= 3) {
        int to = g.index.at(canonical_code(tau1_embedded(t, lr)));
        if (seen.insert({id, to, 1}).second) g.edges.push_back({id, to, 1, u});
      } else if (lr.thick()) {
        int v = clockwise_next_leaf(t, u);
        if (leaf_ref(t, v).thin()) {
          int to = g.index.at(canonical_code(tau2_embedded(t, lr)));
          if (seen.insert({id, to, 2}).second) g.edges.push_back({id, to, 2, u});
        }
      }
    }
  }
  return g;
}

bool is_weakly_connected(const FlipGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return all_reachable(g.node_count, es);
}

bool is_weakly_connected(const TreeMoveGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return all_reachable(g.node_count(), es);
}

std::vector<ReduceStep> reduce_to_path(const PlaneTree& t) {
  std::vector<ReduceStep> steps;
  const int n = t.edge_count();
  if (n <= 2) return steps;  // a lone tree shape: already the path
  const BitWord goal = path_tree_code(n);
  PlaneTree cur = t;
  if (canonical_code(cur) == goal) return steps;

  // Designate a thin leaf to walk inward from; if every leaf is thick, first
  // run one kind-1 move backwards to create a thin one.
  int v0 = -1;
  for (int u = 0; u < cur.vertex_count(); ++u)
    if (cur.is_leaf(u) && leaf_ref(cur, u).thin()) {
      v0 = u;
      break;
    }
  if (v0 < 0) {
    int v = -1;
    for (int w = 0; w < cur.vertex_count(); ++w) {
      if (cur.is_leaf(w)) continue;
      int inner = 0;
      for (int x : cur.nbr[w]) inner += !cur.is_leaf(x);
      if (inner <= 1) {
        v = w;
        break;
      }
    }
    if (v < 0) fail("tree reduction: no branch vertex found");
    // Two leaves of v adjacent in the walk order: re-hang the later one onto
    // the earlier one so that moving it back is a legal kind-1 move.
    int up = -1, uu = -1;
    for (int cand : cur.nbr[v]) {
      if (!cur.is_leaf(cand)) continue;
      int nxt = clockwise_next_leaf(cur, cand);
      if (nxt != cand && cur.is_leaf(nxt) && neighbors(cur, v, nxt)) {
        up = cand;
        uu = nxt;
        break;
      }
    }
    if (up < 0) fail("tree reduction: no adjacent leaf pair on the branch vertex");
    PlaneTree next = cur;
    auto& ring = next.nbr[v];
    ring.erase(std::find(ring.begin(), ring.end(), uu));
    next.nbr[uu] = {up};
    next.nbr[up].push_back(uu);
    if (canonical_code(tau1_embedded(next, leaf_ref(next, uu))) != canonical_code(cur))
      fail("tree reduction: backward move does not restore the input");
    steps.push_back({1, true, uu, cur, next});
    cur = std::move(next);
    v0 = uu;
  }

  const int cap = 3 * n + 8;
  while (canonical_code(cur) != goal) {
    if ((int)steps.size() > cap) fail("tree reduction failed to terminate");
    int u = counterclockwise_next_leaf(cur, v0);
    LeafRef lr = leaf_ref(cur, u);
    if (lr.thin()) {
      PlaneTree next = tau1_embedded(cur, lr);
      steps.push_back({1, false, u, cur, next});
      cur = std::move(next);
    } else {
      PlaneTree next = tau2_embedded(cur, lr);
      steps.push_back({2, false, u, cur, next});
      cur = std::move(next);
      v0 = u;
    }
  }
  return steps;
}

bool is_spanning_tree(const SpanningTree& t) {
  if (t.node_count < 1) return false;
  if (t.edge_ids.size() != t.endpoints.size()) return false;
  if ((int)t.edge_ids.size() != t.node_count - 1) return false;
  std::vector<int> parent(t.node_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : t.endpoints) {
    if (a < 0 || b < 0 || a >= t.node_count || b >= t.node_count) return false;
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;  // loop or cycle
    parent[ra] = rb;
  }
  return true;
}

SpanningTree bfs_spanning_tree(const FlipGraph& g) {
  return bfs_tree(g.node_count, edge_triples(g));
}

SpanningTree bfs_spanning_tree(const TreeMoveGraph& g) {
  return bfs_tree(g.node_count(), edge_triples(g));
}

std::uint64_t GrayTreeFamily::size() const {
  unsigned exp = 2u * ((1u << k) - 1u);
  if (exp >= 64) throw std::overflow_error("spanning tree family too large to index");
  return std::uint64_t{1} << exp;
}

std::vector<int> GrayTreeFamily::member_edges(std::uint64_t idx) const {
  if (idx >= size()) throw std::invalid_argument("family member index out of range");
  std::vector<int> out;
  out.reserve(3 * diamonds.size());
  for (std::size_t i = 0; i < diamonds.size(); ++i) {
    const Diamond& d = diamonds[i];
    const int order[4] = {d.e_ab, d.e_bd, d.e_ac, d.e_cd};
    const int drop = (int)((idx >> (2 * i)) & 3u);
    for (int j = 0; j < 4; ++j)
      if (j != drop) out.push_back(order[j]);
  }
  return out;
}

std::uint64_t gray_family_size(int n) {
  if (n < 7) throw std::invalid_argument("spanning tree family needs at least 7 edges");
  const int k = (n - 3) / 4;
  unsigned exp = 2u * ((1u << k) - 1u);
  if (exp >= 64) throw std::overflow_error("spanning tree family too large to index");
  return std::uint64_t{1} << exp;
}

GrayTreeFamily gray_tree_family(const TreeMoveGraph& g) {
  const int n = g.n;
  if (n < 7) throw std::invalid_argument("spanning tree family needs at least 7 edges");
  GrayTreeFamily fam;
  fam.n = n;
  fam.k = (n - 3) / 4;
  fam.ell = n - 3 - 4 * fam.k;
  const int m = 3 + fam.ell;  // star edge count

  // The bare star fixes which of two adjacent glue leaves is the walk
  // successor of the other; everything else about it is symmetric.
  PlaneTree star;
  star.nbr.resize(m + 1);
  for (int i = 1; i <= m; ++i) {
    star.nbr[0].push_back(i);
    star.nbr[i] = {0};
  }
  const int upos = clockwise_next_leaf(star, 1);

  const std::string gadget[2] = {"UUDD", "UDUD"};
  auto chain = [&](std::uint64_t x) {
    std::string s;
    for (int i = 0; i < fam.k; ++i) s += gadget[(x >> i) & 1u];
    return s;
  };
  auto node_of = [&](std::uint64_t x, std::uint64_t y) {
    std::string s;
    for (int c = 1; c <= m; ++c) {
      if (c == upos)
        s += "U" + chain(x) + "D";
      else if (c == 1)
        s += "U" + chain(y) + "D";
      else
        s += "UD";
    }
    BitWord code = canonical_code(plane_of(from_dyck(path_of(s))));
    auto it = g.index.find(code);
    if (it == g.index.end()) fail("glued tree missing from the move graph");
    return it->second;
  };
  auto kind1_between = [&](int p, int q) {
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const TreeMoveEdge& e = g.edges[i];
      if (e.kind == 1 && ((e.from == p && e.to == q) || (e.from == q && e.to == p)))
        return (int)i;
    }
    fail("expected single-move edge missing between glued trees");
  };

  const std::uint64_t cnt = std::uint64_t{1} << fam.k;
  auto gray = [](std::uint64_t i) { return i ^ (i >> 1); };

  std::set<int> distinct;
  auto note = [&](int id) {
    if (distinct.insert(id).second) fam.nodes.push_back(id);
  };
  note(node_of(gray(0), gray(0)));
  for (std::uint64_t i = 0; i + 1 < cnt; ++i) {
    GrayTreeFamily::Diamond d;
    d.a = node_of(gray(i), gray(i));
    d.b = node_of(gray(i), gray(i + 1));
    d.c = node_of(gray(i + 1), gray(i));
    d.d = node_of(gray(i + 1), gray(i + 1));
    d.e_ab = kind1_between(d.a, d.b);
    d.e_bd = kind1_between(d.b, d.d);
    d.e_ac = kind1_between(d.a, d.c);
    d.e_cd = kind1_between(d.c, d.d);
    note(d.b);
    note(d.c);
    note(d.d);
    fam.diamonds.push_back(d);
  }
  if (fam.nodes.size() != 3 * (cnt - 1) + 1)
    fail("glued trees collide: the family would repeat members");
  return fam;
}

SpanningTree completed_family_tree(const TreeMoveGraph& g, const GrayTreeFamily& fam,
                                   std::uint64_t idx) {
  SpanningTree t;
  t.node_count = g.node_count();
  for (int id : fam.member_edges(idx)) {
    t.edge_ids.push_back(id);
    t.endpoints.push_back({g.edges[id].from, g.edges[id].to});
  }
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> seeds = fam.nodes;
  std::sort(seeds.begin(), seeds.end());
  std::deque<int> q;
  for (int s : seeds) {
    seen[s] = 1;
    q.push_back(s);
  }
  std::vector<std::vector<std::pair<int, int>>> adj(g.node_count());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].from].push_back({g.edges[i].to, (int)i});
    adj[g.edges[i].to].push_back({g.edges[i].from, (int)i});
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& [w, id] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        t.edge_ids.push_back(id);
        t.endpoints.push_back({v, w});
        q.push_back(w);
      }
  }
  if ((int)t.edge_ids.size() != g.node_count() - 1)
    fail("family completion did not span the move graph");
  return t;
}

FlipSystem make_flip_system(int n) {
  FlipSystem sys;
  sys.n = n;
  sys.lookup = pattern_pair_lookup(n);
  sys.pl = run_pipeline(ParamSeq::ones_then_zero(n), n, false);
  const LayerPathSet& b = sys.pl.st.layer(n, n);
  const LayerPathSet& lb = sys.lookup.paths;
  if (b.paths.size() != lb.paths.size())
    fail("instance and pattern lookup disagree on the path count");
  for (std::size_t i = 0; i < b.paths.size(); ++i)
    if (b.paths[i].v != lb.paths[i].v)
      fail("instance and pattern lookup disagree on a path");
  if (sys.lookup.x.pairs.size() != (n >= 2 ? sys.pl.fs.at(n, n).pairs.size() : 0))
    fail("instance and pattern lookup disagree on the flip set size");
  if (n >= 2) {
    const FlipSet& xa = sys.pl.fs.at(n, n);
    for (std::size_t t = 0; t < xa.pairs.size(); ++t) {
      const FlippablePair& p = xa.pairs[t];
      const FlippablePair& q = sys.lookup.x.pairs[t];
      if (p.p_idx != q.p_idx || p.pp_idx != q.pp_idx || p.r.v != q.r.v || p.rp.v != q.rp.v)
        fail("instance and pattern lookup disagree on a flippable pair");
    }
  }
  sys.graph = flip_graph(sys.pl.c, b, sys.lookup.x);
  return sys;
}

TreeMoveEmbedding embed_tree_moves(const TreeMoveGraph& g, const FlipSystem& sys) {
  const TwoFactor& c = sys.pl.c;
  const LayerPathSet& bottom = sys.bottom();
  const int cyc = (int)c.cycles.size();
  if (cyc != g.node_count()) fail("cycle count differs from the tree count");

  TreeMoveEmbedding emb;
  emb.node_of_cycle.assign(cyc, -1);
  emb.cycle_of_node.assign(cyc, -1);
  for (int ci = 0; ci < cyc; ++ci) {
    CycleLabel lab = label_cycle(c, ci, bottom, 1);
    auto it = g.index.find(canonical_code(lab.tree));
    if (it == g.index.end()) fail("cycle label missing from the move graph");
    if (emb.cycle_of_node[it->second] != -1) fail("two cycles share a tree label");
    emb.cycle_of_node[it->second] = ci;
    emb.node_of_cycle[ci] = it->second;
  }

  emb.edge_map.assign(g.edges.size(), -1);
  std::set<int> used;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const TreeMoveEdge& e = g.edges[ei];
    const PlaneTree& t = g.nodes[e.from];
    const int u = e.leaf;
    const int up = t.nbr[u][0];
    OrderedRootedTree that, thatp;
    if (e.kind == 1) {
      int v = -1;
      for (int x : t.nbr[up])
        if (x != u) v = x;
      PlaneTree tp = tau1_embedded(t, leaf_ref(t, u));
      if (canonical_code(tp) != g.codes[e.to]) fail("move edge does not reach its target tree");
      that = root_at(t, v, up);
      thatp = root_at(tp, v, u);
    } else {
      const auto& ring = t.nbr[up];
      const int pos =
          (int)(std::find(ring.begin(), ring.end(), u) - ring.begin());
      const int r = ring[(pos + 1) % ring.size()];
      PlaneTree tp = tau2_embedded(t, leaf_ref(t, u));
      if (canonical_code(tp) != g.codes[e.to]) fail("move edge does not reach its target tree");
      that = root_at(t, r, up);
      thatp = root_at(tp, r, up);
    }
    BitWord f1 = from_path(h_map(to_dyck(that)));
    BitWord f2 = from_path(h_map(to_dyck(thatp)));
    auto pit = sys.lookup.index.find(f1.concat(f2));
    if (pit == sys.lookup.index.end()) fail("move edge has no realizing flippable pair");
    const int pair = pit->second;
    const FlipGraphEdge& ae = sys.graph.edges.at(pair);
    if (ae.from != emb.cycle_of_node[e.from] || ae.to != emb.cycle_of_node[e.to])
      fail("flippable pair joins the wrong cycles for its move edge");
    if (!used.insert(pair).second) fail("two move edges map to the same flippable pair");
    emb.edge_map[ei] = pair;
  }
  return emb;
}

SpanningTree translate_tree(const TreeMoveEmbedding& emb, const SpanningTree& move_tree,
                            const FlipGraph& target) {
  if (move_tree.node_count != target.node_count)
    throw std::invalid_argument("embedding targets a graph of a different size");
  SpanningTree t;
  t.node_count = target.node_count;
  for (int id : move_tree.edge_ids) {
    const int pair = emb.edge_map.at(id);
    t.edge_ids.push_back(pair);
    t.endpoints.push_back({target.edges.at(pair).from, target.edges.at(pair).to});
  }
  if (!is_spanning_tree(t)) fail("translated edge set is not a spanning tree");
  return t;
}

cpp_int spanning_tree_count(const FlipGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return matrix_tree(g.node_count, es);
}

cpp_int spanning_tree_count(const TreeMoveGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const auto& e : g.edges) es.push_back({e.from, e.to});
  return matrix_tree(g.node_count(), es);
}

std::vector<BitWord> cycle_tree_labels(const TwoFactor& c, const LayerPathSet& bottom) {
  std::vector<BitWord> labels;
  labels.reserve(c.cycles.size());
  for (int ci = 0; ci < (int)c.cycles.size(); ++ci)
    labels.push_back(canonical_code(label_cycle(c, ci, bottom, 1).tree));
  return labels;
}

std::string to_dot(const TreeMoveGraph& g) {
  std::ostringstream os;
  os << "digraph tree_moves {\n";
  for (int i = 0; i < g.node_count(); ++i)
    os << "  t" << i << " [label=\"" << dyck_label(g.codes[i]) << "\"];\n";
  for (const TreeMoveEdge& e : g.edges)
    os << "  t" << e.from << " -> t" << e.to << " [label=\""
       << (e.kind == 1 ? "grow" : "shrink") << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const FlipGraph& g, const std::vector<BitWord>& labels) {
  if ((int)labels.size() != g.node_count)
    throw std::invalid_argument("one label per cycle required");
  std::ostringstream os;
  os << "digraph cycle_flips {\n";
  for (int i = 0; i < g.node_count; ++i)
    os << "  c" << i << " [label=\"" << dyck_label(labels[i]) << "\"];\n";
  for (const FlipGraphEdge& e : g.edges)
    os << "  c" << e.from << " -> c" << e.to << " [label=\"p" << e.pair << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_json_string(const TreeMoveGraph& g) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["graph"] = "tree_moves";
  j["n"] = g.n;
  j["nodes"] = nlohmann::json::array();
  for (int i = 0; i < g.node_count(); ++i)
    j["nodes"].push_back({{"id", i}, {"label", dyck_label(g.codes[i])}});
  j["edges"] = nlohmann::json::array();
  for (const TreeMoveEdge& e : g.edges)
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"leaf", e.leaf}});
  return j.dump(2);
}

std::string to_json_string(const FlipGraph& g, const std::vector<BitWord>& labels) {
  if ((int)labels.size() != g.node_count)
    throw std::invalid_argument("one label per cycle required");
  nlohmann::json j;
  j["format_version"] = 1;
  j["graph"] = "cycle_flips";
  j["n"] = g.n;
  j["nodes"] = nlohmann::json::array();
  for (int i = 0; i < g.node_count; ++i)
    j["nodes"].push_back({{"id", i}, {"label", dyck_label(labels[i])}});
  j["edges"] = nlohmann::json::array();
  for (const FlipGraphEdge& e : g.edges)
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"pair", e.pair}});
  return j.dump(2);
}

}  // namespace midlevels
