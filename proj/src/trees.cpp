#include "midlevels/trees.hpp"

#include <algorithm>

namespace midlevels {

namespace {

void require_balanced(const LatticePath& p, const char* what) {
  PathClass c = classify(p);
  require(c.tag == PathTag::EQ0 && 2 * static_cast<std::size_t>(c.upsteps) == p.size(), what);
}

// Abscissa (0-based lattice point) of the first return to height zero after
// the start of a non-negative path that touches zero.
int first_return(const LatticePath& p, int lo) {
  int y = 0, x = lo;
  do {
    y += (p[x] == Step::UP) ? 1 : -1;
    ++x;
  } while (y != 0);
  return x;
}

}  // namespace

bool OrderedRootedTree::operator==(const OrderedRootedTree& o) const {
  return to_dyck(*this) == to_dyck(o);
}

OrderedRootedTree from_dyck(const LatticePath& p) {
  require_balanced(p, "from_dyck: balanced non-negative path required");
  OrderedRootedTree t;
  t.children.resize(p.size() / 2 + 1);
  t.root = 0;
  std::vector<int> stack{0};
  int next_id = 1;
  for (Step s : p) {
    if (s == Step::UP) {
      int v = next_id++;
      t.children[stack.back()].push_back(v);
      stack.push_back(v);
    } else {
      stack.pop_back();
    }
  }
  return t;
}

LatticePath to_dyck(const OrderedRootedTree& t) {
  LatticePath out;
  out.reserve(2 * static_cast<std::size_t>(t.edge_count()));
  auto walk = [&](auto&& self, int v) -> void {
    for (int c : t.children[v]) {
      out.push_back(Step::UP);
      self(self, c);
      out.push_back(Step::DOWN);
    }
  };
  walk(walk, t.root);
  return out;
}

OrderedRootedTree rot(const OrderedRootedTree& t) {
  require(t.edge_count() >= 1, "rot: tree must have at least one edge");
  OrderedRootedTree out = t;
  int r = t.root;
  int u1 = t.children[r].front();
  out.children[r].erase(out.children[r].begin());
  out.children[u1].push_back(r);
  out.root = u1;
  return out;
}

std::vector<int> PlaneTree::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

PlaneTree plane_of(const OrderedRootedTree& t) {
  PlaneTree p;
  p.nbr.resize(t.children.size());
  auto walk = [&](auto&& self, int v, int parent) -> void {
    if (parent >= 0) p.nbr[v].push_back(parent);
    for (int c : t.children[v]) p.nbr[v].push_back(c);
    for (int c : t.children[v]) self(self, c, v);
  };
  walk(walk, t.root, -1);
  return p;
}

OrderedRootedTree root_at(const PlaneTree& t, int r, int u) {
  require(r >= 0 && r < t.vertex_count() && u >= 0 && u < t.vertex_count(),
          "root_at: vertex out of range");
  require(std::find(t.nbr[r].begin(), t.nbr[r].end(), u) != t.nbr[r].end(),
          "root_at: (r,u) is not an edge");
  OrderedRootedTree out;
  out.children.resize(t.vertex_count());
  out.root = 0;
  int next_id = 0;
  // Children of the new root are its neighbor ring started at u; elsewhere the
  // ring is started just past the parent, so child order follows the embedding.
  auto walk = [&](auto&& self, int v, int parent, int first) -> int {
    int my_id = next_id++;
    const auto& ring = t.nbr[v];
    int k = static_cast<int>(ring.size());
    int at = static_cast<int>(
        std::find(ring.begin(), ring.end(), parent >= 0 ? parent : first) - ring.begin());
    int count = (parent >= 0) ? k - 1 : k;
    int start = (parent >= 0) ? at + 1 : at;
    for (int i = 0; i < count; ++i) {
      int c = ring[(start + i) % k];
      out.children[my_id].push_back(self(self, c, v, -1));
    }
    return my_id;
  };
  walk(walk, r, -1, u);
  return out;
}

BitWord canonical_code(const PlaneTree& t) {
  if (t.vertex_count() == 1) return BitWord();
  bool first = true;
  BitWord best;
  for (int r = 0; r < t.vertex_count(); ++r)
    for (int u : t.nbr[r]) {
      BitWord w = from_path(to_dyck(root_at(t, r, u)));
      if (first || w < best) {
        best = w;
        first = false;
      }
    }
  return best;
}

PlaneTree canonicalize(const PlaneTree& t) {
  return plane_of(from_dyck(to_path(canonical_code(t))));
}

LeafRef leaf_ref(const PlaneTree& t, int u) {
  require(u >= 0 && u < t.vertex_count() && t.is_leaf(u), "leaf_ref: not a leaf");
  return LeafRef{u, t.degree(t.nbr[u][0])};
}

namespace {

// Walk from leaf u around the tree; turning to the counterclockwise
// predecessor of the arrival edge at every inner vertex keeps all other edges
// to the right of the traversed path, so the first leaf reached is the
// clockwise-next one.  The successor turn gives the counterclockwise-next.
int next_leaf_walk(const PlaneTree& t, int u, bool clockwise) {
  require(t.vertex_count() >= 2 && t.is_leaf(u), "next leaf: leaf of a tree with an edge required");
  int a = u, b = t.nbr[u][0];
  while (!t.is_leaf(b)) {
    const auto& ring = t.nbr[b];
    int k = static_cast<int>(ring.size());
    int at = static_cast<int>(std::find(ring.begin(), ring.end(), a) - ring.begin());
    int c = ring[(at + (clockwise ? k - 1 : 1)) % k];
    a = b;
    b = c;
  }
  return b;
}

}  // namespace

int clockwise_next_leaf(const PlaneTree& t, int u) { return next_leaf_walk(t, u, true); }

int counterclockwise_next_leaf(const PlaneTree& t, int u) { return next_leaf_walk(t, u, false); }

PlaneTree tau1_embedded(const PlaneTree& t, LeafRef u) {
  require(t.edge_count() >= 3, "tau1: tree must have at least three edges");
  require(t.is_leaf(u.v) && leaf_ref(t, u.v).neighbor_degree == u.neighbor_degree && u.thin(),
          "tau1: thin leaf required");
  int up = t.nbr[u.v][0];
  int v = (t.nbr[up][0] == u.v) ? t.nbr[up][1] : t.nbr[up][0];
  PlaneTree out = t;
  auto& ring_up = out.nbr[up];
  ring_up.erase(std::find(ring_up.begin(), ring_up.end(), u.v));
  auto& ring_v = out.nbr[v];
  // placing u just before u' in counterclockwise order makes u the
  // clockwise-next leaf from the now-bare u'
  ring_v.insert(std::find(ring_v.begin(), ring_v.end(), up), u.v);
  out.nbr[u.v] = {v};
  return out;
}

PlaneTree tau2_embedded(const PlaneTree& t, LeafRef u) {
  require(t.is_leaf(u.v) && leaf_ref(t, u.v).neighbor_degree == u.neighbor_degree && u.thick(),
          "tau2: thick leaf required");
  int v = clockwise_next_leaf(t, u.v);
  require(leaf_ref(t, v).thin(), "tau2: clockwise-next leaf must be thin");
  int up = t.nbr[u.v][0];
  PlaneTree out = t;
  auto& ring_up = out.nbr[up];
  ring_up.erase(std::find(ring_up.begin(), ring_up.end(), u.v));
  out.nbr[v].push_back(u.v);
  out.nbr[u.v] = {v};
  return out;
}

PlaneTree tau1(const PlaneTree& t, LeafRef u) { return canonicalize(tau1_embedded(t, u)); }

PlaneTree tau2(const PlaneTree& t, LeafRef u) { return canonicalize(tau2_embedded(t, u)); }

LatticePath g0(const LatticePath& p) {
  require(!p.empty(), "g0: nonempty path required");
  require_balanced(p, "g0: balanced non-negative path required");
  auto [l, r] = ell_r_split(p);
  LatticePath out;
  out.reserve(p.size());
  out.insert(out.end(), l.begin(), l.end());
  out.push_back(Step::UP);
  out.insert(out.end(), r.begin(), r.end());
  out.push_back(Step::DOWN);
  return out;
}

LatticePath g1(const LatticePath& p) {
  require(!p.empty(), "g1: nonempty path required");
  require_balanced(p, "g1: balanced non-negative path required");
  auto [l, r] = ell_r_split(p);
  LatticePath lt = pi_one(l), rt = pi_one(r);
  LatticePath out;
  out.reserve(p.size());
  out.insert(out.end(), lt.begin(), lt.end());
  out.push_back(Step::UP);
  out.insert(out.end(), rt.begin(), rt.end());
  out.push_back(Step::DOWN);
  return out;
}

namespace {

LatticePath h_rec(const LatticePath& p, int lo, int hi) {
  if (lo == hi) return {};
  int x = first_return(p, lo);
  if (x == hi) {
    LatticePath inner = pi_one(h_rec(p, lo + 1, hi - 1));
    LatticePath out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    out.push_back(Step::UP);
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back(Step::DOWN);
    return out;
  }
  LatticePath a = h_rec(p, lo, x), b = h_rec(p, x, hi);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

LatticePath h_inv_rec(const LatticePath& p, int lo, int hi) {
  if (lo == hi) return {};
  int x = first_return(p, lo);
  if (x == hi) {
    LatticePath inner = pi_one(LatticePath(p.begin() + lo + 1, p.begin() + hi - 1));
    LatticePath core = h_inv_rec(inner, 0, static_cast<int>(inner.size()));
    LatticePath out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    out.push_back(Step::UP);
    out.insert(out.end(), core.begin(), core.end());
    out.push_back(Step::DOWN);
    return out;
  }
  LatticePath a = h_inv_rec(p, lo, x), b = h_inv_rec(p, x, hi);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

LatticePath h_map(const LatticePath& p) {
  require_balanced(p, "h: balanced non-negative path required");
  return h_rec(p, 0, static_cast<int>(p.size()));
}

LatticePath h_inv(const LatticePath& p) {
  require_balanced(p, "h_inv: balanced non-negative path required");
  return h_inv_rec(p, 0, static_cast<int>(p.size()));
}

int lr_abscissa(const LatticePath& p) {
  PathClass c = classify(p);
  require(!p.empty() && c.tag == PathTag::EQ0 &&
              2 * static_cast<std::size_t>(c.upsteps) >= p.size(),
          "lr: non-negative path touching zero with at least half upsteps required");
  // restrict to the prefix ending at the first touch of zero, which is balanced
  int cut = first_return(p, 0);
  // alternate: left-to-right descends into the first irreducible factor,
  // right-to-left into the last one, keeping absolute abscissas
  auto balanced = [&](auto&& self, int lo, int hi, bool left_mode) -> int {
    if (lo == hi) return lo;
    if (left_mode) {
      int x = first_return(p, lo);
      return self(self, lo + 1, x - 1, false);
    }
    int y = 0, start = lo;
    for (int x = lo; x < hi;) {
      y += (p[x] == Step::UP) ? 1 : -1;
      ++x;
      if (y == 0 && x < hi) start = x;
    }
    return self(self, start + 1, hi - 1, true);
  };
  return balanced(balanced, 0, cut, true);
}

namespace {

LatticePath insert_peak(const LatticePath& p, int at) {
  LatticePath out;
  out.reserve(p.size() + 2);
  out.insert(out.end(), p.begin(), p.begin() + at);
  out.push_back(Step::UP);
  out.push_back(Step::DOWN);
  out.insert(out.end(), p.begin() + at, p.end());
  return out;
}

}  // namespace

LatticePath add1(const LatticePath& p) {
  int x = lr_abscissa(p);
  require(p[x - 1] == Step::UP && p[x] == Step::DOWN, "add1: marked steps must form a peak");
  return insert_peak(p, x);
}

LatticePath add2(const LatticePath& p) {
  int x = lr_abscissa(p);
  require(p[x - 1] == Step::UP && p[x] == Step::DOWN, "add2: marked steps must form a peak");
  return insert_peak(p, x - 1);
}

}  // namespace midlevels
