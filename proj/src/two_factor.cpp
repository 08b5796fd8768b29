#include "midlevels/two_factor.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "midlevels/construction.hpp"

namespace midlevels {

namespace {

std::pair<ConstructionState, TwoFactor> build_instance(const ParamSeq& params, int n) {
  ConstructionState st = build_construction(params, n);
  TwoFactor c = assemble_middle_two_factor(st, n);
  return {std::move(st), std::move(c)};
}

// Rotate a cyclic sequence of distinct words into its canonical phase.
void canonical_phase(std::vector<BitWord>& seq) {
  std::rotate(seq.begin(), std::min_element(seq.begin(), seq.end()), seq.end());
}

}  // namespace

TwoFactor build_c0(int n) { return build_instance(ParamSeq::zeros(n), n).second; }

TwoFactor build_c1(int n) { return build_instance(ParamSeq::ones_then_zero(n), n).second; }

std::vector<BitWord> f_sequence(const TwoFactor& c, int cycle, const LayerPathSet& bottom) {
  std::unordered_set<BitWord, BitWordHash> fset;
  for (const DanglingPath& p : bottom.paths) fset.insert(p.F());
  const std::vector<BitWord>& cyc = c.cycles.at(cycle);
  const int width = 2 * c.n;
  std::vector<BitWord> seq;
  for (const BitWord& v : cyc) {
    if (v.get(width + 1)) continue;
    BitWord x = v.prefix(width);
    if (fset.count(x)) seq.push_back(x);
  }
  if (seq.empty()) throw std::logic_error("cycle contains no first vertex");
  canonical_phase(seq);
  return seq;
}

CycleLabel label_cycle(const TwoFactor& c, int cycle, const LayerPathSet& bottom, int variant) {
  if (variant != 0 && variant != 1) throw std::out_of_range("unknown labeling variant");
  CycleLabel lab;
  lab.cycle = cycle;
  lab.fvertex_seq = f_sequence(c, cycle, bottom);
  BitWord code;
  bool first = true;
  for (const BitWord& x : lab.fvertex_seq) {
    LatticePath p = to_path(x);
    if (variant == 1) p = h_inv(p);
    PlaneTree t = plane_of(from_dyck(p));
    BitWord here = canonical_code(t);
    if (first) {
      lab.tree = canonicalize(t);
      code = here;
      first = false;
    } else if (!(here == code)) {
      throw std::logic_error("cycle label is not constant along the cycle");
    }
  }
  return lab;
}

bool h_bijection_check(int n) {
  auto [st0, c0] = build_instance(ParamSeq::zeros(n), n);
  auto [st1, c1] = build_instance(ParamSeq::ones_then_zero(n), n);
  const LayerPathSet& bot0 = st0.layer(n, n);
  const LayerPathSet& bot1 = st1.layer(n, n);

  std::vector<std::vector<BitWord>> lhs, rhs;
  for (std::size_t i = 0; i < c0.cycles.size(); ++i) {
    std::vector<BitWord> seq;
    for (const BitWord& x : f_sequence(c0, (int)i, bot0)) seq.push_back(from_path(h_map(to_path(x))));
    canonical_phase(seq);
    lhs.push_back(std::move(seq));
  }
  for (std::size_t i = 0; i < c1.cycles.size(); ++i) {
    std::vector<BitWord> seq = f_sequence(c1, (int)i, bot1);
    canonical_phase(seq);
    rhs.push_back(std::move(seq));
  }
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

}  // namespace midlevels
