#include "midlevels/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "midlevels/flips.hpp"
#include "midlevels/graphs.hpp"
#include "midlevels/hamilton.hpp"
#include "midlevels/two_factor.hpp"
#include "midlevels/verify.hpp"

namespace midlevels {
namespace {

// Word length is capped at 64 bits, so 2n+1 <= 64 bounds any cap override.
constexpr int kHardMaxN = 31;

bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

// Strict decimal parse of a whole token; nullopt on anything else.
std::optional<long long> parse_decimal(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos, 10);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (pos != tok.size()) return std::nullopt;
  return v;
}

// value -> word of the given length, most significant bit first, so the hex
// spelling matches the printed bitstring read as a binary number.
BitWord word_of_value(std::uint64_t v, int len) {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int j = 0; j < len; ++j)
    if ((v >> (len - 1 - j)) & 1u) s[static_cast<std::size_t>(j)] = '1';
  return BitWord::from_string(s);
}

std::uint64_t value_of_word(const BitWord& w) {
  std::uint64_t v = 0;
  for (int i = 1; i <= w.size(); ++i) v = (v << 1) | (w.get(i) ? 1u : 0u);
  return v;
}

int usage(std::ostream& err, const std::string& msg) {
  err << "usage error: " << msg << "\n";
  return kExitUsage;
}

bool size_in_range(int n, std::ostream& err, int cap = max_n_cap()) {
  if (n >= 1 && n <= cap) return true;
  err << "usage error: n must be between 1 and " << cap
      << " (override the cap with MIDLEVELS_MAX_N)\n";
  return false;
}

}  // namespace

int max_n_cap() {
  const char* env = std::getenv("MIDLEVELS_MAX_N");
  if (env == nullptr || *env == '\0') return kDefaultMaxN;
  auto v = parse_decimal(env);
  if (!v || *v < 1) return kDefaultMaxN;
  return static_cast<int>(std::min<long long>(*v, kHardMaxN));
}

ParamSeq parse_params(const std::string& spec, int n) {
  if (spec == "zero" || spec == "one" || spec == "one-then-zero")
    return ParamSeq::preset(spec, n);
  if (spec.empty())
    throw std::invalid_argument("--params must be a preset (zero, one, one-then-zero) or a comma-separated hex list");
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != n)
    throw std::invalid_argument("--params needs exactly " + std::to_string(n) +
                                " comma-separated entries at this size, got " +
                                std::to_string(parts.size()));
  ParamSeq p;
  for (int i = 1; i <= n; ++i) {
    std::string tok = parts[static_cast<std::size_t>(i - 1)];
    if (starts_with(tok, "0x") || starts_with(tok, "0X")) tok = tok.substr(2);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
          return std::isxdigit(c) != 0;
        }))
      throw std::invalid_argument("--params entry " + std::to_string(i) + " ('" +
                                  parts[static_cast<std::size_t>(i - 1)] +
                                  "') is not a hex number");
    const int len = i - 1;
    const std::uint64_t v = std::stoull(tok, nullptr, 16);
    if (len < 64 && v >= (std::uint64_t{1} << len))
      throw std::invalid_argument("--params entry " + std::to_string(i) + " ('" + tok +
                                  "') does not fit in the " + std::to_string(len) +
                                  " bits of its steering word");
    p.alpha.push_back(word_of_value(v, len));
  }
  p.validate();
  return p;
}

std::string format_params(const ParamSeq& p) {
  std::ostringstream os;
  for (int i = 1; i <= p.n(); ++i) {
    if (i > 1) os << ',';
    os << std::hex << value_of_word(p.at(i));
  }
  return os.str();
}

std::string TreeStrategy::spelling() const {
  switch (kind) {
    case Kind::Bfs:
      return "bfs";
    case Kind::ViaMoveGraph:
      return "via_gn";
    case Kind::Family:
      return "gray:" + std::to_string(index);
  }
  return "bfs";
}

TreeStrategy parse_tree_strategy(const std::string& spec) {
  TreeStrategy ts;
  if (spec == "bfs") {
    ts.kind = TreeStrategy::Kind::Bfs;
    return ts;
  }
  if (spec == "via_gn") {
    ts.kind = TreeStrategy::Kind::ViaMoveGraph;
    return ts;
  }
  if (starts_with(spec, "gray:")) {
    auto idx = parse_decimal(spec.substr(5));
    if (idx && *idx >= 0) {
      ts.kind = TreeStrategy::Kind::Family;
      ts.index = static_cast<std::uint64_t>(*idx);
      return ts;
    }
  }
  throw std::invalid_argument("--tree must be bfs, via_gn, or gray:<index>, got '" + spec + "'");
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!size_in_range(cfg.n, err)) return kExitUsage;
  if (cfg.format != "flips" && cfg.format != "vertices" && cfg.format != "json")
    return usage(err, "--format must be flips, vertices, or json, got '" + cfg.format + "'");
  ParamSeq params;
  TreeStrategy ts;
  try {
    params = parse_params(cfg.params, cfg.n);
    ts = parse_tree_strategy(cfg.tree);
  } catch (const std::invalid_argument& e) {
    return usage(err, e.what());
  }
  const bool canonical = params.alpha == ParamSeq::ones_then_zero(cfg.n).alpha;
  if (!canonical && ts.kind != TreeStrategy::Kind::Bfs)
    return usage(err, "--tree " + ts.spelling() +
                          " runs through the move-graph embedding, which exists for the default "
                          "parameter preset only; drop --params or use --tree bfs");
  if (ts.kind == TreeStrategy::Kind::Family) {
    if (cfg.n < 7)
      return usage(err, "the indexed spanning-tree family starts at size seven; below that a "
                        "single tree is the whole family (use bfs or via_gn)");
    if (ts.index >= gray_family_size(cfg.n))
      return usage(err, "family index " + std::to_string(ts.index) + " out of range; size " +
                            std::to_string(cfg.n) + " has " +
                            std::to_string(gray_family_size(cfg.n)) + " members");
  }

  HamiltonCycle h;
  try {
    if (canonical) {
      FlipSystem sys = make_flip_system(cfg.n);
      SpanningTree tree;
      if (ts.kind == TreeStrategy::Kind::Bfs) {
        tree = bfs_spanning_tree(sys.graph);
      } else {
        TreeMoveGraph moves = tree_move_graph(cfg.n);
        TreeMoveEmbedding emb = embed_tree_moves(moves, sys);
        SpanningTree mt = ts.kind == TreeStrategy::Kind::ViaMoveGraph
                              ? bfs_spanning_tree(moves)
                              : completed_family_tree(moves, gray_tree_family(moves), ts.index);
        tree = translate_tree(emb, mt, sys.graph);
      }
      h = splice(sys, tree);
    } else {
      Pipeline pl = run_pipeline(params, cfg.n);
      const LayerPathSet& bottom = pl.st.layer(cfg.n, cfg.n);
      FlipSet none;
      const FlipSet& x = cfg.n >= 2 ? pl.fs.at(cfg.n, cfg.n) : none;
      FlipGraph g = flip_graph(pl.c, bottom, x);
      SpanningTree tree;
      try {
        tree = bfs_spanning_tree(g);
      } catch (const std::logic_error&) {
        err << "generate: the cycle graph of this parameter choice is not connected; no "
               "spanning tree can join its "
            << g.node_count << " cycles\n";
        return kExitVerifyFail;
      }
      std::vector<std::vector<BitWord>> cycles = apply_flips(pl.c, bottom, x, tree.edge_ids);
      if (cycles.size() != 1) {
        err << "generate: applying the spanning tree left " << cycles.size()
            << " cycles instead of one\n";
        return kExitVerifyFail;
      }
      h = orient_cycle(cfg.n, cycles.front());
    }
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << "\n";
    return kExitVerifyFail;
  }

  std::string why;
  if (!is_hamilton_cycle(h.seq, cfg.n, &why)) {
    err << "generate: internal verification failed: " << why << "\n";
    return kExitVerifyFail;
  }
  const std::vector<int> stream = gray_stream(h);
  const std::string header = "# midlevels n=" + std::to_string(cfg.n) +
                             " start=" + h.seq.front().to_string() +
                             " strategy=" + ts.spelling() + "\n";
  if (cfg.format == "flips") {
    out << header;
    for (int c : stream) out << c << "\n";
  } else if (cfg.format == "vertices") {
    out << header;
    for (const BitWord& v : h.seq) out << v.to_string() << "\n";
  } else {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = "gray-code";
    j["n"] = cfg.n;
    j["start"] = h.seq.front().to_string();
    j["strategy"] = ts.spelling();
    j["params"] = format_params(params);
    j["length"] = stream.size();
    j["flips"] = stream;
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, int n_flag, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) return usage(err, "cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) return usage(err, path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::istringstream hs(line);
  std::string hash, tag, ntok, stok, gtok;
  hs >> hash >> tag >> ntok >> stok >> gtok;
  if (hash != "#" || tag != "midlevels" || !starts_with(ntok, "n=") ||
      !starts_with(stok, "start=") || !starts_with(gtok, "strategy="))
    return usage(err, "malformed header; expected '# midlevels n=<n> start=<bitstring> "
                      "strategy=<s>', got '" + line + "'");
  auto n_val = parse_decimal(ntok.substr(2));
  if (!n_val) return usage(err, "malformed header: '" + ntok + "' is not a size");
  const int n = static_cast<int>(*n_val);
  if (n_flag != 0 && n_flag != n)
    return usage(err, "--n " + std::to_string(n_flag) + " disagrees with the file header (n=" +
                          std::to_string(n) + ")");
  if (!size_in_range(n, err)) return kExitUsage;
  const std::string start_s = stok.substr(6);
  const int word_len = 2 * n + 1;
  if (static_cast<int>(start_s.size()) != word_len ||
      !std::all_of(start_s.begin(), start_s.end(), [](char c) { return c == '0' || c == '1'; }))
    return usage(err, "malformed header: start vertex '" + start_s + "' is not a " +
                          std::to_string(word_len) + "-bit word");

  std::vector<int> positions;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto v = parse_decimal(line);
    if (!v)
      return usage(err, "line " + std::to_string(lineno) + " ('" + line +
                            "') is not a flip coordinate");
    positions.push_back(static_cast<int>(*v));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 1 || positions[i] > word_len) {
      err << "verification failed: coordinate " << positions[i] << " at step " << (i + 1)
          << " is outside 1.." << word_len << "\n";
      return kExitVerifyFail;
    }
  }

  std::vector<BitWord> seq;
  try {
    seq = replay_stream(BitWord::from_string(start_s), positions);
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  std::string why;
  if (!is_hamilton_cycle(seq, n, &why)) {
    err << "verification failed: " << why << "\n";
    return kExitVerifyFail;
  }
  out << "ok: hamilton cycle over " << seq.size() << " vertices (n=" << n << ", start=" << start_s
      << ")\n";
  return kExitOk;
}

int cmd_stats(int n, bool as_json, std::ostream& out, std::ostream& err) {
  if (!size_in_range(n, err)) return kExitUsage;
  Pipeline pl = run_pipeline(ParamSeq::ones_then_zero(n), n);
  TwoFactor c0 = build_c0(n);
  if (pl.c.cycles.size() != c0.cycles.size()) {
    err << "stats: the two canonical instances disagree on their cycle count ("
        << c0.cycles.size() << " vs " << pl.c.cycles.size() << ")\n";
    return kExitVerifyFail;
  }
  const std::size_t paths = pl.st.layer(n, n).paths.size();
  const std::size_t pairs = n >= 2 ? pl.fs.at(n, n).pairs.size() : 0;
  const std::uint64_t vertices = binomial(2 * n + 1, n) + binomial(2 * n + 1, n + 1);
  const bool trivial = n < 7;
  const std::uint64_t family = trivial ? 1 : gray_family_size(n);
  if (as_json) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = "stats";
    j["n"] = n;
    j["vertices"] = vertices;
    j["paths"] = paths;
    j["pairs"] = pairs;
    j["cycles"] = pl.c.cycles.size();
    j["family"] = family;
    j["family_trivial"] = trivial;
    out << j.dump(2) << "\n";
  } else {
    out << "n=" << n << "\n";
    out << "vertices=" << vertices << "\n";
    out << "|P|=" << paths << "\n";
    out << "|X|=" << pairs << "\n";
    out << "cycles=" << pl.c.cycles.size() << "\n";
    if (trivial) {
      out << "family=1 (bound trivial below size seven)\n";
    } else {
      out << "family=" << family << " (4^(2^k-1) distinct spanning trees, k=" << (n - 3) / 4
          << ")\n";
    }
  }
  return kExitOk;
}

int cmd_export(const std::string& what, const std::string& format, int n,
               const std::string& params, std::ostream& out, std::ostream& err) {
  if (!size_in_range(n, err)) return kExitUsage;
  const bool dot = format == "dot";
  if (!dot && format != "json")
    return usage(err, "--format must be dot or json, got '" + format + "'");
  if (what == "gn") {
    TreeMoveGraph g = tree_move_graph(n);
    out << (dot ? to_dot(g) : to_json_string(g) + "\n");
    return kExitOk;
  }
  if (what == "aux") {
    if (params != "one-then-zero")
      return usage(err, "the cycle graph export is defined for the default parameter preset; "
                        "drop --params");
    FlipSystem sys = make_flip_system(n);
    const std::vector<BitWord> labels = cycle_tree_labels(sys.pl.c, sys.bottom());
    out << (dot ? to_dot(sys.graph, labels) : to_json_string(sys.graph, labels) + "\n");
    return kExitOk;
  }
  if (what == "two-factor" || what == "2-factor") {
    ParamSeq p;
    try {
      p = parse_params(params, n);
    } catch (const std::invalid_argument& e) {
      return usage(err, e.what());
    }
    Pipeline pl = run_pipeline(p, n);
    if (dot) {
      out << "graph two_factor {\n";
      for (std::size_t c = 0; c < pl.c.cycles.size(); ++c) {
        const std::vector<BitWord>& cyc = pl.c.cycles[c];
        out << "  // cycle " << c << " (" << cyc.size() << " vertices)\n";
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          const BitWord& a = cyc[i];
          const BitWord& b = cyc[(i + 1) % cyc.size()];
          out << "  \"" << a.to_string() << "\" -- \"" << b.to_string() << "\";\n";
        }
      }
      out << "}\n";
    } else {
      nlohmann::json j;
      j["format_version"] = 1;
      j["kind"] = "two-factor";
      j["n"] = n;
      j["params"] = format_params(p);
      nlohmann::json cycles = nlohmann::json::array();
      for (const std::vector<BitWord>& cyc : pl.c.cycles) {
        nlohmann::json one = nlohmann::json::array();
        for (const BitWord& v : cyc) one.push_back(v.to_string());
        cycles.push_back(std::move(one));
      }
      j["cycles"] = std::move(cycles);
      out << j.dump(2) << "\n";
    }
    return kExitOk;
  }
  return usage(err, "--what must be aux, gn, or two-factor, got '" + what + "'");
}

int cmd_check_lemmas(int n, std::uint64_t seed, bool as_json, bool self_test, std::ostream& out,
                     std::ostream& err) {
  const int cap = std::min(max_n_cap(), kLemmaSuiteMaxN);
  if (n < 1 || n > cap) {
    err << "usage error: n must be between 1 and " << cap << " (the check suite is bounded at "
        << kLemmaSuiteMaxN << ")\n";
    return kExitUsage;
  }
  const VerifyReport rep = self_test ? lemma_suite_mutated(n, seed) : lemma_suite(n, seed);
  if (as_json)
    out << rep.to_json_string() << "\n";
  else
    out << rep.to_text();
  return rep.all_pass() ? kExitOk : kExitVerifyFail;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"restricted Gray codes through the middle two levels of the odd-dimensional "
               "binary cube"};
  app.name("midlevels");
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* gen = app.add_subcommand(
      "generate", "construct a Hamilton cycle and write it as a restricted Gray code");
  gen->add_option("--n", cfg.n, "half size; words have 2n+1 bits")->required();
  gen->add_option("--params", cfg.params,
                  "preset zero|one|one-then-zero, or n comma-separated hex steering words")
      ->capture_default_str();
  gen->add_option("--tree", cfg.tree, "spanning tree choice: bfs | via_gn | gray:<index>")
      ->capture_default_str();
  gen->add_option("--format", cfg.format, "output format: flips | vertices | json")
      ->capture_default_str();
  gen->add_option("--seed", cfg.seed,
                  "accepted for config parity; generation itself is deterministic");

  std::string vfile;
  int vn = 0;
  CLI::App* ver =
      app.add_subcommand("verify", "replay a flips file and check it is a Hamilton cycle");
  ver->add_option("file", vfile, "flips file produced by generate")->required();
  ver->add_option("--n", vn, "expected size (default: taken from the file header)");

  int sn = 1;
  bool sjson = false;
  CLI::App* sta = app.add_subcommand("stats", "print the instance profile at one size");
  sta->add_option("--n", sn, "half size")->required();
  sta->add_flag("--json", sjson, "emit JSON instead of key=value lines");

  std::string ewhat, eformat = "dot", eparams = "one-then-zero";
  int en = 1;
  CLI::App* exp = app.add_subcommand("export", "write a graph of the construction as DOT or JSON");
  exp->add_option("--what", ewhat, "aux (cycle graph) | gn (tree move graph) | two-factor")
      ->required();
  exp->add_option("--format", eformat, "dot | json")->capture_default_str();
  exp->add_option("--n", en, "half size")->required();
  exp->add_option("--params", eparams, "parameter choice (two-factor export only)")
      ->capture_default_str();

  int cn = 1;
  std::uint64_t cseed = kDefaultVerifySeed;
  bool cjson = false, cself = false;
  CLI::App* chk = app.add_subcommand("check-lemmas", "run the construction support check suite");
  chk->add_option("--n", cn, "half size (suite bound: 8)")->required();
  chk->add_option("--seed", cseed, "seed for the randomized parameter draws")
      ->capture_default_str();
  chk->add_flag("--json", cjson, "emit the report as JSON");
  chk->add_flag("--self-test", cself,
                "corrupt the twisted rotation on purpose to show failures are caught");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(cfg, out, err);
    if (ver->parsed()) return cmd_verify(vfile, vn, out, err);
    if (sta->parsed()) return cmd_stats(sn, sjson, out, err);
    if (exp->parsed()) return cmd_export(ewhat, eformat, en, eparams, out, err);
    if (chk->parsed()) return cmd_check_lemmas(cn, cseed, cjson, cself, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace midlevels
