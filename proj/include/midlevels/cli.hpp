#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "midlevels/words.hpp"

namespace midlevels {

// ---------------------------------------------------------------------------
// Command layer behind the `midlevels` binary.  Every command is a plain
// function over explicit streams so the whole surface is testable without a
// subprocess; run_cli adds flag parsing and dispatch on top.  All output is
// deterministic: identical configurations produce byte-identical bytes, and
// the seed feeds only the randomized parts of the check suite.
// ---------------------------------------------------------------------------

inline constexpr int kExitOk = 0;           // command ran and verified
inline constexpr int kExitVerifyFail = 1;   // a structural check failed
inline constexpr int kExitUsage = 2;        // bad flags, sizes, or input files

// Largest accepted n.  Overridable through the MIDLEVELS_MAX_N environment
// variable; values that do not parse as a positive integer fall back to the
// default, and the word length limit caps everything at 31.
inline constexpr int kDefaultMaxN = 12;
int max_n_cap();

// The `--params` field: a preset name ("zero", "one", "one-then-zero") or a
// comma-separated list of exactly n hex values, the i-th encoding the
// steering word of level i as an (i-1)-bit number read most significant bit
// first (so the first entry is always 0, the empty word).  Throws
// std::invalid_argument with a usage-grade message on malformed input.
ParamSeq parse_params(const std::string& spec, int n);

// Canonical hex-list spelling of a parameter sequence (inverse of the
// explicit form accepted by parse_params).
std::string format_params(const ParamSeq& p);

// The `--tree` field of generate: how the spanning tree of the cycle graph
// is chosen.  "bfs" takes it directly, "via_gn" routes a breadth-first tree
// of the move graph through the embedding, "gray:<index>" picks the indexed
// member of the spanning-tree family (n >= 7).
struct TreeStrategy {
  enum class Kind { Bfs, ViaMoveGraph, Family };
  Kind kind = Kind::Bfs;
  std::uint64_t index = 0;  // family member, Kind::Family only

  std::string spelling() const;
};
TreeStrategy parse_tree_strategy(const std::string& spec);  // throws on junk

struct RunConfig {
  int n = 1;
  std::string params = "one-then-zero";  // preset name or explicit hex list
  std::string tree = "bfs";              // bfs | via_gn | gray:<index>
  std::string format = "flips";          // flips | vertices | json
  std::uint64_t seed = 0;                // unused by generation, kept for parity
};

// Builds a Hamilton cycle per cfg, verifies it internally, and writes it in
// the requested format.  "flips" and "vertices" start with the header line
// `# midlevels n=<n> start=<bitstring> strategy=<s>` followed by one 1-based
// flipped coordinate (resp. one vertex) per line; "json" is a single
// versioned object.  Exit 0 only if the internal verification passed.
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Replays a flips file and checks the result is a Hamilton cycle of the
// middle two levels.  n_flag = 0 takes the size from the file header; a
// nonzero flag must agree with it.  Unreadable or malformed files are usage
// errors; files that parse but fail verification exit with 1.
int cmd_verify(const std::string& path, int n_flag, std::ostream& out, std::ostream& err);

// Prints the instance profile at size n: vertex count, dangling-path and
// flippable-pair counts of the half-size middle layer, the cycle count
// shared by the two canonical 2-factors, and the spanning-tree family size
// (trivial below size seven).
int cmd_stats(int n, bool as_json, std::ostream& out, std::ostream& err);

// Writes a graph as DOT or JSON: "gn" the tree move graph, "aux" the cycle
// graph of the default instance, "two-factor" the cycle cover itself (any
// parameter choice).
int cmd_export(const std::string& what, const std::string& format, int n,
               const std::string& params, std::ostream& out, std::ostream& err);

// Runs the check suite at size n (bounded at 8) and prints its report as
// text or JSON.  self_test corrupts the twisted rotation on purpose to show
// the suite catches it.  Exit 0 only if every check passed.
int cmd_check_lemmas(int n, std::uint64_t seed, bool as_json, bool self_test,
                     std::ostream& out, std::ostream& err);

// Argv-style entry point (program name excluded): parses flags, dispatches,
// and maps stray exceptions to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace midlevels
