#pragma once

// Independent validation: structural checks for Hamilton cycles and
// 2-factors, an exhaustive search oracle for the three smallest sizes, and a
// named suite of executable checks covering the supporting facts the
// construction rests on — endpoint-set invariance, rotation laws, the twist
// bijection, flippable-pair realization, and the move-graph machinery.

#include <cstdint>
#include <string>
#include <vector>

#include "midlevels/hamilton.hpp"
#include "midlevels/words.hpp"

namespace midlevels {

// One named property together with its outcome.  On success `detail`
// summarizes what was covered; on failure it carries the counterexample.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Outcome of a full suite run.  `observations` reports behavior that is
// informative but deliberately not asserted (claims the construction does
// not depend on).
struct VerifyReport {
  int n = 0;
  std::uint64_t seed = 0;
  bool mutated = false;  // true when run through the self-test entry point
  std::vector<CheckResult> checks;
  std::vector<std::string> observations;

  bool all_pass() const;
  // Looks a check up by name; throws std::out_of_range if absent.
  const CheckResult& check(const std::string& name) const;

  std::string to_text() const;
  std::string to_json_string() const;
};

// Default seed for the randomized twist vectors and parameter sequences the
// suite samples beyond its exhaustive ranges.  Surfaced so the command line
// can report and override it.
inline constexpr std::uint64_t kDefaultVerifySeed = 20260822ull;

// Largest size the suite runs at; every finite domain it touches is
// enumerated exhaustively up to here.
inline constexpr int kLemmaSuiteMaxN = 8;

// True iff `seq` is a Hamilton cycle of the middle two levels: correct
// cardinality, all vertices distinct, consecutive vertices (wrap-around
// included) differ in exactly one bit, and every vertex lies on one of the
// two middle levels.  When `diagnostics` is non-null it receives "ok" or a
// description of the first violated check, in that order.
bool is_hamilton_cycle(const std::vector<BitWord>& seq, int n,
                       std::string* diagnostics = nullptr);

// True iff `cycles` is a 2-factor of the middle two levels: every cycle has
// length at least six and steps by single bit flips, the cycles are
// pairwise disjoint, and together they cover both levels exactly.
bool is_two_factor(const std::vector<std::vector<BitWord>>& cycles, int n,
                   std::string* diagnostics = nullptr);

// Finds a Hamilton cycle by exhaustive depth-first search with degree
// pruning, sharing nothing with the construction pipeline beyond the word
// type and the single-bit-difference predicate.  Limited to n <= 3 (70
// vertices); throws std::invalid_argument beyond that.  The result is
// rotated to its lexicographically smallest vertex and directed toward the
// smaller neighbor.
HamiltonCycle brute_force_hamilton(int n);

// Runs every named check at size n (1 <= n <= kLemmaSuiteMaxN) and returns
// the collected report.  Deterministic for fixed (n, seed): random twist
// vectors and parameter sequences are drawn from `seed`, and check order is
// fixed.  Failures are reported, never thrown.
VerifyReport lemma_suite(int n, std::uint64_t seed = kDefaultVerifySeed);

// Self-test of the suite itself: identical run except that the conjugation
// check is wired to a deliberately corrupted pair-swap map (the swap is
// skipped), which must make that check fail at any size where the swap
// matters.  Demonstrates the suite actually detects errors.
VerifyReport lemma_suite_mutated(int n, std::uint64_t seed = kDefaultVerifySeed);

}  // namespace midlevels
