#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "midlevels/hamilton.hpp"
#include "midlevels/two_factor.hpp"
#include "midlevels/verify.hpp"

using namespace midlevels;

namespace {

std::vector<BitWord> six_cycle() {
  return {BitWord::of({0, 0, 1}), BitWord::of({0, 1, 1}), BitWord::of({0, 1, 0}),
          BitWord::of({1, 1, 0}), BitWord::of({1, 0, 0}), BitWord::of({1, 0, 1})};
}

// The fixed order and naming of the suite's checks.
const std::vector<std::string> kCheckNames = {
    "endpoint-sets-fixed-by-twist",
    "flippable-pairs-propagate",
    "dyck-classes-fixed-by-twist",
    "endpoint-sets-match-dyck-classes",
    "auxiliary-graph-connected",
    "distinct-trees-give-distinct-cycles",
    "splits-agree-zero-params",
    "splits-agree-one-params",
    "f-sequence-rotation-zero-params",
    "cycle-labels-zero-exhaust-trees",
    "f-sequence-rotation-one-params",
    "h-conjugates-rotations",
    "h-maps-cycle-sequences",
    "cycle-labels-one-exhaust-trees",
    "h-prefix-shape-law",
    "h-nested-shape-law",
    "first-vertex-pairs-are-add-pairs",
    "pattern-pairs-realized",
    "move-graph-connected",
    "move-graph-family-spans",
    "moves-embed-in-auxiliary",
    "layer-coverage-conditions",
    "endpoint-recursion-consistency",
};

}  // namespace

TEST_CASE("the hand-written six-cycle is accepted") {
  std::string why;
  CHECK(is_hamilton_cycle(six_cycle(), 1, &why));
  CHECK(why == "ok");
}

TEST_CASE("violations are reported in a fixed order, first one named") {
  std::vector<BitWord> seq = six_cycle();
  std::string why;

  SUBCASE("wrong cardinality") {
    seq.pop_back();
    CHECK_FALSE(is_hamilton_cycle(seq, 1, &why));
    CHECK(why.substr(0, 12) == "cardinality:");
  }
  SUBCASE("a repeated vertex is a distinctness failure even though steps break too") {
    seq[3] = seq[0];
    CHECK_FALSE(is_hamilton_cycle(seq, 1, &why));
    CHECK(why.substr(0, 13) == "distinctness:");
  }
  SUBCASE("a long jump is an adjacency failure") {
    std::swap(seq[1], seq[4]);
    CHECK_FALSE(is_hamilton_cycle(seq, 1, &why));
    CHECK(why.substr(0, 10) == "adjacency:");
  }
  SUBCASE("a cycle through the wrong levels fails the level check") {
    std::vector<BitWord> low = {BitWord::of({0, 0, 0}), BitWord::of({0, 0, 1}),
                                BitWord::of({0, 1, 1}), BitWord::of({0, 1, 0}),
                                BitWord::of({1, 1, 0}), BitWord::of({1, 0, 0})};
    CHECK_FALSE(is_hamilton_cycle(low, 1, &why));
    CHECK(why.substr(0, 7) == "levels:");
    CHECK(why.find("000") != std::string::npos);
  }
  SUBCASE("diagnostics are optional") { CHECK_FALSE(is_hamilton_cycle({}, 1)); }
}

TEST_CASE("generator output is accepted at size five") {
  FamilyGenerator gen(5, 1);
  HamiltonCycle h = gen.next();
  std::string why;
  CHECK(is_hamilton_cycle(h.seq, 5, &why));
  CHECK(why == "ok");
  // and is rejected against the wrong size
  CHECK_FALSE(is_hamilton_cycle(h.seq, 4, &why));
  CHECK(why.substr(0, 12) == "cardinality:");
}

TEST_CASE("both two-factor variants are valid up to size eight") {
  for (int n = 1; n <= 8; ++n) {
    std::string why;
    CHECK(is_two_factor(build_c0(n).cycles, n, &why));
    CHECK(why == "ok");
    CHECK(is_two_factor(build_c1(n).cycles, n, &why));
    CHECK(why == "ok");
  }
}

TEST_CASE("broken two-factors are rejected with the violation named") {
  TwoFactor c = build_c0(4);
  REQUIRE(c.cycles.size() == 3);
  std::string why;

  SUBCASE("dropping a cycle breaks coverage") {
    std::vector<std::vector<BitWord>> cycles(c.cycles.begin() + 1, c.cycles.end());
    CHECK_FALSE(is_two_factor(cycles, 4, &why));
    CHECK(why.substr(0, 9) == "coverage:");
  }
  SUBCASE("a duplicated cycle breaks disjointness") {
    std::vector<std::vector<BitWord>> cycles = c.cycles;
    cycles[0] = cycles[1];
    CHECK_FALSE(is_two_factor(cycles, 4, &why));
    CHECK(why.substr(0, 13) == "disjointness:");
  }
  SUBCASE("a two-vertex loop is too short") {
    std::vector<std::vector<BitWord>> cycles = {
        {BitWord::of({0, 0, 1}), BitWord::of({0, 1, 1})}};
    CHECK_FALSE(is_two_factor(cycles, 1, &why));
    CHECK(why.find("below six") != std::string::npos);
  }
  SUBCASE("a corrupted vertex breaks its cycle's steps") {
    std::vector<std::vector<BitWord>> cycles = c.cycles;
    cycles[0][2] = cycles[0][0];
    CHECK_FALSE(is_two_factor(cycles, 4, &why));
    CHECK(why.substr(0, 6) == "cycle ");
  }
}

TEST_CASE("exhaustive search finds the unique six-cycle") {
  HamiltonCycle h = brute_force_hamilton(1);
  CHECK(h.n == 1);
  CHECK(h.seq == six_cycle());
  // the construction produces the very same canonical cycle
  FamilyGenerator gen(1, 1);
  CHECK(gen.next().seq == h.seq);
}

TEST_CASE("exhaustive search succeeds at sizes two and three") {
  for (int n : {2, 3}) {
    HamiltonCycle h = brute_force_hamilton(n);
    CHECK(h.seq.size() == 2 * binomial(2 * n + 1, n));
    std::string why;
    CHECK(is_hamilton_cycle(h.seq, n, &why));
    CHECK(why == "ok");
    // canonical orientation: smallest vertex first, toward the smaller neighbor
    CHECK(h.seq[0].to_string() == std::string(n + 1, '0') + std::string(n, '1'));
    CHECK(h.seq[1] < h.seq.back());
  }
  CHECK_THROWS_AS(brute_force_hamilton(4), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_hamilton(0), std::invalid_argument);
}

TEST_CASE("every check passes at every size the suite covers") {
  for (int n = 1; n <= 8; ++n) {
    VerifyReport rep = lemma_suite(n);
    INFO("size ", n, "\n", rep.to_text());
    CHECK(rep.n == n);
    CHECK(rep.seed == kDefaultVerifySeed);
    CHECK_FALSE(rep.mutated);
    REQUIRE(rep.checks.size() == kCheckNames.size());
    for (std::size_t i = 0; i < kCheckNames.size(); ++i) {
      CHECK(rep.checks[i].name == kCheckNames[i]);
      CHECK(rep.checks[i].pass);
    }
    CHECK(rep.all_pass());
    // the plain instance's cycle graph stays connected only up to size four
    REQUIRE(!rep.observations.empty());
    if (n <= 4)
      CHECK(rep.observations[0].find("is connected") != std::string::npos);
    else
      CHECK(rep.observations[0].find("is not connected") != std::string::npos);
  }
}

TEST_CASE("the suite is deterministic and seed changes keep it passing") {
  VerifyReport a = lemma_suite(3, 777);
  VerifyReport b = lemma_suite(3, 777);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json_string() == b.to_json_string());
  VerifyReport c = lemma_suite(3, 778);
  CHECK(c.all_pass());
  CHECK(c.seed == 778);
}

TEST_CASE("the suite rejects sizes outside its range") {
  CHECK_THROWS_AS(lemma_suite(0), std::invalid_argument);
  CHECK_THROWS_AS(lemma_suite(kLemmaSuiteMaxN + 1), std::invalid_argument);
}

TEST_CASE("the report is queryable by name and serializes to parseable form") {
  VerifyReport rep = lemma_suite(2);
  CHECK(rep.check("endpoint-recursion-consistency").pass);
  CHECK(rep.check("h-conjugates-rotations").pass);
  CHECK_THROWS_AS(rep.check("no-such-check"), std::out_of_range);

  nlohmann::json j = nlohmann::json::parse(rep.to_json_string());
  CHECK(j["format_version"] == 1);
  CHECK(j["n"] == 2);
  CHECK(j["seed"] == kDefaultVerifySeed);
  CHECK(j["mutated"] == false);
  CHECK(j["all_pass"] == true);
  REQUIRE(j["checks"].size() == kCheckNames.size());
  for (std::size_t i = 0; i < kCheckNames.size(); ++i) {
    CHECK(j["checks"][i]["name"] == kCheckNames[i]);
    CHECK(j["checks"][i]["pass"] == true);
  }
  CHECK(j["observations"].size() == rep.observations.size());

  std::string text = rep.to_text();
  CHECK(text.find("[PASS] endpoint-sets-fixed-by-twist") != std::string::npos);
  CHECK(text.find("[FAIL]") == std::string::npos);
  CHECK(text.find("23/23 checks passed") != std::string::npos);
}

TEST_CASE("corrupting the pair swap makes exactly the conjugation check fail") {
  VerifyReport rep = lemma_suite_mutated(4);
  CHECK(rep.mutated);
  CHECK_FALSE(rep.all_pass());
  for (const CheckResult& c : rep.checks) {
    if (c.name == "h-conjugates-rotations") {
      CHECK_FALSE(c.pass);
      CHECK(c.detail.find("conjugation fails at path") != std::string::npos);
    } else {
      INFO(c.name, ": ", c.detail);
      CHECK(c.pass);
    }
  }
  bool noted = false;
  for (const std::string& o : rep.observations)
    if (o.find("deliberately skipped") != std::string::npos) noted = true;
  CHECK(noted);
  CHECK(rep.to_text().find("[FAIL] h-conjugates-rotations") != std::string::npos);
}

TEST_CASE("the corrupted swap is invisible where the swap cannot act") {
  // At size two the parts being swapped are too short for the swap to move
  // anything, so even the corrupted conjugation holds.
  VerifyReport rep = lemma_suite_mutated(2);
  CHECK(rep.mutated);
  CHECK(rep.all_pass());
}
