#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "belgames/coregeo.hpp"
#include "belgames/errors.hpp"
#include "belgames/solutions.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace belgames;
using testsupport::grand_contract;
using testsupport::rat;
using testsupport::Rng;
using testsupport::symmetric_game;
using testsupport::symmetric_two_state_game;

namespace {

Contract lopsided() {
  return grand_contract({{10, 8}, {0, 0}, {0, 0}});
}

}  // namespace

TEST_CASE("ex-ante excess on the fixture") {
  const BelGame g = symmetric_two_state_game();
  const Contract balanced = grand_contract({{2, 0}, {4, 4}, {4, 4}});
  CHECK(exante_excess(g, balanced, 0b001) == 0);
  CHECK(exante_excess(g, balanced, 0) == 0);
  CHECK(exante_excess(g, lopsided(), 0b110) == 5);
}

TEST_CASE("theta of the fixture contracts") {
  const BelGame g = symmetric_two_state_game();
  const ThetaVector good = theta(g, lift_core_point(g, {rat(1), rat(4), rat(4)}));
  CHECK(good.values.front() == 0);
  CHECK(good.values.size() == 8);

  const ThetaVector bad = theta(g, lopsided());
  CHECK(bad.values.front() == 5);
  CHECK(bad.coalitions.front() == 0b110);
}

TEST_CASE("theta for a single player") {
  SetFunctionTable w(2, Rational(0));
  w[1] = 3;
  const BelGame g = BelGame::withCommonPrior(
      PlayerSet(1), StateSpace::of_size(1),
      testsupport::uniform_probability_mass(1),
      {TUGame(PlayerSet(1), std::move(w))});
  const ThetaVector th = theta(g, grand_contract({{3}}));
  CHECK(th.values == std::vector<Rational>{rat(0), rat(0)});
}

TEST_CASE("theta breaks ties by ascending mask") {
  const BelGame g = symmetric_two_state_game();
  const Contract even = testsupport::grand_contract({{3, 3}, {3, 3}, {3, 2}});
  const ThetaVector th = theta(g, even);
  for (std::size_t k = 1; k < th.values.size(); ++k) {
    CHECK(th.values[k - 1] >= th.values[k]);
    if (th.values[k - 1] == th.values[k]) {
      CHECK(th.coalitions[k - 1] < th.coalitions[k]);
    }
  }
}

TEST_CASE("lexicographic comparison") {
  const ThetaVector a{{rat(5), rat(0)}, {0, 1}};
  const ThetaVector b{{rat(4), rat(3)}, {0, 1}};
  CHECK(lex_compare(a, b) == Ordering::Greater);
  CHECK(lex_compare(b, a) == Ordering::Less);
  CHECK(lex_compare(a, a) == Ordering::Equal);

  const ThetaVector c{{rat(0), rat(0), rat(-1)}, {0, 1, 2}};
  const ThetaVector d{{rat(0), rat(0), rat(-2)}, {0, 1, 2}};
  CHECK(lex_compare(c, d) == Ordering::Greater);
  CHECK_THROWS_AS(lex_compare(a, c), ValidationError);
}

TEST_CASE("prenucleolus of hand-picked games") {
  CHECK(prenucleolus_tu(expected_game(symmetric_two_state_game())) ==
        PayoffVector{rat(3), rat(3), rat(3)});

  SetFunctionTable w = {rat(0), rat(1), rat(0), rat(4)};
  CHECK(prenucleolus_tu(TUGame(PlayerSet(2), std::move(w))) ==
        PayoffVector{Rational(5, 2), Rational(3, 2)});

  // Additive game: the additive vector.
  SetFunctionTable add(4, Rational(0));
  add[1] = 2;
  add[2] = -1;
  add[3] = 1;
  CHECK(prenucleolus_tu(TUGame(PlayerSet(2), std::move(add))) ==
        PayoffVector{rat(2), rat(-1)});

  // Empty-core majority game: the symmetric split.
  CHECK(prenucleolus_tu(symmetric_game(3, {rat(0), rat(0), rat(1), rat(1)})) ==
        PayoffVector(3, Rational(1, 3)));
}

TEST_CASE("prenucleolus matches the grid oracle") {
  SetFunctionTable w = {rat(0), rat(1), rat(0), rat(4)};
  const TUGame v(PlayerSet(2), std::move(w));
  const auto grid = testsupport::oracle::grid_prenucleolus(
      v, rat(-2), rat(6), Rational(1, 2));
  REQUIRE(grid.has_value());
  CHECK(*grid == prenucleolus_tu(v));

  const TUGame fixture = expected_game(symmetric_two_state_game());
  const auto grid3 = testsupport::oracle::grid_prenucleolus(
      fixture, rat(0), rat(9), Rational(1, 2));
  REQUIRE(grid3.has_value());
  CHECK(*grid3 == prenucleolus_tu(fixture));
}

TEST_CASE("prenucleolus theta is minimal among random efficient vectors") {
  Rng rng(500);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(iter % 3);
    const TUGame v = testsupport::random_tu_game(rng, n, -3, 8);
    const PayoffVector nuc = prenucleolus_tu(v);
    const auto nucTheta = testsupport::oracle::tu_theta(v, nuc);
    for (int k = 0; k < 50; ++k) {
      PayoffVector x(n, Rational(0));
      Rational rest(0);
      for (std::size_t i = 1; i < n; ++i) {
        x[i] = Rational(testsupport::rand_int(rng, -6, 10),
                        testsupport::rand_int(rng, 1, 2));
        rest += x[i];
      }
      x[0] = v.worth(v.grandCoalition()) - rest;
      CHECK_FALSE(
          testsupport::oracle::lex_less(testsupport::oracle::tu_theta(v, x), nucTheta));
    }
  }
}

TEST_CASE("prenucleolus contract of the fixture") {
  const BelGame g = symmetric_two_state_game();
  const PrenucleolusContract result = prenucleolus_contract(g);
  CHECK(result.statewiseEfficient);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(result.contract.payoff(i, 0) == Rational(10, 3));
    CHECK(result.contract.payoff(i, 1) == Rational(8, 3));
  }
  CHECK(g.efficient(result.contract));
  // Expectations sit at the expected game's prenucleolus.
  CHECK(aggregate_contract(g, result.contract) == PayoffVector(3, rat(3)));
}

TEST_CASE("prenucleolus contract is certain when the grand worth is flat") {
  std::vector<TUGame> games(2, symmetric_game(2, {rat(0), rat(1), rat(4)}));
  const BelGame g = BelGame::withCommonPrior(
      PlayerSet(2), StateSpace::of_size(2),
      testsupport::uniform_probability_mass(2), std::move(games));
  const PrenucleolusContract result = prenucleolus_contract(g);
  CHECK(result.statewiseEfficient);
  CHECK(result.contract.payoff(0, 0) == result.contract.payoff(0, 1));
}

TEST_CASE("prenucleolus contract under a belief prior is the certain one") {
  std::vector<TUGame> games;
  games.push_back(symmetric_game(2, {rat(0), rat(1), rat(4)}));
  games.push_back(symmetric_game(2, {rat(0), rat(1), rat(6)}));
  const BelGame g =
      BelGame::withCommonPrior(PlayerSet(2), StateSpace::of_size(2),
                               testsupport::vacuous_mass(2), std::move(games));
  const PrenucleolusContract result = prenucleolus_contract(g);
  // Grand worth varies across states, so the certain contract cannot be
  // efficient everywhere.
  CHECK_FALSE(result.statewiseEfficient);
  const PayoffVector nuc = prenucleolus_tu(expected_game(g));
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(result.contract.payoff(0, j) == nuc[0]);
    CHECK(result.contract.payoff(1, j) == nuc[1]);
  }
}

TEST_CASE("theta of the prenucleolus contract equals theta of the "
          "expected-game prenucleolus") {
  Rng rng(31);
  for (int iter = 0; iter < 10; ++iter) {
    const BelGame g = testsupport::random_probabilistic_belgame(rng, 3, 2, -2, 7);
    const PrenucleolusContract result = prenucleolus_contract(g);
    const TUGame expected = expected_game(g);
    const PayoffVector nuc = prenucleolus_tu(expected);
    const auto viaContract = theta(g, result.contract);
    const auto direct = testsupport::oracle::tu_theta(expected, nuc);
    CHECK(viaContract.values == direct);
  }
}

TEST_CASE("surplus on the fixture") {
  const BelGame g = symmetric_two_state_game();
  CHECK(surplus(g, lopsided(), 1, 0) == 5);
  CHECK(surplus(g, lopsided(), 0, 1) == -4);
  CHECK_THROWS_AS(surplus(g, lopsided(), 1, 1), ValidationError);

  const Contract nuc = prenucleolus_contract(g).contract;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(surplus(g, nuc, i, j) == surplus(g, nuc, j, i));
    }
  }
}

TEST_CASE("surplus with two players reduces to the singleton excess") {
  std::vector<TUGame> games(2, symmetric_game(2, {rat(0), rat(1), rat(4)}));
  const BelGame g = BelGame::withCommonPrior(
      PlayerSet(2), StateSpace::of_size(2),
      testsupport::uniform_probability_mass(2), std::move(games));
  const Contract c = grand_contract({{1, 1}, {3, 3}});
  CHECK(surplus(g, c, 0, 1) == exante_excess(g, c, 0b01));
  CHECK(surplus(g, c, 1, 0) == exante_excess(g, c, 0b10));
}

TEST_CASE("kernel membership") {
  const BelGame g = symmetric_two_state_game();
  CHECK(kernel_membership(g, prenucleolus_contract(g).contract));
  CHECK_FALSE(kernel_membership(g, lopsided()));
  // Equal expectations in a fully symmetric game always balance.
  CHECK(kernel_membership(g, grand_contract({{4, 2}, {3, 3}, {3, 3}})));
}

TEST_CASE("kernel membership for a single player is vacuous") {
  SetFunctionTable w(2, Rational(0));
  w[1] = 3;
  const BelGame g = BelGame::withCommonPrior(
      PlayerSet(1), StateSpace::of_size(1),
      testsupport::uniform_probability_mass(1),
      {TUGame(PlayerSet(1), std::move(w))});
  CHECK(kernel_membership(g, grand_contract({{3}})));
}

TEST_CASE("blocking on the fixture") {
  const BelGame g = symmetric_two_state_game();
  const Contract member = lift_core_point(g, {rat(1), rat(4), rat(4)});
  for (SubsetMask s = 0; s <= 7; ++s) {
    CHECK(blocks(g, member, s).verdict == BlockVerdict::NoBlock);
  }

  const BlockingReport report = blocks(g, lopsided(), 0b110);
  CHECK(report.verdict == BlockVerdict::Blocks);
  CHECK(report.witnessExpectations ==
        std::vector<Rational>{Rational(5, 2), Rational(5, 2)});

  CHECK(blocks(g, lopsided(), 0).verdict == BlockVerdict::NoBlock);
}

TEST_CASE("blocking verdict equals the excess sign") {
  Rng rng(2717);
  for (int iter = 0; iter < 40; ++iter) {
    const BelGame g = testsupport::random_probabilistic_belgame(rng, 3, 2, -2, 7);
    const Contract c = testsupport::random_feasible_contract(rng, g, iter % 2);
    bool anyBlock = false;
    for (SubsetMask s = 1; s <= g.grandCoalition(); ++s) {
      const bool blocked = blocks(g, c, s).verdict != BlockVerdict::NoBlock;
      CHECK(blocked == (exante_excess(g, c, s) > 0));
      anyBlock = anyBlock || blocked;
    }
    CHECK(exante_membership(g, c) == !anyBlock);
  }
}

TEST_CASE("counterblocks compares thresholds exactly") {
  const BelGame g = symmetric_two_state_game();
  const std::vector<Rational> witness = {Rational(5, 2), Rational(5, 2)};
  // {1,2} would need to beat 10 + 5/2 with expected worth 5.
  CHECK_FALSE(counterblocks(g, lopsided(), 0b110, witness, 0b011));
  // A singleton inside the blocker with worth above its witness share: the
  // witness pays 5/2 > 1, no counterblock.
  CHECK_FALSE(counterblocks(g, lopsided(), 0b110, witness, 0b010));
  CHECK_THROWS_AS(counterblocks(g, lopsided(), 0b110, witness, 0),
                  ValidationError);

  // A singleton counterblocks when the witness underpays it.
  const std::vector<Rational> meager = {Rational(1, 2), Rational(9, 2)};
  CHECK(counterblocks(g, lopsided(), 0b110, meager, 0b010));
}

TEST_CASE("legitimate blocking on the fixture") {
  const BelGame g = symmetric_two_state_game();
  const Contract member = lift_core_point(g, {rat(1), rat(4), rat(4)});
  for (SubsetMask s = 1; s <= 7; ++s) {
    CHECK(legitimate_blocking(g, member, s, false).verdict ==
          BlockVerdict::NoBlock);
  }

  const BlockingReport report = legitimate_blocking(g, lopsided(), 0b110, false);
  CHECK(report.verdict == BlockVerdict::LegitimatelyBlocks);
  CHECK(report.witnessExpectations ==
        std::vector<Rational>{Rational(5, 2), Rational(5, 2)});
  CHECK(report.counterblockers.empty());
}

TEST_CASE("bargaining set memberships on the fixture") {
  const BelGame g = symmetric_two_state_game();
  const Contract member = lift_core_point(g, {rat(1), rat(4), rat(4)});
  CHECK(bargaining_set_membership(g, member));
  CHECK(strong_bargaining_set_membership(g, member));

  CHECK_FALSE(bargaining_set_membership(g, lopsided()));
  CHECK_FALSE(strong_bargaining_set_membership(g, lopsided()));

  CHECK(bargaining_set_membership(g, prenucleolus_contract(g).contract));
}

TEST_CASE("strong bargaining set equals the core on the convex fixture") {
  Rng rng(440);
  const BelGame g = symmetric_two_state_game();
  REQUIRE(is_exante_convex(g));
  for (int iter = 0; iter < 30; ++iter) {
    const Contract c = testsupport::random_feasible_contract(rng, g, iter % 2);
    CHECK(strong_bargaining_set_membership(g, c) == exante_membership(g, c));
  }
}

TEST_CASE("legitimate witnesses admit no counterblocker") {
  const BelGame g = symmetric_two_state_game();
  const BlockingReport report = legitimate_blocking(g, lopsided(), 0b110, false);
  REQUIRE(report.verdict == BlockVerdict::LegitimatelyBlocks);
  for (SubsetMask other = 1; other <= g.grandCoalition(); ++other) {
    CHECK_FALSE(counterblocks(g, lopsided(), 0b110, report.witnessExpectations,
                              other));
  }
  // A blocked-but-counterblocked coalition reports its counterblockers.
  const BlockingReport blocked = legitimate_blocking(g, lopsided(), 0b010, false);
  CHECK(blocked.verdict == BlockVerdict::Blocks);
  CHECK_FALSE(blocked.counterblockers.empty());
  for (SubsetMask other : blocked.counterblockers) {
    CHECK(counterblocks(g, lopsided(), 0b010, blocked.witnessExpectations,
                        other));
  }
}

TEST_CASE("strong membership implies ordinary membership on random games") {
  Rng rng(64000);
  int strongMembers = 0;
  for (int iter = 0; iter < 40; ++iter) {
    const BelGame g = testsupport::random_probabilistic_belgame(rng, 3, 2, -2, 7);
    const Contract c = testsupport::random_feasible_contract(rng, g, iter % 2);
    if (strong_bargaining_set_membership(g, c)) {
      ++strongMembers;
      CHECK(bargaining_set_membership(g, c));
    }
  }
  CHECK(strongMembers > 0);
}

TEST_CASE("theta is invariant along the lineality space") {
  const BelGame g = symmetric_two_state_game();
  const Contract base = lift_core_point(g, {rat(1), rat(4), rat(4)});
  const auto baseTheta = theta(g, base);
  for (const auto& w : lineality_basis(g)) {
    for (const Rational& t : {rat(-10), rat(-1), rat(1), rat(10)}) {
      auto coords = contract_coordinates(base);
      for (std::size_t c = 0; c < coords.size(); ++c) coords[c] += t * w[c];
      const auto moved = theta(
          g, contract_from_coordinates(coords, g.numPlayers(), g.numStates()));
      CHECK(lex_compare(moved, baseTheta) == Ordering::Equal);
    }
  }
}

TEST_CASE("solution operations refuse non-probability priors where needed") {
  std::vector<TUGame> games(2, symmetric_game(2, {rat(0), rat(1), rat(4)}));
  const BelGame g =
      BelGame::withCommonPrior(PlayerSet(2), StateSpace::of_size(2),
                               testsupport::vacuous_mass(2), std::move(games));
  const Contract c = grand_contract({{2, 2}, {2, 2}});
  CHECK_THROWS_AS(blocks(g, c, 0b01), PreconditionError);
  CHECK_THROWS_AS(bargaining_set_membership(g, c), PreconditionError);
  CHECK_THROWS_AS(strong_bargaining_set_membership(g, c), PreconditionError);
  // Excess machinery only needs a common prior.
  CHECK(exante_excess(g, c, 0b01) == -1);
  CHECK(kernel_membership(g, c));
}
