#ifndef BELGAMES_SOLUTIONS_HPP
#define BELGAMES_SOLUTIONS_HPP

#include <vector>

#include "belgames/games.hpp"

namespace belgames {

// Excesses of all 2^n coalitions sorted nonincreasingly; `coalitions` lists
// the masks in the sorted order (ties by ascending mask).
struct ThetaVector {
  std::vector<Rational> values;
  std::vector<SubsetMask> coalitions;
};

enum class Ordering { Less, Equal, Greater };

// Dissatisfaction of a coalition with a grand contract before uncertainty
// resolves: Choquet worth of the coalition minus its members' Choquet
// payoffs, under the common prior.
Rational exante_excess(const BelGame& game, const Contract& contract,
                       SubsetMask coalition);

ThetaVector theta(const BelGame& game, const Contract& contract);

Ordering lex_compare(const ThetaVector& a, const ThetaVector& b);

// Classical prenucleolus of a TU game by the iterated exact-LP scheme:
// minimize the worst excess, fix the coalitions whose excess is forced to
// that optimum in every optimal solution, repeat until the payoff is pinned.
PayoffVector prenucleolus_tu(const TUGame& game);

struct PrenucleolusContract {
  Contract contract;
  // Whether the returned contract is efficient in every state. Always true
  // under a probability prior; under a general belief prior the certain
  // contract is returned and this may be false.
  bool statewiseEfficient = false;
};

PrenucleolusContract prenucleolus_contract(const BelGame& game);

// Best excess achievable by coalitions containing i but not j.
Rational surplus(const BelGame& game, const Contract& contract, std::size_t i,
                 std::size_t j);

// Feasible grand contracts with pairwise balanced surpluses.
bool kernel_membership(const BelGame& game, const Contract& contract);

enum class BlockVerdict { NoBlock, Blocks, LegitimatelyBlocks };

struct BlockingReport {
  SubsetMask coalition = 0;
  BlockVerdict verdict = BlockVerdict::NoBlock;
  // Expectation payoffs of the blocking coalition's members (ascending
  // player order); present for Blocks and LegitimatelyBlocks.
  std::vector<Rational> witnessExpectations;
  // Coalitions that counterblock the reported witness; nonempty exactly for
  // verdict Blocks.
  std::vector<SubsetMask> counterblockers;
};

// A coalition blocks iff its ex-ante excess is positive; the witness splits
// the excess evenly in expectation.
BlockingReport blocks(const BelGame& game, const Contract& contract,
                      SubsetMask coalition);

// Whether `other` can counterblock the blocking witness `witness` (an
// expectation vector on `coalition`, ascending member order).
bool counterblocks(const BelGame& game, const Contract& contract,
                   SubsetMask coalition, const std::vector<Rational>& witness,
                   SubsetMask other);

// Decides whether some blocking witness of `coalition` survives every
// counterblocking candidate, by one exact LP maximizing the members' margin.
// Candidates range over all nonempty coalitions, or only those not contained
// in `coalition` when restrictOutside is set.
BlockingReport legitimate_blocking(const BelGame& game,
                                   const Contract& contract,
                                   SubsetMask coalition, bool restrictOutside);

bool bargaining_set_membership(const BelGame& game, const Contract& contract);

bool strong_bargaining_set_membership(const BelGame& game,
                                      const Contract& contract);

}  // namespace belgames

#endif
