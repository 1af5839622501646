#ifndef BELGAMES_GAMES_HPP
#define BELGAMES_GAMES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belgames/choquet.hpp"
#include "belgames/mask.hpp"
#include "belgames/rational.hpp"
#include "belgames/setfunc.hpp"

namespace belgames {

class PlayerSet {
 public:
  explicit PlayerSet(std::size_t count);
  explicit PlayerSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> indexOf(std::string_view label) const;

  bool operator==(const PlayerSet&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Transferable-utility coalitional game: worth per coalition, zero on the
// empty coalition.
class TUGame {
 public:
  TUGame(PlayerSet players, SetFunctionTable worth);

  const PlayerSet& players() const { return players_; }
  std::size_t numPlayers() const { return players_.size(); }
  SubsetMask grandCoalition() const { return full_mask(players_.size()); }
  const SetFunctionTable& worthTable() const { return worth_; }
  const Rational& worth(SubsetMask coalition) const { return worth_[coalition]; }

  bool operator==(const TUGame&) const = default;

 private:
  PlayerSet players_;
  SetFunctionTable worth_;
};

using PayoffVector = std::vector<Rational>;

// Player ordering; a bijection on 0..n-1.
using Permutation = std::vector<std::size_t>;

// Payoff matrix of a coalition over states: one row per member (ascending
// player index), one column per state.
class Contract {
 public:
  Contract(SubsetMask coalition, std::vector<std::vector<Rational>> payoffs,
           std::size_t numStates);
  static Contract grand(std::size_t numPlayers,
                        std::vector<std::vector<Rational>> payoffs);

  SubsetMask coalition() const { return coalition_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t numStates() const { return numStates_; }
  bool hasPlayer(std::size_t player) const {
    return mask_contains(coalition_, player);
  }
  const Rational& payoff(std::size_t player, std::size_t state) const;
  // Payoff profile of one member across states.
  RandomVariable payoffRow(std::size_t player) const;
  const std::vector<std::vector<Rational>>& rows() const { return payoffs_; }

  bool operator==(const Contract&) const = default;

 private:
  SubsetMask coalition_;
  std::vector<std::size_t> members_;
  std::vector<std::vector<Rational>> payoffs_;
  std::size_t numStates_;
};

// Players, states, one prior per player, one TU-game per state. Validated on
// construction: focal elements of every prior cover the state space, all
// state games share the player set, and a common probability prior must have
// full support.
class BelGame {
 public:
  BelGame(PlayerSet players, StateSpace states,
          std::vector<MassFunction> priors, std::vector<TUGame> stateGames);
  static BelGame withCommonPrior(PlayerSet players, StateSpace states,
                                 MassFunction prior,
                                 std::vector<TUGame> stateGames);

  const PlayerSet& players() const { return players_; }
  const StateSpace& states() const { return states_; }
  std::size_t numPlayers() const { return players_.size(); }
  std::size_t numStates() const { return states_.size(); }
  SubsetMask grandCoalition() const { return full_mask(players_.size()); }

  const MassFunction& prior(std::size_t player) const {
    return priors_[player];
  }
  bool commonPrior() const { return commonBelief_.has_value(); }
  bool probabilisticPrior() const { return probabilityWeights_.has_value(); }

  // Throw PreconditionError when the corresponding flag is off.
  const BeliefFunction& commonBelief() const;
  const Capacity& commonPlausibility() const;
  const std::vector<Rational>& probabilityWeights() const;
  void requireCommonPrior(const char* operation) const;
  void requireProbabilisticPrior(const char* operation) const;

  const TUGame& stateGame(std::size_t state) const {
    return stateGames_[state];
  }

  // Worth of one coalition across states, as a random variable.
  RandomVariable coalitionWorths(SubsetMask coalition) const;

  // Choquet value of a member's payoff profile under that member's own
  // prior. This is the evaluation that drives every preference in the model.
  Rational playerChoquetValue(const Contract& contract,
                              std::size_t player) const;

  bool feasible(const Contract& contract) const;
  bool efficientAt(const Contract& contract, std::size_t state) const;
  bool efficient(const Contract& contract) const;

 private:
  PlayerSet players_;
  StateSpace states_;
  std::vector<MassFunction> priors_;
  std::vector<TUGame> stateGames_;
  std::vector<BeliefFunction> beliefs_;  // one per player
  std::optional<BeliefFunction> commonBelief_;
  std::optional<Capacity> commonPlausibility_;
  std::optional<std::vector<Rational>> probabilityWeights_;
};

// Expected game V(S) = Choquet expectation of the coalition's worth under
// the common prior.
TUGame expected_game(const BelGame& game);

PayoffVector shapley_value(const TUGame& game);

// Grand contract paying the per-state Shapley value.
Contract shapley_contract(const BelGame& game);

PayoffVector marginal_vector(const TUGame& game, const Permutation& order);

// Supermodularity: v(A) + v(B) <= v(A|B) + v(A&B) for all pairs.
bool is_convex_tu(const TUGame& game);

// Plausibility-vs-belief supermodularity of the coalition worth profiles
// under the common prior.
bool is_exante_convex(const BelGame& game);

// Players whose marginal contribution is zero in every state.
std::vector<std::size_t> null_players(const BelGame& game);

// Unordered pairs with identical marginal contributions in every state.
std::vector<std::pair<std::size_t, std::size_t>> symmetric_pairs(
    const BelGame& game);

}  // namespace belgames

#endif
