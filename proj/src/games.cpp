#include "belgames/games.hpp"

#include <algorithm>
#include <unordered_set>

#include "belgames/errors.hpp"

namespace belgames {

PlayerSet::PlayerSet(std::size_t count) {
  if (count == 0) throw ValidationError("player set must be nonempty");
  if (count >= 32) throw ValidationError("too many players");
  labels_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels_.push_back(std::to_string(i + 1));
  }
}

PlayerSet::PlayerSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("player set must be nonempty");
  if (labels_.size() >= 32) throw ValidationError("too many players");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw ValidationError("duplicate player label: '" + l + "'");
    }
  }
}

std::optional<std::size_t> PlayerSet::indexOf(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

TUGame::TUGame(PlayerSet players, SetFunctionTable worth)
    : players_(std::move(players)), worth_(std::move(worth)) {
  if (worth_.size() != (std::size_t{1} << players_.size())) {
    throw ValidationError("worth table size must be 2^(player count)");
  }
  if (worth_[kEmptyMask] != 0) {
    throw ValidationError("worth of the empty coalition must be zero");
  }
}

Contract::Contract(SubsetMask coalition,
                   std::vector<std::vector<Rational>> payoffs,
                   std::size_t numStates)
    : coalition_(coalition),
      members_(mask_members(coalition)),
      payoffs_(std::move(payoffs)),
      numStates_(numStates) {
  if (payoffs_.size() != members_.size()) {
    throw ValidationError("contract needs one payoff row per member");
  }
  for (const auto& row : payoffs_) {
    if (row.size() != numStates_) {
      throw ValidationError("contract rows must have one entry per state");
    }
  }
}

Contract Contract::grand(std::size_t numPlayers,
                         std::vector<std::vector<Rational>> payoffs) {
  if (payoffs.empty()) throw ValidationError("grand contract needs rows");
  const std::size_t states = payoffs.front().size();
  return Contract(full_mask(numPlayers), std::move(payoffs), states);
}

const Rational& Contract::payoff(std::size_t player, std::size_t state) const {
  for (std::size_t r = 0; r < members_.size(); ++r) {
    if (members_[r] == player) return payoffs_[r][state];
  }
  throw ValidationError("player is not a member of the contract's coalition");
}

RandomVariable Contract::payoffRow(std::size_t player) const {
  for (std::size_t r = 0; r < members_.size(); ++r) {
    if (members_[r] == player) return payoffs_[r];
  }
  throw ValidationError("player is not a member of the contract's coalition");
}

BelGame::BelGame(PlayerSet players, StateSpace states,
                 std::vector<MassFunction> priors,
                 std::vector<TUGame> stateGames)
    : players_(std::move(players)),
      states_(std::move(states)),
      priors_(std::move(priors)),
      stateGames_(std::move(stateGames)) {
  if (priors_.size() != players_.size()) {
    throw ValidationError("need exactly one prior per player");
  }
  if (stateGames_.size() != states_.size()) {
    throw ValidationError("need exactly one state game per state");
  }
  for (std::size_t j = 0; j < priors_.size(); ++j) {
    if (priors_[j].groundSize() != states_.size()) {
      throw ValidationError("prior of player '" + players_.label(j) +
                            "' is not defined on the state space");
    }
    const FocalElements focal = focal_elements(priors_[j]);
    if (!focal.coversGroundSet) {
      const bool singletonsOnly = std::all_of(
          focal.elements.begin(), focal.elements.end(),
          [](SubsetMask e) { return mask_size(e) == 1; });
      if (singletonsOnly) {
        throw ValidationError("full support required: probability prior of "
                              "player '" +
                              players_.label(j) + "' has a zero-mass state");
      }
      throw ValidationError("focal elements of player '" + players_.label(j) +
                            "'s prior must cover the state space");
    }
  }
  for (const auto& g : stateGames_) {
    if (!(g.players() == players_)) {
      throw ValidationError("all state games must share the player set");
    }
  }

  beliefs_.reserve(priors_.size());
  for (const auto& m : priors_) beliefs_.push_back(belief_from_mass(m));

  const bool common = std::all_of(
      priors_.begin(), priors_.end(),
      [this](const MassFunction& m) { return m == priors_.front(); });
  if (common) {
    commonBelief_ = beliefs_.front();
    commonPlausibility_ = plausibility(*commonBelief_);
    if (classify(commonBelief_->capacity().values()) ==
        SetFunctionClass::Probability) {
      probabilityWeights_ = probability_weights(commonBelief_->capacity());
    }
  }
}

BelGame BelGame::withCommonPrior(PlayerSet players, StateSpace states,
                                 MassFunction prior,
                                 std::vector<TUGame> stateGames) {
  std::vector<MassFunction> priors(players.size(), prior);
  return BelGame(std::move(players), std::move(states), std::move(priors),
                 std::move(stateGames));
}

const BeliefFunction& BelGame::commonBelief() const {
  requireCommonPrior("commonBelief");
  return *commonBelief_;
}

const Capacity& BelGame::commonPlausibility() const {
  requireCommonPrior("commonPlausibility");
  return *commonPlausibility_;
}

const std::vector<Rational>& BelGame::probabilityWeights() const {
  requireProbabilisticPrior("probabilityWeights");
  return *probabilityWeights_;
}

void BelGame::requireCommonPrior(const char* operation) const {
  if (!commonBelief_.has_value()) {
    throw PreconditionError(std::string(operation) +
                            " requires all agents to share a common prior");
  }
}

void BelGame::requireProbabilisticPrior(const char* operation) const {
  requireCommonPrior(operation);
  if (!probabilityWeights_.has_value()) {
    throw PreconditionError(
        std::string(operation) +
        " requires the common prior to be a probability measure");
  }
}

RandomVariable BelGame::coalitionWorths(SubsetMask coalition) const {
  RandomVariable worths(states_.size());
  for (std::size_t j = 0; j < states_.size(); ++j) {
    worths[j] = stateGames_[j].worth(coalition);
  }
  return worths;
}

Rational BelGame::playerChoquetValue(const Contract& contract,
                                     std::size_t player) const {
  return choquet_integral(beliefs_[player].capacity(),
                          contract.payoffRow(player));
}

bool BelGame::feasible(const Contract& contract) const {
  if (contract.numStates() != states_.size()) {
    throw ValidationError("contract state count does not match the game");
  }
  for (std::size_t j = 0; j < states_.size(); ++j) {
    Rational total(0);
    for (const auto& row : contract.rows()) total += row[j];
    if (total > stateGames_[j].worth(contract.coalition())) return false;
  }
  return true;
}

bool BelGame::efficientAt(const Contract& contract, std::size_t state) const {
  Rational total(0);
  for (const auto& row : contract.rows()) total += row[state];
  return total == stateGames_[state].worth(contract.coalition());
}

bool BelGame::efficient(const Contract& contract) const {
  for (std::size_t j = 0; j < states_.size(); ++j) {
    if (!efficientAt(contract, j)) return false;
  }
  return true;
}

TUGame expected_game(const BelGame& game) {
  game.requireCommonPrior("expected_game");
  const Capacity& belief = game.commonBelief().capacity();
  SetFunctionTable worth(std::size_t{1} << game.numPlayers());
  for (SubsetMask s = 1; s < worth.size(); ++s) {
    worth[s] = choquet_integral(belief, game.coalitionWorths(s));
  }
  return TUGame(game.players(), std::move(worth));
}

PayoffVector shapley_value(const TUGame& game) {
  const std::size_t n = game.numPlayers();
  std::vector<BigInt> factorial(n + 1, BigInt(1));
  for (std::size_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;

  PayoffVector value(n, Rational(0));
  const SubsetMask grand = game.grandCoalition();
  for (std::size_t i = 0; i < n; ++i) {
    const SubsetMask bit = singleton_mask(i);
    for (SubsetMask s = 0; s <= grand; ++s) {
      if (s & bit) continue;
      const std::size_t size = mask_size(s);
      const Rational weight(factorial[size] * factorial[n - size - 1],
                            factorial[n]);
      value[i] += weight * (game.worth(s | bit) - game.worth(s));
    }
  }
  return value;
}

Contract shapley_contract(const BelGame& game) {
  std::vector<std::vector<Rational>> payoffs(
      game.numPlayers(), std::vector<Rational>(game.numStates()));
  for (std::size_t j = 0; j < game.numStates(); ++j) {
    const PayoffVector phi = shapley_value(game.stateGame(j));
    for (std::size_t i = 0; i < game.numPlayers(); ++i) payoffs[i][j] = phi[i];
  }
  return Contract::grand(game.numPlayers(), std::move(payoffs));
}

PayoffVector marginal_vector(const TUGame& game, const Permutation& order) {
  const std::size_t n = game.numPlayers();
  if (order.size() != n) {
    throw ValidationError("permutation length does not match player count");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : order) {
    if (p >= n || seen[p]) throw ValidationError("not a permutation");
    seen[p] = true;
  }
  PayoffVector value(n);
  SubsetMask built = 0;
  for (std::size_t p : order) {
    const SubsetMask with = built | singleton_mask(p);
    value[p] = game.worth(with) - game.worth(built);
    built = with;
  }
  return value;
}

bool is_convex_tu(const TUGame& game) {
  const SubsetMask grand = game.grandCoalition();
  for (SubsetMask a = 0; a <= grand; ++a) {
    for (SubsetMask b = a; b <= grand; ++b) {
      if (game.worth(a) + game.worth(b) >
          game.worth(a | b) + game.worth(a & b)) {
        return false;
      }
    }
  }
  return true;
}

bool is_exante_convex(const BelGame& game) {
  game.requireCommonPrior("is_exante_convex");
  const Capacity& belief = game.commonBelief().capacity();
  const Capacity& plaus = game.commonPlausibility();
  const SubsetMask grand = game.grandCoalition();

  std::vector<Rational> lower(grand + 1), upper(grand + 1);
  for (SubsetMask s = 0; s <= grand; ++s) {
    const RandomVariable worths = game.coalitionWorths(s);
    lower[s] = choquet_integral(belief, worths);
    upper[s] = choquet_integral(plaus, worths);
  }
  for (SubsetMask s = 0; s <= grand; ++s) {
    for (SubsetMask t = s; t <= grand; ++t) {
      if (upper[s] + upper[t] > lower[s | t] + lower[s & t]) return false;
    }
  }
  return true;
}

std::vector<std::size_t> null_players(const BelGame& game) {
  std::vector<std::size_t> result;
  const SubsetMask grand = game.grandCoalition();
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    const SubsetMask bit = singleton_mask(i);
    bool isNull = true;
    for (std::size_t j = 0; j < game.numStates() && isNull; ++j) {
      const TUGame& v = game.stateGame(j);
      for (SubsetMask s = 0; s <= grand && isNull; ++s) {
        if (s & bit) continue;
        if (v.worth(s | bit) != v.worth(s)) isNull = false;
      }
    }
    if (isNull) result.push_back(i);
  }
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> symmetric_pairs(
    const BelGame& game) {
  std::vector<std::pair<std::size_t, std::size_t>> result;
  const SubsetMask grand = game.grandCoalition();
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    for (std::size_t k = i + 1; k < game.numPlayers(); ++k) {
      const SubsetMask bi = singleton_mask(i);
      const SubsetMask bk = singleton_mask(k);
      bool symmetric = true;
      for (std::size_t j = 0; j < game.numStates() && symmetric; ++j) {
        const TUGame& v = game.stateGame(j);
        for (SubsetMask s = 0; s <= grand && symmetric; ++s) {
          if ((s & bi) || (s & bk)) continue;
          if (v.worth(s | bi) != v.worth(s | bk)) symmetric = false;
        }
      }
      if (symmetric) result.emplace_back(i, k);
    }
  }
  return result;
}

}  // namespace belgames
