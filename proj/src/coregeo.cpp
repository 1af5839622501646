#include "belgames/coregeo.hpp"

#include <utility>

#include "belgames/errors.hpp"

namespace belgames {

namespace {

void require_grand(const BelGame& game, const Contract& contract,
                   const char* operation) {
  if (contract.coalition() != game.grandCoalition()) {
    throw ValidationError(std::string(operation) +
                          " expects a grand contract");
  }
  if (contract.numStates() != game.numStates()) {
    throw ValidationError("contract state count does not match the game");
  }
}

}  // namespace

bool core_membership(const TUGame& game, const PayoffVector& x) {
  if (x.size() != game.numPlayers()) {
    throw ValidationError("payoff vector length does not match player count");
  }
  const SubsetMask grand = game.grandCoalition();
  std::vector<Rational> sums(grand + 1, Rational(0));
  for (SubsetMask s = 1; s <= grand; ++s) {
    const std::size_t low = std::countr_zero(s);
    sums[s] = sums[s & (s - 1)] + x[low];
  }
  if (sums[grand] != game.worth(grand)) return false;
  for (SubsetMask s = 1; s < grand; ++s) {
    if (sums[s] < game.worth(s)) return false;
  }
  return true;
}

namespace {

// Core of a TU game as an H-representation over payoff space.
std::vector<LinearConstraint> core_system(const TUGame& game) {
  const std::size_t n = game.numPlayers();
  const SubsetMask grand = game.grandCoalition();
  std::vector<LinearConstraint> cs;
  cs.reserve(grand);
  for (SubsetMask s = 1; s < grand; ++s) {
    LinearConstraint c;
    c.coeffs.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_contains(s, i)) c.coeffs[i] = 1;
    }
    c.rel = Relation::GreaterEq;
    c.rhs = game.worth(s);
    cs.push_back(std::move(c));
  }
  LinearConstraint eff;
  eff.coeffs.assign(n, Rational(1));
  eff.rel = Relation::Equal;
  eff.rhs = game.worth(grand);
  cs.push_back(std::move(eff));
  return cs;
}

}  // namespace

std::optional<PayoffVector> core_nonempty(const TUGame& game) {
  LinearProgram lp;
  lp.numVars = game.numPlayers();
  lp.objective.assign(lp.numVars, Rational(0));
  lp.constraints = core_system(game);
  const LPOutcome outcome = solve_lp(lp);
  if (outcome.status != LPStatus::Optimal) return std::nullopt;
  return outcome.point;
}

std::vector<PayoffVector> core_vertices(const TUGame& game) {
  return enumerate_polytope_vertices(core_system(game), game.numPlayers());
}

bool exante_membership(const BelGame& game, const Contract& contract) {
  game.requireProbabilisticPrior("exante_membership");
  require_grand(game, contract, "exante_membership");
  if (!game.feasible(contract)) return false;

  const Capacity& prob = game.commonBelief().capacity();
  std::vector<Rational> expectations(game.numPlayers());
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    expectations[i] = expectation(prob, contract.payoffRow(i));
  }
  const SubsetMask grand = game.grandCoalition();
  for (SubsetMask s = 1; s <= grand; ++s) {
    Rational have(0);
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      if (mask_contains(s, i)) have += expectations[i];
    }
    if (expectation(prob, game.coalitionWorths(s)) > have) return false;
  }
  return true;
}

bool exante_sufficient(const BelGame& game, const Contract& contract) {
  game.requireCommonPrior("exante_sufficient");
  require_grand(game, contract, "exante_sufficient");
  if (!game.feasible(contract)) return false;

  const Capacity& belief = game.commonBelief().capacity();
  std::vector<Rational> values(game.numPlayers());
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    values[i] = choquet_integral(belief, contract.payoffRow(i));
  }
  const SubsetMask grand = game.grandCoalition();
  for (SubsetMask s = 1; s <= grand; ++s) {
    Rational have(0);
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      if (mask_contains(s, i)) have += values[i];
    }
    if (choquet_integral(belief, game.coalitionWorths(s)) > have) return false;
  }
  return true;
}

PayoffVector aggregate_contract(const BelGame& game, const Contract& contract) {
  game.requireProbabilisticPrior("aggregate_contract");
  require_grand(game, contract, "aggregate_contract");
  const std::vector<Rational>& pi = game.probabilityWeights();
  PayoffVector y(game.numPlayers(), Rational(0));
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    for (std::size_t j = 0; j < game.numStates(); ++j) {
      y[i] += pi[j] * contract.payoff(i, j);
    }
  }
  return y;
}

Contract lift_core_point(const BelGame& game, const PayoffVector& y) {
  game.requireProbabilisticPrior("lift_core_point");
  const TUGame expected = expected_game(game);
  if (!core_membership(expected, y)) {
    throw PreconditionError(
        "lift_core_point needs a payoff vector in the core of the expected "
        "game");
  }
  const std::size_t n = game.numPlayers();
  const std::size_t d = game.numStates();
  std::vector<std::vector<Rational>> payoffs(n, std::vector<Rational>(d));
  Rational tail(0);
  for (std::size_t i = 1; i < n; ++i) tail += y[i];
  for (std::size_t j = 0; j < d; ++j) {
    payoffs[0][j] = game.stateGame(j).worth(game.grandCoalition()) - tail;
    for (std::size_t i = 1; i < n; ++i) payoffs[i][j] = y[i];
  }
  return Contract::grand(n, std::move(payoffs));
}

std::vector<Rational> contract_coordinates(const Contract& grand) {
  const std::size_t n = grand.members().size();
  const std::size_t d = grand.numStates();
  std::vector<Rational> coords(n * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) coords[j * n + i] = grand.rows()[i][j];
  }
  return coords;
}

Contract contract_from_coordinates(const std::vector<Rational>& coords,
                                   std::size_t numPlayers,
                                   std::size_t numStates) {
  if (coords.size() != numPlayers * numStates) {
    throw ValidationError("coordinate vector has the wrong length");
  }
  std::vector<std::vector<Rational>> payoffs(numPlayers,
                                             std::vector<Rational>(numStates));
  for (std::size_t j = 0; j < numStates; ++j) {
    for (std::size_t i = 0; i < numPlayers; ++i) {
      payoffs[i][j] = coords[j * numPlayers + i];
    }
  }
  return Contract::grand(numPlayers, std::move(payoffs));
}

std::vector<std::vector<Rational>> lineality_basis(const BelGame& game) {
  game.requireProbabilisticPrior("lineality_basis");
  const std::size_t n = game.numPlayers();
  const std::size_t d = game.numStates();
  const std::vector<Rational>& pi = game.probabilityWeights();

  std::vector<std::vector<Rational>> basis;
  if (n < 2 || d < 2) return basis;
  basis.reserve((n - 1) * (d - 1));
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const Rational ratio = pi[j] / pi[d - 1];
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> w(n * d, Rational(0));
      w[j * n] = -1;
      w[j * n + i] = 1;
      w[(d - 1) * n] = ratio;
      w[(d - 1) * n + i] = -ratio;
      basis.push_back(std::move(w));
    }
  }
  return basis;
}

CoreHRep exante_core_hrep(const BelGame& game) {
  game.requireProbabilisticPrior("exante_core_hrep");
  const std::size_t n = game.numPlayers();
  const std::size_t d = game.numStates();
  const std::vector<Rational>& pi = game.probabilityWeights();
  const Capacity& prob = game.commonBelief().capacity();
  const SubsetMask grand = game.grandCoalition();

  CoreHRep rep;
  rep.numVars = n * d;
  for (SubsetMask s = 1; s < grand; ++s) {
    LinearConstraint c;
    c.coeffs.assign(n * d, Rational(0));
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (mask_contains(s, i)) c.coeffs[j * n + i] = pi[j];
      }
    }
    c.rel = Relation::GreaterEq;
    c.rhs = expectation(prob, game.coalitionWorths(s));
    rep.constraints.push_back(std::move(c));
    ++rep.numInequalities;
  }
  for (std::size_t j = 0; j < d; ++j) {
    LinearConstraint c;
    c.coeffs.assign(n * d, Rational(0));
    for (std::size_t i = 0; i < n; ++i) c.coeffs[j * n + i] = 1;
    c.rel = Relation::Equal;
    c.rhs = game.stateGame(j).worth(grand);
    rep.constraints.push_back(std::move(c));
    ++rep.numEqualities;
  }
  return rep;
}

CoreVRep exante_core_vrep(const BelGame& game) {
  game.requireProbabilisticPrior("exante_core_vrep");
  CoreVRep rep;
  rep.linealityBasis = lineality_basis(game);
  const TUGame expected = expected_game(game);
  for (const PayoffVector& y : core_vertices(expected)) {
    rep.pseudoVertices.push_back(lift_core_point(game, y));
  }
  return rep;
}

}  // namespace belgames
