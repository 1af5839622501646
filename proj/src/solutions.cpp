#include "belgames/solutions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "belgames/coregeo.hpp"
#include "belgames/errors.hpp"
#include "belgames/exactlp.hpp"

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

// Choquet value of every player's payoff row under the common prior.
std::vector<Rational> member_values(const BelGame& game,
                                    const Contract& contract) {
  const Capacity& belief = game.commonBelief().capacity();
  std::vector<Rational> values(game.numPlayers());
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    values[i] = choquet_integral(belief, contract.payoffRow(i));
  }
  return values;
}

std::vector<Rational> excess_table(const BelGame& game,
                                   const Contract& contract) {
  const Capacity& belief = game.commonBelief().capacity();
  const std::vector<Rational> values = member_values(game, contract);
  const SubsetMask grand = game.grandCoalition();
  std::vector<Rational> table(grand + 1, Rational(0));
  for (SubsetMask s = 1; s <= grand; ++s) {
    Rational have(0);
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      if (mask_contains(s, i)) have += values[i];
    }
    table[s] = choquet_integral(belief, game.coalitionWorths(s)) - have;
  }
  return table;
}

}  // namespace

Rational exante_excess(const BelGame& game, const Contract& contract,
                       SubsetMask coalition) {
  game.requireCommonPrior("exante_excess");
  require_grand(game, contract, "exante_excess");
  if (!is_subset(coalition, game.grandCoalition())) {
    throw ValidationError("coalition is not a subset of the player set");
  }
  if (coalition == kEmptyMask) return Rational(0);
  const Capacity& belief = game.commonBelief().capacity();
  Rational have(0);
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    if (mask_contains(coalition, i)) {
      have += choquet_integral(belief, contract.payoffRow(i));
    }
  }
  return choquet_integral(belief, game.coalitionWorths(coalition)) - have;
}

ThetaVector theta(const BelGame& game, const Contract& contract) {
  game.requireCommonPrior("theta");
  require_grand(game, contract, "theta");
  const std::vector<Rational> table = excess_table(game, contract);

  std::vector<SubsetMask> masks(table.size());
  std::iota(masks.begin(), masks.end(), SubsetMask{0});
  std::sort(masks.begin(), masks.end(), [&table](SubsetMask a, SubsetMask b) {
    if (table[a] != table[b]) return table[a] > table[b];
    return a < b;
  });

  ThetaVector out;
  out.values.reserve(masks.size());
  out.coalitions = masks;
  for (SubsetMask s : masks) out.values.push_back(table[s]);
  return out;
}

Ordering lex_compare(const ThetaVector& a, const ThetaVector& b) {
  if (a.values.size() != b.values.size()) {
    throw ValidationError("theta vectors of different length");
  }
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] < b.values[i]) return Ordering::Less;
    if (a.values[i] > b.values[i]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

namespace {

// One round of the prenucleolus scheme: minimize the maximum excess over the
// still-active coalitions, with previously fixed coalitions held at their
// levels. Variables are (x, eps).
LinearProgram round_program(const TUGame& game,
                            const std::vector<SubsetMask>& active,
                            const std::vector<std::pair<SubsetMask, Rational>>&
                                fixed) {
  const std::size_t n = game.numPlayers();
  LinearProgram lp;
  lp.numVars = n + 1;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = -1;  // maximize -eps

  LinearConstraint eff;
  eff.coeffs.assign(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) eff.coeffs[i] = 1;
  eff.rel = Relation::Equal;
  eff.rhs = game.worth(game.grandCoalition());
  lp.constraints.push_back(std::move(eff));

  for (const auto& [mask, level] : fixed) {
    LinearConstraint c;
    c.coeffs.assign(n + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_contains(mask, i)) c.coeffs[i] = 1;
    }
    c.rel = Relation::Equal;
    c.rhs = game.worth(mask) - level;
    lp.constraints.push_back(std::move(c));
  }
  for (SubsetMask mask : active) {
    LinearConstraint c;  // x(S) + eps >= v(S)
    c.coeffs.assign(n + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_contains(mask, i)) c.coeffs[i] = 1;
    }
    c.coeffs[n] = 1;
    c.rel = Relation::GreaterEq;
    c.rhs = game.worth(mask);
    lp.constraints.push_back(std::move(c));
  }
  return lp;
}

std::size_t fixed_rank(const TUGame& game,
                       const std::vector<std::pair<SubsetMask, Rational>>&
                           fixed) {
  const std::size_t n = game.numPlayers();
  std::vector<std::vector<Rational>> rows;
  rows.emplace_back(n, Rational(1));
  for (const auto& [mask, level] : fixed) {
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_contains(mask, i)) row[i] = 1;
    }
    rows.push_back(std::move(row));
  }
  return matrix_rank(std::move(rows));
}

}  // namespace

PayoffVector prenucleolus_tu(const TUGame& game) {
  const std::size_t n = game.numPlayers();
  const SubsetMask grand = game.grandCoalition();

  std::vector<SubsetMask> active;
  for (SubsetMask s = 1; s < grand; ++s) active.push_back(s);
  std::vector<std::pair<SubsetMask, Rational>> fixed;

  if (n == 1) return PayoffVector{game.worth(grand)};

  while (fixed_rank(game, fixed) < n) {
    const LPOutcome round = solve_lp(round_program(game, active, fixed));
    if (round.status != LPStatus::Optimal) {
      throw std::logic_error("prenucleolus round LP must be solvable");
    }
    const Rational eps = -round.value;

    // A coalition's excess is pinned at eps iff x(S) cannot exceed
    // v(S) - eps over the optimal face.
    std::vector<SubsetMask> stillActive;
    bool fixedAny = false;
    for (SubsetMask s : active) {
      LinearProgram probe = round_program(game, active, fixed);
      probe.objective.assign(n + 1, Rational(0));
      for (std::size_t i = 0; i < n; ++i) {
        if (mask_contains(s, i)) probe.objective[i] = 1;
      }
      LinearConstraint cap;  // eps stays at the round optimum
      cap.coeffs.assign(n + 1, Rational(0));
      cap.coeffs[n] = 1;
      cap.rel = Relation::Equal;
      cap.rhs = eps;
      probe.constraints.push_back(std::move(cap));

      const LPOutcome best = solve_lp(probe);
      if (best.status != LPStatus::Optimal) {
        throw std::logic_error("prenucleolus probe LP must be solvable");
      }
      if (best.value == game.worth(s) - eps) {
        fixed.emplace_back(s, eps);
        fixedAny = true;
      } else {
        stillActive.push_back(s);
      }
    }
    if (!fixedAny) {
      throw std::logic_error("prenucleolus round fixed no coalition");
    }
    active = std::move(stillActive);
  }

  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  lhs.emplace_back(n, Rational(1));
  rhs.push_back(game.worth(grand));
  for (const auto& [mask, level] : fixed) {
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_contains(mask, i)) row[i] = 1;
    }
    lhs.push_back(std::move(row));
    rhs.push_back(game.worth(mask) - level);
  }
  auto solution = solve_linear_system(std::move(lhs), std::move(rhs));
  if (!solution) {
    throw std::logic_error("prenucleolus equalities must be consistent");
  }
  return *solution;
}

PrenucleolusContract prenucleolus_contract(const BelGame& game) {
  game.requireCommonPrior("prenucleolus_contract");
  const std::size_t n = game.numPlayers();
  const std::size_t d = game.numStates();
  const TUGame expected = expected_game(game);
  const PayoffVector nucleolus = prenucleolus_tu(expected);

  std::vector<std::vector<Rational>> payoffs(n, std::vector<Rational>(d));
  if (game.probabilisticPrior()) {
    // Spread each state's efficiency gap evenly; expectations stay at the
    // expected game's prenucleolus.
    for (std::size_t j = 0; j < d; ++j) {
      const Rational correction =
          (game.stateGame(j).worth(game.grandCoalition()) -
           expected.worth(game.grandCoalition())) /
          Rational(n);
      for (std::size_t i = 0; i < n; ++i) {
        payoffs[i][j] = nucleolus[i] + correction;
      }
    }
  } else {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) payoffs[i][j] = nucleolus[i];
    }
  }
  PrenucleolusContract result{Contract::grand(n, std::move(payoffs)), false};
  result.statewiseEfficient = game.efficient(result.contract);
  return result;
}

Rational surplus(const BelGame& game, const Contract& contract, std::size_t i,
                 std::size_t j) {
  game.requireCommonPrior("surplus");
  require_grand(game, contract, "surplus");
  if (i == j) throw ValidationError("surplus requires two distinct players");
  if (i >= game.numPlayers() || j >= game.numPlayers()) {
    throw ValidationError("player index out of range");
  }
  const std::vector<Rational> table = excess_table(game, contract);
  const SubsetMask grand = game.grandCoalition();
  bool first = true;
  Rational best(0);
  for (SubsetMask s = 1; s <= grand; ++s) {
    if (!mask_contains(s, i) || mask_contains(s, j)) continue;
    if (first || table[s] > best) best = table[s];
    first = false;
  }
  return best;
}

bool kernel_membership(const BelGame& game, const Contract& contract) {
  game.requireCommonPrior("kernel_membership");
  require_grand(game, contract, "kernel_membership");
  if (!game.feasible(contract)) return false;
  const std::size_t n = game.numPlayers();
  if (n == 1) return true;

  const std::vector<Rational> table = excess_table(game, contract);
  const SubsetMask grand = game.grandCoalition();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational sij, sji;
      bool haveIj = false, haveJi = false;
      for (SubsetMask s = 1; s <= grand; ++s) {
        if (mask_contains(s, i) && !mask_contains(s, j)) {
          if (!haveIj || table[s] > sij) sij = table[s];
          haveIj = true;
        } else if (mask_contains(s, j) && !mask_contains(s, i)) {
          if (!haveJi || table[s] > sji) sji = table[s];
          haveJi = true;
        }
      }
      if (sij != sji) return false;
    }
  }
  return true;
}

BlockingReport blocks(const BelGame& game, const Contract& contract,
                      SubsetMask coalition) {
  game.requireProbabilisticPrior("blocks");
  require_grand(game, contract, "blocks");
  BlockingReport report;
  report.coalition = coalition;
  if (coalition == kEmptyMask) return report;

  const Rational excess = exante_excess(game, contract, coalition);
  if (excess <= 0) return report;

  report.verdict = BlockVerdict::Blocks;
  const Capacity& prob = game.commonBelief().capacity();
  const Rational share = excess / Rational(mask_size(coalition));
  for (std::size_t i : mask_members(coalition)) {
    report.witnessExpectations.push_back(
        expectation(prob, contract.payoffRow(i)) + share);
  }
  return report;
}

bool counterblocks(const BelGame& game, const Contract& contract,
                   SubsetMask coalition, const std::vector<Rational>& witness,
                   SubsetMask other) {
  game.requireProbabilisticPrior("counterblocks");
  require_grand(game, contract, "counterblocks");
  if (other == kEmptyMask) {
    throw ValidationError("counterblocking coalition must be nonempty");
  }
  const std::vector<std::size_t> members = mask_members(coalition);
  if (witness.size() != members.size()) {
    throw ValidationError("witness length does not match the coalition");
  }

  // Achievable: the members of `other` can be paid anything summing to the
  // expected worth of `other`; counterblocking needs strict room above the
  // thresholds they would abandon.
  const Capacity& prob = game.commonBelief().capacity();
  Rational threshold(0);
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    if (!mask_contains(other, i)) continue;
    if (mask_contains(coalition, i)) {
      const std::size_t pos = static_cast<std::size_t>(
          std::find(members.begin(), members.end(), i) - members.begin());
      threshold += witness[pos];
    } else {
      threshold += expectation(prob, contract.payoffRow(i));
    }
  }
  return expectation(prob, game.coalitionWorths(other)) > threshold;
}

BlockingReport legitimate_blocking(const BelGame& game,
                                   const Contract& contract,
                                   SubsetMask coalition,
                                   bool restrictOutside) {
  game.requireProbabilisticPrior("legitimate_blocking");
  require_grand(game, contract, "legitimate_blocking");

  BlockingReport report = blocks(game, contract, coalition);
  if (report.verdict == BlockVerdict::NoBlock) return report;

  const Capacity& prob = game.commonBelief().capacity();
  const std::vector<std::size_t> members = mask_members(coalition);
  const std::size_t k = members.size();
  const SubsetMask grand = game.grandCoalition();

  std::vector<Rational> expectations(game.numPlayers());
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    expectations[i] = expectation(prob, contract.payoffRow(i));
  }

  // Variables: one expectation payoff per member, then the margin delta.
  // Maximize delta subject to y_t >= E(c_t) + delta, y(S) <= E(v(S)), and
  // "no candidate counterblocks": y(S' & S) >= E(v(S')) - E(c on S' \ S).
  LinearProgram lp;
  lp.numVars = k + 1;
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = 1;

  for (std::size_t t = 0; t < k; ++t) {
    LinearConstraint c;
    c.coeffs.assign(k + 1, Rational(0));
    c.coeffs[t] = 1;
    c.coeffs[k] = -1;
    c.rel = Relation::GreaterEq;
    c.rhs = expectations[members[t]];
    lp.constraints.push_back(std::move(c));
  }
  {
    LinearConstraint c;
    c.coeffs.assign(k + 1, Rational(0));
    for (std::size_t t = 0; t < k; ++t) c.coeffs[t] = 1;
    c.rel = Relation::LessEq;
    c.rhs = expectation(prob, game.coalitionWorths(coalition));
    lp.constraints.push_back(std::move(c));
  }
  for (SubsetMask other = 1; other <= grand; ++other) {
    if (restrictOutside && is_subset(other, coalition)) continue;
    LinearConstraint c;
    c.coeffs.assign(k + 1, Rational(0));
    for (std::size_t t = 0; t < k; ++t) {
      if (mask_contains(other, members[t])) c.coeffs[t] = 1;
    }
    Rational outside(0);
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      if (mask_contains(other, i) && !mask_contains(coalition, i)) {
        outside += expectations[i];
      }
    }
    c.rel = Relation::GreaterEq;
    c.rhs = expectation(prob, game.coalitionWorths(other)) - outside;
    lp.constraints.push_back(std::move(c));
  }

  LPOutcome outcome = solve_lp(lp);
  if (outcome.status == LPStatus::Unbounded) {
    // Pin the margin to recover a witness; any positive margin suffices.
    LinearConstraint cap;
    cap.coeffs.assign(k + 1, Rational(0));
    cap.coeffs[k] = 1;
    cap.rel = Relation::LessEq;
    cap.rhs = 1;
    lp.constraints.push_back(std::move(cap));
    outcome = solve_lp(lp);
  }
  if (outcome.status == LPStatus::Optimal && outcome.value > 0) {
    report.verdict = BlockVerdict::LegitimatelyBlocks;
    report.witnessExpectations.assign(outcome.point.begin(),
                                      outcome.point.begin() +
                                          static_cast<std::ptrdiff_t>(k));
    report.counterblockers.clear();
    return report;
  }

  // Every blocking witness is counterblocked; list the candidates that
  // counterblock the even-split witness.
  for (SubsetMask other = 1; other <= grand; ++other) {
    if (restrictOutside && is_subset(other, coalition)) continue;
    if (counterblocks(game, contract, coalition, report.witnessExpectations,
                      other)) {
      report.counterblockers.push_back(other);
    }
  }
  return report;
}

bool bargaining_set_membership(const BelGame& game, const Contract& contract) {
  game.requireProbabilisticPrior("bargaining_set_membership");
  require_grand(game, contract, "bargaining_set_membership");
  if (!game.feasible(contract)) return false;
  const SubsetMask grand = game.grandCoalition();
  for (SubsetMask s = 1; s <= grand; ++s) {
    if (legitimate_blocking(game, contract, s, false).verdict ==
        BlockVerdict::LegitimatelyBlocks) {
      return false;
    }
  }
  return true;
}

bool strong_bargaining_set_membership(const BelGame& game,
                                      const Contract& contract) {
  game.requireProbabilisticPrior("strong_bargaining_set_membership");
  require_grand(game, contract, "strong_bargaining_set_membership");
  if (!game.feasible(contract)) return false;
  const SubsetMask grand = game.grandCoalition();
  for (SubsetMask s = 1; s <= grand; ++s) {
    if (legitimate_blocking(game, contract, s, true).verdict ==
        BlockVerdict::LegitimatelyBlocks) {
      return false;
    }
  }
  return true;
}

}  // namespace belgames
