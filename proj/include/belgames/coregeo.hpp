#ifndef BELGAMES_COREGEO_HPP
#define BELGAMES_COREGEO_HPP

#include <optional>
#include <vector>

#include "belgames/exactlp.hpp"
#include "belgames/games.hpp"

namespace belgames {

// Exact test of x(S) >= v(S) for all S with x(N) = v(N).
bool core_membership(const TUGame& game, const PayoffVector& x);

// Engaged iff the core is nonempty; holds a witness payoff vector then.
std::optional<PayoffVector> core_nonempty(const TUGame& game);

// All vertices of the core polytope, lexicographically sorted. Intended for
// small player counts.
std::vector<PayoffVector> core_vertices(const TUGame& game);

// Membership in the set of unblocked feasible grand contracts, decided by
// the expectation inequalities; exact and complete under a common
// probability prior. Infeasible contracts are not members.
bool exante_membership(const BelGame& game, const Contract& contract);

// One-sided test under a common belief prior: a true verdict certifies
// membership, a false verdict decides nothing.
bool exante_sufficient(const BelGame& game, const Contract& contract);

// Expectation profile of a grand contract: y_i = sum_j pi_j * c_i(state j).
PayoffVector aggregate_contract(const BelGame& game, const Contract& contract);

// Canonical grand contract aggregating back to y: every player except the
// first is paid y_i in every state, the first absorbs the per-state
// efficiency correction. Requires y in the core of the expected game.
Contract lift_core_point(const BelGame& game, const PayoffVector& y);

// Contract-space coordinates are flattened state-major: coordinate
// state*n + player.
std::vector<Rational> contract_coordinates(const Contract& grand);
Contract contract_from_coordinates(const std::vector<Rational>& coords,
                                   std::size_t numPlayers,
                                   std::size_t numStates);

// Closed-form basis of the lineality space of the unblocked-contract
// polyhedron, (n-1)(d-1) vectors ordered state-major then by player.
std::vector<std::vector<Rational>> lineality_basis(const BelGame& game);

struct CoreHRep {
  std::size_t numVars = 0;
  std::size_t numInequalities = 0;  // leading entries of `constraints`
  std::size_t numEqualities = 0;    // trailing entries
  std::vector<LinearConstraint> constraints;
};

// Inequalities (ascending coalition mask over nonempty proper coalitions),
// then per-state efficiency equalities.
CoreHRep exante_core_hrep(const BelGame& game);

struct CoreVRep {
  std::vector<Contract> pseudoVertices;
  std::vector<std::vector<Rational>> linealityBasis;
};

// Complete geometric description: one canonical pseudo-vertex per vertex of
// the expected game's core, plus the lineality basis.
CoreVRep exante_core_vrep(const BelGame& game);

}  // namespace belgames

#endif
