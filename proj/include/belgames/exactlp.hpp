#ifndef BELGAMES_EXACTLP_HPP
#define BELGAMES_EXACTLP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "belgames/rational.hpp"

namespace belgames {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

// Maximization problem over free (sign-unrestricted) variables. Bounds, if
// any, are ordinary constraints.
struct LinearProgram {
  std::size_t numVars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;                // meaningful only when Optimal
  std::vector<Rational> point;   // one optimal point, exact
};

// Exact two-phase simplex with Bland's pivot rule. Deterministic for
// identical input; terminates on every well-formed program.
LPOutcome solve_lp(const LinearProgram& lp);

// Basis of the solution space of the homogeneous system rows·x = 0.
// Dimension of the result is k - rank(rows) for rows of length k.
std::vector<std::vector<Rational>> nullspace_basis(
    const std::vector<std::vector<Rational>>& rows);

// All vertices of the polyhedron described by `constraints`, enumerated by
// exhaustive selection of full-rank tight subsystems. Requires a trivial
// lineality space (throws PreconditionError otherwise) and is intended for
// small dimensions. Output is deduplicated and sorted lexicographically.
std::vector<std::vector<Rational>> enumerate_polytope_vertices(
    const std::vector<LinearConstraint>& constraints, std::size_t dimension);

// Exact Gauss helpers shared by the polyhedral code and the tests.
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);

bool in_span(const std::vector<std::vector<Rational>>& vectors,
             const std::vector<Rational>& candidate);

// One exact solution of lhs·x = rhs with free variables set to zero, or
// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear_system(
    std::vector<std::vector<Rational>> lhs, std::vector<Rational> rhs);

}  // namespace belgames

#endif
