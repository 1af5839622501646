#ifndef BELGAMES_CHOQUET_HPP
#define BELGAMES_CHOQUET_HPP

#include <vector>

#include "belgames/rational.hpp"
#include "belgames/setfunc.hpp"

namespace belgames {

// A payoff profile across states, one entry per state.
using RandomVariable = std::vector<Rational>;

// Choquet expectation of `x` with respect to `capacity`, via the
// nonincreasing-rearrangement sum. Ties in the rearrangement are broken by
// state index; the value does not depend on the tie-break.
Rational choquet_integral(const Capacity& capacity, const RandomVariable& x);

// Mass-weighted minimum: sum over focal sets E of m(E) * min over E of x.
// Equals choquet_integral of the induced belief; kept as an independent
// route for cross-checking.
Rational choquet_via_mass(const MassFunction& mass, const RandomVariable& x);

// Ordinary expectation; requires the capacity to classify as a probability.
Rational expectation(const Capacity& probability, const RandomVariable& x);

}  // namespace belgames

#endif
