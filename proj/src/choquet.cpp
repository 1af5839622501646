#include "belgames/choquet.hpp"

#include <algorithm>
#include <numeric>

#include "belgames/errors.hpp"

namespace belgames {

Rational choquet_integral(const Capacity& capacity, const RandomVariable& x) {
  const std::size_t d = capacity.groundSize();
  if (x.size() != d) {
    throw ValidationError("random variable length does not match state count");
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t a, std::size_t b) { return x[a] > x[b]; });

  Rational total(0);
  SubsetMask upper = 0;
  for (std::size_t i = 0; i < d; ++i) {
    upper |= singleton_mask(order[i]);
    const Rational next = (i + 1 < d) ? x[order[i + 1]] : Rational(0);
    total += (x[order[i]] - next) * capacity.at(upper);
  }
  return total;
}

Rational choquet_via_mass(const MassFunction& mass, const RandomVariable& x) {
  if (x.size() != mass.groundSize()) {
    throw ValidationError("random variable length does not match state count");
  }
  Rational total(0);
  for (SubsetMask e = 1; e < mass.values().size(); ++e) {
    if (mass.at(e) == 0) continue;
    bool first = true;
    Rational low(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!mask_contains(e, i)) continue;
      if (first || x[i] < low) low = x[i];
      first = false;
    }
    total += mass.at(e) * low;
  }
  return total;
}

Rational expectation(const Capacity& probability, const RandomVariable& x) {
  if (x.size() != probability.groundSize()) {
    throw ValidationError("random variable length does not match state count");
  }
  const std::vector<Rational> weights = probability_weights(probability);
  Rational total(0);
  for (std::size_t i = 0; i < x.size(); ++i) total += weights[i] * x[i];
  return total;
}

}  // namespace belgames
