#ifndef BELGAMES_SETFUNC_HPP
#define BELGAMES_SETFUNC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "belgames/mask.hpp"
#include "belgames/rational.hpp"

namespace belgames {

// Ordered, distinct state labels; subsets of it are SubsetMasks with label 0
// in the lowest bit.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);
  static StateSpace of_size(std::size_t count);

  std::size_t size() const { return labels_.size(); }
  std::size_t tableSize() const { return std::size_t{1} << labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> indexOf(std::string_view label) const;

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Dense table over the subset lattice, indexed by SubsetMask; size 2^d.
using SetFunctionTable = std::vector<Rational>;

// In-place transforms between a set function and its Möbius inverse:
// zeta sums masses over all subsets, mobius undoes it. Exact inverses of
// each other.
void zeta_transform_in_place(SetFunctionTable& table);
void mobius_transform_in_place(SetFunctionTable& table);

SetFunctionTable mobius_inverse(const SetFunctionTable& f);

// Nonnegative masses summing to one with no mass on the empty set. Whether
// the focal elements cover the ground set is a separate, prior-level
// condition (see focal_elements).
class MassFunction {
 public:
  explicit MassFunction(SetFunctionTable values);

  std::size_t groundSize() const { return groundSize_; }
  const SetFunctionTable& values() const { return values_; }
  const Rational& at(SubsetMask set) const { return values_[set]; }

  bool operator==(const MassFunction&) const = default;

 private:
  SetFunctionTable values_;
  std::size_t groundSize_;
};

// Normalized monotone set function.
class Capacity {
 public:
  explicit Capacity(SetFunctionTable values);

  std::size_t groundSize() const { return groundSize_; }
  const SetFunctionTable& values() const { return values_; }
  const Rational& at(SubsetMask set) const { return values_[set]; }

  bool operator==(const Capacity&) const = default;

 private:
  SetFunctionTable values_;
  std::size_t groundSize_;
};

// A capacity paired with its (nonnegative) Möbius inverse; the two are kept
// in exact zeta/Möbius correspondence.
class BeliefFunction {
 public:
  const Capacity& capacity() const { return capacity_; }
  const MassFunction& mass() const { return mass_; }
  std::size_t groundSize() const { return mass_.groundSize(); }

  friend BeliefFunction belief_from_mass(const MassFunction& mass);

 private:
  BeliefFunction(Capacity capacity, MassFunction mass);

  Capacity capacity_;
  MassFunction mass_;
};

BeliefFunction belief_from_mass(const MassFunction& mass);

// Dual capacity: value(A) = 1 - belief(complement of A). Also derived from
// the masses of the sets meeting A; the two routes are checked against each
// other.
Capacity plausibility(const BeliefFunction& belief);

enum class SetFunctionClass { NotCapacity, CapacityOnly, Belief, Probability };

SetFunctionClass classify(const SetFunctionTable& f);

struct FocalElements {
  std::vector<SubsetMask> elements;  // ascending mask order
  bool coversGroundSet = false;
};

FocalElements focal_elements(const MassFunction& mass);

// Weights of the singletons; meaningful when the capacity classifies as a
// probability.
std::vector<Rational> probability_weights(const Capacity& probability);

}  // namespace belgames

#endif
