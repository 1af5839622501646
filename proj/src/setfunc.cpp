#include "belgames/setfunc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "belgames/errors.hpp"

namespace belgames {

namespace {

std::size_t ground_size_of(const SetFunctionTable& table) {
  if (table.size() < 2 || !std::has_single_bit(table.size())) {
    throw ValidationError(
        "set-function table size must be a power of two (one entry per "
        "subset)");
  }
  return static_cast<std::size_t>(std::countr_zero(table.size()));
}

}  // namespace

StateSpace::StateSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("state space must be nonempty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw ValidationError("duplicate state label: '" + l + "'");
    }
  }
  if (labels_.size() >= 32) throw ValidationError("too many states");
}

StateSpace StateSpace::of_size(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back("w" + std::to_string(i + 1));
  }
  return StateSpace(std::move(labels));
}

std::optional<std::size_t> StateSpace::indexOf(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

void zeta_transform_in_place(SetFunctionTable& table) {
  const std::size_t d = ground_size_of(table);
  for (std::size_t bit = 0; bit < d; ++bit) {
    const SubsetMask b = singleton_mask(bit);
    for (SubsetMask s = 0; s < table.size(); ++s) {
      if (s & b) table[s] += table[s ^ b];
    }
  }
}

void mobius_transform_in_place(SetFunctionTable& table) {
  const std::size_t d = ground_size_of(table);
  for (std::size_t bit = 0; bit < d; ++bit) {
    const SubsetMask b = singleton_mask(bit);
    for (SubsetMask s = 0; s < table.size(); ++s) {
      if (s & b) table[s] -= table[s ^ b];
    }
  }
}

SetFunctionTable mobius_inverse(const SetFunctionTable& f) {
  SetFunctionTable table = f;
  mobius_transform_in_place(table);
  return table;
}

MassFunction::MassFunction(SetFunctionTable values)
    : values_(std::move(values)), groundSize_(ground_size_of(values_)) {
  if (values_[kEmptyMask] != 0) {
    throw ValidationError("mass on the empty set must be zero");
  }
  Rational total(0);
  for (const auto& v : values_) {
    if (v < 0) throw ValidationError("mass values must be nonnegative");
    total += v;
  }
  if (total != 1) throw ValidationError("mass must sum to 1");
}

Capacity::Capacity(SetFunctionTable values)
    : values_(std::move(values)), groundSize_(ground_size_of(values_)) {
  if (values_[kEmptyMask] != 0) {
    throw ValidationError("capacity of the empty set must be zero");
  }
  if (values_[full_mask(groundSize_)] != 1) {
    throw ValidationError("capacity of the ground set must be one");
  }
  for (SubsetMask s = 0; s < values_.size(); ++s) {
    for (std::size_t bit = 0; bit < groundSize_; ++bit) {
      if (!mask_contains(s, bit)) continue;
      if (values_[s] < values_[s ^ singleton_mask(bit)]) {
        throw ValidationError("capacity must be monotone under inclusion");
      }
    }
  }
}

BeliefFunction::BeliefFunction(Capacity capacity, MassFunction mass)
    : capacity_(std::move(capacity)), mass_(std::move(mass)) {}

BeliefFunction belief_from_mass(const MassFunction& mass) {
  SetFunctionTable table = mass.values();
  zeta_transform_in_place(table);
  return BeliefFunction(Capacity(std::move(table)), mass);
}

Capacity plausibility(const BeliefFunction& belief) {
  const std::size_t d = belief.groundSize();
  const SubsetMask omega = full_mask(d);
  const auto& cap = belief.capacity().values();
  const auto& mass = belief.mass().values();

  SetFunctionTable dual(cap.size());
  for (SubsetMask s = 0; s <= omega; ++s) dual[s] = 1 - cap[omega & ~s];

  for (SubsetMask s = 0; s <= omega; ++s) {
    Rational meeting(0);
    for (SubsetMask b = 1; b <= omega; ++b) {
      if ((b & s) != 0) meeting += mass[b];
    }
    if (meeting != dual[s]) {
      throw std::logic_error("plausibility routes disagree");
    }
  }
  return Capacity(std::move(dual));
}

SetFunctionClass classify(const SetFunctionTable& f) {
  const std::size_t d = ground_size_of(f);
  const SubsetMask omega = full_mask(d);
  if (f[kEmptyMask] != 0 || f[omega] != 1) return SetFunctionClass::NotCapacity;
  for (SubsetMask s = 0; s <= omega; ++s) {
    for (std::size_t bit = 0; bit < d; ++bit) {
      if (mask_contains(s, bit) && f[s] < f[s ^ singleton_mask(bit)]) {
        return SetFunctionClass::NotCapacity;
      }
    }
  }
  const SetFunctionTable mass = mobius_inverse(f);
  for (const auto& v : mass) {
    if (v < 0) return SetFunctionClass::CapacityOnly;
  }
  for (SubsetMask s = 0; s <= omega; ++s) {
    if (mask_size(s) > 1 && mass[s] != 0) return SetFunctionClass::Belief;
  }
  return SetFunctionClass::Probability;
}

FocalElements focal_elements(const MassFunction& mass) {
  FocalElements out;
  SubsetMask covered = 0;
  for (SubsetMask s = 0; s < mass.values().size(); ++s) {
    if (mass.at(s) > 0) {
      out.elements.push_back(s);
      covered |= s;
    }
  }
  out.coversGroundSet = covered == full_mask(mass.groundSize());
  return out;
}

std::vector<Rational> probability_weights(const Capacity& probability) {
  if (classify(probability.values()) != SetFunctionClass::Probability) {
    throw PreconditionError("capacity is not a probability measure");
  }
  std::vector<Rational> weights(probability.groundSize());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = probability.at(singleton_mask(i));
  }
  return weights;
}

}  // namespace belgames
