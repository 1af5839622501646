#ifndef BELGAMES_MASK_HPP
#define BELGAMES_MASK_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace belgames {

// Subset of a ground set (states or players), one bit per element, element 0
// in the lowest bit. Ground sets here never exceed 32 elements.
using SubsetMask = std::uint32_t;

inline constexpr SubsetMask kEmptyMask = 0;

constexpr SubsetMask full_mask(std::size_t groundSize) {
  return groundSize >= 32 ? ~SubsetMask{0}
                          : (SubsetMask{1} << groundSize) - SubsetMask{1};
}

constexpr SubsetMask singleton_mask(std::size_t element) {
  return SubsetMask{1} << element;
}

constexpr bool mask_contains(SubsetMask set, std::size_t element) {
  return ((set >> element) & 1u) != 0;
}

constexpr std::size_t mask_size(SubsetMask set) {
  return static_cast<std::size_t>(std::popcount(set));
}

constexpr bool is_subset(SubsetMask inner, SubsetMask outer) {
  return (inner & ~outer) == 0;
}

// Members of `set` in ascending order.
inline std::vector<std::size_t> mask_members(SubsetMask set) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; set >> i; ++i) {
    if (mask_contains(set, i)) members.push_back(i);
  }
  return members;
}

}  // namespace belgames

#endif
