#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace veq {

// Opaque index registered in exactly one VirtualDoubleCategory.
template <class Tag>
struct Id {
  static constexpr std::uint32_t invalid = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value = invalid;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  [[nodiscard]] constexpr bool valid() const { return value != invalid; }
  [[nodiscard]] constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

struct ObjTag {};
struct VArrowTag {};
struct ProarrowTag {};
struct CellTag {};

using ObjId = Id<ObjTag>;
using VArrowId = Id<VArrowTag>;
using ProarrowId = Id<ProarrowTag>;
using CellId = Id<CellTag>;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace veq

template <class Tag>
struct std::hash<veq::Id<Tag>> {
  std::size_t operator()(const veq::Id<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
