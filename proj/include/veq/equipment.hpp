#pragma once

#include <array>
#include <map>
#include <memory>

#include "veq/universal.hpp"

namespace veq {

// Bounds for the searches an Equipment runs on demand. Composites are
// certified with their own bounds since flanked factorizations dominate the
// cost on larger carriers.
struct EquipmentBounds {
  SearchBounds cartesian = SearchBounds::universal_default();
  SearchBounds composite = SearchBounds::universal_default();
};

// Memoized view of a VDC as an equipment: every structure cell is located by
// the universal searches and factorization is done by uniqueness search.
// Lookups throw NotFound / BoundsTooSmall when the structure is missing.
class Equipment {
 public:
  explicit Equipment(const VirtualDoubleCategory& vdc, EquipmentBounds bounds = {});

  [[nodiscard]] const VirtualDoubleCategory& vdc() const { return vdc_; }
  [[nodiscard]] const EquipmentBounds& bounds() const { return bounds_; }

  const UniversalWitness& unit(ObjId a) const;
  const UniversalWitness& restriction(ProarrowId k, VArrowId g, VArrowId f) const;
  const UniversalWitness& composite(const Path& p) const;
  const BendBundle& bends(VArrowId f) const;

  // ([@X], f, f, h_A) for f: X -> A.
  const Cell& vertical_cell(VArrowId f) const;
  // ([h_A, J], id, id, J) and ([J, h_B], id, id, J), pasting with the unit to
  // the identity of J.
  const Cell& left_unitor(ProarrowId j) const;
  const Cell& right_unitor(ProarrowId j) const;

  // The unary cell ([h_A], l, r, K) whose paste with the unit of A is `nullary`.
  Cell unit_extension(const Cell& nullary) const;
  // ([@X], l.f, r.f, K) from a nullary ([@A], l, r, K) and f: X -> A.
  Cell whisker(const Cell& nullary, VArrowId f) const;

  Cell factor_cartesian(const Cell& cart, const Cell& phi, VArrowId a, VArrowId b) const;
  Cell factor_composite(const Cell& s, const Cell& phi, std::size_t left, std::size_t right) const;

 private:
  const VirtualDoubleCategory& vdc_;
  EquipmentBounds bounds_;
  mutable std::map<std::uint32_t, UniversalWitness> units_;
  mutable std::map<std::array<std::uint32_t, 3>, UniversalWitness> restrictions_;
  mutable std::map<std::vector<ProarrowId>, UniversalWitness> composites_;
  mutable std::map<std::uint32_t, BendBundle> bends_;
  mutable std::map<std::uint32_t, Cell> vertical_cells_;
  mutable std::map<std::uint32_t, Cell> left_unitors_;
  mutable std::map<std::uint32_t, Cell> right_unitors_;
};

}  // namespace veq
