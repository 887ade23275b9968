#include "veq/equipment.hpp"

namespace veq {

Equipment::Equipment(const VirtualDoubleCategory& vdc, EquipmentBounds bounds) : vdc_(vdc), bounds_(bounds) {}

const UniversalWitness& Equipment::unit(ObjId a) const {
  auto it = units_.find(a.value);
  if (it == units_.end()) it = units_.emplace(a.value, find_unit(vdc_, a, bounds_.composite).value()).first;
  return it->second;
}

const UniversalWitness& Equipment::restriction(ProarrowId k, VArrowId g, VArrowId f) const {
  const std::array<std::uint32_t, 3> key{k.value, g.value, f.value};
  auto it = restrictions_.find(key);
  if (it == restrictions_.end()) {
    it = restrictions_.emplace(key, find_restriction(vdc_, k, g, f, bounds_.cartesian).value()).first;
  }
  return it->second;
}

const UniversalWitness& Equipment::composite(const Path& p) const {
  if (p.is_empty()) return unit(p.anchor);
  auto it = composites_.find(p.arrows);
  if (it == composites_.end()) it = composites_.emplace(p.arrows, find_composite(vdc_, p, bounds_.composite).value()).first;
  return it->second;
}

const BendBundle& Equipment::bends(VArrowId f) const {
  auto it = bends_.find(f.value);
  if (it == bends_.end()) it = bends_.emplace(f.value, derive_bends(vdc_, f, bounds_.cartesian)).first;
  return it->second;
}

const Cell& Equipment::vertical_cell(VArrowId f) const {
  auto it = vertical_cells_.find(f.value);
  if (it == vertical_cells_.end()) {
    const auto& v = vdc_.vertical();
    const Frame frame{Path::empty(v.dom(f)), f, f, unit(v.cod(f)).proarrow};
    auto c = unique_cell(vdc_, frame);
    if (!c) throw Error(ErrorKind::NotFound, "no unique vertical cell on " + vdc_.describe(frame));
    it = vertical_cells_.emplace(f.value, *c).first;
  }
  return it->second;
}

const Cell& Equipment::left_unitor(ProarrowId j) const {
  auto it = left_unitors_.find(j.value);
  if (it == left_unitors_.end()) {
    const Cell& eta = unit(vdc_.proarrow(j).src).structure_cell;
    it = left_unitors_.emplace(j.value, factor_composite(eta, vdc_.identity_cell(j), 0, 1)).first;
  }
  return it->second;
}

const Cell& Equipment::right_unitor(ProarrowId j) const {
  auto it = right_unitors_.find(j.value);
  if (it == right_unitors_.end()) {
    const Cell& eta = unit(vdc_.proarrow(j).tgt).structure_cell;
    it = right_unitors_.emplace(j.value, factor_composite(eta, vdc_.identity_cell(j), 1, 0)).first;
  }
  return it->second;
}

Cell Equipment::unit_extension(const Cell& nullary) const {
  if (!nullary.frame.domain.is_empty()) {
    throw Error(ErrorKind::MalformedFrame, vdc_.describe(nullary) + " is not nullary");
  }
  return factor_composite(unit(nullary.frame.domain.anchor).structure_cell, nullary, 0, 0);
}

Cell Equipment::whisker(const Cell& nullary, VArrowId f) const {
  const auto& v = vdc_.vertical();
  if (v.is_identity(f)) return nullary;
  return vdc_.paste(unit_extension(nullary), {vertical_cell(f)});
}

Cell Equipment::factor_cartesian(const Cell& cart, const Cell& phi, VArrowId a, VArrowId b) const {
  auto psi = veq::factor_cartesian(vdc_, cart, phi, a, b);
  if (!psi) {
    throw Error(ErrorKind::NotFound, vdc_.describe(phi) + " has no unique factorization through " + vdc_.describe(cart));
  }
  return *psi;
}

Cell Equipment::factor_composite(const Cell& s, const Cell& phi, std::size_t left, std::size_t right) const {
  auto psi = veq::factor_composite(vdc_, s, phi, left, right);
  if (!psi) {
    throw Error(ErrorKind::NotFound, vdc_.describe(phi) + " has no unique factorization through " + vdc_.describe(s));
  }
  return *psi;
}

}  // namespace veq
