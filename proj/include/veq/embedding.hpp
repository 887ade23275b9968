#pragma once

#include <map>
#include <optional>

#include "veq/enriched.hpp"
#include "veq/equipment.hpp"

namespace veq {

// Pair of nullary morphisms F => G and G => F into a hom profunctor, with the
// report of their laws, inverse equations and naturality.
struct NaturalIso {
  MorphismPtr forward;
  MorphismPtr backward;
  VerificationReport report;
};

struct Flattened {
  FunctorPtr functor;  // identity structure arrows
  NaturalIso iso;      // F => F-flat and back
};

struct Fullness {
  VArrowId arrow;  // F(id_A)
  NaturalIso iso;  // |f| => F and back
};

struct Coreflection {
  ProarrowId proarrow;  // J(id_A, id_B)
  MorphismPtr counit;   // |J(id,id)| => J; null when J is not lawful
  bool counit_invertible = false;
  VerificationReport report;
};

// The canonical embedding of an equipment into its enriched categories. Every
// representative is built once and shared, so pointer identity is a fast path
// for the structural comparisons in `enriched`.
class Embedding {
 public:
  explicit Embedding(const Equipment& e) : e_(e) {}

  [[nodiscard]] const Equipment& equipment() const { return e_; }
  [[nodiscard]] const VirtualDoubleCategory& base() const { return e_.vdc(); }

  // Objects of |A| are the vertical arrows into A, in the vertical category's order.
  const CategoryPtr& represent_object(ObjId a) const;
  const FunctorPtr& represent_arrow(VArrowId f) const;
  const ProfunctorPtr& represent_proarrow(ProarrowId j) const;
  MorphismPtr represent_cell(const Cell& alpha) const;
  // A nullary cell into a unit, as a transformation between representatives.
  MorphismPtr represent_vertical(const Cell& eta) const;

  [[nodiscard]] std::size_t element(ObjId a, VArrowId x) const;
  [[nodiscard]] VArrowId element_arrow(ObjId a, std::size_t i) const;
  [[nodiscard]] std::size_t identity_element(ObjId a) const;
  // ([hom(x,y)], x, y, h_A)
  const Cell& hom_cartesian(ObjId a, std::size_t x, std::size_t y) const;
  // ([J(x,u)], x, u, J)
  const Cell& component_cartesian(ProarrowId j, std::size_t x, std::size_t u) const;

  [[nodiscard]] std::optional<ObjId> object_of(const CategoryPtr& c) const;
  [[nodiscard]] std::optional<VArrowId> arrow_of(const FunctorPtr& f) const;
  [[nodiscard]] std::optional<ProarrowId> proarrow_of(const ProfunctorPtr& j) const;

  // Inverse of represent_cell on morphisms between representatives. Throws
  // MalformedMorphism when the boundary is not representable.
  Cell strip_cell(const ProMorphism& m) const;

  Flattened flatten_functor(const FunctorPtr& f) const;
  // Throws MalformedFunctor unless F is extent-preserving between representatives.
  Fullness fullness_on_arrows(const FunctorPtr& f) const;
  Coreflection coreflect(const ProfunctorPtr& j) const;
  // Counit naturality along mu: J => J' (identity functors).
  VerificationReport check_counit_naturality(const ProMorphism& mu) const;

  // Inverse equations and naturality of a candidate natural isomorphism.
  VerificationReport check_natural_iso(const ProMorphism& forward, const ProMorphism& backward) const;

  // |A| -> |B| sending every object to id_B with structure g.x. Not
  // extent-preserving unless g is an identity.
  FunctorPtr sink_functor(ObjId a, VArrowId g) const;

 private:
  const Equipment& e_;
  mutable std::map<std::uint32_t, CategoryPtr> objects_;
  mutable std::map<std::uint32_t, FunctorPtr> arrows_;
  mutable std::map<std::uint32_t, ProfunctorPtr> proarrows_;

  // bends of an element x: X -> A against hom(id, x) and hom(x, id)
  Cell element_conjoint_bend(ObjId a, std::size_t x) const;
  Cell element_companion_bend(ObjId a, std::size_t x) const;
};

}  // namespace veq
