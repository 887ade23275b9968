#pragma once

#include <memory>
#include <string>
#include <vector>

#include "veq/report.hpp"
#include "veq/vdc.hpp"

namespace veq {

class Equipment;

// Category enriched in a base VDC. Objects are indices; tables are dense.
struct EnrichedCategory {
  std::string name;
  const VirtualDoubleCategory* base = nullptr;
  std::vector<std::string> objects;
  std::vector<ObjId> extent;
  std::vector<ProarrowId> homs;   // [x * n + y]
  std::vector<Cell> ids;          // ([@extent x], id, id, hom(x,x))
  std::vector<Cell> comps;        // [(x * n + y) * n + z], ([hom(x,y), hom(y,z)], id, id, hom(x,z))

  [[nodiscard]] std::size_t size() const { return objects.size(); }
  [[nodiscard]] ProarrowId hom(std::size_t x, std::size_t y) const { return homs[x * size() + y]; }
  [[nodiscard]] const Cell& id_cell(std::size_t x) const { return ids[x]; }
  [[nodiscard]] const Cell& comp_cell(std::size_t x, std::size_t y, std::size_t z) const {
    return comps[(x * size() + y) * size() + z];
  }
  [[nodiscard]] Cell& comp_cell(std::size_t x, std::size_t y, std::size_t z) {
    return comps[(x * size() + y) * size() + z];
  }
};

using CategoryPtr = std::shared_ptr<const EnrichedCategory>;

struct EnrichedFunctor {
  std::string name;
  CategoryPtr source;
  CategoryPtr target;
  std::vector<std::size_t> on_objects;
  std::vector<VArrowId> structure;  // extent(x) -> extent(F x)
  std::vector<Cell> homs;           // [x * n + y], ([hom(x,y)], s x, s y, hom(Fx,Fy))

  [[nodiscard]] const Cell& on_homs(std::size_t x, std::size_t y) const { return homs[x * source->size() + y]; }
  [[nodiscard]] bool extent_preserving() const;
  // Same boundary, object map, structure and cells.
  friend bool operator==(const EnrichedFunctor& a, const EnrichedFunctor& b);
};

using FunctorPtr = std::shared_ptr<const EnrichedFunctor>;

struct EnrichedProfunctor {
  std::string name;
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ProarrowId> components;  // [x * m + u]
  std::vector<Cell> lefts;             // [(x * n + y) * m + u], ([hom(x,y), J(y,u)], id, id, J(x,u))
  std::vector<Cell> rights;            // [(x * m + u) * m + v], ([J(x,u), hom(u,v)], id, id, J(x,v))

  [[nodiscard]] ProarrowId component(std::size_t x, std::size_t u) const { return components[x * target->size() + u]; }
  [[nodiscard]] const Cell& left_action(std::size_t x, std::size_t y, std::size_t u) const {
    return lefts[(x * source->size() + y) * target->size() + u];
  }
  [[nodiscard]] const Cell& right_action(std::size_t x, std::size_t u, std::size_t v) const {
    return rights[(x * target->size() + u) * target->size() + v];
  }
  [[nodiscard]] Cell& left_action(std::size_t x, std::size_t y, std::size_t u) {
    return lefts[(x * source->size() + y) * target->size() + u];
  }
  [[nodiscard]] Cell& right_action(std::size_t x, std::size_t u, std::size_t v) {
    return rights[(x * target->size() + u) * target->size() + v];
  }
};

using ProfunctorPtr = std::shared_ptr<const EnrichedProfunctor>;

// Cell of VCat: a family indexed by object lists (c_0, ..., c_k) along the
// chain of domain profunctors. A nullary morphism has one component per object
// of `anchor`.
struct ProMorphism {
  std::string name;
  std::vector<ProfunctorPtr> domain;
  CategoryPtr anchor;  // the category of a nullary domain; unused otherwise
  ProfunctorPtr codomain;
  FunctorPtr left;   // C_0 -> source(codomain)
  FunctorPtr right;  // C_k -> target(codomain)
  std::vector<Cell> components;

  // C_0, ..., C_k.
  [[nodiscard]] std::vector<CategoryPtr> chain() const;
  [[nodiscard]] std::size_t index(const std::vector<std::size_t>& objects) const;
  [[nodiscard]] const Cell& component(const std::vector<std::size_t>& objects) const {
    return components[index(objects)];
  }
  // Base frame the component at `objects` must occupy.
  [[nodiscard]] Frame component_frame(const std::vector<std::size_t>& objects) const;
  // Calls `visit` on every object list in index order.
  void for_each_index(const std::function<void(const std::vector<std::size_t>&)>& visit) const;
  [[nodiscard]] std::size_t component_count() const;

  // Same boundary (by value) and the same components.
  friend bool operator==(const ProMorphism& a, const ProMorphism& b);
};

using MorphismPtr = std::shared_ptr<const ProMorphism>;

bool same_category(const CategoryPtr& a, const CategoryPtr& b);
bool same_functor(const FunctorPtr& a, const FunctorPtr& b);
bool same_profunctor(const ProfunctorPtr& a, const ProfunctorPtr& b);

// Law checkers. Functors whose structure arrows are not identities need an
// equipment to whisker identity cells; without one their identity law is
// reported as a failure naming the object.
VerificationReport check_category_laws(const EnrichedCategory& c);
VerificationReport check_functor_laws(const EnrichedFunctor& f, const Equipment* equipment = nullptr);
VerificationReport check_profunctor_laws(const EnrichedProfunctor& j);
VerificationReport check_morphism_laws(const ProMorphism& m);

FunctorPtr identity_functor(const CategoryPtr& c);
// g after f.
FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f);
// Components hom(x,u), actions by composition.
ProfunctorPtr hom_profunctor(const CategoryPtr& c);
MorphismPtr identity_morphism(const ProfunctorPtr& j);

// Componentwise paste. Throws NonComposable naming the inner index.
MorphismPtr compose_morphisms(const ProMorphism& outer, const std::vector<MorphismPtr>& inners);

struct Restricted {
  ProfunctorPtr profunctor;
  MorphismPtr cartesian;  // K(G,F) => K along (G, F)
};

// Components are base restrictions K(G x, F y) along the structure arrows;
// throws NotFound when a base restriction is missing.
Restricted restrict_profunctor(const Equipment& e, const ProfunctorPtr& k, const FunctorPtr& g, const FunctorPtr& f);

}  // namespace veq
