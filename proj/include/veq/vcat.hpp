#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "veq/enriched.hpp"

namespace veq {

// Finite piece of VCat(E) to materialize. Functors are closed under
// composition; identity functors are added for every category.
struct Fragment {
  std::vector<CategoryPtr> categories;
  std::vector<FunctorPtr> functors;
  std::vector<ProfunctorPtr> profunctors;
};

struct FragmentBounds {
  std::size_t max_families = 1'000'000;  // candidate families per frame
  std::size_t max_functors = 512;        // after closure under composition
};

// Tabulated VDC whose cells are the law-satisfying ProMorphism families of a
// fragment, enumerated per frame on first use. Pasting is compose_morphisms.
class MaterializedVCat {
 public:
  MaterializedVCat(const Fragment& fragment, FragmentBounds bounds = {});
  MaterializedVCat(const MaterializedVCat&) = delete;
  MaterializedVCat& operator=(const MaterializedVCat&) = delete;

  [[nodiscard]] const VirtualDoubleCategory& vdc() const { return *vdc_; }

  [[nodiscard]] const CategoryPtr& category(ObjId a) const { return state_->categories.at(a.index()); }
  [[nodiscard]] const FunctorPtr& functor(VArrowId f) const { return state_->functors.at(f.index()); }
  [[nodiscard]] const ProfunctorPtr& profunctor(ProarrowId p) const { return state_->profunctors.at(p.index()); }
  // Populates on demand, so ids handed out by vdc() always resolve.
  [[nodiscard]] const MorphismPtr& morphism(CellId c) const { return state_->morphisms.at(c.index()); }

  [[nodiscard]] std::optional<ObjId> object_of(const CategoryPtr& c) const;
  [[nodiscard]] std::optional<VArrowId> arrow_of(const FunctorPtr& f) const;
  [[nodiscard]] std::optional<ProarrowId> proarrow_of(const ProfunctorPtr& j) const;

  // VCat frame of a morphism whose boundary lies in the fragment.
  [[nodiscard]] std::optional<Frame> frame_of(const ProMorphism& m) const;
  // The cell carrying exactly this family, if it is in the fragment.
  [[nodiscard]] std::optional<Cell> cell_of(const ProMorphism& m) const;

  // Families considered so far, lawful or not.
  [[nodiscard]] std::size_t candidates_examined() const { return state_->examined; }

 private:
  struct State {
    std::vector<CategoryPtr> categories;
    std::vector<FunctorPtr> functors;
    std::vector<ProfunctorPtr> profunctors;
    std::vector<MorphismPtr> morphisms;  // by CellId
    std::size_t examined = 0;
    FragmentBounds bounds;
    const VirtualDoubleCategory* vdc = nullptr;
  };

  std::shared_ptr<State> state_;
  std::unique_ptr<VirtualDoubleCategory> vdc_;
};

}  // namespace veq
