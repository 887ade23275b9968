#include "veq/vcat.hpp"

#include <set>

namespace veq {
namespace {

std::string unique_name(std::set<std::string>& taken, const std::string& want) {
  std::string name = want;
  for (int i = 2; taken.count(name) != 0; ++i) name = want + "#" + std::to_string(i);
  taken.insert(name);
  return name;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > static_cast<std::size_t>(-1) / a) return static_cast<std::size_t>(-1);
  return a * b;
}

}  // namespace

MaterializedVCat::MaterializedVCat(const Fragment& fragment, FragmentBounds bounds)
    : state_(std::make_shared<State>()) {
  state_->bounds = bounds;
  auto& st = *state_;

  for (const auto& c : fragment.categories) {
    bool seen = false;
    for (const auto& d : st.categories) seen = seen || same_category(c, d);
    if (!seen) st.categories.push_back(c);
  }
  auto index_of = [&](const CategoryPtr& c) -> std::size_t {
    for (std::size_t i = 0; i < st.categories.size(); ++i) {
      if (same_category(c, st.categories[i])) return i;
    }
    throw Error(ErrorKind::UnknownName, "category " + c->name + " is not in the fragment");
  };

  // Vertical arrows: identities first, then the supplied functors closed
  // under composition.
  std::vector<FunctorPtr> functors;
  for (const auto& c : st.categories) functors.push_back(identity_functor(c));
  auto find_functor = [&](const FunctorPtr& f) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < functors.size(); ++i) {
      if (same_functor(f, functors[i])) return i;
    }
    return std::nullopt;
  };
  for (const auto& f : fragment.functors) {
    index_of(f->source);
    index_of(f->target);
    if (!find_functor(f)) functors.push_back(f);
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> table;
  for (std::size_t done = 0; done < functors.size();) {
    const std::size_t n = functors.size();
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t f = 0; f < n; ++f) {
        if (g < done && f < done) continue;
        if (g < st.categories.size() || f < st.categories.size()) continue;
        if (!same_category(functors[f]->target, functors[g]->source)) continue;
        auto h = compose_functors(functors[g], functors[f]);
        auto at = find_functor(h);
        if (!at) {
          if (functors.size() >= bounds.max_functors) {
            throw Error(ErrorKind::FragmentTooLarge, "more than " + std::to_string(bounds.max_functors) +
                                                         " functors after closing under composition");
          }
          functors.push_back(h);
          at = functors.size() - 1;
        }
        table.emplace_back(g, f, *at);
      }
    }
    done = n;
  }

  VdcBuilder b;
  b.disable_identity_cells();
  std::set<std::string> names;
  for (const auto& c : st.categories) {
    const ObjId a = b.add_object(unique_name(names, c->name));
    names.insert(b.vertical().arrow(b.vertical().identity(a)).name);
  }
  std::vector<VArrowId> arrow_ids;
  for (std::size_t i = 0; i < functors.size(); ++i) {
    const auto& f = functors[i];
    if (i < st.categories.size()) {
      arrow_ids.push_back(b.vertical().identity(ObjId{i}));
    } else {
      arrow_ids.push_back(b.add_arrow(unique_name(names, f->name), ObjId{index_of(f->source)},
                                      ObjId{index_of(f->target)}));
    }
  }
  st.functors.resize(functors.size());
  for (std::size_t i = 0; i < functors.size(); ++i) st.functors[arrow_ids[i].index()] = functors[i];
  for (auto [g, f, h] : table) b.set_compose(arrow_ids[g], arrow_ids[f], arrow_ids[h]);

  for (const auto& j : fragment.profunctors) {
    bool seen = false;
    for (const auto& k : st.profunctors) seen = seen || same_profunctor(j, k);
    if (seen) continue;
    b.add_proarrow(unique_name(names, j->name), ObjId{index_of(j->source)}, ObjId{index_of(j->target)});
    st.profunctors.push_back(j);
  }

  auto source = std::make_shared<TabulatedStore::Source>();
  State* s = state_.get();
  source->populate = [s](const Frame& frame) -> std::size_t {
    const VirtualDoubleCategory* base = nullptr;
    ProMorphism skeleton;
    for (auto p : frame.domain.arrows) skeleton.domain.push_back(s->profunctors.at(p.index()));
    if (frame.domain.is_empty()) skeleton.anchor = s->categories.at(frame.domain.anchor.index());
    skeleton.codomain = s->profunctors.at(frame.codomain.index());
    skeleton.left = s->functors.at(frame.left.index());
    skeleton.right = s->functors.at(frame.right.index());
    base = skeleton.codomain->source->base;

    std::vector<std::vector<Cell>> options;
    std::size_t total = 1;
    skeleton.for_each_index([&](const std::vector<std::size_t>& objs) {
      options.push_back(base->frame_cells(skeleton.component_frame(objs)));
      total = saturating_mul(total, options.back().size());
    });
    if (total > s->bounds.max_families) {
      throw Error(ErrorKind::FragmentTooLarge, std::to_string(total) + " candidate families on " + s->vdc->describe(frame));
    }
    if (total == 0) return 0;

    std::size_t count = 0;
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      ++s->examined;
      auto m = std::make_shared<ProMorphism>(skeleton);
      m->components.reserve(options.size());
      for (std::size_t i = 0; i < options.size(); ++i) m->components.push_back(options[i][pick[i]]);
      if (check_morphism_laws(*m).passed()) {
        m->name = "m" + std::to_string(s->morphisms.size());
        s->morphisms.push_back(m);
        ++count;
      }
      std::size_t i = options.size();
      while (i > 0) {
        --i;
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
        if (i == 0) return count;
      }
      if (options.empty()) return count;
    }
  };
  source->resolve_paste = [this](CellId outer, std::span<const CellId> inners) -> std::optional<CellId> {
    std::vector<MorphismPtr> ms;
    for (auto c : inners) ms.push_back(morphism(c));
    auto result = compose_morphisms(*morphism(outer), ms);
    auto cell = cell_of(*result);
    if (!cell) return std::nullopt;
    return cell->id;
  };
  source->resolve_identity = [this](ProarrowId p) -> CellId {
    auto cell = cell_of(*identity_morphism(profunctor(p)));
    if (!cell) throw Error(ErrorKind::MissingCell, "identity family of " + profunctor(p)->name + " is not lawful");
    return cell->id;
  };
  b.set_source(source);
  vdc_ = std::make_unique<VirtualDoubleCategory>(b.build_tabulated());
  st.vdc = vdc_.get();
}

std::optional<ObjId> MaterializedVCat::object_of(const CategoryPtr& c) const {
  for (std::size_t i = 0; i < state_->categories.size(); ++i) {
    if (same_category(c, state_->categories[i])) return ObjId{i};
  }
  return std::nullopt;
}

std::optional<VArrowId> MaterializedVCat::arrow_of(const FunctorPtr& f) const {
  for (std::size_t i = 0; i < state_->functors.size(); ++i) {
    if (same_functor(f, state_->functors[i])) return VArrowId{i};
  }
  return std::nullopt;
}

std::optional<ProarrowId> MaterializedVCat::proarrow_of(const ProfunctorPtr& j) const {
  for (std::size_t i = 0; i < state_->profunctors.size(); ++i) {
    if (same_profunctor(j, state_->profunctors[i])) return ProarrowId{i};
  }
  return std::nullopt;
}

std::optional<Frame> MaterializedVCat::frame_of(const ProMorphism& m) const {
  Frame f;
  std::vector<ProarrowId> ps;
  for (const auto& j : m.domain) {
    auto p = proarrow_of(j);
    if (!p) return std::nullopt;
    ps.push_back(*p);
  }
  if (ps.empty()) {
    auto a = object_of(m.anchor);
    if (!a) return std::nullopt;
    f.domain = Path::empty(*a);
  } else {
    f.domain = Path::of(std::move(ps));
  }
  auto l = arrow_of(m.left);
  auto r = arrow_of(m.right);
  auto k = proarrow_of(m.codomain);
  if (!l || !r || !k) return std::nullopt;
  f.left = *l;
  f.right = *r;
  f.codomain = *k;
  return f;
}

std::optional<Cell> MaterializedVCat::cell_of(const ProMorphism& m) const {
  auto frame = frame_of(m);
  if (!frame || !vdc_->well_formed(*frame)) return std::nullopt;
  for (const auto& c : vdc_->frame_cells(*frame)) {
    if (morphism(c.id)->components == m.components) return c;
  }
  return std::nullopt;
}

}  // namespace veq
