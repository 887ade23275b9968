#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oracle.hpp"
#include "veq/enriched.hpp"
#include "veq/fixtures.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/vcat.hpp"

using namespace veq;

namespace {

const MatrixEquipment& b2() {
  static const MatrixEquipment me = make_b2();
  return me;
}

ObjId vobj() { return *b2().vdc().find_object("V"); }

std::vector<VArrowId> into_v() {
  const auto& v = b2().vdc().vertical();
  return {v.arrows_into(vobj()).begin(), v.arrows_into(vobj()).end()};
}

Cell thin(Frame f) { return Cell{CellId{}, std::move(f)}; }

// Objects are the functions into V, hom(x, y)[i][j] = [x i = y j].
CategoryPtr elements() {
  const auto& me = b2();
  const auto& v = me.vdc().vertical();
  auto c = std::make_shared<EnrichedCategory>();
  c->name = "El";
  c->base = &me.vdc();
  const auto xs = into_v();
  for (auto x : xs) {
    c->objects.push_back(v.arrow(x).name);
    c->extent.push_back(v.dom(x));
  }
  const auto ident = oracle::identity(oracle::boolean(), 2);
  for (auto x : xs) {
    for (auto y : xs) {
      c->homs.push_back(*me.proarrow_of(v.dom(x), v.dom(y),
                                        oracle::to_matrix(me, oracle::restrict(ident, me.function(x), me.function(y)))));
    }
  }
  const std::size_t n = xs.size();
  for (std::size_t x = 0; x < n; ++x) {
    const ObjId e = c->extent[x];
    c->ids.push_back(thin(Frame{Path::empty(e), v.identity(e), v.identity(e), c->hom(x, x)}));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        c->comps.push_back(thin(Frame{Path::of({c->hom(x, y), c->hom(y, z)}), v.identity(c->extent[x]),
                                      v.identity(c->extent[z]), c->hom(x, z)}));
      }
    }
  }
  return c;
}

FunctorPtr post(const CategoryPtr& c, const std::vector<int>& images) {
  const auto& v = b2().vdc().vertical();
  const VArrowId s = *b2().arrow_of(vobj(), vobj(), images);
  const auto xs = into_v();
  auto f = std::make_shared<EnrichedFunctor>();
  f->name = "post" + std::to_string(images[0]) + std::to_string(images[1]);
  f->source = c;
  f->target = c;
  for (auto x : xs) {
    f->on_objects.push_back(static_cast<std::size_t>(std::find(xs.begin(), xs.end(), v.compose(s, x)) - xs.begin()));
    f->structure.push_back(v.identity(v.dom(x)));
  }
  for (std::size_t x = 0; x < xs.size(); ++x) {
    for (std::size_t y = 0; y < xs.size(); ++y) {
      f->homs.push_back(thin(Frame{Path::of({c->hom(x, y)}), f->structure[x], f->structure[y],
                                   c->hom(f->on_objects[x], f->on_objects[y])}));
    }
  }
  return f;
}

// Every component the all-ones matrix; every action frame is inhabited.
ProfunctorPtr top(const CategoryPtr& c) {
  const auto& me = b2();
  const auto& v = me.vdc().vertical();
  auto j = std::make_shared<EnrichedProfunctor>();
  j->name = "T";
  j->source = c;
  j->target = c;
  const std::size_t n = c->size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t u = 0; u < n; ++u) {
      const int rows = me.set_size(c->extent[x]);
      const int cols = me.set_size(c->extent[u]);
      oracle::IntMatrix ones(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols), 1));
      j->components.push_back(*me.proarrow_of(c->extent[x], c->extent[u], oracle::to_matrix(me, ones)));
    }
  }
  auto idv = [&](std::size_t x) { return v.identity(c->extent[x]); };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        j->lefts.push_back(thin(Frame{Path::of({c->hom(x, y), j->component(y, u)}), idv(x), idv(u), j->component(x, u)}));
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t w = 0; w < n; ++w) {
        j->rights.push_back(thin(Frame{Path::of({j->component(x, u), c->hom(u, w)}), idv(x), idv(w), j->component(x, w)}));
      }
    }
  }
  return j;
}

struct Setup {
  CategoryPtr c = elements();
  FunctorPtr swap = post(c, {1, 0});
  FunctorPtr zero = post(c, {0, 0});
  ProfunctorPtr hom = hom_profunctor(c);
  ProfunctorPtr all = top(c);

  [[nodiscard]] Fragment fragment() const { return Fragment{{c}, {swap, zero}, {hom, all}}; }
};

}  // namespace

TEST_CASE("hand-built profunctors are lawful") {
  Setup s;
  CHECK(check_profunctor_laws(*s.all).passed());
  CHECK(check_profunctor_laws(*s.hom).passed());
  CHECK(check_functor_laws(*s.swap).passed());
  CHECK(check_functor_laws(*s.zero).passed());
}

TEST_CASE("functors are closed under composition") {
  Setup s;
  MaterializedVCat m(s.fragment());
  const auto& v = m.vdc().vertical();
  // swap and a constant generate every endofunction of a two-element set
  CHECK(v.arrow_count() == 4);
  for (const auto& images : oracle::functions(2, 2)) CHECK(m.arrow_of(post(s.c, images)));
  CHECK(m.object_of(s.c) == ObjId{0});
  REQUIRE(m.arrow_of(s.swap));
  CHECK(v.compose(*m.arrow_of(s.swap), *m.arrow_of(s.swap)) == v.identity(ObjId{0}));
}

TEST_CASE("unary cells exist exactly when components lie below") {
  Setup s;
  MaterializedVCat m(s.fragment());
  const auto& vdc = m.vdc();
  const auto& v = vdc.vertical();
  const auto q = oracle::boolean();
  std::size_t frames = 0;
  std::size_t cells = 0;
  for (std::size_t jp = 0; jp < vdc.proarrow_count(); ++jp) {
    for (std::size_t kp = 0; kp < vdc.proarrow_count(); ++kp) {
      for (std::size_t l = 0; l < v.arrow_count(); ++l) {
        for (std::size_t r = 0; r < v.arrow_count(); ++r) {
          const auto& j = m.profunctor(ProarrowId{jp});
          const auto& k = m.profunctor(ProarrowId{kp});
          const auto& fl = m.functor(VArrowId{l});
          const auto& fr = m.functor(VArrowId{r});
          bool expected = true;
          for (std::size_t x = 0; x < s.c->size(); ++x) {
            for (std::size_t u = 0; u < s.c->size(); ++u) {
              expected = expected && oracle::below(q, oracle::entries(b2(), j->component(x, u)),
                                                   oracle::entries(b2(), k->component(fl->on_objects[x], fr->on_objects[u])));
            }
          }
          const auto found = vdc.frame_cells(Frame{Path::of({ProarrowId{jp}}), VArrowId{l}, VArrowId{r}, ProarrowId{kp}});
          CHECK(found.size() == (expected ? 1u : 0u));
          ++frames;
          cells += found.size();
        }
      }
    }
  }
  CHECK(frames == 2 * 2 * 4 * 4);
  CHECK(cells > 0);
  CHECK(cells < frames);
}

TEST_CASE("nullary cells into the hom profunctor are equalities of functors") {
  Setup s;
  MaterializedVCat m(s.fragment());
  const auto& vdc = m.vdc();
  const auto& v = vdc.vertical();
  const ProarrowId h = *m.proarrow_of(s.hom);
  for (std::size_t l = 0; l < v.arrow_count(); ++l) {
    for (std::size_t r = 0; r < v.arrow_count(); ++r) {
      const auto cells = vdc.frame_cells(Frame{Path::empty(ObjId{0}), VArrowId{l}, VArrowId{r}, h});
      // unit <= [s x i = t x i] for all x and i iff s = t
      CHECK(cells.size() == (l == r ? 1u : 0u));
    }
  }
}

TEST_CASE("pasting in the materialized VDC is componentwise") {
  Setup s;
  MaterializedVCat m(s.fragment());
  const auto& vdc = m.vdc();
  const auto& v = vdc.vertical();
  const ProarrowId h = *m.proarrow_of(s.hom);
  const ProarrowId t = *m.proarrow_of(s.all);
  const VArrowId sw = *m.arrow_of(s.swap);
  const VArrowId id = v.identity(ObjId{0});
  const auto a = vdc.frame_cells(Frame{Path::of({h}), sw, sw, h});
  const auto b = vdc.frame_cells(Frame{Path::of({h}), id, id, t});
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  const Cell pasted = vdc.paste(b[0], {a[0]});
  CHECK(pasted.frame == Frame{Path::of({h}), sw, sw, t});
  CHECK(*m.morphism(pasted.id) == *compose_morphisms(*m.morphism(b[0].id), {m.morphism(a[0].id)}));
  // identity cells carry identity morphisms
  CHECK(*m.morphism(vdc.identity_cell(h).id) == *identity_morphism(s.hom));
  CHECK(vdc.paste(vdc.identity_cell(t), {b[0]}) == b[0]);
}

TEST_CASE("materialization refuses oversized frames and functor closures") {
  Setup s;
  {
    MaterializedVCat m(s.fragment(), FragmentBounds{0, 512});
    const ProarrowId h = *m.proarrow_of(s.hom);
    const VArrowId id = m.vdc().vertical().identity(ObjId{0});
    try {
      (void)m.vdc().frame_cells(Frame{Path::of({h}), id, id, h});
      FAIL("populated a frame beyond the family bound");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::FragmentTooLarge);
    }
  }
  try {
    MaterializedVCat m(s.fragment(), FragmentBounds{1'000'000, 3});
    FAIL("closed the functors beyond the bound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FragmentTooLarge);
  }
}
