#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "veq/embedding.hpp"
#include "veq/fixtures.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/theorems.hpp"

using namespace veq;

namespace {

const SearchBounds kB2{3, 1, 2, std::size_t{1} << 20};

struct B2 {
  MatrixEquipment me = make_b2();
  Equipment eq{me.vdc(), EquipmentBounds{kB2, kB2}};
  Embedding emb{eq};
  ObjId u = *me.vdc().find_object("U");
  ObjId v = *me.vdc().find_object("V");

  [[nodiscard]] std::vector<VArrowId> into(ObjId a) const {
    const auto& vc = me.vdc().vertical();
    return {vc.arrows_into(a).begin(), vc.arrows_into(a).end()};
  }
};

B2& b2() {
  static B2 s;
  return s;
}

}  // namespace

TEST_CASE("representable categories have the functions into an object as objects") {
  auto& s = b2();
  const auto q = oracle::boolean();
  for (ObjId a : {s.u, s.v}) {
    const auto& c = s.emb.represent_object(a);
    const auto xs = s.into(a);
    REQUIRE(c->size() == xs.size());
    const auto ident = oracle::identity(q, s.me.set_size(a));
    for (std::size_t x = 0; x < xs.size(); ++x) {
      CHECK(c->extent[x] == s.me.vdc().vertical().dom(xs[x]));
      for (std::size_t y = 0; y < xs.size(); ++y) {
        CHECK(oracle::entries(s.me, c->hom(x, y)) == oracle::restrict(ident, s.me.function(xs[x]), s.me.function(xs[y])));
      }
    }
    CHECK(check_category_laws(*c).passed());
  }
  CHECK(s.emb.represent_object(s.u)->size() == 2);
  CHECK(s.emb.represent_object(s.v)->size() == 6);
}

TEST_CASE("representable profunctors restrict along every pair of elements") {
  auto& s = b2();
  const auto& vdc = s.me.vdc();
  for (std::size_t p = 0; p < vdc.proarrow_count(); p += 3) {
    const ProarrowId j{p};
    const auto& rep = s.emb.represent_proarrow(j);
    const auto xs = s.into(vdc.src(j));
    const auto us = s.into(vdc.tgt(j));
    for (std::size_t x = 0; x < xs.size(); ++x) {
      for (std::size_t u = 0; u < us.size(); ++u) {
        CHECK(oracle::entries(s.me, rep->component(x, u)) ==
              oracle::restrict(oracle::entries(s.me, j), s.me.function(xs[x]), s.me.function(us[u])));
      }
    }
    CHECK(check_profunctor_laws(*rep).passed());
  }
}

TEST_CASE("representable functors post-compose") {
  auto& s = b2();
  const auto& v = s.me.vdc().vertical();
  for (std::size_t i = 0; i < v.arrow_count(); ++i) {
    const VArrowId f{i};
    const auto& rep = s.emb.represent_arrow(f);
    const auto xs = s.into(v.dom(f));
    const auto ys = s.into(v.cod(f));
    for (std::size_t x = 0; x < xs.size(); ++x) {
      CHECK(ys[rep->on_objects[x]] == v.compose(f, xs[x]));
      CHECK(v.is_identity(rep->structure[x]));
    }
    CHECK(check_functor_laws(*rep).passed());
    CHECK(s.emb.arrow_of(rep) == f);
  }
}

TEST_CASE("stripping a represented cell gives the cell back") {
  auto& s = b2();
  const auto& vdc = s.me.vdc();
  const auto& v = vdc.vertical();
  std::size_t n = 0;
  for (std::size_t p = 0; p < vdc.proarrow_count(); p += 5) {
    for (std::size_t k = 0; k < vdc.proarrow_count(); k += 3) {
      const ProarrowId j{p};
      const ProarrowId kk{k};
      for (auto l : v.arrows_from(vdc.src(j))) {
        for (auto r : v.arrows_from(vdc.tgt(j))) {
          const Frame f{Path::of({j}), l, r, kk};
          if (!vdc.well_formed(f) || !vdc.has_cell(f)) continue;
          const Cell c{CellId{}, f};
          const auto m = s.emb.represent_cell(c);
          CHECK(check_morphism_laws(*m).passed());
          CHECK(s.emb.strip_cell(*m) == c);
          ++n;
        }
      }
    }
  }
  CHECK(n > 20);
}

TEST_CASE("coreflection recovers base proarrows with identity counits") {
  auto& s = b2();
  const auto& vdc = s.me.vdc();
  for (std::size_t p = 0; p < vdc.proarrow_count(); ++p) {
    const auto c = s.emb.coreflect(s.emb.represent_proarrow(ProarrowId{p}));
    CHECK(c.proarrow == ProarrowId{p});
    CHECK(c.counit_invertible);
  }
}

TEST_CASE("representability census against the action inequalities") {
  auto& s = b2();
  const auto q = oracle::boolean();
  const auto& vdc = s.me.vdc();
  const auto& cat = s.emb.represent_object(s.u);
  const std::size_t n = cat->size();
  // every component choice, lawful iff every action frame is inhabited
  std::vector<std::vector<ProarrowId>> options;
  std::size_t families = 1;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto ps = vdc.proarrows_between(cat->extent[x], cat->extent[y]);
      options.emplace_back(ps.begin(), ps.end());
      families *= ps.size();
    }
  }
  const auto xs = b2().into(s.u);
  const std::size_t id = s.emb.identity_element(s.u);
  std::size_t lawful = 0;
  std::size_t representable = 0;
  std::vector<std::size_t> pick(options.size(), 0);
  for (std::size_t f = 0; f < families; ++f) {
    std::size_t rest = f;
    for (std::size_t i = options.size(); i-- > 0;) {
      pick[i] = rest % options[i].size();
      rest /= options[i].size();
    }
    auto comp = [&](std::size_t x, std::size_t y) { return oracle::entries(s.me, options[x * n + y][pick[x * n + y]]); };
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t u = 0; u < n; ++u) {
          ok = ok && oracle::below(q, oracle::product(q, oracle::entries(s.me, cat->hom(x, y)), comp(y, u)), comp(x, u));
          ok = ok && oracle::below(q, oracle::product(q, comp(x, y), oracle::entries(s.me, cat->hom(y, u))), comp(x, u));
        }
      }
    }
    if (!ok) continue;
    ++lawful;
    bool rep = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        rep = rep && comp(x, y) == oracle::restrict(comp(id, id), s.me.function(xs[x]), s.me.function(xs[y]));
      }
    }
    representable += rep ? 1 : 0;
  }
  const auto census = representability_census(s.emb, s.u, s.u);
  CHECK(census.families == families);
  CHECK(census.lawful == lawful);
  CHECK(census.representable == representable);
  CHECK(families == 512);
}

TEST_CASE("an enlarged identity component breaks the profunctor laws") {
  auto& s = b2();
  const auto& vdc = s.me.vdc();
  const ProarrowId ident = *s.me.proarrow_of(s.v, s.v, Matrix{2, 2, {1, 0, 0, 1}});
  const ProarrowId full = *s.me.proarrow_of(s.v, s.v, Matrix{2, 2, {1, 1, 1, 1}});
  const auto j = enlarge_identity_component(s.emb, ident, full);
  CHECK(check_profunctor_laws(j).failed());
  const auto c = s.emb.coreflect(std::make_shared<EnrichedProfunctor>(j));
  CHECK(c.counit == nullptr);
  CHECK_FALSE(c.counit_invertible);
  (void)vdc;
}

TEST_CASE("full arrows and coreflection hold on B2") {
  auto& s = b2();
  CHECK(verify_full_arrows(s.emb).passed());
  CHECK(verify_coreflection(s.emb).passed());
}

TEST_CASE("fully faithful on cells among two proarrows") {
  auto& s = b2();
  const ProarrowId r = *s.me.proarrow_of(s.u, s.v, Matrix{1, 2, {1, 0}});
  const ProarrowId l = *s.me.proarrow_of(s.v, s.u, Matrix{2, 1, {0, 1}});
  auto rep = verify_ff_2cells(s.emb, {r, l}, 2);
  CHECK(rep.passed());
}

TEST_CASE("U and V are not Morita equivalent, V and itself is through the swap") {
  auto& s = b2();
  CHECK(verify_morita(s.emb, s.u, s.v, {}, false).passed());
  const VArrowId sw = *s.me.arrow_of(s.v, s.v, {1, 0});
  const auto& bends = s.eq.bends(sw);
  auto pos = verify_morita(s.emb, s.v, s.v, {MoritaCandidate{bends.companion.proarrow, bends.conjoint.proarrow}}, true);
  CHECK(pos.passed());
}
