#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle.hpp"
#include "veq/enumerate.hpp"
#include "veq/equipment.hpp"
#include "veq/fixtures.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/universal.hpp"

using namespace veq;

namespace {

const SearchBounds kB2{3, 1, 2, std::size_t{1} << 20};
const SearchBounds kT3Cart{2, 1, 2, std::size_t{1} << 26};
const SearchBounds kT3Comp{1, 0, 2, std::size_t{1} << 26};

oracle::Arith arith(const MatrixEquipment& me) {
  return me.quantale().name() == FiniteQuantale::boolean().name() ? oracle::boolean() : oracle::tropical(2);
}

}  // namespace

TEST_CASE("units are the identity matrices") {
  for (auto me : {make_b2(), make_t3()}) {
    const auto& vdc = me.vdc();
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      auto r = find_unit(vdc, ObjId{a}, me.quantale().size() == 2 ? kB2 : kT3Cart);
      REQUIRE(r.found());
      CHECK(oracle::entries(me, r.value().proarrow) == oracle::identity(arith(me), me.set_size(ObjId{a})));
      CHECK(r.value().structure_cell.frame.domain.is_empty());
    }
  }
}

TEST_CASE("restrictions reindex the matrix on B2") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto& v = vdc.vertical();
  std::size_t n = 0;
  for (std::size_t k = 0; k < vdc.proarrow_count(); ++k) {
    const ProarrowId kk{k};
    for (auto g : v.arrows_into(vdc.src(kk))) {
      for (auto f : v.arrows_into(vdc.tgt(kk))) {
        auto r = find_restriction(vdc, kk, g, f, kB2);
        REQUIRE(r.found());
        CHECK(oracle::entries(me, r.value().proarrow) ==
              oracle::restrict(oracle::entries(me, kk), me.function(g), me.function(f)));
        ++n;
      }
    }
  }
  // sum over K : A -|> B of (arrows into A) x (arrows into B)
  CHECK(n == 2 * 2 * 2 + 4 * 2 * 6 + 4 * 6 * 2 + 16 * 6 * 6);
}

TEST_CASE("restrictions reindex the matrix on T3") {
  auto me = make_t3();
  const auto& vdc = me.vdc();
  const auto& v = vdc.vertical();
  for (std::size_t k = 0; k < vdc.proarrow_count(); ++k) {
    const ProarrowId kk{k};
    for (auto g : v.arrows_into(vdc.src(kk))) {
      for (auto f : v.arrows_into(vdc.tgt(kk))) {
        auto r = find_restriction(vdc, kk, g, f, kT3Cart);
        REQUIRE(r.found());
        CHECK(oracle::entries(me, r.value().proarrow) ==
              oracle::restrict(oracle::entries(me, kk), me.function(g), me.function(f)));
      }
    }
  }
}

TEST_CASE("companions and conjoints are graphs, and the kinks hold") {
  for (auto me : {make_b2(), make_t3()}) {
    const auto& vdc = me.vdc();
    const auto& v = vdc.vertical();
    const auto q = arith(me);
    const SearchBounds bounds = me.quantale().size() == 2 ? kB2 : kT3Cart;
    for (std::size_t i = 0; i < v.arrow_count(); ++i) {
      const VArrowId f{i};
      const auto bends = derive_bends(vdc, f, bounds);
      const int cod = me.set_size(v.cod(f));
      CHECK(oracle::entries(me, bends.companion.proarrow) == oracle::companion(q, me.function(f), cod));
      CHECK(oracle::entries(me, bends.conjoint.proarrow) == oracle::conjoint(q, me.function(f), cod));
      CHECK(bends.kinks.passed());
      CHECK(bends.kinks.findings().size() == 4);
    }
  }
}

TEST_CASE("binary composites are matrix products on B2") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto q = oracle::boolean();
  std::size_t n = 0;
  for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
    for (auto k : vdc.proarrows_between(vdc.tgt(ProarrowId{j}), ObjId{0})) {
      auto r = find_composite(vdc, Path::of({ProarrowId{j}, k}), kB2);
      REQUIRE(r.found());
      CHECK(oracle::entries(me, r.value().proarrow) ==
            oracle::product(q, oracle::entries(me, ProarrowId{j}), oracle::entries(me, k)));
      ++n;
    }
  }
  CHECK(n > 0);
}

TEST_CASE("binary composites are capped min-plus products on T3") {
  auto me = make_t3();
  const auto& vdc = me.vdc();
  const auto q = oracle::tropical(2);
  std::size_t n = 0;
  for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
    for (std::size_t c = 0; c < vdc.object_count(); ++c) {
      for (auto k : vdc.proarrows_between(vdc.tgt(ProarrowId{j}), ObjId{c})) {
        auto r = find_composite(vdc, Path::of({ProarrowId{j}, k}), kT3Comp);
        REQUIRE(r.found());
        CHECK(oracle::entries(me, r.value().proarrow) ==
              oracle::product(q, oracle::entries(me, ProarrowId{j}), oracle::entries(me, k)));
        ++n;
      }
    }
  }
  // sum over composable (A, B, C) of 3^(|A||B|) 3^(|B||C|)
  std::size_t want = 0;
  const std::vector<int> sizes{1, 2};
  for (int a : sizes) {
    for (int b : sizes) {
      for (int c : sizes) want += static_cast<std::size_t>(std::pow(3, a * b) * std::pow(3, b * c));
    }
  }
  CHECK(n == want);
}

TEST_CASE("a composite of the empty path is a unit") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const ObjId v = *vdc.find_object("V");
  auto r = find_composite(vdc, Path::empty(v), kB2);
  REQUIRE(r.found());
  CHECK(oracle::entries(me, r.value().proarrow) == oracle::identity(oracle::boolean(), 2));
}

TEST_CASE("F1 has no unit") {
  auto f1 = make_f1();
  auto r = find_unit(f1, ObjId{0});
  CHECK(r.outcome == SearchOutcome::NotFound);
  CHECK_THROWS_AS(r.value(), Error);
}

TEST_CASE("the terminal VDC has its proarrow as unit and composite") {
  auto t = make_terminal(6);
  auto u = find_unit(t, ObjId{0});
  REQUIRE(u.found());
  const ProarrowId p = *t.find_proarrow("P");
  CHECK(u.value().proarrow == p);
  auto c = find_composite(t, Path::of({p, p}));
  REQUIRE(c.found());
  CHECK(c.value().proarrow == p);
}

TEST_CASE("a non-cartesian cell is rejected with a counterexample") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto& v = vdc.vertical();
  const ObjId vv = *vdc.find_object("V");
  const ProarrowId bottom = *me.proarrow_of(vv, vv, Matrix::filled(2, 2, 0));
  const ProarrowId ident = *me.proarrow_of(vv, vv, Matrix{2, 2, {1, 0, 0, 1}});
  const Cell c{CellId{}, Frame{Path::of({bottom}), v.identity(vv), v.identity(vv), ident}};
  REQUIRE(vdc.has_cell(c.frame));
  auto chk = is_cartesian(vdc, c, kB2);
  CHECK_FALSE(chk.holds);
  CHECK(chk.report.failed());
  // the genuine restriction is cartesian
  auto r = find_restriction(vdc, ident, v.identity(vv), v.identity(vv), kB2);
  CHECK(is_cartesian(vdc, r.value().structure_cell, kB2).holds);
}

TEST_CASE("factorization through a cartesian cell is unique") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto& v = vdc.vertical();
  const ObjId vv = *vdc.find_object("V");
  const VArrowId swap = *me.arrow_of(vv, vv, {1, 0});
  const ProarrowId ident = *me.proarrow_of(vv, vv, Matrix{2, 2, {1, 0, 0, 1}});
  const auto found = find_restriction(vdc, ident, swap, swap, kB2);
  const auto& r = found.value();
  // phi : [h_V] / (swap, swap) => h_V exists; its factor is on ([h_V], id, id, h_V(swap, swap))
  const Cell phi{CellId{}, Frame{Path::of({ident}), swap, swap, ident}};
  REQUIRE(vdc.has_cell(phi.frame));
  auto psi = factor_cartesian(vdc, r.structure_cell, phi, v.identity(vv), v.identity(vv));
  REQUIRE(psi);
  CHECK(psi->frame == Frame{Path::of({ident}), v.identity(vv), v.identity(vv), r.proarrow});
  // and h_V(swap, swap) is h_V again
  CHECK(oracle::entries(me, r.proarrow) == oracle::identity(oracle::boolean(), 2));
}

TEST_CASE("isomorphic proarrows in a thin base have equal matrices") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
    for (auto k : vdc.proarrows_between(vdc.src(ProarrowId{j}), vdc.tgt(ProarrowId{j}))) {
      const bool iso = proarrows_isomorphic(vdc, ProarrowId{j}, k).has_value();
      CHECK(iso == (oracle::entries(me, ProarrowId{j}) == oracle::entries(me, k)));
    }
  }
}

TEST_CASE("the equipment view memoizes and factors") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  Equipment e(vdc, EquipmentBounds{kB2, kB2});
  const ObjId v = *vdc.find_object("V");
  const auto& u1 = e.unit(v);
  const auto& u2 = e.unit(v);
  CHECK(&u1 == &u2);
  const ProarrowId ident = u1.proarrow;
  const auto& lam = e.left_unitor(ident);
  CHECK(lam.frame.domain.size() == 2);
  CHECK(lam.frame.codomain == ident);
  // a composite structure cell factors phi = itself through the identity
  const auto& w = e.composite(Path::of({ident, ident}));
  CHECK(w.proarrow == ident);
}

TEST_CASE("equipment check on B2 passes") {
  auto me = make_b2();
  auto r = check_equipment(me.vdc(), kB2);
  CHECK(r.passed());
}

TEST_CASE("derived lemmas on the family generated by the swap") {
  MatrixEquipment::NamedMatrix swap{"S", "V", "V", Matrix{2, 2, {0, 1, 1, 0}}};
  auto me = MatrixEquipment::family(FiniteQuantale::boolean(), {{"V", 2}}, {swap});
  auto r = check_derived_lemmas(me.vdc(), kB2);
  REQUIRE(r.passed());
  // one object, four endofunctions, n proarrows: every instance is counted once
  const std::size_t n = me.vdc().proarrow_count();
  const std::string want = std::to_string(n * 16) + " restriction composites, " + std::to_string(n * n * n) +
                           " nested composites, 16 bend composites, " + std::to_string(n * n * 16) +
                           " flanked composites";
  REQUIRE(r.first_failure() == nullptr);
  bool seen = false;
  for (const auto& f : r.findings()) seen = seen || f.detail == want;
  CHECK(seen);
}
