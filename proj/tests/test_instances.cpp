#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "veq/enumerate.hpp"
#include "veq/fixtures.hpp"
#include "veq/laws.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/quantale.hpp"

using namespace veq;

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("quantale tables match integer arithmetic") {
  for (const auto& [q, o] : {std::pair{FiniteQuantale::boolean(), oracle::boolean()},
                             std::pair{FiniteQuantale::tropical(2), oracle::tropical(2)},
                             std::pair{FiniteQuantale::tropical(3), oracle::tropical(3)}}) {
    REQUIRE(q.size() == (o.tropical ? o.cap + 1 : 2));
    auto val = [&](QElem a) { return std::stoi(q.literal(a)); };
    CHECK(val(q.unit()) == o.unit());
    CHECK(val(q.bottom()) == o.bottom());
    for (QElem a = 0; a < q.size(); ++a) {
      for (QElem b = 0; b < q.size(); ++b) {
        CHECK(val(q.tensor(a, b)) == o.tensor(val(a), val(b)));
        CHECK(val(q.join(a, b)) == o.join(val(a), val(b)));
        CHECK(q.leq(a, b) == o.leq(val(a), val(b)));
      }
    }
  }
}

TEST_CASE("quantale axioms are enforced") {
  const std::vector<std::vector<bool>> leq{{true, true}, {false, true}};
  // Unit 0 with tensor `and` is not unital.
  CHECK_THROWS_AS(FiniteQuantale("bad", {"0", "1"}, leq, {{0, 0}, {0, 1}}, 0), Error);
  // Tensor `or` does not preserve the empty join.
  CHECK_THROWS_AS(FiniteQuantale("bad", {"0", "1"}, leq, {{0, 1}, {1, 1}}, 0), Error);
  // Not antisymmetric.
  CHECK_THROWS_AS(FiniteQuantale("bad", {"0", "1"}, {{true, true}, {true, true}}, {{0, 0}, {0, 1}}, 1), Error);
  CHECK_NOTHROW(FiniteQuantale("and", {"0", "1"}, leq, {{0, 0}, {0, 1}}, 1));
  try {
    FiniteQuantale("bad", {"0", "1"}, leq, {{0, 0}, {0, 1}}, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidQuantale);
  }
}

TEST_CASE("full matrix instances register every function and matrix") {
  auto b2 = make_b2();
  auto t3 = make_t3();
  const std::vector<int> sizes{1, 2};
  for (auto* me : {&b2, &t3}) {
    const int q = me->quantale().size();
    const auto& vdc = me->vdc();
    int arrows = 0;
    int proarrows = 0;
    for (int a : sizes) {
      for (int b : sizes) {
        arrows += ipow(b, a);
        proarrows += ipow(q, a * b);
      }
    }
    CHECK(static_cast<int>(vdc.vertical().arrow_count()) == arrows);
    CHECK(static_cast<int>(vdc.proarrow_count()) == proarrows);
    CHECK(vdc.is_thin());
  }
  CHECK(b2.vdc().proarrow_count() == 26);
  CHECK(t3.vdc().proarrow_count() == 102);
}

TEST_CASE("matrix cells exist exactly when the tensor lies below the codomain") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto q = oracle::boolean();
  const auto& v = vdc.vertical();
  std::size_t frames = 0;
  std::size_t inhabited = 0;
  for_each_frame(vdc, 2, [&](const Frame& f) {
    ++frames;
    // oracle: product of the domain restricted along the verticals
    oracle::IntMatrix path;
    if (f.domain.is_empty()) {
      path = oracle::identity(q, me.set_size(f.domain.anchor));
    } else {
      path = oracle::entries(me, f.domain.arrows[0]);
      for (std::size_t i = 1; i < f.domain.size(); ++i) path = oracle::product(q, path, oracle::entries(me, f.domain.arrows[i]));
    }
    const auto target = oracle::restrict(oracle::entries(me, f.codomain), me.function(f.left), me.function(f.right));
    const bool expected = oracle::below(q, path, target);
    inhabited += expected ? 1 : 0;
    CHECK(me.exists(f) == expected);
    CHECK(vdc.frame_cells(f).size() == (expected ? 1u : 0u));
    (void)v;
    return true;
  });
  CHECK(frames > 1000);
  CHECK(inhabited > 0);
}

TEST_CASE("matrix literals print in the quantale's syntax") {
  auto me = make_t3();
  Matrix m{2, 2, {0, 1, 2, 0}};
  // entries are element indices; print through the literals
  const auto& q = me.quantale();
  std::string want = "[" + q.literal(0) + " " + q.literal(1) + " ; " + q.literal(2) + " " + q.literal(0) + "]";
  CHECK(me.literal(m) == want);
}

TEST_CASE("sets larger than the element cap are rejected") {
  CHECK_THROWS_AS(MatrixEquipment::full(FiniteQuantale::boolean(), {{"W", 5}}), Error);
}

TEST_CASE("closed families are validated and closed") {
  const auto q = FiniteQuantale::boolean();
  MatrixEquipment::NamedMatrix swap{"S", "V", "V", Matrix{2, 2, {0, 1, 1, 0}}};
  auto me = MatrixEquipment::family(q, {{"V", 2}}, {swap});
  const auto& vdc = me.vdc();
  REQUIRE(me.find_proarrow("S"));
  // closure contains the unit: the identity matrix
  bool has_unit = false;
  for (std::size_t p = 0; p < vdc.proarrow_count(); ++p) {
    if (oracle::entries(me, ProarrowId{p}) == oracle::identity(oracle::boolean(), 2)) has_unit = true;
  }
  CHECK(has_unit);
  // every pair composes inside the family
  for (std::size_t a = 0; a < vdc.proarrow_count(); ++a) {
    for (std::size_t b = 0; b < vdc.proarrow_count(); ++b) {
      const auto prod = oracle::product(oracle::boolean(), oracle::entries(me, ProarrowId{a}), oracle::entries(me, ProarrowId{b}));
      bool found = false;
      for (std::size_t c = 0; c < vdc.proarrow_count(); ++c) found = found || oracle::entries(me, ProarrowId{c}) == prod;
      CHECK(found);
    }
  }
}

TEST_CASE("F1 has one identity cell and lawful substitution") {
  auto f1 = make_f1();
  CHECK(f1.object_count() == 1);
  CHECK(f1.proarrow_count() == 1);
  const auto cells = enumerate_cells(f1, 3);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].frame.domain.size() == 1);
  CHECK(check_vdc_laws(f1).passed());
}

TEST_CASE("free VDC closes a nullary generator under pasting") {
  Presentation p;
  p.objects = {"A"};
  p.proarrows = {{"J", "A", "A"}};
  p.generators = {{"e", {}, "A", "id_A", "id_A", "J"}};
  auto vdc = free_vdc(p);
  // e, id_J, and id_J(e) = e: the generator is the only nullary cell
  std::size_t nullary = 0;
  for (const auto& c : enumerate_cells(vdc, 0)) nullary += c.frame.domain.is_empty() ? 1 : 0;
  CHECK(nullary == 1);
  CHECK(check_vdc_laws(vdc).passed());
}

TEST_CASE("terminal VDC has one cell per arity") {
  const int arity = 4;
  auto t = make_terminal(arity);
  for (int n = 0; n <= arity; ++n) {
    const auto cells = enumerate_cells(t, n);
    CHECK(static_cast<int>(cells.size()) == n + 1);
  }
  CHECK(check_vdc_laws(t, SearchBounds{arity, 1, 2, std::size_t{1} << 20}).passed());
}

TEST_CASE("cyclic fixture and its corrupted table") {
  for (int order : {2, 3, 5}) {
    auto c = make_cyclic(order);
    CHECK(enumerate_cells(c, 1).size() == static_cast<std::size_t>(order));
    CHECK(check_vdc_laws(c).passed());
  }
  auto bad = make_cyclic(3, true);
  auto r = check_vdc_laws(bad);
  CHECK(r.failed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->check.find("associativity") != std::string::npos);
}
