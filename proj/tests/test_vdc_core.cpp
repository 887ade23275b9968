#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "veq/enumerate.hpp"
#include "veq/fixtures.hpp"
#include "veq/laws.hpp"
#include "veq/matrix_equipment.hpp"

using namespace veq;

namespace {

// A -f-> B, J : A -|> B, K : B -|> B, one cell alpha : [J K] / (id, id) => J
// and a nullary cell e : [@B] / (id, id) => K.
VirtualDoubleCategory small() {
  VdcBuilder b;
  ObjId a = b.add_object("A");
  ObjId bb = b.add_object("B");
  b.add_arrow("f", a, bb);
  ProarrowId j = b.add_proarrow("J", a, bb);
  ProarrowId k = b.add_proarrow("K", bb, bb);
  const auto& v = b.vertical();
  CellId alpha = b.add_cell("alpha", Frame{Path::of({j, k}), v.identity(a), v.identity(bb), j});
  CellId e = b.add_cell("e", Frame{Path::empty(bb), v.identity(bb), v.identity(bb), k});
  // alpha(id_J, e) = id_J
  b.set_paste(alpha, {b.identity_cell(j), e}, b.identity_cell(j));
  return b.build_tabulated();
}

std::size_t count_paths(const std::vector<std::vector<std::size_t>>& adj, std::size_t from, std::size_t to, int len) {
  // adjacency power by dynamic programming
  std::vector<std::size_t> row(adj.size(), 0);
  row[from] = 1;
  for (int i = 0; i < len; ++i) {
    std::vector<std::size_t> next(adj.size(), 0);
    for (std::size_t x = 0; x < adj.size(); ++x) {
      for (std::size_t y = 0; y < adj.size(); ++y) next[y] += row[x] * adj[x][y];
    }
    row = next;
  }
  return row[to];
}

}  // namespace

TEST_CASE("paths are enumerated by adjacency powers") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  std::vector<std::vector<std::size_t>> adj(2, std::vector<std::size_t>(2));
  const std::vector<int> size{1, 2};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) adj[a][b] = std::size_t{1} << (size[a] * size[b]);
  }
  for (std::size_t from = 0; from < 2; ++from) {
    for (std::size_t to = 0; to < 2; ++to) {
      for (int len = 0; len <= 3; ++len) {
        std::size_t n = 0;
        for_each_path(vdc, ObjId{from}, ObjId{to}, len, len, [&](const Path& p) {
          CHECK(vdc.is_composable(p));
          ++n;
          return true;
        });
        CHECK(n == count_paths(adj, from, to, len));
      }
    }
  }
}

TEST_CASE("frames are every domain with every compatible boundary") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const std::vector<int> size{1, 2};
  auto arrows = [&](int a, int b) {
    int r = 1;
    for (int i = 0; i < size[a]; ++i) r *= size[b];
    return r;
  };
  auto proarrows = [&](int a, int b) { return 1 << (size[a] * size[b]); };
  // domains of length 0 and 1, each with (src, tgt)
  std::vector<std::pair<int, int>> domains{{0, 0}, {1, 1}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < proarrows(a, b); ++i) domains.emplace_back(a, b);
    }
  }
  std::size_t expected = 0;
  for (auto [s, t] : domains) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) expected += static_cast<std::size_t>(arrows(s, x) * arrows(t, y) * proarrows(x, y));
    }
  }
  std::size_t n = 0;
  for_each_frame(vdc, 1, [&](const Frame& f) {
    CHECK(vdc.well_formed(f));
    ++n;
    return true;
  });
  CHECK(n == expected);
}

TEST_CASE("frames with a broken boundary are rejected") {
  auto vdc = small();
  const auto& v = vdc.vertical();
  const ObjId a = *vdc.find_object("A");
  const ObjId b = *vdc.find_object("B");
  const ProarrowId j = *vdc.find_proarrow("J");
  const ProarrowId k = *vdc.find_proarrow("K");
  CHECK(vdc.well_formed(Frame{Path::of({j, k}), v.identity(a), v.identity(b), j}));
  CHECK_FALSE(vdc.well_formed(Frame{Path::of({k, j}), v.identity(b), v.identity(b), k}));  // not composable
  CHECK_FALSE(vdc.well_formed(Frame{Path::of({j}), v.identity(b), v.identity(b), k}));     // left vertical
  CHECK(vdc.well_formed(Frame{Path::of({j}), *vdc.find_arrow("f"), v.identity(b), k}));
  CHECK_THROWS_AS(vdc.require_well_formed(Frame{Path::empty(a), v.identity(a), v.identity(a), k}), Error);
  try {
    vdc.require_well_formed(Frame{Path::empty(a), v.identity(a), v.identity(a), k});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedFrame);
  }
}

TEST_CASE("tabulated pastes follow the table and the identity rules") {
  auto vdc = small();
  const Cell alpha = *vdc.find_cell("alpha");
  const Cell e = *vdc.find_cell("e");
  const Cell idj = vdc.identity_cell(*vdc.find_proarrow("J"));
  const Cell idk = vdc.identity_cell(*vdc.find_proarrow("K"));
  CHECK(vdc.paste(alpha, {idj, e}) == idj);
  CHECK(vdc.paste(alpha, {idj, idk}) == alpha);
  CHECK(vdc.paste(idj, {alpha}) == alpha);
  CHECK(vdc.paste(idk, {e}) == e);
  CHECK(vdc.is_identity_cell(idj));
  CHECK_FALSE(vdc.is_identity_cell(alpha));
}

TEST_CASE("pasting mismatches name the offending inner cell") {
  auto vdc = small();
  const Cell alpha = *vdc.find_cell("alpha");
  const Cell e = *vdc.find_cell("e");
  const Cell idj = vdc.identity_cell(*vdc.find_proarrow("J"));
  try {
    (void)vdc.paste(alpha, {e, idj});
    FAIL("pasted a mismatched arrangement");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonComposable);
    CHECK(err.index() == 0);
  }
  try {
    (void)vdc.paste(alpha, {idj});
    FAIL("pasted the wrong number of inner cells");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonComposable);
  }
}

TEST_CASE("missing table entries surface as missing cells") {
  auto vdc = small();
  const Cell alpha = *vdc.find_cell("alpha");
  const Cell idj = vdc.identity_cell(*vdc.find_proarrow("J"));
  const Cell idk = vdc.identity_cell(*vdc.find_proarrow("K"));
  // alpha(alpha, id_K) has no entry
  CHECK_THROWS_AS(vdc.paste(alpha, {alpha, idk}), Error);
  (void)idj;
}

TEST_CASE("cyclic pastes agree with addition modulo the order") {
  for (int order : {3, 4, 6}) {
    auto c = make_cyclic(order);
    std::vector<Cell> elems{c.identity_cell(*c.find_proarrow("J"))};
    for (int k = 1; k < order; ++k) elems.push_back(*c.find_cell("a" + std::to_string(k)));
    for (int x = 0; x < order; ++x) {
      for (int y = 0; y < order; ++y) CHECK(c.paste(elems[x], {elems[y]}) == elems[(x + y) % order]);
    }
  }
}

TEST_CASE("thin pastes land on the pasted frame") {
  auto me = make_b2();
  const auto& vdc = me.vdc();
  const auto cells = enumerate_cells(vdc, 1);
  std::size_t checked = 0;
  for (const auto& outer : cells) {
    if (outer.frame.domain.size() != 1 || checked > 2000) continue;
    for (const auto& inner : cells) {
      if (inner.frame.codomain != outer.frame.domain.arrows[0]) continue;
      const Cell p = vdc.paste(outer, {inner});
      const Frame want{inner.frame.domain, vdc.vertical().compose(outer.frame.left, inner.frame.left),
                       vdc.vertical().compose(outer.frame.right, inner.frame.right), outer.frame.codomain};
      CHECK(p.frame == want);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("an unclosed paste table is reported as a closure failure") {
  auto vdc = small();
  auto r = check_vdc_laws(vdc);
  CHECK(r.failed());
  REQUIRE(r.first_failure() != nullptr);
  // alpha(alpha, e) has no entry
  CHECK(r.first_failure()->check == "vdc.laws.closure");
  CHECK(r.first_failure()->detail.find("alpha") != std::string::npos);
}

TEST_CASE("the vertical category validates its composition table") {
  VdcBuilder b;
  ObjId a = b.add_object("A");
  ObjId c = b.add_object("C");
  VArrowId f = b.add_arrow("f", a, c);
  VArrowId g = b.add_arrow("g", c, a);
  (void)f;
  (void)g;
  // g . f and f . g are never declared
  CHECK_THROWS_AS(b.build_tabulated(), Error);
}
