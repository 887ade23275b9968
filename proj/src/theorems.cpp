#include "veq/theorems.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "veq/enumerate.hpp"
#include "veq/universal.hpp"

namespace veq {
namespace {

constexpr std::size_t kMaxShown = 16;

// Merges only the failing or truncated findings of `sub`, capped.
void absorb(VerificationReport& report, const VerificationReport& sub, std::size_t& shown) {
  for (const auto& f : sub.findings()) {
    if (f.status == Status::Pass) continue;
    if (shown++ < kMaxShown) report.add(Finding{sub.name() + ": " + f.check, f.status, f.detail});
  }
}

void summarize(VerificationReport& report, const std::string& name, std::size_t failures, const std::string& detail) {
  if (failures == 0) {
    report.pass(name, detail);
  } else {
    report.fail(name, std::to_string(failures) + " failures; " + detail);
  }
}

bool in_family(const std::vector<ProarrowId>& family, ProarrowId p) {
  return family.empty() || std::find(family.begin(), family.end(), p) != family.end();
}

std::vector<ObjId> objects_of(const VirtualDoubleCategory& vdc, const std::vector<ProarrowId>& ps) {
  std::set<ObjId> objs;
  for (auto p : ps) {
    objs.insert(vdc.proarrow(p).src);
    objs.insert(vdc.proarrow(p).tgt);
  }
  return {objs.begin(), objs.end()};
}

Fragment fragment_over(const Embedding& emb, const std::vector<ObjId>& objects, const std::vector<ProarrowId>& ps) {
  const auto& v = emb.base().vertical();
  Fragment fr;
  for (auto a : objects) fr.categories.push_back(emb.represent_object(a));
  for (auto a : objects) {
    for (auto b : objects) {
      for (auto f : v.arrows_between(a, b)) {
        if (!v.is_identity(f)) fr.functors.push_back(emb.represent_arrow(f));
      }
    }
  }
  for (auto p : ps) fr.profunctors.push_back(emb.represent_proarrow(p));
  return fr;
}

// Representatives keyed by cell; thin cells are identified by their frame.
class RepCache {
 public:
  explicit RepCache(const Embedding& emb) : emb_(emb) {}
  const MorphismPtr& get(const Cell& c) {
    auto& bucket = cache_[c.frame];
    for (auto& [id, m] : bucket) {
      if (id == c.id) return m;
    }
    bucket.emplace_back(c.id, emb_.represent_cell(c));
    return bucket.back().second;
  }

 private:
  const Embedding& emb_;
  std::unordered_map<Frame, std::vector<std::pair<CellId, MorphismPtr>>, FrameHash> cache_;
};

std::vector<std::pair<ProarrowId, ProarrowId>> composable_pairs(const VirtualDoubleCategory& vdc) {
  std::vector<std::pair<ProarrowId, ProarrowId>> out;
  for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
    const ProarrowId jj{j};
    for (std::size_t c = 0; c < vdc.object_count(); ++c) {
      for (auto k : vdc.proarrows_between(vdc.proarrow(jj).tgt, ObjId{c})) out.emplace_back(jj, k);
    }
  }
  return out;
}

}  // namespace

VerificationReport verify_constructions(const Embedding& emb, int max_cell_path) {
  SearchBounds b;
  b.max_path = max_cell_path;
  return timed_report("constructions", b, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    const auto& v = vdc.vertical();
    std::size_t shown = 0;
    std::size_t failures = 0;
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      auto r = check_category_laws(*emb.represent_object(ObjId{a}));
      failures += r.passed() ? 0 : 1;
      absorb(report, r, shown);
    }
    summarize(report, "constructions.categories", failures, std::to_string(vdc.object_count()) + " representatives");
    failures = 0;
    for (std::size_t f = 0; f < v.arrow_count(); ++f) {
      auto r = check_functor_laws(*emb.represent_arrow(VArrowId{f}), &emb.equipment());
      failures += r.passed() ? 0 : 1;
      absorb(report, r, shown);
    }
    summarize(report, "constructions.functors", failures, std::to_string(v.arrow_count()) + " representatives");
    failures = 0;
    for (std::size_t p = 0; p < vdc.proarrow_count(); ++p) {
      auto r = check_profunctor_laws(*emb.represent_proarrow(ProarrowId{p}));
      failures += r.passed() ? 0 : 1;
      absorb(report, r, shown);
    }
    summarize(report, "constructions.profunctors", failures, std::to_string(vdc.proarrow_count()) + " representatives");
    failures = 0;
    std::size_t cells = 0;
    for_each_frame(vdc, max_cell_path, [&](const Frame& fr) {
      for (const auto& c : vdc.frame_cells(fr)) {
        ++cells;
        try {
          auto r = check_morphism_laws(*emb.represent_cell(c));
          failures += r.passed() ? 0 : 1;
          absorb(report, r, shown);
        } catch (const Error& e) {
          ++failures;
          if (shown++ < kMaxShown) report.fail("constructions.cell " + vdc.describe(c), e.what());
        }
      }
      return true;
    });
    summarize(report, "constructions.morphisms", failures,
              std::to_string(cells) + " cells with domain length <= " + std::to_string(max_cell_path));
  });
}

VerificationReport verify_functoriality(const Embedding& emb, const ArrangementBounds& bounds) {
  SearchBounds sb;
  sb.max_path = bounds.max_path;
  return timed_report("functoriality", sb, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    std::unordered_map<std::uint32_t, std::vector<Cell>> by_codomain;
    std::vector<Cell> outers;
    for_each_frame(vdc, bounds.max_path, [&](const Frame& fr) {
      if (!in_family(bounds.family, fr.codomain)) return true;
      for (auto p : fr.domain.arrows) {
        if (!in_family(bounds.family, p)) return true;
      }
      for (const auto& c : vdc.frame_cells(fr)) {
        by_codomain[fr.codomain.value].push_back(c);
        if (!fr.domain.is_empty() && static_cast<int>(fr.domain.size()) <= bounds.max_outer) outers.push_back(c);
      }
      return true;
    });
    RepCache reps(emb);
    std::size_t arrangements = 0;
    std::size_t failures = 0;
    std::vector<Cell> inners;
    std::function<void(const Cell&, std::size_t, int)> fill = [&](const Cell& outer, std::size_t slot, int used) {
      if (slot == outer.frame.domain.size()) {
        ++arrangements;
        try {
          const Cell pasted = vdc.paste(outer, inners);
          std::vector<MorphismPtr> parts;
          for (const auto& c : inners) parts.push_back(reps.get(c));
          auto composed = compose_morphisms(*reps.get(outer), parts);
          if (!(*reps.get(pasted) == *composed)) {
            if (failures++ < kMaxShown) report.fail("functoriality.arrangement", vdc.describe(outer) + " on " + vdc.describe(pasted));
          }
        } catch (const Error& e) {
          if (failures++ < kMaxShown) report.fail("functoriality.arrangement", vdc.describe(outer) + ": " + e.what());
        }
        return;
      }
      auto it = by_codomain.find(outer.frame.domain.arrows[slot].value);
      if (it == by_codomain.end()) return;
      for (const auto& c : it->second) {
        const int len = used + static_cast<int>(c.frame.domain.size());
        if (len > bounds.max_path) continue;
        if (slot > 0 && inners.back().frame.right != c.frame.left) continue;
        inners.push_back(c);
        fill(outer, slot + 1, len);
        inners.pop_back();
      }
    };
    for (const auto& outer : outers) fill(outer, 0, 0);
    summarize(report, "functoriality", failures,
              std::to_string(arrangements) + " arrangements, pasted domain length <= " +
                  std::to_string(bounds.max_path) + ", outer length <= " + std::to_string(bounds.max_outer) +
                  (bounds.family.empty() ? ", all proarrows"
                                         : ", family of " + std::to_string(bounds.family.size()) + " proarrows"));
  });
}

Fragment composite_fragment(const Embedding& emb, ProarrowId j1, ProarrowId j2) {
  const auto& w = emb.equipment().composite(Path::of({j1, j2}));
  const std::vector<ProarrowId> ps{j1, j2, w.proarrow};
  return fragment_over(emb, objects_of(emb.base(), ps), ps);
}

VerificationReport verify_composite_preservation(const Embedding& emb, std::size_t count, SearchBounds bounds) {
  return timed_report("preserves-composites", bounds, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    auto pairs = composable_pairs(vdc);
    // Smallest fragments first.
    auto cost = [&](const std::pair<ProarrowId, ProarrowId>& p) {
      std::size_t n = 0;
      for (auto a : {vdc.proarrow(p.first).src, vdc.proarrow(p.first).tgt, vdc.proarrow(p.second).tgt}) {
        n += emb.represent_object(a)->size();
      }
      return n;
    };
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) { return cost(x) < cost(y); });
    std::size_t checked = 0;
    std::size_t failures = 0;
    bool truncated = false;
    for (const auto& [j, k] : pairs) {
      if (checked >= count) break;
      const std::string label = vdc.proarrow(j).name + " " + vdc.proarrow(k).name;
      const UniversalWitness* w = nullptr;
      try {
        w = &emb.equipment().composite(Path::of({j, k}));
      } catch (const Error&) {
        continue;  // not a witness
      }
      ++checked;
      try {
        MaterializedVCat m(composite_fragment(emb, j, k));
        auto rep = emb.represent_cell(w->structure_cell);
        auto cell = m.cell_of(*rep);
        if (!cell) {
          ++failures;
          report.fail("preserves_composites " + label, "the representative is not a lawful cell of the fragment");
          continue;
        }
        auto chk = is_composite(m.vdc(), *cell, bounds);
        if (chk.report.status() == Status::Truncated) {
          truncated = true;
          report.truncated("preserves_composites " + label, chk.report.findings().back().detail);
        } else if (!chk.holds) {
          ++failures;
          std::size_t shown = 0;
          absorb(report, chk.report, shown);
        } else {
          report.pass("preserves_composites " + label, "composite of |" + vdc.proarrow(j).name + "| |" +
                                                           vdc.proarrow(k).name + "| in VCat");
        }
      } catch (const Error& e) {
        ++failures;
        report.fail("preserves_composites " + label, e.what());
      }
    }
    if (checked < count) {
      report.fail("preserves_composites", "only " + std::to_string(checked) + " composite witnesses exist");
    } else if (!truncated) {
      summarize(report, "preserves_composites", failures, std::to_string(checked) + " witnesses");
    }
  });
}

VerificationReport verify_ff_2cells(const Embedding& emb, const std::vector<ProarrowId>& proarrows, int max_path,
                                    const std::vector<ObjId>& objects) {
  SearchBounds sb;
  sb.max_path = max_path;
  return timed_report("ff-2cells", sb, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    auto ends = objects_of(vdc, proarrows);
    ends.insert(ends.end(), objects.begin(), objects.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    MaterializedVCat m(fragment_over(emb, ends, proarrows));
    const auto& vcat = m.vdc();
    std::size_t vcells = 0;
    std::size_t bcells = 0;
    std::size_t frames = 0;
    std::size_t failures = 0;
    auto fail = [&](const std::string& check, const std::string& detail) {
      if (failures++ < kMaxShown) report.fail(check, detail);
    };
    for_each_frame(vcat, max_path, [&](const Frame& vf) {
      ++frames;
      Frame bf;
      std::vector<ProarrowId> ps;
      for (auto p : vf.domain.arrows) ps.push_back(*emb.proarrow_of(m.profunctor(p)));
      bf.domain = ps.empty() ? Path::empty(*emb.object_of(m.category(vf.domain.anchor))) : Path::of(std::move(ps));
      bf.left = *emb.arrow_of(m.functor(vf.left));
      bf.right = *emb.arrow_of(m.functor(vf.right));
      bf.codomain = *emb.proarrow_of(m.profunctor(vf.codomain));
      const auto vs = vcat.frame_cells(vf);
      const auto bs = vdc.frame_cells(bf);
      vcells += vs.size();
      bcells += bs.size();
      if (vs.size() != bs.size()) {
        fail("ff_2cells.count", vcat.describe(vf) + ": " + std::to_string(vs.size()) + " morphisms, " +
                                    std::to_string(bs.size()) + " base cells");
      }
      for (const auto& c : vs) {
        const auto& mor = m.morphism(c.id);
        try {
          const Cell stripped = emb.strip_cell(*mor);
          if (std::find(bs.begin(), bs.end(), stripped) == bs.end()) {
            fail("ff_2cells.strip", mor->name + " strips off its base frame");
          } else if (!(*emb.represent_cell(stripped) == *mor)) {
            fail("ff_2cells.represent_strip", vcat.describe(c));
          }
        } catch (const Error& e) {
          fail("ff_2cells.strip", e.what());
        }
      }
      for (const auto& c : bs) {
        try {
          auto rep = emb.represent_cell(c);
          if (!m.cell_of(*rep)) fail("ff_2cells.represent", vdc.describe(c) + " has no lawful representative");
          if (emb.strip_cell(*rep) != c) fail("ff_2cells.strip_represent", vdc.describe(c));
        } catch (const Error& e) {
          fail("ff_2cells.represent", e.what());
        }
      }
      return true;
    });
    summarize(report, "ff_2cells", failures,
              std::to_string(frames) + " frames, " + std::to_string(vcells) + " morphisms, " + std::to_string(bcells) +
                  " base cells");
  });
}

VerificationReport verify_full_arrows(const Embedding& emb) {
  return timed_report("full-arrows", SearchBounds{}, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    const auto& v = vdc.vertical();
    std::size_t failures = 0;
    std::size_t shown = 0;
    std::size_t functors = 0;
    auto expect = [&](const FunctorPtr& f, VArrowId want, const std::string& label) {
      ++functors;
      try {
        auto full = emb.fullness_on_arrows(f);
        if (full.arrow != want) {
          ++failures;
          report.fail("full_arrows " + label, "recovered " + v.arrow(full.arrow).name + ", expected " + v.arrow(want).name);
        } else if (!full.iso.report.passed()) {
          ++failures;
          absorb(report, full.iso.report, shown);
        }
      } catch (const Error& e) {
        ++failures;
        report.fail("full_arrows " + label, e.what());
      }
    };
    for (std::size_t i = 0; i < v.arrow_count(); ++i) {
      const VArrowId f{i};
      expect(emb.represent_arrow(f), f, "|" + v.arrow(f).name + "|");
    }
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      expect(identity_functor(emb.represent_object(ObjId{a})), v.identity(ObjId{a}), "identity of |" + v.object_name(ObjId{a}) + "|");
    }
    for (std::size_t gi = 0; gi < v.arrow_count(); ++gi) {
      const VArrowId g{gi};
      for (auto h : v.arrows_into(v.dom(g))) {
        expect(compose_functors(emb.represent_arrow(g), emb.represent_arrow(h)), v.compose(g, h),
               "|" + v.arrow(g).name + "|.|" + v.arrow(h).name + "|");
      }
    }
    // Functors that change the extent reduce to the case above.
    std::size_t flattened = 0;
    for (std::size_t gi = 0; gi < v.arrow_count(); ++gi) {
      const VArrowId g{gi};
      try {
        auto sink = emb.sink_functor(v.dom(g), g);
        auto laws = check_functor_laws(*sink, &emb.equipment());
        auto flat = emb.flatten_functor(sink);
        ++flattened;
        if (!laws.passed() || !flat.iso.report.passed()) {
          ++failures;
          absorb(report, laws, shown);
          absorb(report, flat.iso.report, shown);
          continue;
        }
        expect(flat.functor, g, sink->name + " flattened");
      } catch (const Error& e) {
        ++failures;
        report.fail("full_arrows sink(" + v.arrow(g).name + ")", e.what());
      }
    }
    summarize(report, "full_arrows", failures,
              std::to_string(functors) + " extent-preserving functors, " + std::to_string(flattened) + " flattened");
  });
}

VerificationReport verify_coreflection(const Embedding& emb) {
  return timed_report("coreflective", SearchBounds{}, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    const auto& v = vdc.vertical();
    std::size_t failures = 0;
    std::size_t shown = 0;
    for (std::size_t k = 0; k < vdc.proarrow_count(); ++k) {
      const ProarrowId kk{k};
      const auto& rep = emb.represent_proarrow(kk);
      auto co = emb.coreflect(rep);
      const std::string label = "coreflective |" + vdc.proarrow(kk).name + "|";
      if (!co.counit) {
        ++failures;
        absorb(report, co.report, shown);
        continue;
      }
      if (co.proarrow != kk) {
        ++failures;
        report.fail(label, "coreflection is " + vdc.proarrow(co.proarrow).name);
      } else if (co.counit->components != identity_morphism(rep)->components) {
        ++failures;
        report.fail(label, "counit is not the identity morphism");
      } else if (!co.report.passed() || !co.counit_invertible) {
        ++failures;
        absorb(report, co.report, shown);
      }
    }
    summarize(report, "coreflective.representatives", failures,
              std::to_string(vdc.proarrow_count()) + " proarrows recovered on the nose with identity counits");
    std::size_t hom_failures = 0;
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      const ObjId aa{a};
      auto co = emb.coreflect(hom_profunctor(emb.represent_object(aa)));
      if (co.proarrow != emb.equipment().unit(aa).proarrow || !co.report.passed()) {
        ++hom_failures;
        report.fail("coreflective hom(|" + v.object_name(aa) + "|)", "does not coreflect to the unit");
      }
    }
    summarize(report, "coreflective.homs", hom_failures, std::to_string(vdc.object_count()) + " hom profunctors");
    std::size_t nat = 0;
    std::size_t nat_failures = 0;
    for (std::size_t j = 0; j < vdc.proarrow_count(); ++j) {
      const ProarrowId jj{j};
      const Path dom = Path::of({jj});
      const ObjId a = vdc.proarrow(jj).src;
      const ObjId b = vdc.proarrow(jj).tgt;
      for (auto k : vdc.proarrows_between(a, b)) {
        for (const auto& c : vdc.frame_cells(Frame{dom, v.identity(a), v.identity(b), k})) {
          ++nat;
          auto r = emb.check_counit_naturality(*emb.represent_cell(c));
          if (!r.passed()) {
            ++nat_failures;
            absorb(report, r, shown);
          }
        }
      }
    }
    summarize(report, "coreflective.counit_naturality", nat_failures, std::to_string(nat) + " unary cells");
  });
}

std::optional<ProfunctorPtr> thin_profunctor(const CategoryPtr& source, const CategoryPtr& target,
                                             const std::vector<ProarrowId>& components, const std::string& name) {
  const auto& base = *source->base;
  const auto& v = base.vertical();
  auto j = std::make_shared<EnrichedProfunctor>();
  j->name = name;
  j->source = source;
  j->target = target;
  j->components = components;
  const std::size_t n = source->size();
  const std::size_t m = target->size();
  j->lefts.resize(n * n * m);
  j->rights.resize(n * m * m);
  for (std::size_t x = 0; x < n; ++x) {
    const VArrowId ix = v.identity(source->extent[x]);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t y = 0; y < n; ++y) {
        const Frame f{Path::of({source->hom(x, y), j->component(y, u)}), ix, v.identity(target->extent[u]),
                      j->component(x, u)};
        auto cells = base.frame_cells(f);
        if (cells.empty()) return std::nullopt;
        j->left_action(x, y, u) = cells.front();
      }
      for (std::size_t w = 0; w < m; ++w) {
        const Frame f{Path::of({j->component(x, u), target->hom(u, w)}), ix, v.identity(target->extent[w]),
                      j->component(x, w)};
        auto cells = base.frame_cells(f);
        if (cells.empty()) return std::nullopt;
        j->right_action(x, u, w) = cells.front();
      }
    }
  }
  return j;
}

RepresentabilityCensus representability_census(const Embedding& emb, ObjId a, ObjId b, std::size_t max_families) {
  RepresentabilityCensus out;
  const auto& vdc = emb.base();
  const auto& c = emb.represent_object(a);
  const auto& d = emb.represent_object(b);
  out.report = timed_report("representability(|" + vdc.vertical().object_name(a) + "|, |" +
                                vdc.vertical().object_name(b) + "|)",
                            SearchBounds{}, [&](VerificationReport& report) {
    if (!vdc.is_thin()) {
      report.fail("representability.census", "only thin bases are enumerated");
      return;
    }
    std::vector<std::vector<ProarrowId>> options;
    std::size_t total = 1;
    for (std::size_t x = 0; x < c->size(); ++x) {
      for (std::size_t u = 0; u < d->size(); ++u) {
        auto span = vdc.proarrows_between(c->extent[x], d->extent[u]);
        options.emplace_back(span.begin(), span.end());
        total = options.back().empty() ? 0 : total * options.back().size();
        if (total > max_families) {
          report.truncated("representability.census", "more than " + std::to_string(max_families) + " families");
          return;
        }
      }
    }
    std::vector<std::size_t> pick(options.size(), 0);
    std::string first_bad;
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<ProarrowId> comps;
      for (std::size_t i = 0; i < options.size(); ++i) comps.push_back(options[i][pick[i]]);
      ++out.families;
      auto j = thin_profunctor(c, d, comps, "J" + std::to_string(n));
      if (j && check_profunctor_laws(**j).passed()) {
        ++out.lawful;
        auto co = emb.coreflect(*j);
        if (co.counit_invertible) {
          ++out.representable;
        } else if (first_bad.empty()) {
          first_bad = (*j)->name;
        }
      }
      for (std::size_t i = options.size(); i-- > 0;) {
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
      }
    }
    const std::string counts = std::to_string(out.families) + " component families, " + std::to_string(out.lawful) +
                               " lawful, " + std::to_string(out.representable) + " with invertible counit";
    if (out.lawful == out.representable) {
      report.pass("representability.census", counts);
    } else {
      report.add(Finding{"representability.census", Status::Fail, counts + "; first non-representable " + first_bad});
    }
  });
  return out;
}

EnrichedProfunctor enlarge_identity_component(const Embedding& emb, ProarrowId k, ProarrowId larger) {
  const auto& vdc = emb.base();
  if (!vdc.is_thin()) throw Error(ErrorKind::MalformedMorphism, "hand-built profunctors need a thin base");
  EnrichedProfunctor j = *emb.represent_proarrow(k);
  j.name = "|" + vdc.proarrow(k).name + "|+" + vdc.proarrow(larger).name;
  const auto& info = vdc.proarrow(k);
  const std::size_t ia = emb.identity_element(info.src);
  const std::size_t ib = emb.identity_element(info.tgt);
  j.components[ia * j.target->size() + ib] = larger;
  const auto& v = vdc.vertical();
  // Re-seat every action on its new frame; the law checker decides whether
  // the base inhabits it.
  for (std::size_t x = 0; x < j.source->size(); ++x) {
    const VArrowId ix = v.identity(j.source->extent[x]);
    for (std::size_t u = 0; u < j.target->size(); ++u) {
      for (std::size_t y = 0; y < j.source->size(); ++y) {
        j.left_action(x, y, u) = Cell{CellId{}, Frame{Path::of({j.source->hom(x, y), j.component(y, u)}), ix,
                                                      v.identity(j.target->extent[u]), j.component(x, u)}};
      }
      for (std::size_t w = 0; w < j.target->size(); ++w) {
        j.right_action(x, u, w) = Cell{CellId{}, Frame{Path::of({j.component(x, u), j.target->hom(u, w)}), ix,
                                                       v.identity(j.target->extent[w]), j.component(x, w)}};
      }
    }
  }
  return j;
}

VerificationReport verify_composite_coreflection(const Embedding& emb) {
  return timed_report("composite-coreflection", SearchBounds{}, [&](VerificationReport& report) {
    const auto& vdc = emb.base();
    std::unordered_map<std::uint32_t, ProarrowId> bars;
    auto bar = [&](ProarrowId p) {
      auto it = bars.find(p.value);
      if (it == bars.end()) it = bars.emplace(p.value, emb.coreflect(emb.represent_proarrow(p)).proarrow).first;
      return it->second;
    };
    std::size_t checked = 0;
    std::size_t failures = 0;
    for (const auto& [j, k] : composable_pairs(vdc)) {
      ProarrowId jk;
      try {
        jk = emb.equipment().composite(Path::of({j, k})).proarrow;
      } catch (const Error&) {
        continue;
      }
      ++checked;
      try {
        const ProarrowId lhs = bar(jk);
        const ProarrowId rhs = emb.equipment().composite(Path::of({bar(j), bar(k)})).proarrow;
        if (!proarrows_isomorphic(vdc, lhs, rhs)) {
          if (failures++ < kMaxShown) {
            report.fail("composite_coreflection " + vdc.proarrow(j).name + " " + vdc.proarrow(k).name,
                        vdc.proarrow(lhs).name + " is not isomorphic to " + vdc.proarrow(rhs).name);
          }
        }
      } catch (const Error& e) {
        if (failures++ < kMaxShown) report.fail("composite_coreflection", e.what());
      }
    }
    summarize(report, "composite_coreflection", failures, std::to_string(checked) + " composable pairs");
  });
}

MoritaOutcome check_morita_candidate(const Embedding& emb, const MoritaCandidate& c) {
  const auto& vdc = emb.base();
  const auto& e = emb.equipment();
  const ObjId a = vdc.proarrow(c.there).src;
  const ObjId b = vdc.proarrow(c.there).tgt;
  MoritaOutcome out;
  const ProarrowId jk = e.composite(Path::of({c.there, c.back})).proarrow;
  const ProarrowId kj = e.composite(Path::of({c.back, c.there})).proarrow;
  out.base_equivalent = proarrows_isomorphic(vdc, jk, e.unit(a).proarrow).has_value() &&
                        proarrows_isomorphic(vdc, kj, e.unit(b).proarrow).has_value();
  // The composites of representatives are the representatives of composites,
  // so compare them componentwise with the hom profunctors.
  auto iso_to_hom = [&](ProarrowId p, ObjId x) {
    const auto& rep = emb.represent_proarrow(p);
    const auto hom = hom_profunctor(emb.represent_object(x));
    for (std::size_t i = 0; i < rep->components.size(); ++i) {
      if (!proarrows_isomorphic(vdc, rep->components[i], hom->components[i])) return false;
    }
    return true;
  };
  out.vcat_equivalent = iso_to_hom(jk, a) && iso_to_hom(kj, b);
  out.detail = vdc.proarrow(c.there).name + ", " + vdc.proarrow(c.back).name + ": composites " +
               vdc.proarrow(jk).name + ", " + vdc.proarrow(kj).name;
  return out;
}

VerificationReport verify_morita(const Embedding& emb, ObjId a, ObjId b, std::vector<MoritaCandidate> candidates,
                                 std::optional<bool> expect_equivalent) {
  const auto& vdc = emb.base();
  const auto& v = vdc.vertical();
  const std::string pair = v.object_name(a) + "~" + v.object_name(b);
  return timed_report("morita(" + pair + ")", SearchBounds{}, [&](VerificationReport& report) {
    if (candidates.empty()) {
      for (auto j : vdc.proarrows_between(a, b)) {
        for (auto k : vdc.proarrows_between(b, a)) candidates.push_back({j, k});
      }
    }
    std::size_t vcat_hits = 0;
    std::size_t base_hits = 0;
    std::size_t disagreements = 0;
    std::string witness;
    for (const auto& c : candidates) {
      MoritaOutcome o;
      try {
        o = check_morita_candidate(emb, c);
      } catch (const Error& e) {
        report.fail("morita.candidate", e.what());
        continue;
      }
      vcat_hits += o.vcat_equivalent ? 1 : 0;
      base_hits += o.base_equivalent ? 1 : 0;
      if (o.vcat_equivalent && witness.empty()) witness = o.detail;
      if (o.vcat_equivalent != o.base_equivalent) {
        ++disagreements;
        report.fail("morita.reflection", o.detail + (o.vcat_equivalent ? " is an equivalence of representatives only"
                                                                          : " is an equivalence in the base only"));
      }
    }
    const std::string counts = std::to_string(candidates.size()) + " candidate pairs, " + std::to_string(vcat_hits) +
                               " equivalences of representatives, " + std::to_string(base_hits) + " in the base";
    if (!expect_equivalent) {
      summarize(report, "morita.reflection " + pair, disagreements, counts);
    } else if (*expect_equivalent) {
      summarize(report, "morita.positive " + pair, (vcat_hits > 0 && disagreements == 0) ? 0 : 1,
                counts + (witness.empty() ? "" : "; witness " + witness));
    } else {
      summarize(report, "morita.negative " + pair, (vcat_hits == 0 && base_hits == 0) ? 0 : 1, counts);
    }
  });
}

VerificationReport verify_embedding(const Embedding& emb, const SuiteOptions& options) {
  return timed_report("embedding", options.vcat_composite, [&](VerificationReport& report) {
    auto run = [&](const std::string& name, const std::function<VerificationReport()>& body) {
      VerificationReport sub;
      try {
        sub = body();
      } catch (const Error& e) {
        report.fail("theorem." + name, e.what());
        return;
      }
      report.merge(sub);
      report.add(Finding{"theorem." + name, sub.status(), sub.name() + " in " + std::to_string(sub.elapsed().count()) + " s"});
    };
    run("functoriality", [&] { return verify_functoriality(emb, options.functoriality); });
    run("preserves-composites",
        [&] { return verify_composite_preservation(emb, options.composite_witnesses, options.vcat_composite); });
    if (!options.ff_proarrows.empty()) {
      run("ff-2cells", [&] { return verify_ff_2cells(emb, options.ff_proarrows, options.ff_max_path); });
    }
    run("full-arrows", [&] { return verify_full_arrows(emb); });
    run("coreflective", [&] { return verify_coreflection(emb); });
    run("composite-coreflection", [&] { return verify_composite_coreflection(emb); });
    if (options.morita_positive) {
      run("morita-positive", [&] {
        return verify_morita(emb, options.morita_positive->first, options.morita_positive->second,
                             options.morita_positive_candidates, true);
      });
    }
    if (options.morita_negative) {
      run("morita-negative", [&] {
        return verify_morita(emb, options.morita_negative->first, options.morita_negative->second, {}, false);
      });
    }
  });
}

}  // namespace veq
