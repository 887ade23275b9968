#include "veq/enriched.hpp"

#include <functional>

#include "veq/equipment.hpp"

namespace veq {
namespace {

constexpr std::size_t kMaxReported = 24;

// Collects failures with a cap so a badly broken structure stays readable.
class Checker {
 public:
  Checker(VerificationReport& report, const VirtualDoubleCategory& base) : report_(report), base_(base) {}

  void fail(const std::string& check, const std::string& detail) {
    if (failures_++ < kMaxReported) report_.fail(check, detail);
  }

  // The cell must sit on `expected` and be a cell of the base.
  bool cell(const std::string& check, const Cell& c, const Frame& expected) {
    ++checked_;
    if (c.frame != expected) {
      fail(check, base_.describe(c) + " is not on " + base_.describe(expected));
      return false;
    }
    bool exists = false;
    if (base_.is_thin()) {
      exists = base_.has_cell(c.frame);
    } else {
      try {
        exists = c.id.valid() && base_.cell(c.id).frame == c.frame;
      } catch (const Error&) {
        exists = false;
      }
    }
    if (!exists) fail(check, base_.describe(c) + " is not a cell of the base");
    return exists;
  }

  void equal(const std::string& check, const std::function<Cell()>& lhs, const std::function<Cell()>& rhs) {
    ++checked_;
    try {
      const Cell l = lhs();
      const Cell r = rhs();
      if (l != r) fail(check, base_.describe(l) + " != " + base_.describe(r));
    } catch (const Error& e) {
      fail(check, e.what());
    }
  }

  void finish(const std::string& name) {
    if (failures_ > kMaxReported) {
      report_.fail(name, std::to_string(failures_) + " failures, first " + std::to_string(kMaxReported) + " shown");
    } else if (failures_ == 0) {
      report_.pass(name, std::to_string(checked_) + " instances");
    }
  }

  [[nodiscard]] std::size_t failures() const { return failures_; }

 private:
  VerificationReport& report_;
  const VirtualDoubleCategory& base_;
  std::size_t failures_ = 0;
  std::size_t checked_ = 0;
};

std::string tuple(std::initializer_list<std::size_t> xs) {
  std::string out = "(";
  bool first = true;
  for (auto x : xs) {
    out += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return out + ")";
}

std::string tuple(const std::vector<std::size_t>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + ")";
}

VArrowId id_at(const VirtualDoubleCategory& base, ObjId a) { return base.vertical().identity(a); }

}  // namespace

bool EnrichedFunctor::extent_preserving() const {
  const auto& v = source->base->vertical();
  for (auto s : structure) {
    if (!v.is_identity(s)) return false;
  }
  return true;
}

bool operator==(const EnrichedFunctor& a, const EnrichedFunctor& b) {
  return same_category(a.source, b.source) && same_category(a.target, b.target) && a.on_objects == b.on_objects &&
         a.structure == b.structure && a.homs == b.homs;
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->base == b->base && a->extent == b->extent && a->homs == b->homs && a->ids == b->ids &&
         a->comps == b->comps;
}

bool same_functor(const FunctorPtr& a, const FunctorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool same_profunctor(const ProfunctorPtr& a, const ProfunctorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_category(a->source, b->source) && same_category(a->target, b->target) &&
         a->components == b->components && a->lefts == b->lefts && a->rights == b->rights;
}

std::vector<CategoryPtr> ProMorphism::chain() const {
  if (domain.empty()) return {anchor};
  std::vector<CategoryPtr> out{domain.front()->source};
  for (const auto& j : domain) out.push_back(j->target);
  return out;
}

std::size_t ProMorphism::index(const std::vector<std::size_t>& objects) const {
  const auto cats = chain();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cats.size(); ++i) idx = idx * cats[i]->size() + objects.at(i);
  return idx;
}

std::size_t ProMorphism::component_count() const {
  std::size_t n = 1;
  for (const auto& c : chain()) n *= c->size();
  return n;
}

void ProMorphism::for_each_index(const std::function<void(const std::vector<std::size_t>&)>& visit) const {
  const auto cats = chain();
  std::vector<std::size_t> objs(cats.size(), 0);
  for (const auto& c : cats) {
    if (c->size() == 0) return;
  }
  while (true) {
    visit(objs);
    std::size_t i = cats.size();
    while (i > 0) {
      --i;
      if (++objs[i] < cats[i]->size()) break;
      objs[i] = 0;
      if (i == 0) return;
    }
  }
}

Frame ProMorphism::component_frame(const std::vector<std::size_t>& objects) const {
  const auto cats = chain();
  const VirtualDoubleCategory& base = *cats.front()->base;
  Frame f;
  if (domain.empty()) {
    f.domain = Path::empty(anchor->extent[objects[0]]);
  } else {
    std::vector<ProarrowId> ps;
    for (std::size_t i = 0; i < domain.size(); ++i) ps.push_back(domain[i]->component(objects[i], objects[i + 1]));
    f.domain = Path::of(std::move(ps));
  }
  (void)base;
  f.left = left->structure[objects.front()];
  f.right = right->structure[objects.back()];
  f.codomain = codomain->component(left->on_objects[objects.front()], right->on_objects[objects.back()]);
  return f;
}

bool operator==(const ProMorphism& a, const ProMorphism& b) {
  if (a.domain.size() != b.domain.size()) return false;
  for (std::size_t i = 0; i < a.domain.size(); ++i) {
    if (!same_profunctor(a.domain[i], b.domain[i])) return false;
  }
  if (a.domain.empty() && !same_category(a.anchor, b.anchor)) return false;
  return same_profunctor(a.codomain, b.codomain) && same_functor(a.left, b.left) && same_functor(a.right, b.right) &&
         a.components == b.components;
}

VerificationReport check_category_laws(const EnrichedCategory& c) {
  return timed_report("category-laws(" + c.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    const auto& base = *c.base;
    Checker k(report, base);
    const std::size_t n = c.size();
    for (std::size_t x = 0; x < n; ++x) {
      const ObjId ex = c.extent[x];
      k.cell("category.id_cell" + tuple({x}), c.id_cell(x),
             Frame{Path::empty(ex), id_at(base, ex), id_at(base, ex), c.hom(x, x)});
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          k.cell("category.comp_cell" + tuple({x, y, z}), c.comp_cell(x, y, z),
                 Frame{Path::of({c.hom(x, y), c.hom(y, z)}), id_at(base, ex), id_at(base, c.extent[z]), c.hom(x, z)});
        }
      }
    }
    if (k.failures() > 0) {
      k.finish("category.laws");
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Cell idxy = base.identity_cell(c.hom(x, y));
        k.equal(
            "category.left_unit" + tuple({x, y}),
            [&] { return base.paste(c.comp_cell(x, x, y), {c.id_cell(x), idxy}); }, [&] { return idxy; });
        k.equal(
            "category.right_unit" + tuple({x, y}),
            [&] { return base.paste(c.comp_cell(x, y, y), {idxy, c.id_cell(y)}); }, [&] { return idxy; });
        for (std::size_t z = 0; z < n; ++z) {
          for (std::size_t w = 0; w < n; ++w) {
            k.equal(
                "category.associativity" + tuple({x, y, z, w}),
                [&] {
                  return base.paste(c.comp_cell(x, y, w), {idxy, c.comp_cell(y, z, w)});
                },
                [&] {
                  return base.paste(c.comp_cell(x, z, w), {c.comp_cell(x, y, z), base.identity_cell(c.hom(z, w))});
                });
          }
        }
      }
    }
    k.finish("category.laws");
  });
}

VerificationReport check_functor_laws(const EnrichedFunctor& f, const Equipment* equipment) {
  return timed_report("functor-laws(" + f.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    const auto& c = *f.source;
    const auto& d = *f.target;
    const auto& base = *c.base;
    const auto& v = base.vertical();
    Checker k(report, base);
    const std::size_t n = c.size();
    if (f.on_objects.size() != n || f.structure.size() != n || f.homs.size() != n * n) {
      report.fail("functor.shape", "tables do not match the source category");
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (f.on_objects[x] >= d.size()) {
        k.fail("functor.on_objects" + tuple({x}), "object out of range");
        continue;
      }
      const VArrowId s = f.structure[x];
      if (v.dom(s) != c.extent[x] || v.cod(s) != d.extent[f.on_objects[x]]) {
        k.fail("functor.structure" + tuple({x}), v.arrow(s).name + " does not run between the extents");
      }
    }
    if (k.failures() > 0) {
      k.finish("functor.laws");
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        k.cell("functor.on_homs" + tuple({x, y}), f.on_homs(x, y),
               Frame{Path::of({c.hom(x, y)}), f.structure[x], f.structure[y],
                     d.hom(f.on_objects[x], f.on_objects[y])});
      }
    }
    if (k.failures() > 0) {
      k.finish("functor.laws");
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t fx = f.on_objects[x];
      k.equal(
          "functor.identity" + tuple({x}), [&] { return base.paste(f.on_homs(x, x), {c.id_cell(x)}); },
          [&]() -> Cell {
            if (v.is_identity(f.structure[x])) return d.id_cell(fx);
            if (!equipment) throw Error(ErrorKind::MalformedFunctor, "whiskering needs an equipment");
            return equipment->whisker(d.id_cell(fx), f.structure[x]);
          });
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          k.equal(
              "functor.composition" + tuple({x, y, z}),
              [&] { return base.paste(f.on_homs(x, z), {c.comp_cell(x, y, z)}); },
              [&] {
                return base.paste(d.comp_cell(fx, f.on_objects[y], f.on_objects[z]), {f.on_homs(x, y), f.on_homs(y, z)});
              });
        }
      }
    }
    k.finish("functor.laws");
  });
}

VerificationReport check_profunctor_laws(const EnrichedProfunctor& j) {
  return timed_report("profunctor-laws(" + j.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    const auto& c = *j.source;
    const auto& d = *j.target;
    const auto& base = *c.base;
    Checker k(report, base);
    const std::size_t n = c.size();
    const std::size_t m = d.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t u = 0; u < m; ++u) {
        const auto& info = base.proarrow(j.component(x, u));
        if (info.src != c.extent[x] || info.tgt != d.extent[u]) {
          k.fail("profunctor.component" + tuple({x, u}), info.name + " does not run between the extents");
        }
      }
    }
    if (k.failures() > 0) {
      k.finish("profunctor.laws");
      return;
    }
    auto idl = [&](std::size_t x) { return id_at(base, c.extent[x]); };
    auto idr = [&](std::size_t u) { return id_at(base, d.extent[u]); };
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t y = 0; y < n; ++y) {
          k.cell("profunctor.left_action" + tuple({x, y, u}), j.left_action(x, y, u),
                 Frame{Path::of({c.hom(x, y), j.component(y, u)}), idl(x), idr(u), j.component(x, u)});
        }
        for (std::size_t w = 0; w < m; ++w) {
          k.cell("profunctor.right_action" + tuple({x, u, w}), j.right_action(x, u, w),
                 Frame{Path::of({j.component(x, u), d.hom(u, w)}), idl(x), idr(w), j.component(x, w)});
        }
      }
    }
    if (k.failures() > 0) {
      k.finish("profunctor.laws");
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t u = 0; u < m; ++u) {
        const Cell idj = base.identity_cell(j.component(x, u));
        k.equal(
            "profunctor.left_unit" + tuple({x, u}),
            [&] { return base.paste(j.left_action(x, x, u), {c.id_cell(x), idj}); }, [&] { return idj; });
        k.equal(
            "profunctor.right_unit" + tuple({x, u}),
            [&] { return base.paste(j.right_action(x, u, u), {idj, d.id_cell(u)}); }, [&] { return idj; });
        for (std::size_t y = 0; y < n; ++y) {
          const Cell idh = base.identity_cell(c.hom(x, y));
          for (std::size_t z = 0; z < n; ++z) {
            // hom(x,y) hom(y,z) J(z,u)
            k.equal(
                "profunctor.left_associativity" + tuple({x, y, z, u}),
                [&] { return base.paste(j.left_action(x, y, u), {idh, j.left_action(y, z, u)}); },
                [&] {
                  return base.paste(j.left_action(x, z, u),
                                    {c.comp_cell(x, y, z), base.identity_cell(j.component(z, u))});
                });
          }
          for (std::size_t w = 0; w < m; ++w) {
            // hom(x,y) J(y,u) hom(u,w)
            k.equal(
                "profunctor.exchange" + tuple({x, y, u, w}),
                [&] {
                  return base.paste(j.right_action(x, u, w), {j.left_action(x, y, u), base.identity_cell(d.hom(u, w))});
                },
                [&] { return base.paste(j.left_action(x, y, w), {idh, j.right_action(y, u, w)}); });
          }
        }
        for (std::size_t w = 0; w < m; ++w) {
          for (std::size_t t = 0; t < m; ++t) {
            // J(x,u) hom(u,w) hom(w,t)
            k.equal(
                "profunctor.right_associativity" + tuple({x, u, w, t}),
                [&] {
                  return base.paste(j.right_action(x, w, t),
                                    {j.right_action(x, u, w), base.identity_cell(d.hom(w, t))});
                },
                [&] { return base.paste(j.right_action(x, u, t), {idj, d.comp_cell(u, w, t)}); });
          }
        }
      }
    }
    k.finish("profunctor.laws");
  });
}

VerificationReport check_morphism_laws(const ProMorphism& m) {
  return timed_report("morphism-laws(" + m.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    const auto cats = m.chain();
    const auto& base = *cats.front()->base;
    Checker k(report, base);
    const std::size_t len = m.domain.size();
    if (!same_category(m.left->source, cats.front()) || !same_category(m.right->source, cats.back()) ||
        !same_category(m.left->target, m.codomain->source) || !same_category(m.right->target, m.codomain->target)) {
      report.fail("morphism.shape", "functors do not match the domain chain and codomain");
      return;
    }
    if (m.components.size() != m.component_count()) {
      report.fail("morphism.shape", "component table has the wrong size");
      return;
    }
    m.for_each_index([&](const std::vector<std::size_t>& objs) {
      k.cell("morphism.component" + tuple(objs), m.component(objs), m.component_frame(objs));
    });
    if (k.failures() > 0) {
      k.finish("morphism.laws");
      return;
    }
    const auto& cod = *m.codomain;
    const auto& f = *m.left;
    const auto& g = *m.right;
    auto ids_of = [&](const std::vector<std::size_t>& objs, std::size_t from, std::size_t to) {
      std::vector<Cell> out;
      for (std::size_t i = from; i < to; ++i) {
        out.push_back(base.identity_cell(m.domain[i]->component(objs[i], objs[i + 1])));
      }
      return out;
    };
    m.for_each_index([&](const std::vector<std::size_t>& objs) {
      if (len == 0) {
        // Naturality of a nullary morphism along hom(c, c').
        const std::size_t c = objs[0];
        for (std::size_t c2 = 0; c2 < cats[0]->size(); ++c2) {
          const std::size_t fc = f.on_objects[c];
          const std::size_t fc2 = f.on_objects[c2];
          const std::size_t gc = g.on_objects[c];
          const std::size_t gc2 = g.on_objects[c2];
          k.equal(
              "morphism.naturality" + tuple({c, c2}),
              [&] { return base.paste(cod.left_action(fc, fc2, gc2), {f.on_homs(c, c2), m.component({c2})}); },
              [&] { return base.paste(cod.right_action(fc, gc, gc2), {m.component({c}), g.on_homs(c, c2)}); });
        }
        return;
      }
      // Law (1): inner actions are equalized.
      for (std::size_t i = 1; i < len; ++i) {
        for (std::size_t alt = 0; alt < cats[i]->size(); ++alt) {
          // Domain ... J_i(c_{i-1}, c_i), hom(c_i, alt), J_{i+1}(alt, c_{i+1}) ...
          auto moved = objs;
          moved[i] = alt;
          k.equal(
              "morphism.inner" + std::to_string(i) + tuple(objs) + "->" + std::to_string(alt),
              [&] {
                auto inners = ids_of(objs, 0, i - 1);
                inners.push_back(m.domain[i - 1]->right_action(objs[i - 1], objs[i], alt));
                auto rest = ids_of(moved, i, len);
                inners.insert(inners.end(), rest.begin(), rest.end());
                return base.paste(m.component(moved), inners);
              },
              [&] {
                auto inners = ids_of(objs, 0, i);
                inners.push_back(m.domain[i]->left_action(objs[i], alt, objs[i + 1]));
                auto rest = ids_of(moved, i + 1, len);
                inners.insert(inners.end(), rest.begin(), rest.end());
                return base.paste(m.component(objs), inners);
              });
        }
      }
      // Law (2): outer actions commute with F and G.
      const std::size_t c0 = objs.front();
      const std::size_t ck = objs.back();
      for (std::size_t alt = 0; alt < cats.front()->size(); ++alt) {
        // hom(alt, c0), J_1(c0, c1), ...
        auto moved = objs;
        moved.front() = alt;
        k.equal(
            "morphism.outer_left" + tuple(objs) + "<-" + std::to_string(alt),
            [&] {
              std::vector<Cell> inners{m.domain.front()->left_action(alt, c0, objs[1])};
              auto rest = ids_of(objs, 1, len);
              inners.insert(inners.end(), rest.begin(), rest.end());
              return base.paste(m.component(moved), inners);
            },
            [&] {
              return base.paste(cod.left_action(f.on_objects[alt], f.on_objects[c0], g.on_objects[ck]),
                                {f.on_homs(alt, c0), m.component(objs)});
            });
      }
      for (std::size_t alt = 0; alt < cats.back()->size(); ++alt) {
        // ..., J_k(c_{k-1}, c_k), hom(c_k, alt)
        auto moved = objs;
        moved.back() = alt;
        k.equal(
            "morphism.outer_right" + tuple(objs) + "->" + std::to_string(alt),
            [&] {
              auto inners = ids_of(objs, 0, len - 1);
              inners.push_back(m.domain.back()->right_action(objs[len - 1], ck, alt));
              return base.paste(m.component(moved), inners);
            },
            [&] {
              return base.paste(cod.right_action(f.on_objects[c0], g.on_objects[ck], g.on_objects[alt]),
                                {m.component(objs), g.on_homs(ck, alt)});
            });
      }
    });
    k.finish("morphism.laws");
  });
}

FunctorPtr identity_functor(const CategoryPtr& c) {
  auto f = std::make_shared<EnrichedFunctor>();
  f->name = "id_" + c->name;
  f->source = c;
  f->target = c;
  const auto& base = *c->base;
  for (std::size_t x = 0; x < c->size(); ++x) {
    f->on_objects.push_back(x);
    f->structure.push_back(id_at(base, c->extent[x]));
  }
  for (std::size_t x = 0; x < c->size(); ++x) {
    for (std::size_t y = 0; y < c->size(); ++y) f->homs.push_back(base.identity_cell(c->hom(x, y)));
  }
  return f;
}

FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f) {
  if (!same_category(f->target, g->source)) {
    throw Error(ErrorKind::NonComposable, "functors " + f->name + " and " + g->name + " do not compose");
  }
  const auto& base = *f->source->base;
  const auto& v = base.vertical();
  auto h = std::make_shared<EnrichedFunctor>();
  h->name = g->name + "." + f->name;
  h->source = f->source;
  h->target = g->target;
  const std::size_t n = f->source->size();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t fx = f->on_objects[x];
    h->on_objects.push_back(g->on_objects[fx]);
    h->structure.push_back(v.compose(g->structure[fx], f->structure[x]));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      h->homs.push_back(base.paste(g->on_homs(f->on_objects[x], f->on_objects[y]), {f->on_homs(x, y)}));
    }
  }
  return h;
}

ProfunctorPtr hom_profunctor(const CategoryPtr& c) {
  auto j = std::make_shared<EnrichedProfunctor>();
  j->name = "hom_" + c->name;
  j->source = c;
  j->target = c;
  j->components = c->homs;
  const std::size_t n = c->size();
  j->lefts.resize(n * n * n);
  j->rights.resize(n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        j->left_action(x, y, z) = c->comp_cell(x, y, z);
        j->right_action(x, y, z) = c->comp_cell(x, y, z);
      }
    }
  }
  return j;
}

MorphismPtr identity_morphism(const ProfunctorPtr& j) {
  auto m = std::make_shared<ProMorphism>();
  m->name = "id_" + j->name;
  m->domain = {j};
  m->codomain = j;
  m->left = identity_functor(j->source);
  m->right = identity_functor(j->target);
  const auto& base = *j->source->base;
  m->for_each_index([&](const std::vector<std::size_t>& objs) {
    m->components.push_back(base.identity_cell(j->component(objs[0], objs[1])));
  });
  return m;
}

MorphismPtr compose_morphisms(const ProMorphism& outer, const std::vector<MorphismPtr>& inners) {
  if (inners.size() != outer.domain.size()) {
    throw Error(ErrorKind::NonComposable,
                "expected " + std::to_string(outer.domain.size()) + " inner morphisms, got " + std::to_string(inners.size()));
  }
  if (inners.empty()) return std::make_shared<ProMorphism>(outer);
  for (std::size_t i = 0; i < inners.size(); ++i) {
    if (!same_profunctor(inners[i]->codomain, outer.domain[i])) {
      throw Error(ErrorKind::NonComposable, "inner " + std::to_string(i) + " does not land on the outer domain",
                  static_cast<int>(i));
    }
    if (i > 0 && !same_functor(inners[i - 1]->right, inners[i]->left)) {
      throw Error(ErrorKind::NonComposable, "inners " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                                " do not share their vertical functor",
                  static_cast<int>(i));
    }
  }
  const auto& base = *outer.chain().front()->base;
  auto out = std::make_shared<ProMorphism>();
  out->name = outer.name + "(";
  for (std::size_t i = 0; i < inners.size(); ++i) out->name += (i ? " " : "") + inners[i]->name;
  out->name += ")";
  for (const auto& in : inners) out->domain.insert(out->domain.end(), in->domain.begin(), in->domain.end());
  if (out->domain.empty()) out->anchor = inners.front()->chain().front();
  out->codomain = outer.codomain;
  out->left = compose_functors(outer.left, inners.front()->left);
  out->right = compose_functors(outer.right, inners.back()->right);

  // Object positions of each inner inside the combined chain.
  std::vector<std::size_t> offsets;
  std::size_t at = 0;
  for (const auto& in : inners) {
    offsets.push_back(at);
    at += in->domain.size();
  }
  out->for_each_index([&](const std::vector<std::size_t>& objs) {
    std::vector<Cell> cells;
    std::vector<std::size_t> outer_objs;
    for (std::size_t i = 0; i < inners.size(); ++i) {
      const auto& in = *inners[i];
      std::vector<std::size_t> local(objs.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                                     objs.begin() + static_cast<std::ptrdiff_t>(offsets[i] + in.domain.size() + 1));
      cells.push_back(in.component(local));
      outer_objs.push_back(in.left->on_objects[local.front()]);
      if (i + 1 == inners.size()) outer_objs.push_back(in.right->on_objects[local.back()]);
    }
    out->components.push_back(base.paste(outer.component(outer_objs), cells));
  });
  return out;
}

Restricted restrict_profunctor(const Equipment& e, const ProfunctorPtr& k, const FunctorPtr& g, const FunctorPtr& f) {
  if (!same_category(g->target, k->source) || !same_category(f->target, k->target)) {
    throw Error(ErrorKind::MalformedFunctor, "functors do not land on the ends of " + k->name);
  }
  const auto& base = e.vdc();
  const auto& v = base.vertical();
  const auto& c = *g->source;
  const auto& d = *f->source;
  auto r = std::make_shared<EnrichedProfunctor>();
  r->name = k->name + "(" + g->name + "," + f->name + ")";
  r->source = g->source;
  r->target = f->source;
  std::vector<Cell> carts;
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < d.size(); ++y) {
      const auto& w = e.restriction(k->component(g->on_objects[x], f->on_objects[y]), g->structure[x], f->structure[y]);
      r->components.push_back(w.proarrow);
      carts.push_back(w.structure_cell);
    }
  }
  auto cart = [&](std::size_t x, std::size_t y) -> const Cell& { return carts[x * d.size() + y]; };
  r->lefts.resize(c.size() * c.size() * d.size());
  r->rights.resize(c.size() * d.size() * d.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < d.size(); ++y) {
      const VArrowId ix = v.identity(c.extent[x]);
      for (std::size_t x2 = 0; x2 < c.size(); ++x2) {
        const Cell phi = base.paste(k->left_action(g->on_objects[x], g->on_objects[x2], f->on_objects[y]),
                                    {g->on_homs(x, x2), cart(x2, y)});
        r->left_action(x, x2, y) = e.factor_cartesian(cart(x, y), phi, ix, v.identity(d.extent[y]));
      }
      for (std::size_t y2 = 0; y2 < d.size(); ++y2) {
        const Cell phi = base.paste(k->right_action(g->on_objects[x], f->on_objects[y], f->on_objects[y2]),
                                    {cart(x, y), f->on_homs(y, y2)});
        r->right_action(x, y, y2) = e.factor_cartesian(cart(x, y2), phi, ix, v.identity(d.extent[y2]));
      }
    }
  }
  auto m = std::make_shared<ProMorphism>();
  m->name = "cart_" + r->name;
  m->domain = {r};
  m->codomain = k;
  m->left = g;
  m->right = f;
  m->components = carts;
  return Restricted{r, m};
}

}  // namespace veq
