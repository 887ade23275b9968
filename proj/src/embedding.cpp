#include "veq/embedding.hpp"

#include <algorithm>

namespace veq {
namespace {

std::string bars(const std::string& s) { return "|" + s + "|"; }

// The restricted proarrow sits in the domain of its cartesian cell.
ProarrowId cart_proarrow(const Cell& cart) { return cart.frame.domain.arrows.at(0); }

}  // namespace

std::size_t Embedding::element(ObjId a, VArrowId x) const {
  auto into = base().vertical().arrows_into(a);
  auto it = std::find(into.begin(), into.end(), x);
  if (it == into.end()) {
    throw Error(ErrorKind::UnknownName, base().vertical().arrow(x).name + " is not an arrow into " +
                                            base().vertical().object_name(a));
  }
  return static_cast<std::size_t>(it - into.begin());
}

VArrowId Embedding::element_arrow(ObjId a, std::size_t i) const { return base().vertical().arrows_into(a)[i]; }

std::size_t Embedding::identity_element(ObjId a) const { return element(a, base().vertical().identity(a)); }

const Cell& Embedding::hom_cartesian(ObjId a, std::size_t x, std::size_t y) const {
  return e_.restriction(e_.unit(a).proarrow, element_arrow(a, x), element_arrow(a, y)).structure_cell;
}

const Cell& Embedding::component_cartesian(ProarrowId j, std::size_t x, std::size_t u) const {
  const auto& info = base().proarrow(j);
  return e_.restriction(j, element_arrow(info.src, x), element_arrow(info.tgt, u)).structure_cell;
}

const CategoryPtr& Embedding::represent_object(ObjId a) const {
  if (auto it = objects_.find(a.value); it != objects_.end()) return it->second;
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  auto c = std::make_shared<EnrichedCategory>();
  c->name = bars(v.object_name(a));
  c->base = &vdc;
  for (auto x : v.arrows_into(a)) {
    c->objects.push_back(v.arrow(x).name);
    c->extent.push_back(v.dom(x));
  }
  const std::size_t n = c->size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) c->homs.push_back(cart_proarrow(hom_cartesian(a, x, y)));
  }
  const Cell& mu = e_.left_unitor(e_.unit(a).proarrow);
  for (std::size_t x = 0; x < n; ++x) {
    const VArrowId ix = v.identity(c->extent[x]);
    c->ids.push_back(e_.factor_cartesian(hom_cartesian(a, x, x), e_.vertical_cell(element_arrow(a, x)), ix, ix));
  }
  c->comps.resize(n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const Cell phi = vdc.paste(mu, {hom_cartesian(a, x, y), hom_cartesian(a, y, z)});
        c->comp_cell(x, y, z) =
            e_.factor_cartesian(hom_cartesian(a, x, z), phi, v.identity(c->extent[x]), v.identity(c->extent[z]));
      }
    }
  }
  return objects_.emplace(a.value, std::move(c)).first->second;
}

const FunctorPtr& Embedding::represent_arrow(VArrowId f) const {
  if (auto it = arrows_.find(f.value); it != arrows_.end()) return it->second;
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  const ObjId a = v.dom(f);
  const ObjId b = v.cod(f);
  auto out = std::make_shared<EnrichedFunctor>();
  out->name = bars(v.arrow(f).name);
  out->source = represent_object(a);
  out->target = represent_object(b);
  const std::size_t n = out->source->size();
  for (std::size_t x = 0; x < n; ++x) {
    out->on_objects.push_back(element(b, v.compose(f, element_arrow(a, x))));
    out->structure.push_back(v.identity(out->source->extent[x]));
  }
  const Cell lifted = e_.unit_extension(e_.vertical_cell(f));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Cell phi = vdc.paste(lifted, {hom_cartesian(a, x, y)});
      out->homs.push_back(e_.factor_cartesian(hom_cartesian(b, out->on_objects[x], out->on_objects[y]), phi,
                                              out->structure[x], out->structure[y]));
    }
  }
  return arrows_.emplace(f.value, std::move(out)).first->second;
}

const ProfunctorPtr& Embedding::represent_proarrow(ProarrowId j) const {
  if (auto it = proarrows_.find(j.value); it != proarrows_.end()) return it->second;
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  const auto& info = vdc.proarrow(j);
  auto out = std::make_shared<EnrichedProfunctor>();
  out->name = bars(info.name);
  out->source = represent_object(info.src);
  out->target = represent_object(info.tgt);
  const std::size_t n = out->source->size();
  const std::size_t m = out->target->size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t u = 0; u < m; ++u) out->components.push_back(cart_proarrow(component_cartesian(j, x, u)));
  }
  const Cell& lambda = e_.left_unitor(j);
  const Cell& rho = e_.right_unitor(j);
  out->lefts.resize(n * n * m);
  out->rights.resize(n * m * m);
  for (std::size_t x = 0; x < n; ++x) {
    const VArrowId ix = v.identity(out->source->extent[x]);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t y = 0; y < n; ++y) {
        const Cell phi = vdc.paste(lambda, {hom_cartesian(info.src, x, y), component_cartesian(j, y, u)});
        out->left_action(x, y, u) =
            e_.factor_cartesian(component_cartesian(j, x, u), phi, ix, v.identity(out->target->extent[u]));
      }
      for (std::size_t w = 0; w < m; ++w) {
        const Cell phi = vdc.paste(rho, {component_cartesian(j, x, u), hom_cartesian(info.tgt, u, w)});
        out->right_action(x, u, w) =
            e_.factor_cartesian(component_cartesian(j, x, w), phi, ix, v.identity(out->target->extent[w]));
      }
    }
  }
  return proarrows_.emplace(j.value, std::move(out)).first->second;
}

MorphismPtr Embedding::represent_cell(const Cell& alpha) const {
  const auto& vdc = base();
  const Frame& fr = alpha.frame;
  auto m = std::make_shared<ProMorphism>();
  m->name = bars(vdc.describe(alpha));
  for (auto p : fr.domain.arrows) m->domain.push_back(represent_proarrow(p));
  if (fr.domain.is_empty()) m->anchor = represent_object(fr.domain.anchor);
  m->codomain = represent_proarrow(fr.codomain);
  m->left = represent_arrow(fr.left);
  m->right = represent_arrow(fr.right);
  m->for_each_index([&](const std::vector<std::size_t>& objs) {
    Cell phi;
    if (fr.domain.is_empty()) {
      phi = e_.whisker(alpha, element_arrow(fr.domain.anchor, objs[0]));
    } else {
      std::vector<Cell> carts;
      for (std::size_t i = 0; i < fr.domain.size(); ++i) {
        carts.push_back(component_cartesian(fr.domain.arrows[i], objs[i], objs[i + 1]));
      }
      phi = vdc.paste(alpha, carts);
    }
    const std::size_t fa = m->left->on_objects[objs.front()];
    const std::size_t ga = m->right->on_objects[objs.back()];
    m->components.push_back(e_.factor_cartesian(component_cartesian(fr.codomain, fa, ga), phi,
                                                m->left->structure[objs.front()], m->right->structure[objs.back()]));
  });
  return m;
}

MorphismPtr Embedding::represent_vertical(const Cell& eta) const {
  const auto& fr = eta.frame;
  if (!fr.domain.is_empty()) throw Error(ErrorKind::MalformedFrame, base().describe(eta) + " is not nullary");
  const ObjId b = base().vertical().cod(fr.left);
  if (fr.codomain != e_.unit(b).proarrow) {
    throw Error(ErrorKind::MalformedFrame, base().describe(eta) + " does not land in the unit of its target");
  }
  return represent_cell(eta);
}

std::optional<ObjId> Embedding::object_of(const CategoryPtr& c) const {
  for (std::size_t a = 0; a < base().object_count(); ++a) {
    if (same_category(c, represent_object(ObjId{a}))) return ObjId{a};
  }
  return std::nullopt;
}

std::optional<VArrowId> Embedding::arrow_of(const FunctorPtr& f) const {
  for (const auto& [id, g] : arrows_) {
    if (same_functor(f, g)) return VArrowId{id};
  }
  auto a = object_of(f->source);
  auto b = object_of(f->target);
  if (!a || !b) return std::nullopt;
  for (auto g : base().vertical().arrows_between(*a, *b)) {
    if (same_functor(f, represent_arrow(g))) return g;
  }
  return std::nullopt;
}

std::optional<ProarrowId> Embedding::proarrow_of(const ProfunctorPtr& j) const {
  for (const auto& [id, k] : proarrows_) {
    if (same_profunctor(j, k)) return ProarrowId{id};
  }
  auto a = object_of(j->source);
  auto b = object_of(j->target);
  if (!a || !b) return std::nullopt;
  for (auto k : base().proarrows_between(*a, *b)) {
    if (same_profunctor(j, represent_proarrow(k))) return k;
  }
  return std::nullopt;
}

Cell Embedding::strip_cell(const ProMorphism& m) const {
  const auto& vdc = base();
  auto f = arrow_of(m.left);
  auto g = arrow_of(m.right);
  auto k = proarrow_of(m.codomain);
  if (!f || !g || !k) throw Error(ErrorKind::MalformedMorphism, m.name + " has a boundary outside the representatives");
  std::vector<std::size_t> ids;
  for (const auto& c : m.chain()) {
    auto a = object_of(c);
    if (!a) throw Error(ErrorKind::MalformedMorphism, m.name + " has a domain outside the representatives");
    ids.push_back(identity_element(*a));
  }
  for (const auto& j : m.domain) {
    if (!proarrow_of(j)) throw Error(ErrorKind::MalformedMorphism, j->name + " is not a representative");
  }
  const Cell& cart = e_.restriction(*k, *f, *g).structure_cell;
  const Cell& c = m.component(ids);
  if (c.frame != m.component_frame(ids)) {
    throw Error(ErrorKind::MalformedMorphism, m.name + " has a component off its frame");
  }
  return vdc.paste(cart, {c});
}

Cell Embedding::element_conjoint_bend(ObjId a, std::size_t x) const {
  const auto& v = base().vertical();
  const VArrowId arrow = element_arrow(a, x);
  return e_.factor_cartesian(hom_cartesian(a, identity_element(a), x), e_.vertical_cell(arrow), arrow,
                             v.identity(v.dom(arrow)));
}

Cell Embedding::element_companion_bend(ObjId a, std::size_t x) const {
  const auto& v = base().vertical();
  const VArrowId arrow = element_arrow(a, x);
  return e_.factor_cartesian(hom_cartesian(a, x, identity_element(a)), e_.vertical_cell(arrow),
                             v.identity(v.dom(arrow)), arrow);
}

VerificationReport Embedding::check_natural_iso(const ProMorphism& forward, const ProMorphism& backward) const {
  return timed_report("natural-iso(" + forward.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    const auto& vdc = base();
    report.merge(check_morphism_laws(forward));
    report.merge(check_morphism_laws(backward));
    if (report.failed()) return;
    if (!same_functor(forward.left, backward.right) || !same_functor(forward.right, backward.left) ||
        !forward.domain.empty() || !backward.domain.empty()) {
      report.fail("natural_iso.shape", "the two transformations do not run in opposite directions");
      return;
    }
    const auto& hom = *forward.codomain;
    const auto& f = *forward.left;
    const auto& g = *forward.right;
    std::size_t failures = 0;
    for (std::size_t x = 0; x < forward.anchor->size(); ++x) {
      const std::size_t fx = f.on_objects[x];
      const std::size_t gx = g.on_objects[x];
      try {
        const Cell there = vdc.paste(hom.left_action(fx, gx, fx), {forward.component({x}), backward.component({x})});
        const Cell back = vdc.paste(hom.left_action(gx, fx, gx), {backward.component({x}), forward.component({x})});
        const Cell id_f = e_.whisker(hom.source->id_cell(fx), f.structure[x]);
        const Cell id_g = e_.whisker(hom.source->id_cell(gx), g.structure[x]);
        if (there != id_f) {
          report.fail("natural_iso.forward_backward(" + std::to_string(x) + ")", vdc.describe(there));
          ++failures;
        }
        if (back != id_g) {
          report.fail("natural_iso.backward_forward(" + std::to_string(x) + ")", vdc.describe(back));
          ++failures;
        }
      } catch (const Error& e) {
        report.fail("natural_iso.inverse(" + std::to_string(x) + ")", e.what());
        ++failures;
      }
    }
    if (failures == 0) report.pass("natural_iso.inverse", std::to_string(forward.anchor->size()) + " objects");
  });
}

Flattened Embedding::flatten_functor(const FunctorPtr& f) const {
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  auto b = object_of(f->target);
  if (!b) throw Error(ErrorKind::MalformedFunctor, f->name + " does not land in a representative");
  const auto& src = *f->source;
  const std::size_t n = src.size();
  auto flat = std::make_shared<EnrichedFunctor>();
  flat->name = f->name + "_flat";
  flat->source = f->source;
  flat->target = f->target;
  std::vector<VArrowId> ys;
  for (std::size_t x = 0; x < n; ++x) {
    const VArrowId y = element_arrow(*b, f->on_objects[x]);
    ys.push_back(y);
    flat->on_objects.push_back(element(*b, v.compose(y, f->structure[x])));
    flat->structure.push_back(v.identity(src.extent[x]));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      const Cell phi = vdc.paste(hom_cartesian(*b, f->on_objects[x], f->on_objects[x2]), {f->on_homs(x, x2)});
      flat->homs.push_back(e_.factor_cartesian(hom_cartesian(*b, flat->on_objects[x], flat->on_objects[x2]), phi,
                                               flat->structure[x], flat->structure[x2]));
    }
  }
  const ProfunctorPtr hom = represent_proarrow(e_.unit(*b).proarrow);
  auto fwd = std::make_shared<ProMorphism>();
  fwd->name = "flat_iso(" + f->name + ")";
  fwd->anchor = f->source;
  fwd->codomain = hom;
  fwd->left = f;
  fwd->right = flat;
  auto bwd = std::make_shared<ProMorphism>(*fwd);
  bwd->name = "flat_iso_inverse(" + f->name + ")";
  bwd->left = flat;
  bwd->right = f;
  for (std::size_t x = 0; x < n; ++x) {
    const VArrowId s = f->structure[x];
    const Cell& vys = e_.vertical_cell(element_arrow(*b, flat->on_objects[x]));
    const VArrowId id = v.identity(src.extent[x]);
    fwd->components.push_back(
        e_.factor_cartesian(hom_cartesian(*b, f->on_objects[x], flat->on_objects[x]), vys, s, id));
    bwd->components.push_back(
        e_.factor_cartesian(hom_cartesian(*b, flat->on_objects[x], f->on_objects[x]), vys, id, s));
  }
  Flattened out{flat, NaturalIso{fwd, bwd, {}}};
  out.iso.report = check_natural_iso(*fwd, *bwd);
  return out;
}

Fullness Embedding::fullness_on_arrows(const FunctorPtr& f) const {
  const auto& vdc = base();
  auto a = object_of(f->source);
  auto b = object_of(f->target);
  if (!a || !b) throw Error(ErrorKind::MalformedFunctor, f->name + " does not run between representatives");
  if (!f->extent_preserving()) throw Error(ErrorKind::MalformedFunctor, f->name + " changes the extent");
  const std::size_t ida = identity_element(*a);
  const std::size_t fi = f->on_objects[ida];
  const VArrowId arrow = element_arrow(*b, fi);
  const FunctorPtr& rep = represent_arrow(arrow);
  const ProfunctorPtr hom = represent_proarrow(e_.unit(*b).proarrow);
  auto fwd = std::make_shared<ProMorphism>();
  fwd->name = "fullness_iso(" + f->name + ")";
  fwd->anchor = f->source;
  fwd->codomain = hom;
  fwd->left = rep;
  fwd->right = f;
  auto bwd = std::make_shared<ProMorphism>(*fwd);
  bwd->name = "fullness_iso_inverse(" + f->name + ")";
  bwd->left = f;
  bwd->right = rep;
  for (std::size_t x = 0; x < f->source->size(); ++x) {
    const std::size_t fx = rep->on_objects[x];
    const std::size_t gx = f->on_objects[x];
    const VArrowId id = f->structure[x];
    const Cell there = vdc.paste(hom_cartesian(*b, fi, gx), {vdc.paste(f->on_homs(ida, x), {element_conjoint_bend(*a, x)})});
    fwd->components.push_back(e_.factor_cartesian(hom_cartesian(*b, fx, gx), there, id, id));
    const Cell back = vdc.paste(hom_cartesian(*b, gx, fi), {vdc.paste(f->on_homs(x, ida), {element_companion_bend(*a, x)})});
    bwd->components.push_back(e_.factor_cartesian(hom_cartesian(*b, gx, fx), back, id, id));
  }
  Fullness out{arrow, NaturalIso{fwd, bwd, {}}};
  out.iso.report = check_natural_iso(*fwd, *bwd);
  return out;
}

Coreflection Embedding::coreflect(const ProfunctorPtr& j) const {
  Coreflection out;
  out.report = VerificationReport("coreflect(" + j->name + ")");
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  auto a = object_of(j->source);
  auto b = object_of(j->target);
  if (!a || !b) {
    out.report.fail("coreflect.boundary", j->name + " does not run between representatives");
    return out;
  }
  const std::size_t ia = identity_element(*a);
  const std::size_t ib = identity_element(*b);
  out.proarrow = j->component(ia, ib);
  auto laws = check_profunctor_laws(*j);
  if (!laws.passed()) {
    out.report.merge(laws);
    out.report.fail("coreflect.counit", "the counit needs a lawful profunctor");
    return out;
  }
  const ProfunctorPtr& rep = represent_proarrow(out.proarrow);
  auto eps = std::make_shared<ProMorphism>();
  eps->name = "counit(" + j->name + ")";
  eps->domain = {rep};
  eps->codomain = j;
  eps->left = identity_functor(j->source);
  eps->right = identity_functor(j->target);
  const ProarrowId ha = e_.unit(*a).proarrow;
  // [h_A, Jbar, h_B] => Jbar
  const Cell unitors = vdc.paste(e_.left_unitor(out.proarrow),
                                 {vdc.identity_cell(ha), e_.right_unitor(out.proarrow)});
  try {
    eps->for_each_index([&](const std::vector<std::size_t>& objs) {
      const std::size_t x = objs[0];
      const std::size_t u = objs[1];
      const Cell phi = vdc.paste(unitors, {hom_cartesian(*a, x, ia), vdc.identity_cell(out.proarrow),
                                           hom_cartesian(*b, ib, u)});
      const VArrowId ix = v.identity(j->source->extent[x]);
      const VArrowId iu = v.identity(j->target->extent[u]);
      const Cell s = e_.factor_cartesian(component_cartesian(out.proarrow, x, u), phi, ix, iu);
      const Cell act = vdc.paste(j->left_action(x, ia, u),
                                 {vdc.identity_cell(j->source->hom(x, ia)), j->right_action(ia, ib, u)});
      eps->components.push_back(e_.factor_composite(s, act, 0, 0));
    });
  } catch (const Error& err) {
    out.report.fail("coreflect.counit", err.what());
    return out;
  }
  out.counit = eps;
  out.report.merge(check_morphism_laws(*eps));

  // The counit at (id, id) is the identity of Jbar.
  const Cell& at_ids = eps->component({ia, ib});
  if (at_ids == vdc.identity_cell(out.proarrow)) {
    out.report.pass("coreflect.triangle", "counit at (id, id) is the identity of " + vdc.proarrow(out.proarrow).name);
  } else {
    out.report.fail("coreflect.triangle", vdc.describe(at_ids) + " is not an identity");
  }

  // Inverse built from the actions along the bends of x and u.
  std::size_t missing = 0;
  std::string first;
  eps->for_each_index([&](const std::vector<std::size_t>& objs) {
    const std::size_t x = objs[0];
    const std::size_t u = objs[1];
    const VArrowId ix = v.identity(j->source->extent[x]);
    const VArrowId iu = v.identity(j->target->extent[u]);
    try {
      const Cell l = vdc.paste(j->left_action(ia, x, u),
                               {element_conjoint_bend(*a, x), vdc.identity_cell(j->component(x, u))});
      const Cell r = vdc.paste(j->right_action(ia, u, ib), {l, element_companion_bend(*b, u)});
      const Cell delta = e_.factor_cartesian(component_cartesian(out.proarrow, x, u), r, ix, iu);
      const Cell& e = eps->component(objs);
      if (vdc.paste(e, {delta}) != vdc.identity_cell(j->component(x, u)) ||
          vdc.paste(delta, {e}) != vdc.identity_cell(rep->component(x, u))) {
        throw Error(ErrorKind::NotFound, "candidate inverse does not paste to identities");
      }
    } catch (const Error& err) {
      if (missing++ == 0) first = "(" + std::to_string(x) + "," + std::to_string(u) + "): " + err.what();
    }
  });
  out.counit_invertible = missing == 0;
  if (out.counit_invertible) {
    out.report.pass("coreflect.counit_iso", "every component is invertible");
  } else {
    out.report.add(Finding{"coreflect.counit_iso", Status::Fail,
                           std::to_string(missing) + " components not invertible, first " + first});
  }
  return out;
}

VerificationReport Embedding::check_counit_naturality(const ProMorphism& mu) const {
  return timed_report("counit-naturality(" + mu.name + ")", SearchBounds{}, [&](VerificationReport& report) {
    if (mu.domain.size() != 1) {
      report.fail("counit_naturality.shape", "expected a unary morphism");
      return;
    }
    const auto& j = mu.domain[0];
    const auto& k = mu.codomain;
    auto cj = coreflect(j);
    auto ck = coreflect(k);
    if (!cj.counit || !ck.counit) {
      report.fail("counit_naturality.counit", "a counit could not be formed");
      return;
    }
    auto a = object_of(j->source);
    auto b = object_of(j->target);
    const Cell& bar = mu.component({identity_element(*a), identity_element(*b)});
    auto rep = represent_cell(bar);
    auto lhs = compose_morphisms(*ck.counit, {rep});
    auto rhs = compose_morphisms(mu, {cj.counit});
    if (lhs->components == rhs->components) {
      report.pass("counit_naturality", std::to_string(lhs->components.size()) + " components");
    } else {
      report.fail("counit_naturality", "the two composites differ");
    }
  });
}

FunctorPtr Embedding::sink_functor(ObjId a, VArrowId g) const {
  const auto& vdc = base();
  const auto& v = vdc.vertical();
  if (v.dom(g) != a) throw Error(ErrorKind::MalformedFunctor, v.arrow(g).name + " does not start at the object");
  const ObjId b = v.cod(g);
  auto out = std::make_shared<EnrichedFunctor>();
  out->name = "sink(" + v.arrow(g).name + ")";
  out->source = represent_object(a);
  out->target = represent_object(b);
  const std::size_t n = out->source->size();
  const std::size_t idb = identity_element(b);
  for (std::size_t x = 0; x < n; ++x) {
    out->on_objects.push_back(idb);
    out->structure.push_back(v.compose(g, element_arrow(a, x)));
  }
  const Cell lifted = e_.unit_extension(e_.vertical_cell(g));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      // hom(id, id) is h_B itself with an identity cartesian cell.
      const Cell phi = vdc.paste(lifted, {hom_cartesian(a, x, y)});
      out->homs.push_back(e_.factor_cartesian(hom_cartesian(b, idb, idb), phi, out->structure[x], out->structure[y]));
    }
  }
  return out;
}

}  // namespace veq
