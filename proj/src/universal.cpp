#include "veq/universal.hpp"

#include <array>
#include <functional>
#include <map>

#include "veq/enumerate.hpp"

namespace veq {

std::string_view to_string(UniversalKind k) {
  switch (k) {
    case UniversalKind::Unit: return "unit";
    case UniversalKind::Composite: return "composite";
    case UniversalKind::Restriction: return "restriction";
    case UniversalKind::Companion: return "companion";
    case UniversalKind::Conjoint: return "conjoint";
  }
  return "?";
}

const UniversalWitness& SearchResult::value() const {
  if (witness) return *witness;
  throw Error(outcome == SearchOutcome::BoundsTooSmall ? ErrorKind::BoundsTooSmall : ErrorKind::NotFound, detail);
}

namespace {

// Identities first, so the cheapest counterexamples come up early.
std::vector<VArrowId> identity_first(const VerticalCategory& v, std::span<const VArrowId> arrows) {
  std::vector<VArrowId> out;
  for (auto a : arrows) {
    if (v.is_identity(a)) out.push_back(a);
  }
  for (auto a : arrows) {
    if (!v.is_identity(a)) out.push_back(a);
  }
  return out;
}

std::vector<int> length_order(int max_len) {
  std::vector<int> out;
  if (max_len >= 1) out.push_back(1);
  out.push_back(0);
  for (int l = 2; l <= max_len; ++l) out.push_back(l);
  return out;
}

ObjId object_at(const VirtualDoubleCategory& vdc, const Path& p, std::size_t i) {
  if (p.is_empty()) return p.anchor;
  if (i < p.size()) return vdc.proarrow(p.arrows[i]).src;
  return vdc.proarrow(p.arrows.back()).tgt;
}

Path slice(const VirtualDoubleCategory& vdc, const Path& p, std::size_t from, std::size_t to) {
  if (from == to) return Path::empty(object_at(vdc, p, from));
  return Path::of(std::vector<ProarrowId>(p.arrows.begin() + static_cast<std::ptrdiff_t>(from),
                                          p.arrows.begin() + static_cast<std::ptrdiff_t>(to)));
}

std::size_t count_matches(const VirtualDoubleCategory& vdc, const std::vector<Cell>& candidates,
                          const std::function<Cell(const Cell&)>& paste_with, const Cell& target) {
  std::size_t n = 0;
  for (const auto& c : candidates) {
    try {
      if (paste_with(c) == target) ++n;
    } catch (const Error&) {
      // an undefined pasting is simply not a factorization
    }
  }
  (void)vdc;
  return n;
}

std::vector<Cell> composite_inners(const VirtualDoubleCategory& vdc, const Path& left, const Cell& s,
                                   const Path& right) {
  std::vector<Cell> inners;
  for (auto p : left.arrows) inners.push_back(vdc.identity_cell(p));
  inners.push_back(s);
  for (auto p : right.arrows) inners.push_back(vdc.identity_cell(p));
  return inners;
}

struct Tally {
  explicit Tally(std::size_t b) : budget(b) {}
  std::size_t budget;
  std::size_t examined = 0;
  bool truncated = false;
  std::optional<std::string> counterexample;

  bool take() {
    if (examined >= budget) {
      truncated = true;
      return false;
    }
    ++examined;
    return true;
  }
};

UniversalCheck finish(VerificationReport report, const std::string& check, const Tally& t) {
  if (t.counterexample) {
    report.fail(check, *t.counterexample);
    return {false, std::move(report)};
  }
  if (t.truncated) {
    report.truncated(check, "candidate budget exhausted after " + std::to_string(t.examined) + " factorizations");
    return {false, std::move(report)};
  }
  report.pass(check, std::to_string(t.examined) + " factorizations checked");
  return {true, std::move(report)};
}

using Checker = std::function<UniversalCheck(const Cell&)>;

SearchResult search(const std::vector<Cell>& candidates, UniversalKind kind, const Checker& check,
                    SearchBounds bounds, const std::string& datum) {
  SearchResult result;
  bool truncated = false;
  for (const auto& c : candidates) {
    UniversalCheck u = check(c);
    if (u.holds) {
      if (!result.witness) {
        const ProarrowId p = kind == UniversalKind::Restriction ? c.frame.domain.arrows.at(0) : c.frame.codomain;
        result.witness = UniversalWitness{kind, p, c, bounds, 0};
      }
      ++result.witness->witnesses;
    } else if (u.report.status() == Status::Truncated) {
      truncated = true;
    }
  }
  if (result.witness) {
    result.outcome = SearchOutcome::Found;
    if (result.witness->witnesses > 1) {
      result.detail = std::to_string(result.witness->witnesses) + " witnesses for " + datum + ", unique up to isomorphism";
    }
    return result;
  }
  result.outcome = truncated ? SearchOutcome::BoundsTooSmall : SearchOutcome::NotFound;
  result.detail = (truncated ? "search truncated for " : "no universal cell for ") + datum + " among " +
                  std::to_string(candidates.size()) + " candidates under " + describe(bounds);
  return result;
}

}  // namespace

UniversalCheck is_cartesian(const VirtualDoubleCategory& vdc, const Cell& cell, SearchBounds bounds) {
  VerificationReport report("is-cartesian", bounds);
  const Frame& s = cell.frame;
  if (s.domain.size() != 1) {
    report.fail("cartesian.shape", vdc.describe(cell) + " is not a unary cell");
    return {false, std::move(report)};
  }
  const auto& v = vdc.vertical();
  const ProarrowId r = s.domain.arrows[0];
  const ObjId x = vdc.proarrow(r).src;
  const ObjId y = vdc.proarrow(r).tgt;
  Tally t(bounds.max_candidates);
  const auto lefts = identity_first(v, v.arrows_into(x));
  const auto rights = identity_first(v, v.arrows_into(y));
  if (vdc.is_thin()) {
    // One cell per frame: pasting lands on phi's frame whenever the factor's
    // frame is inhabited. Each domain is prepared once for all boundaries.
    for (int len : length_order(bounds.max_path)) {
      for (std::size_t x2 = 0; x2 < vdc.object_count(); ++x2) {
        for (std::size_t y2 = 0; y2 < vdc.object_count(); ++y2) {
          std::vector<VArrowId> as;
          std::vector<VArrowId> bs;
          for (auto a : lefts) if (v.dom(a) == ObjId{x2}) as.push_back(a);
          for (auto b : rights) if (v.dom(b) == ObjId{y2}) bs.push_back(b);
          if (as.empty() || bs.empty()) continue;
          bool go_on = for_each_path(vdc, ObjId{x2}, ObjId{y2}, len, len, [&](const Path& p) {
            const auto test = vdc.cells_over(p);
            for (auto a : as) {
              for (auto b : bs) {
                if (!test(v.compose(s.left, a), v.compose(s.right, b), s.codomain)) continue;
                if (!t.take()) return false;
                if (!test(a, b, r)) {
                  t.counterexample = vdc.describe(Frame{p, v.compose(s.left, a), v.compose(s.right, b), s.codomain}) +
                                     " has 0 factorizations through " + vdc.describe(cell);
                  return false;
                }
              }
            }
            return true;
          });
          if (!go_on) return finish(std::move(report), "cartesian", t);
        }
      }
    }
    return finish(std::move(report), "cartesian", t);
  }
  for (int len : length_order(bounds.max_path)) {
    for (auto a : lefts) {
      for (auto b : rights) {
        bool go_on = for_each_path(vdc, v.dom(a), v.dom(b), len, len, [&](const Path& p) {
          const Frame phi_frame{p, v.compose(s.left, a), v.compose(s.right, b), s.codomain};
          const auto phis = vdc.frame_cells(phi_frame);
          if (phis.empty()) return true;
          const auto psis = vdc.frame_cells(Frame{p, a, b, r});
          for (const auto& phi : phis) {
            if (!t.take()) return false;
            const std::size_t n =
                count_matches(vdc, psis, [&](const Cell& psi) { return vdc.paste(cell, {psi}); }, phi);
            if (n != 1) {
              t.counterexample = vdc.describe(phi) + " has " + std::to_string(n) + " factorizations through " +
                                 vdc.describe(cell);
              return false;
            }
          }
          return true;
        });
        if (!go_on) return finish(std::move(report), "cartesian", t);
      }
    }
  }
  return finish(std::move(report), "cartesian", t);
}

UniversalCheck is_composite(const VirtualDoubleCategory& vdc, const Cell& cell, SearchBounds bounds) {
  VerificationReport report("is-composite", bounds);
  const Frame& s = cell.frame;
  const auto& v = vdc.vertical();
  if (!v.is_identity(s.left) || !v.is_identity(s.right)) {
    report.fail("composite.shape", vdc.describe(cell) + " has non-identity verticals");
    return {false, std::move(report)};
  }
  const ObjId a = vdc.path_src(s.domain);
  const ObjId b = vdc.path_tgt(s.domain);
  const Path middle = Path::of({s.codomain});
  const bool thin = vdc.is_thin();
  Tally t(bounds.max_candidates);
  for (int total = 0; total <= 2 * bounds.max_flank; ++total) {
    for (int lp = 0; lp <= bounds.max_flank; ++lp) {
      const int lq = total - lp;
      if (lq < 0 || lq > bounds.max_flank) continue;
      bool go_on = for_each_path_into(vdc, a, lp, lp, [&](const Path& left) {
        return for_each_path_from(vdc, b, lq, lq, [&](const Path& right) {
          const Path psi_domain = concat(concat(left, middle), right);
          const Path phi_domain = concat(concat(left, s.domain), right);
          if (thin) {
            const auto phi_test = vdc.cells_over(phi_domain);
            const auto psi_test = vdc.cells_over(psi_domain);
            return for_each_frame_on(vdc, psi_domain, [&](const Frame& f) {
              if (!phi_test(f.left, f.right, f.codomain)) return true;
              if (!t.take()) return false;
              if (!psi_test(f.left, f.right, f.codomain)) {
                t.counterexample = vdc.describe(Frame{phi_domain, f.left, f.right, f.codomain}) +
                                   " has 0 factorizations through " + vdc.describe(cell);
                return false;
              }
              return true;
            });
          }
          const auto inners = composite_inners(vdc, left, cell, right);
          return for_each_frame_on(vdc, psi_domain, [&](const Frame& psi_frame) {
            const auto phis = vdc.frame_cells(Frame{phi_domain, psi_frame.left, psi_frame.right, psi_frame.codomain});
            if (phis.empty()) return true;
            const auto psis = vdc.frame_cells(psi_frame);
            for (const auto& phi : phis) {
              if (!t.take()) return false;
              const std::size_t n =
                  count_matches(vdc, psis, [&](const Cell& psi) { return vdc.paste(psi, inners); }, phi);
              if (n != 1) {
                t.counterexample = vdc.describe(phi) + " has " + std::to_string(n) + " factorizations through " +
                                   vdc.describe(cell);
                return false;
              }
            }
            return true;
          });
        });
      });
      if (!go_on) return finish(std::move(report), "composite", t);
    }
  }
  return finish(std::move(report), "composite", t);
}

SearchResult find_restriction(const VirtualDoubleCategory& vdc, ProarrowId k, VArrowId g, VArrowId f,
                              SearchBounds bounds) {
  const auto& v = vdc.vertical();
  const auto& info = vdc.proarrow(k);
  if (v.cod(g) != info.src || v.cod(f) != info.tgt) {
    throw Error(ErrorKind::MalformedFrame, "restriction of " + info.name + " along " + v.arrow(g).name + ", " +
                                               v.arrow(f).name + ": verticals do not land on its ends");
  }
  const std::string datum = info.name + "(" + v.arrow(g).name + ", " + v.arrow(f).name + ")";
  if (v.is_identity(g) && v.is_identity(f)) {
    SearchResult r;
    r.outcome = SearchOutcome::Found;
    r.witness = UniversalWitness{UniversalKind::Restriction, k, vdc.identity_cell(k), bounds, 1};
    return r;
  }
  std::vector<Cell> candidates;
  for (auto r : vdc.proarrows_between(v.dom(g), v.dom(f))) {
    for (auto& c : vdc.frame_cells(Frame{Path::of({r}), g, f, k})) candidates.push_back(std::move(c));
  }
  return search(candidates, UniversalKind::Restriction, [&](const Cell& c) { return is_cartesian(vdc, c, bounds); },
                bounds, datum);
}

SearchResult find_unit(const VirtualDoubleCategory& vdc, ObjId a, SearchBounds bounds) {
  const auto& v = vdc.vertical();
  std::vector<Cell> candidates;
  for (auto j : vdc.proarrows_between(a, a)) {
    for (auto& c : vdc.frame_cells(Frame{Path::empty(a), v.identity(a), v.identity(a), j})) {
      candidates.push_back(std::move(c));
    }
  }
  return search(candidates, UniversalKind::Unit, [&](const Cell& c) { return is_composite(vdc, c, bounds); }, bounds,
                "unit of " + v.object_name(a));
}

SearchResult find_composite(const VirtualDoubleCategory& vdc, const Path& path, SearchBounds bounds) {
  if (path.is_empty()) return find_unit(vdc, path.anchor, bounds);
  if (path.size() == 1) {
    SearchResult r;
    r.outcome = SearchOutcome::Found;
    r.witness = UniversalWitness{UniversalKind::Composite, path.arrows[0], vdc.identity_cell(path.arrows[0]), bounds, 1};
    return r;
  }
  const auto& v = vdc.vertical();
  const ObjId a = vdc.path_src(path);
  const ObjId b = vdc.path_tgt(path);
  std::vector<Cell> candidates;
  for (auto j : vdc.proarrows_between(a, b)) {
    for (auto& c : vdc.frame_cells(Frame{path, v.identity(a), v.identity(b), j})) candidates.push_back(std::move(c));
  }
  return search(candidates, UniversalKind::Composite, [&](const Cell& c) { return is_composite(vdc, c, bounds); },
                bounds, "composite of " + vdc.describe(path));
}

std::optional<Cell> factor_cartesian(const VirtualDoubleCategory& vdc, const Cell& cart, const Cell& phi, VArrowId a,
                                     VArrowId b) {
  std::optional<Cell> found;
  for (const auto& psi : vdc.frame_cells(Frame{phi.frame.domain, a, b, cart.frame.domain.arrows.at(0)})) {
    try {
      if (vdc.paste(cart, {psi}) != phi) continue;
    } catch (const Error&) {
      continue;
    }
    if (found) return std::nullopt;
    found = psi;
  }
  return found;
}

std::optional<Cell> factor_composite(const VirtualDoubleCategory& vdc, const Cell& s, const Cell& phi,
                                     std::size_t left, std::size_t right) {
  const Path& d = phi.frame.domain;
  const std::size_t width = s.frame.domain.size();
  if (left + width + right != d.size()) return std::nullopt;
  const Path lp = slice(vdc, d, 0, left);
  const Path rp = slice(vdc, d, left + width, d.size());
  if (width > 0 && slice(vdc, d, left, left + width) != s.frame.domain) return std::nullopt;
  const auto inners = composite_inners(vdc, lp, s, rp);
  const Path psi_domain = concat(concat(lp, Path::of({s.frame.codomain})), rp);
  std::optional<Cell> found;
  for (const auto& psi : vdc.frame_cells(Frame{psi_domain, phi.frame.left, phi.frame.right, phi.frame.codomain})) {
    try {
      if (vdc.paste(psi, inners) != phi) continue;
    } catch (const Error&) {
      continue;
    }
    if (found) return std::nullopt;
    found = psi;
  }
  return found;
}

std::optional<Cell> unique_cell(const VirtualDoubleCategory& vdc, const Frame& frame) {
  auto cells = vdc.frame_cells(frame);
  if (cells.size() != 1) return std::nullopt;
  return cells.front();
}

std::optional<std::pair<Cell, Cell>> proarrows_isomorphic(const VirtualDoubleCategory& vdc, ProarrowId j,
                                                          ProarrowId k) {
  const auto& v = vdc.vertical();
  const auto& ji = vdc.proarrow(j);
  const auto& ki = vdc.proarrow(k);
  if (ji.src != ki.src || ji.tgt != ki.tgt) return std::nullopt;
  const VArrowId l = v.identity(ji.src);
  const VArrowId r = v.identity(ji.tgt);
  const Cell idj = vdc.identity_cell(j);
  const Cell idk = vdc.identity_cell(k);
  for (const auto& there : vdc.frame_cells(Frame{Path::of({j}), l, r, k})) {
    for (const auto& back : vdc.frame_cells(Frame{Path::of({k}), l, r, j})) {
      try {
        if (vdc.paste(back, {there}) == idj && vdc.paste(there, {back}) == idk) return std::make_pair(there, back);
      } catch (const Error&) {
      }
    }
  }
  return std::nullopt;
}

BendBundle derive_bends(const VirtualDoubleCategory& vdc, VArrowId f, SearchBounds bounds) {
  const auto& v = vdc.vertical();
  const ObjId x = v.dom(f);
  const ObjId a = v.cod(f);
  const std::string name = v.arrow(f).name;
  const UniversalWitness unit = find_unit(vdc, a, bounds).value();
  const ProarrowId h = unit.proarrow;

  BendBundle out;
  out.arrow = f;
  out.companion = find_restriction(vdc, h, f, v.identity(a), bounds).value();
  out.companion.kind = UniversalKind::Companion;
  out.conjoint = find_restriction(vdc, h, v.identity(a), f, bounds).value();
  out.conjoint.kind = UniversalKind::Conjoint;

  auto vf = unique_cell(vdc, Frame{Path::empty(x), f, f, h});
  if (!vf) throw Error(ErrorKind::NotFound, "no unique vertical cell for " + name);
  auto cb = factor_cartesian(vdc, out.companion.structure_cell, *vf, v.identity(x), f);
  auto jb = factor_cartesian(vdc, out.conjoint.structure_cell, *vf, f, v.identity(x));
  if (!cb || !jb) throw Error(ErrorKind::NotFound, "bend cells of " + name + " do not factor");
  out.companion_bend = *cb;
  out.conjoint_bend = *jb;

  VerificationReport& k = out.kinks;
  k = VerificationReport("kinks(" + name + ")", bounds);
  auto expect = [&](const std::string& check, const std::function<Cell()>& lhs, const Cell& rhs) {
    try {
      Cell got = lhs();
      if (got == rhs) {
        k.pass(check);
      } else {
        k.fail(check, vdc.describe(got) + " != " + vdc.describe(rhs));
      }
    } catch (const Error& e) {
      k.fail(check, e.what());
    }
  };
  const Cell& eta = unit.structure_cell;
  const Cell& cc = out.companion.structure_cell;
  const Cell& jc = out.conjoint.structure_cell;
  const Cell idc = vdc.identity_cell(out.companion.proarrow);
  const Cell idj = vdc.identity_cell(out.conjoint.proarrow);
  expect("kink.companion.vertical", [&] { return vdc.paste(cc, {out.companion_bend}); }, *vf);
  expect("kink.conjoint.vertical", [&] { return vdc.paste(jc, {out.conjoint_bend}); }, *vf);
  expect(
      "kink.companion.horizontal",
      [&] {
        auto rho = factor_composite(vdc, eta, idc, 1, 0);
        if (!rho) throw Error(ErrorKind::NotFound, "no right unitor for the companion");
        return vdc.paste(*rho, {out.companion_bend, cc});
      },
      idc);
  expect(
      "kink.conjoint.horizontal",
      [&] {
        auto lambda = factor_composite(vdc, eta, idj, 0, 1);
        if (!lambda) throw Error(ErrorKind::NotFound, "no left unitor for the conjoint");
        return vdc.paste(*lambda, {jc, out.conjoint_bend});
      },
      idj);
  return out;
}

namespace {

void record(VerificationReport& report, const std::string& check, const SearchResult& r) {
  if (r.found()) return;
  if (r.outcome == SearchOutcome::BoundsTooSmall) {
    report.truncated(check, r.detail);
  } else {
    report.fail(check, r.detail);
  }
}

std::string restriction_name(const VirtualDoubleCategory& vdc, ProarrowId k, VArrowId g, VArrowId f) {
  const auto& v = vdc.vertical();
  return vdc.proarrow(k).name + "(" + v.arrow(g).name + "," + v.arrow(f).name + ")";
}

}  // namespace

VerificationReport check_equipment(const VirtualDoubleCategory& vdc, SearchBounds bounds) {
  return timed_report("equipment", bounds, [&](VerificationReport& report) {
    const auto& v = vdc.vertical();
    std::size_t units = 0;
    std::size_t restrictions = 0;
    for (std::size_t i = 0; i < vdc.object_count(); ++i) {
      const ObjId a{i};
      const auto r = find_unit(vdc, a, bounds);
      record(report, "equipment.unit." + v.object_name(a), r);
      units += r.found();
    }
    for (std::size_t i = 0; i < vdc.proarrow_count(); ++i) {
      const ProarrowId k{i};
      const auto& info = vdc.proarrow(k);
      for (auto g : v.arrows_into(info.src)) {
        for (auto f : v.arrows_into(info.tgt)) {
          const auto r = find_restriction(vdc, k, g, f, bounds);
          record(report, "equipment.restriction." + restriction_name(vdc, k, g, f), r);
          restrictions += r.found();
        }
      }
    }
    report.pass("equipment", std::to_string(units) + " units, " + std::to_string(restrictions) + " restrictions");
  });
}

namespace {

// Memoized searches shared by the lemma checks.
class LemmaContext {
 public:
  LemmaContext(const VirtualDoubleCategory& vdc, SearchBounds bounds) : vdc_(vdc), bounds_(bounds) {}

  const SearchResult& composite(const Path& p) {
    auto it = composites_.find(p.arrows);
    if (it == composites_.end()) it = composites_.emplace(p.arrows, find_composite(vdc_, p, bounds_)).first;
    return it->second;
  }

  const SearchResult& restriction(ProarrowId k, VArrowId g, VArrowId f) {
    auto key = std::array<std::uint32_t, 3>{k.value, g.value, f.value};
    auto it = restrictions_.find(key);
    if (it == restrictions_.end()) it = restrictions_.emplace(key, find_restriction(vdc_, k, g, f, bounds_)).first;
    return it->second;
  }

  const SearchResult& unit(ObjId a) {
    auto it = units_.find(a.value);
    if (it == units_.end()) it = units_.emplace(a.value, find_unit(vdc_, a, bounds_)).first;
    return it->second;
  }

  // Companion (g, id) or conjoint (id, f) of the unit at the codomain.
  std::optional<ProarrowId> bend(VArrowId f, bool companion) {
    const auto& v = vdc_.vertical();
    const auto& u = unit(v.cod(f));
    if (!u.found()) return std::nullopt;
    const VArrowId id = v.identity(v.cod(f));
    const auto& r = companion ? restriction(u.witness->proarrow, f, id) : restriction(u.witness->proarrow, id, f);
    if (!r.found()) return std::nullopt;
    return r.witness->proarrow;
  }

 private:
  const VirtualDoubleCategory& vdc_;
  SearchBounds bounds_;
  std::map<std::vector<ProarrowId>, SearchResult> composites_;
  std::map<std::array<std::uint32_t, 3>, SearchResult> restrictions_;
  std::map<std::uint32_t, SearchResult> units_;
};

}  // namespace

VerificationReport check_derived_lemmas(const VirtualDoubleCategory& vdc, SearchBounds bounds, unsigned lemmas) {
  return timed_report("derived-lemmas", bounds, [&](VerificationReport& report) {
    const auto& v = vdc.vertical();
    LemmaContext ctx(vdc, bounds);
    std::array<std::size_t, 4> counts{};

    auto iso_check = [&](const std::string& check, const SearchResult& lhs, const SearchResult& rhs) -> bool {
      if (!lhs.found()) {
        record(report, check, lhs);
        return false;
      }
      if (!rhs.found()) {
        record(report, check, rhs);
        return false;
      }
      if (!proarrows_isomorphic(vdc, lhs.witness->proarrow, rhs.witness->proarrow)) {
        report.fail(check, vdc.proarrow(lhs.witness->proarrow).name + " is not isomorphic to " +
                               vdc.proarrow(rhs.witness->proarrow).name);
        return false;
      }
      return true;
    };

    // (a) K(g, f) is the composite of g_!, K and f^*.
    for (std::size_t i = 0; (lemmas & kRestrictionAsComposite) && i < vdc.proarrow_count(); ++i) {
      const ProarrowId k{i};
      const auto& info = vdc.proarrow(k);
      for (auto g : v.arrows_into(info.src)) {
        for (auto f : v.arrows_into(info.tgt)) {
          const std::string check = "lemma.restriction_as_composite." + restriction_name(vdc, k, g, f);
          auto gc = ctx.bend(g, true);
          auto fc = ctx.bend(f, false);
          if (!gc || !fc) {
            report.fail(check, "missing companion or conjoint");
            continue;
          }
          counts[0] += iso_check(check, ctx.composite(Path::of({*gc, k, *fc})), ctx.restriction(k, g, f));
        }
      }
    }

    // (b) Composites of composites are composites of the concatenation.
    if (!(lemmas & kNestedComposites)) {
    } else if (bounds.max_path < 3) {
      report.truncated("lemma.composite_of_composites", "path bound below 3");
    } else {
      for (std::size_t a = 0; a < vdc.object_count(); ++a) {
        for (std::size_t b = 0; b < vdc.object_count(); ++b) {
          for_each_path(vdc, ObjId{a}, ObjId{b}, 3, 3, [&](const Path& p) {
            const std::string check = "lemma.composite_of_composites." + vdc.describe(p);
            const auto& inner = ctx.composite(Path::of({p.arrows[0], p.arrows[1]}));
            if (!inner.found()) {
              record(report, check, inner);
              return true;
            }
            const auto& outer = ctx.composite(Path::of({inner.witness->proarrow, p.arrows[2]}));
            if (!outer.found()) {
              record(report, check, outer);
              return true;
            }
            try {
              const Cell s = vdc.paste(outer.witness->structure_cell,
                                       {inner.witness->structure_cell, vdc.identity_cell(p.arrows[2])});
              auto u = is_composite(vdc, s, bounds);
              if (u.holds) {
                ++counts[1];
              } else {
                report.merge(u.report);
                report.fail(check, "pasted structure cell is not a composite");
              }
            } catch (const Error& e) {
              report.fail(check, e.what());
            }
            return true;
          });
        }
      }
    }

    // (c) Companions and conjoints of composites.
    for (std::size_t i = 0; (lemmas & kBendComposites) && i < v.arrow_count(); ++i) {
      const VArrowId f{i};
      for (auto g : v.arrows_from(v.cod(f))) {
        const VArrowId gf = v.compose(g, f);
        const std::string tag = v.arrow(g).name + "." + v.arrow(f).name;
        auto fc = ctx.bend(f, true);
        auto gcmp = ctx.bend(g, true);
        auto gfc = ctx.bend(gf, true);
        auto fj = ctx.bend(f, false);
        auto gj = ctx.bend(g, false);
        auto gfj = ctx.bend(gf, false);
        if (!fc || !gcmp || !gfc || !fj || !gj || !gfj) {
          report.fail("lemma.bend_of_composite." + tag, "missing companion or conjoint");
          continue;
        }
        SearchResult lhs_c;
        lhs_c.outcome = SearchOutcome::Found;
        lhs_c.witness = UniversalWitness{UniversalKind::Companion, *gfc, vdc.identity_cell(*gfc), bounds, 1};
        SearchResult lhs_j = lhs_c;
        lhs_j.witness = UniversalWitness{UniversalKind::Conjoint, *gfj, vdc.identity_cell(*gfj), bounds, 1};
        bool ok = iso_check("lemma.companion_of_composite." + tag, lhs_c, ctx.composite(Path::of({*fc, *gcmp})));
        ok = iso_check("lemma.conjoint_of_composite." + tag, lhs_j, ctx.composite(Path::of({*gj, *fj}))) && ok;
        counts[2] += ok;
      }
    }

    // (d) Companion- and conjoint-flanked composites are restrictions of the
    // composite in the middle.
    if (!(lemmas & kFlankedComposites)) {
    } else if (bounds.max_path < 2) {
      report.truncated("lemma.flanked_composite", "path bound below 2");
    } else {
      for (std::size_t a = 0; a < vdc.object_count(); ++a) {
        for (std::size_t b = 0; b < vdc.object_count(); ++b) {
          for_each_path(vdc, ObjId{a}, ObjId{b}, 2, 2, [&](const Path& p) {
            const auto& middle = ctx.composite(p);
            if (!middle.found()) {
              record(report, "lemma.flanked_composite." + vdc.describe(p), middle);
              return true;
            }
            for (auto g : v.arrows_into(ObjId{a})) {
              for (auto f : v.arrows_into(ObjId{b})) {
                const std::string check = "lemma.flanked_composite." + vdc.describe(p) + "(" + v.arrow(g).name +
                                          "," + v.arrow(f).name + ")";
                auto gc = ctx.bend(g, true);
                auto fj = ctx.bend(f, false);
                if (!gc || !fj) {
                  report.fail(check, "missing companion or conjoint");
                  continue;
                }
                counts[3] += iso_check(check, ctx.composite(Path::of({*gc, p.arrows[0], p.arrows[1], *fj})),
                                       ctx.restriction(middle.witness->proarrow, g, f));
              }
            }
            return true;
          });
        }
      }
    }

    report.pass("derived_lemmas", std::to_string(counts[0]) + " restriction composites, " +
                                      std::to_string(counts[1]) + " nested composites, " +
                                      std::to_string(counts[2]) + " bend composites, " + std::to_string(counts[3]) +
                                      " flanked composites");
  });
}

}  // namespace veq
