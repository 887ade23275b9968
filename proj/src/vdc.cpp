#include "veq/vdc.hpp"

#include <algorithm>
#include <sstream>

namespace veq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::UnknownProarrow: return "UnknownProarrow";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::MalformedFrame: return "MalformedFrame";
    case ErrorKind::IllFormedInstance: return "IllFormedInstance";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::BoundsTooSmall: return "BoundsTooSmall";
    case ErrorKind::FragmentTooLarge: return "FragmentTooLarge";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorKind::InvalidQuantale: return "InvalidQuantale";
    case ErrorKind::MalformedMorphism: return "MalformedMorphism";
    case ErrorKind::MalformedFunctor: return "MalformedFunctor";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Resolution: return "ResolutionError";
  }
  return "Error";
}

// ---------------------------------------------------------------- vertical

VArrowId VerticalCategory::compose(VArrowId g, VArrowId f) const {
  if (cod(f) != dom(g)) {
    throw Error(ErrorKind::NonComposable,
                "vertical arrows " + arrow(g).name + " . " + arrow(f).name + " do not compose");
  }
  return compose_[g.index() * arrow_count() + f.index()];
}

std::optional<ObjId> VerticalCategory::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VArrowId> VerticalCategory::find_arrow(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- vdc

const ProarrowInfo& VirtualDoubleCategory::proarrow(ProarrowId p) const {
  if (!p.valid() || p.index() >= proarrows_.size()) {
    throw Error(ErrorKind::UnknownProarrow, "proarrow #" + std::to_string(p.value));
  }
  return proarrows_[p.index()];
}

std::optional<ProarrowId> VirtualDoubleCategory::find_proarrow(const std::string& name) const {
  auto it = proarrow_index_.find(name);
  if (it == proarrow_index_.end()) return std::nullopt;
  return it->second;
}

ObjId VirtualDoubleCategory::path_src(const Path& p) const {
  return p.is_empty() ? p.anchor : src(p.arrows.front());
}

ObjId VirtualDoubleCategory::path_tgt(const Path& p) const {
  return p.is_empty() ? p.anchor : tgt(p.arrows.back());
}

bool VirtualDoubleCategory::is_composable(const Path& p) const {
  if (p.is_empty()) return p.anchor.valid() && p.anchor.index() < object_count();
  if (p.anchor.valid()) return false;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (!p.arrows[i].valid() || p.arrows[i].index() >= proarrows_.size()) return false;
    if (i > 0 && tgt(p.arrows[i - 1]) != src(p.arrows[i])) return false;
  }
  return true;
}

bool VirtualDoubleCategory::well_formed(const Frame& f) const {
  const auto& v = vertical_;
  if (!is_composable(f.domain)) return false;
  if (!f.left.valid() || f.left.index() >= v.arrow_count()) return false;
  if (!f.right.valid() || f.right.index() >= v.arrow_count()) return false;
  if (!f.codomain.valid() || f.codomain.index() >= proarrows_.size()) return false;
  return v.dom(f.left) == path_src(f.domain) && v.dom(f.right) == path_tgt(f.domain) &&
         v.cod(f.left) == src(f.codomain) && v.cod(f.right) == tgt(f.codomain);
}

void VirtualDoubleCategory::require_well_formed(const Frame& f) const {
  if (!well_formed(f)) {
    std::string shown;
    try {
      shown = describe(f);
    } catch (const std::exception&) {
      shown = "<unresolvable frame>";
    }
    throw Error(ErrorKind::MalformedFrame, "frame " + shown + " violates its boundary conditions");
  }
}

const std::vector<CellId>& VirtualDoubleCategory::tabulated_frame_ids(const Frame& f) const {
  static const std::vector<CellId> none;
  const auto& store = std::get<TabulatedStore>(store_);
  auto it = store.by_frame_.find(f);
  if (it != store.by_frame_.end()) return it->second;
  if (!store.source_ || !store.source_->populate) return none;
  const std::size_t first = store.cells_.size();
  const std::size_t count = store.source_->populate(f);
  auto& ids = store.by_frame_[f];
  for (std::size_t i = 0; i < count; ++i) {
    CellId id{first + i};
    store.cells_.push_back(f);
    store.names_.push_back("m" + std::to_string(first + i));
    ids.push_back(id);
  }
  return ids;
}

std::vector<Cell> VirtualDoubleCategory::frame_cells(const Frame& f) const {
  require_well_formed(f);
  if (const auto* thin = std::get_if<ThinStore>(&store_)) {
    if (thin->exists(f)) return {Cell{CellId{}, f}};
    return {};
  }
  std::vector<Cell> out;
  for (auto id : tabulated_frame_ids(f)) out.push_back(Cell{id, f});
  return out;
}

bool VirtualDoubleCategory::has_cell(const Frame& f) const {
  if (const auto* thin = std::get_if<ThinStore>(&store_)) return well_formed(f) && thin->exists(f);
  return !frame_cells(f).empty();
}

BoundaryTest VirtualDoubleCategory::cells_over(const Path& domain) const {
  const auto* thin = std::get_if<ThinStore>(&store_);
  if (thin == nullptr) throw Error(ErrorKind::MissingCell, "cells_over needs a thin store");
  if (!is_composable(domain)) return [](VArrowId, VArrowId, ProarrowId) { return false; };
  if (thin->prepare) return thin->prepare(domain);
  return [exists = thin->exists, f = Frame{domain, {}, {}, {}}](VArrowId l, VArrowId r, ProarrowId k) mutable {
    f.left = l;
    f.right = r;
    f.codomain = k;
    return exists(f);
  };
}

Cell VirtualDoubleCategory::identity_cell(ProarrowId p) const {
  const auto& info = proarrow(p);
  Frame f{Path::of({p}), vertical_.identity(info.src), vertical_.identity(info.tgt), p};
  if (is_thin()) return Cell{CellId{}, f};
  const auto& store = std::get<TabulatedStore>(store_);
  if (store.source_ && store.source_->resolve_identity) {
    if (p.index() >= store.identity_.size()) store.identity_.resize(proarrows_.size());
    if (!store.identity_[p.index()].valid()) store.identity_[p.index()] = store.source_->resolve_identity(p);
  }
  if (p.index() >= store.identity_.size() || !store.identity_[p.index()].valid()) {
    throw Error(ErrorKind::MissingCell, "no identity cell registered for " + info.name);
  }
  return Cell{store.identity_[p.index()], f};
}

bool VirtualDoubleCategory::is_identity_cell(const Cell& c) const {
  if (c.frame.domain.size() != 1 || c.frame.domain.arrows[0] != c.frame.codomain) return false;
  if (!vertical_.is_identity(c.frame.left) || !vertical_.is_identity(c.frame.right)) return false;
  if (is_thin()) return true;
  return identity_cell(c.frame.codomain).id == c.id;
}

Frame VirtualDoubleCategory::pasted_frame(const Frame& outer, std::span<const Frame> inners) const {
  const std::size_t n = outer.domain.size();
  if (n == 0) {
    if (!inners.empty()) {
      throw Error(ErrorKind::NonComposable, "nullary outer cell takes no inner cells", 0);
    }
    return outer;
  }
  if (inners.size() != n) {
    throw Error(ErrorKind::NonComposable,
                "outer domain has " + std::to_string(n) + " entries but " + std::to_string(inners.size()) +
                    " inner cells were given",
                static_cast<int>(std::min(n, inners.size())));
  }
  Frame out;
  out.domain.anchor = inners[0].domain.anchor;
  for (std::size_t i = 0; i < n; ++i) {
    const Frame& in = inners[i];
    if (in.codomain != outer.domain.arrows[i]) {
      throw Error(ErrorKind::NonComposable,
                  "inner " + std::to_string(i) + " has codomain " + proarrow(in.codomain).name + ", expected " +
                      proarrow(outer.domain.arrows[i]).name,
                  static_cast<int>(i));
    }
    if (i > 0 && inners[i - 1].right != in.left) {
      throw Error(ErrorKind::NonComposable,
                  "inner " + std::to_string(i) + " left vertical " + vertical_.arrow(in.left).name +
                      " does not match right vertical " + vertical_.arrow(inners[i - 1].right).name,
                  static_cast<int>(i));
    }
    out.domain.arrows.insert(out.domain.arrows.end(), in.domain.arrows.begin(), in.domain.arrows.end());
  }
  if (!out.domain.arrows.empty()) out.domain.anchor = ObjId{};
  out.left = vertical_.compose(outer.left, inners.front().left);
  out.right = vertical_.compose(outer.right, inners.back().right);
  out.codomain = outer.codomain;
  return out;
}

Cell VirtualDoubleCategory::paste(const Cell& outer, std::span<const Cell> inners) const {
  std::vector<Frame> frames;
  frames.reserve(inners.size());
  for (const auto& c : inners) frames.push_back(c.frame);
  Frame result = pasted_frame(outer.frame, frames);
  if (outer.frame.domain.is_empty()) return outer;

  if (const auto* thin = std::get_if<ThinStore>(&store_)) {
    if (!thin->exists(result)) {
      throw Error(ErrorKind::MissingCell, "pasting lands on the empty frame " + describe(result));
    }
    return Cell{CellId{}, result};
  }

  const auto& store = std::get<TabulatedStore>(store_);
  PasteKey key{outer.id, {}};
  key.inners.reserve(inners.size());
  for (const auto& c : inners) key.inners.push_back(c.id);
  if (auto it = store.paste_table_.find(key); it != store.paste_table_.end()) {
    if (store.cells_[it->second.index()] != result) {
      throw Error(ErrorKind::IllFormedInstance, "paste table entry for " + describe(outer) + " has the wrong frame");
    }
    return Cell{it->second, result};
  }
  if (store.source_ && store.source_->resolve_paste) {
    auto found = store.source_->resolve_paste(outer.id, key.inners);
    if (!found) throw Error(ErrorKind::MissingCell, "no cell for the pasting onto " + describe(result));
    store.paste_table_.emplace(std::move(key), *found);
    return Cell{*found, result};
  }
  if (is_identity_cell(outer)) return inners[0];
  if (std::all_of(inners.begin(), inners.end(), [&](const Cell& c) { return is_identity_cell(c); })) return outer;
  throw Error(ErrorKind::MissingCell, "paste table has no entry for " + describe(outer) + " onto " + describe(result));
}

Cell VirtualDoubleCategory::cell(CellId id) const {
  const auto& store = std::get<TabulatedStore>(store_);
  if (!id.valid() || id.index() >= store.cells_.size()) {
    throw Error(ErrorKind::UnknownName, "cell #" + std::to_string(id.value));
  }
  return Cell{id, store.cells_[id.index()]};
}

std::vector<Cell> VirtualDoubleCategory::all_tabulated_cells() const {
  const auto& store = std::get<TabulatedStore>(store_);
  std::vector<Cell> out;
  for (std::size_t i = 0; i < store.cells_.size(); ++i) out.push_back(Cell{CellId{i}, store.cells_[i]});
  return out;
}

std::optional<Cell> VirtualDoubleCategory::find_cell(const std::string& name) const {
  const auto* store = std::get_if<TabulatedStore>(&store_);
  if (!store) return std::nullopt;
  auto it = store->name_index_.find(name);
  if (it == store->name_index_.end()) return std::nullopt;
  return cell(it->second);
}

const std::string& VirtualDoubleCategory::cell_name(CellId id) const {
  return std::get<TabulatedStore>(store_).names_.at(id.index());
}

std::string VirtualDoubleCategory::describe(const Path& p) const {
  std::ostringstream os;
  os << '[';
  if (p.is_empty()) {
    os << '@' << vertical_.object_name(p.anchor);
  } else {
    for (std::size_t i = 0; i < p.arrows.size(); ++i) os << (i ? " " : "") << proarrow(p.arrows[i]).name;
  }
  os << ']';
  return os.str();
}

std::string VirtualDoubleCategory::describe(const Frame& f) const {
  return describe(f.domain) + " / (" + vertical_.arrow(f.left).name + ", " + vertical_.arrow(f.right).name +
         ") => " + proarrow(f.codomain).name;
}

std::string VirtualDoubleCategory::describe(const Cell& c) const {
  if (c.id.valid() && !is_thin()) return cell_name(c.id) + " : " + describe(c.frame);
  return describe(c.frame);
}

// ---------------------------------------------------------------- builder

ObjId VdcBuilder::add_object(const std::string& name) {
  auto& v = vertical_;
  if (v.object_index_.contains(name)) throw Error(ErrorKind::Resolution, "duplicate object " + name);
  ObjId id{v.object_names_.size()};
  v.object_names_.push_back(name);
  v.object_index_.emplace(name, id);
  VArrowId ident{v.arrows_.size()};
  const std::string id_name = "id_" + name;
  v.arrows_.push_back(ArrowInfo{id_name, id, id});
  v.arrow_index_.emplace(id_name, ident);
  v.identities_.push_back(ident);
  return id;
}

VArrowId VdcBuilder::add_arrow(const std::string& name, ObjId dom, ObjId cod) {
  auto& v = vertical_;
  if (v.arrow_index_.contains(name)) throw Error(ErrorKind::Resolution, "duplicate vertical arrow " + name);
  VArrowId id{v.arrows_.size()};
  v.arrows_.push_back(ArrowInfo{name, dom, cod});
  v.arrow_index_.emplace(name, id);
  return id;
}

void VdcBuilder::set_compose(VArrowId g, VArrowId f, VArrowId h) { compositions_.emplace_back(g, f, h); }

ProarrowId VdcBuilder::add_proarrow(const std::string& name, ObjId src, ObjId tgt) {
  if (proarrow_index_.contains(name)) throw Error(ErrorKind::Resolution, "duplicate proarrow " + name);
  ProarrowId id{proarrows_.size()};
  proarrows_.push_back(ProarrowInfo{name, src, tgt});
  proarrow_index_.emplace(name, id);
  identity_cells_.emplace_back();
  if (auto_identity_cells_) {
    Frame f{Path::of({id}), vertical_.identities_[src.index()], vertical_.identities_[tgt.index()], id};
    identity_cells_.back() = add_cell("id_" + name, f);
  }
  return id;
}

CellId VdcBuilder::add_cell(const std::string& name, const Frame& frame) {
  if (cell_index_.contains(name)) throw Error(ErrorKind::Resolution, "duplicate cell " + name);
  CellId id{cell_frames_.size()};
  cell_frames_.push_back(frame);
  cell_names_.push_back(name);
  cell_index_.emplace(name, id);
  return id;
}

void VdcBuilder::set_paste(CellId outer, std::vector<CellId> inners, CellId result) {
  pastes_.emplace_back(PasteKey{outer, std::move(inners)}, result);
}

ObjId VdcBuilder::object(const std::string& name) const {
  auto r = vertical_.find_object(name);
  if (!r) throw Error(ErrorKind::Resolution, "unknown object " + name);
  return *r;
}

VArrowId VdcBuilder::arrow(const std::string& name) const {
  auto r = vertical_.find_arrow(name);
  if (!r) throw Error(ErrorKind::Resolution, "unknown vertical arrow " + name);
  return *r;
}

ProarrowId VdcBuilder::proarrow(const std::string& name) const {
  auto it = proarrow_index_.find(name);
  if (it == proarrow_index_.end()) throw Error(ErrorKind::Resolution, "unknown proarrow " + name);
  return it->second;
}

CellId VdcBuilder::cell(const std::string& name) const {
  auto it = cell_index_.find(name);
  if (it == cell_index_.end()) throw Error(ErrorKind::Resolution, "unknown cell " + name);
  return it->second;
}

CellId VdcBuilder::identity_cell(ProarrowId p) const { return identity_cells_.at(p.index()); }

void VdcBuilder::finish_vertical() {
  auto& v = vertical_;
  const std::size_t n = v.arrows_.size();
  const std::size_t m = v.object_names_.size();
  v.compose_.assign(n * n, VArrowId{});
  for (std::size_t f = 0; f < n; ++f) {
    const auto& fa = v.arrows_[f];
    v.compose_[v.identities_[fa.cod.index()].index() * n + f] = VArrowId{f};
    v.compose_[f * n + v.identities_[fa.dom.index()].index()] = VArrowId{f};
  }
  for (auto [g, f, h] : compositions_) {
    const auto& ga = v.arrows_.at(g.index());
    const auto& fa = v.arrows_.at(f.index());
    const auto& ha = v.arrows_.at(h.index());
    if (fa.cod != ga.dom || ha.dom != fa.dom || ha.cod != ga.cod) {
      throw Error(ErrorKind::Resolution, "composition " + ga.name + " . " + fa.name + " = " + ha.name +
                                             " has mismatched boundaries");
    }
    auto& slot = v.compose_[g.index() * n + f.index()];
    if (slot.valid() && slot != h) {
      throw Error(ErrorKind::Resolution, "conflicting composites for " + ga.name + " . " + fa.name);
    }
    slot = h;
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (v.arrows_[f].cod != v.arrows_[g].dom) continue;
      if (!v.compose_[g * n + f].valid()) {
        throw Error(ErrorKind::Resolution,
                    "missing composite for the composable pair " + v.arrows_[g].name + " . " + v.arrows_[f].name);
      }
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t g = 0; g < n; ++g) {
      if (v.arrows_[g].cod != v.arrows_[h].dom) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (v.arrows_[f].cod != v.arrows_[g].dom) continue;
        auto hg = v.compose_[h * n + g].index();
        auto gf = v.compose_[g * n + f].index();
        if (v.compose_[hg * n + f] != v.compose_[h * n + gf]) {
          throw Error(ErrorKind::Resolution, "vertical composition is not associative at " + v.arrows_[h].name +
                                                 ", " + v.arrows_[g].name + ", " + v.arrows_[f].name);
        }
      }
    }
  }
  v.into_.assign(m, {});
  v.from_.assign(m, {});
  v.between_.assign(m * m, {});
  for (std::size_t f = 0; f < n; ++f) {
    const auto& a = v.arrows_[f];
    v.into_[a.cod.index()].push_back(VArrowId{f});
    v.from_[a.dom.index()].push_back(VArrowId{f});
    v.between_[a.dom.index() * m + a.cod.index()].push_back(VArrowId{f});
  }
}

VirtualDoubleCategory VdcBuilder::assemble() {
  finish_vertical();
  VirtualDoubleCategory out;
  out.vertical_ = vertical_;
  out.proarrows_ = proarrows_;
  out.proarrow_index_ = proarrow_index_;
  const std::size_t m = vertical_.object_count();
  out.proarrows_between_.assign(m * m, {});
  for (std::size_t p = 0; p < proarrows_.size(); ++p) {
    const auto& info = proarrows_[p];
    out.proarrows_between_[info.src.index() * m + info.tgt.index()].push_back(ProarrowId{p});
  }
  return out;
}

VirtualDoubleCategory VdcBuilder::build_tabulated() {
  VirtualDoubleCategory out = assemble();
  TabulatedStore store;
  store.cells_ = cell_frames_;
  store.names_ = cell_names_;
  store.name_index_ = cell_index_;
  store.identity_ = identity_cells_;
  store.source_ = source_;
  out.store_ = std::move(store);
  for (std::size_t i = 0; i < cell_frames_.size(); ++i) {
    if (!out.well_formed(cell_frames_[i])) {
      throw Error(ErrorKind::MalformedFrame, "cell " + cell_names_[i] + " has a malformed frame");
    }
  }
  auto& st = std::get<TabulatedStore>(out.store_);
  for (std::size_t i = 0; i < cell_frames_.size(); ++i) st.by_frame_[cell_frames_[i]].push_back(CellId{i});
  for (const auto& [key, result] : pastes_) {
    std::vector<Frame> frames;
    for (auto c : key.inners) frames.push_back(cell_frames_.at(c.index()));
    Frame expected = out.pasted_frame(cell_frames_.at(key.outer.index()), frames);
    if (expected != cell_frames_.at(result.index())) {
      throw Error(ErrorKind::IllFormedInstance,
                  "paste entry for " + cell_names_[key.outer.index()] + " yields " + cell_names_[result.index()] +
                      " whose frame is not " + out.describe(expected));
    }
    st.paste_table_[key] = result;
  }
  return out;
}

VirtualDoubleCategory VdcBuilder::build_thin(std::function<bool(const Frame&)> exists,
                                             std::function<BoundaryTest(const Path&)> prepare) {
  VirtualDoubleCategory out = assemble();
  out.store_ = ThinStore{std::move(exists), std::move(prepare)};
  return out;
}

}  // namespace veq
