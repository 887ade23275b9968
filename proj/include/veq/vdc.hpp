#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "veq/error.hpp"
#include "veq/frame.hpp"

namespace veq {

struct ArrowInfo {
  std::string name;
  ObjId dom;
  ObjId cod;
};

// Finite category of vertical arrows with a total composition table on
// composable pairs.
class VerticalCategory {
 public:
  [[nodiscard]] std::size_t object_count() const { return object_names_.size(); }
  [[nodiscard]] std::size_t arrow_count() const { return arrows_.size(); }

  [[nodiscard]] const std::string& object_name(ObjId a) const { return object_names_.at(a.index()); }
  [[nodiscard]] const ArrowInfo& arrow(VArrowId f) const { return arrows_.at(f.index()); }
  [[nodiscard]] ObjId dom(VArrowId f) const { return arrow(f).dom; }
  [[nodiscard]] ObjId cod(VArrowId f) const { return arrow(f).cod; }
  [[nodiscard]] VArrowId identity(ObjId a) const { return identities_.at(a.index()); }
  [[nodiscard]] bool is_identity(VArrowId f) const { return identities_.at(dom(f).index()) == f; }

  // g . f; throws NonComposable when cod(f) != dom(g).
  [[nodiscard]] VArrowId compose(VArrowId g, VArrowId f) const;

  [[nodiscard]] std::span<const VArrowId> arrows_into(ObjId a) const { return into_.at(a.index()); }
  [[nodiscard]] std::span<const VArrowId> arrows_from(ObjId a) const { return from_.at(a.index()); }
  [[nodiscard]] std::span<const VArrowId> arrows_between(ObjId a, ObjId b) const {
    return between_.at(a.index() * object_count() + b.index());
  }

  [[nodiscard]] std::optional<ObjId> find_object(const std::string& name) const;
  [[nodiscard]] std::optional<VArrowId> find_arrow(const std::string& name) const;

 private:
  friend class VdcBuilder;

  std::vector<std::string> object_names_;
  std::vector<ArrowInfo> arrows_;
  std::vector<VArrowId> identities_;
  std::vector<VArrowId> compose_;  // dense arrow_count^2, invalid where undefined
  std::vector<std::vector<VArrowId>> into_;
  std::vector<std::vector<VArrowId>> from_;
  std::vector<std::vector<VArrowId>> between_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, VArrowId> arrow_index_;
};

struct ProarrowInfo {
  std::string name;
  ObjId src;
  ObjId tgt;
};

struct PasteKey {
  CellId outer;
  std::vector<CellId> inners;
  friend bool operator==(const PasteKey&, const PasteKey&) = default;
};

struct PasteKeyHash {
  std::size_t operator()(const PasteKey& k) const noexcept {
    std::size_t h = std::hash<CellId>{}(k.outer);
    for (auto c : k.inners) h = hash_combine(h, std::hash<CellId>{}(c));
    return h;
  }
};

// Finite set of named cells with an explicit substitution table. Identity
// pastings (identity outer, or all-identity inners) resolve implicitly unless
// the table overrides them. An optional source populates frames and paste
// entries on first use; the result is indistinguishable from an eagerly
// filled table.
class TabulatedStore {
 public:
  struct Source {
    // Returns the number of cells that live on `frame`; they receive
    // consecutive ids in the order the source reports them.
    std::function<std::size_t(const Frame&)> populate;
    std::function<std::optional<CellId>(CellId, std::span<const CellId>)> resolve_paste;
    std::function<CellId(ProarrowId)> resolve_identity;
  };

  [[nodiscard]] std::size_t cell_count() const { return cells_.size(); }

 private:
  friend class VirtualDoubleCategory;
  friend class VdcBuilder;

  mutable std::vector<Frame> cells_;
  mutable std::vector<std::string> names_;
  mutable std::unordered_map<Frame, std::vector<CellId>, FrameHash> by_frame_;
  mutable std::unordered_map<PasteKey, CellId, PasteKeyHash> paste_table_;
  mutable std::vector<CellId> identity_;  // per proarrow
  std::unordered_map<std::string, CellId> name_index_;
  std::shared_ptr<Source> source_;
};

// At most one cell per frame; existence is a decidable predicate and pasting
// is implicit.
struct ThinStore {
  std::function<bool(const Frame&)> exists;
  // Optional: fixes a domain once so that many boundaries over it are cheap.
  std::function<std::function<bool(VArrowId, VArrowId, ProarrowId)>(const Path&)> prepare;
};

// Existence of a cell over a fixed domain, given (left, right, codomain).
// Callers pass only boundaries that are well formed for that domain.
using BoundaryTest = std::function<bool(VArrowId, VArrowId, ProarrowId)>;

class VirtualDoubleCategory {
 public:
  [[nodiscard]] const VerticalCategory& vertical() const { return vertical_; }
  [[nodiscard]] std::size_t object_count() const { return vertical_.object_count(); }
  [[nodiscard]] std::size_t proarrow_count() const { return proarrows_.size(); }
  [[nodiscard]] const ProarrowInfo& proarrow(ProarrowId p) const;
  [[nodiscard]] ObjId src(ProarrowId p) const { return proarrow(p).src; }
  [[nodiscard]] ObjId tgt(ProarrowId p) const { return proarrow(p).tgt; }
  [[nodiscard]] std::span<const ProarrowId> proarrows_between(ObjId a, ObjId b) const {
    return proarrows_between_.at(a.index() * object_count() + b.index());
  }

  [[nodiscard]] bool is_thin() const { return std::holds_alternative<ThinStore>(store_); }
  [[nodiscard]] const TabulatedStore* tabulated() const { return std::get_if<TabulatedStore>(&store_); }

  [[nodiscard]] ObjId path_src(const Path& p) const;
  [[nodiscard]] ObjId path_tgt(const Path& p) const;
  [[nodiscard]] bool is_composable(const Path& p) const;

  [[nodiscard]] bool well_formed(const Frame& f) const;
  // Throws MalformedFrame describing the violated boundary condition.
  void require_well_formed(const Frame& f) const;

  [[nodiscard]] std::vector<Cell> frame_cells(const Frame& f) const;
  [[nodiscard]] bool has_cell(const Frame& f) const;
  // Thin stores only.
  [[nodiscard]] BoundaryTest cells_over(const Path& domain) const;

  [[nodiscard]] Cell identity_cell(ProarrowId p) const;
  [[nodiscard]] bool is_identity_cell(const Cell& c) const;

  // The frame of outer(inners...) or NonComposable naming the inner index.
  [[nodiscard]] Frame pasted_frame(const Frame& outer, std::span<const Frame> inners) const;
  [[nodiscard]] Cell paste(const Cell& outer, std::span<const Cell> inners) const;
  [[nodiscard]] Cell paste(const Cell& outer, std::initializer_list<Cell> inners) const {
    return paste(outer, std::span<const Cell>(inners.begin(), inners.size()));
  }

  // Tabulated stores only.
  [[nodiscard]] Cell cell(CellId id) const;
  [[nodiscard]] std::vector<Cell> all_tabulated_cells() const;
  [[nodiscard]] std::optional<Cell> find_cell(const std::string& name) const;
  [[nodiscard]] const std::string& cell_name(CellId id) const;

  [[nodiscard]] std::optional<ObjId> find_object(const std::string& name) const {
    return vertical_.find_object(name);
  }
  [[nodiscard]] std::optional<VArrowId> find_arrow(const std::string& name) const {
    return vertical_.find_arrow(name);
  }
  [[nodiscard]] std::optional<ProarrowId> find_proarrow(const std::string& name) const;

  [[nodiscard]] std::string describe(const Path& p) const;
  [[nodiscard]] std::string describe(const Frame& f) const;
  [[nodiscard]] std::string describe(const Cell& c) const;

 private:
  friend class VdcBuilder;

  VerticalCategory vertical_;
  std::vector<ProarrowInfo> proarrows_;
  std::vector<std::vector<ProarrowId>> proarrows_between_;
  std::unordered_map<std::string, ProarrowId> proarrow_index_;
  std::variant<TabulatedStore, ThinStore> store_;

  const std::vector<CellId>& tabulated_frame_ids(const Frame& f) const;
};

class VdcBuilder {
 public:
  // Registers the object together with its identity arrow `id_<name>`.
  ObjId add_object(const std::string& name);
  VArrowId add_arrow(const std::string& name, ObjId dom, ObjId cod);
  // Records g . f = h. Compositions with identities are implicit.
  void set_compose(VArrowId g, VArrowId f, VArrowId h);
  ProarrowId add_proarrow(const std::string& name, ObjId src, ObjId tgt);

  // Tabulated cells. Identity cells `id_<J>` are registered automatically.
  CellId add_cell(const std::string& name, const Frame& frame);
  void set_paste(CellId outer, std::vector<CellId> inners, CellId result);
  void set_source(std::shared_ptr<TabulatedStore::Source> source) { source_ = std::move(source); }

  [[nodiscard]] const VerticalCategory& vertical() const { return vertical_; }
  [[nodiscard]] ObjId object(const std::string& name) const;
  [[nodiscard]] VArrowId arrow(const std::string& name) const;
  [[nodiscard]] ProarrowId proarrow(const std::string& name) const;
  [[nodiscard]] CellId cell(const std::string& name) const;
  [[nodiscard]] CellId identity_cell(ProarrowId p) const;

  // Validates the vertical category (totality, unit and associativity) and
  // the frames of all tabulated cells and table entries.
  [[nodiscard]] VirtualDoubleCategory build_tabulated();
  [[nodiscard]] VirtualDoubleCategory build_thin(std::function<bool(const Frame&)> exists,
                                                 std::function<BoundaryTest(const Path&)> prepare = {});

 private:
  void finish_vertical();
  VirtualDoubleCategory assemble();

  VerticalCategory vertical_;
  std::vector<std::tuple<VArrowId, VArrowId, VArrowId>> compositions_;
  std::vector<ProarrowInfo> proarrows_;
  std::unordered_map<std::string, ProarrowId> proarrow_index_;
  std::vector<Frame> cell_frames_;
  std::vector<std::string> cell_names_;
  std::unordered_map<std::string, CellId> cell_index_;
  std::vector<CellId> identity_cells_;
  std::vector<std::pair<PasteKey, CellId>> pastes_;
  std::shared_ptr<TabulatedStore::Source> source_;
  bool auto_identity_cells_ = true;

 public:
  // Materialized stores supply identity cells through their source.
  void disable_identity_cells() { auto_identity_cells_ = false; }
};

}  // namespace veq
