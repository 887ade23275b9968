#include "veq/fixtures.hpp"

#include <map>

namespace veq {
namespace {

// A pasting tree: either an identity leaf (gen < 0) or a generator applied to
// one subtree per domain entry.
struct Tree {
  int gen = -1;
  ProarrowId leaf;
  std::vector<CellId> children;
};

struct FreeState {
  std::vector<Tree> trees;  // indexed by CellId
  std::map<std::pair<int, std::vector<CellId>>, CellId> by_shape;
  std::vector<CellId> identity;  // per proarrow
};

Frame resolve_frame(const VdcBuilder& b, const Presentation::Generator& g) {
  Frame f;
  if (g.domain.empty()) {
    f.domain = Path::empty(b.object(g.anchor));
  } else {
    std::vector<ProarrowId> ps;
    for (const auto& n : g.domain) ps.push_back(b.proarrow(n));
    f.domain = Path::of(std::move(ps));
  }
  f.left = b.arrow(g.left);
  f.right = b.arrow(g.right);
  f.codomain = b.proarrow(g.codomain);
  return f;
}

}  // namespace

VirtualDoubleCategory free_vdc(const Presentation& p, FreeOptions options) {
  VdcBuilder b;
  for (const auto& o : p.objects) b.add_object(o);
  for (const auto& a : p.arrows) b.add_arrow(a.name, b.object(a.dom), b.object(a.cod));
  for (const auto& c : p.composites) b.set_compose(b.arrow(c.g), b.arrow(c.f), b.arrow(c.h));

  auto state = std::make_shared<FreeState>();
  std::vector<Frame> frames;  // per tree
  for (const auto& pr : p.proarrows) {
    auto id = b.add_proarrow(pr.name, b.object(pr.src), b.object(pr.tgt));
    CellId cid = b.identity_cell(id);
    if (state->trees.size() <= cid.index()) state->trees.resize(cid.index() + 1);
    state->trees[cid.index()] = Tree{-1, id, {}};
    state->identity.push_back(cid);
    frames.resize(state->trees.size());
    frames[cid.index()] = Frame{Path::of({id}), b.vertical().identity(b.object(pr.src)),
                                b.vertical().identity(b.object(pr.tgt)), id};
  }

  std::vector<Frame> gen_frames;
  for (const auto& g : p.generators) gen_frames.push_back(resolve_frame(b, g));

  // Frames of candidate composites are computed without a finished category,
  // so compose verticals through a scratch copy.
  VdcBuilder scratch = b;
  VirtualDoubleCategory probe = scratch.build_tabulated();

  std::vector<std::string> names;
  for (const auto& pr : p.proarrows) names.push_back("id_" + pr.name);
  auto intern = [&](int gen, std::vector<CellId> children, const Frame& frame) -> bool {
    auto key = std::make_pair(gen, children);
    if (state->by_shape.contains(key)) return false;
    if (state->trees.size() >= options.max_cells) {
      throw Error(ErrorKind::ClosureBudgetExceeded,
                  "free closure exceeds " + std::to_string(options.max_cells) + " cells");
    }
    std::string name = p.generators[static_cast<std::size_t>(gen)].name;
    bool all_leaves = true;
    for (auto c : children) all_leaves = all_leaves && state->trees[c.index()].gen < 0;
    if (!all_leaves) {
      name += "(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        const auto& t = state->trees[children[i].index()];
        name += (i ? " " : "") + (t.gen < 0 ? "id_" + probe.proarrow(t.leaf).name : std::string("#") + std::to_string(children[i].value));
      }
      name += ")";
    }
    CellId id = b.add_cell(name, frame);
    if (state->trees.size() <= id.index()) state->trees.resize(id.index() + 1);
    frames.resize(state->trees.size());
    state->trees[id.index()] = Tree{gen, {}, children};
    frames[id.index()] = frame;
    state->by_shape.emplace(std::move(key), id);
    return true;
  };

  bool changed = true;
  int round = 0;
  while (changed) {
    changed = false;
    if (round++ > options.max_depth) {
      throw Error(ErrorKind::ClosureBudgetExceeded,
                  "free closure does not stabilise within depth " + std::to_string(options.max_depth));
    }
    const std::size_t known = state->trees.size();
    for (std::size_t gi = 0; gi < gen_frames.size(); ++gi) {
      const Frame& gf = gen_frames[gi];
      const auto& dom = gf.domain.arrows;
      std::vector<CellId> pick;
      std::vector<Frame> pick_frames;
      // Depth-first choice of one known tree per domain entry.
      auto rec = [&](auto&& self, std::size_t slot) -> void {
        if (slot == dom.size()) {
          Frame result = dom.empty() ? gf : probe.pasted_frame(gf, pick_frames);
          if (intern(static_cast<int>(gi), pick, result)) changed = true;
          return;
        }
        for (std::size_t t = 0; t < known; ++t) {
          const Frame& tf = frames[t];
          if (tf.codomain != dom[slot]) continue;
          if (slot > 0 && pick_frames.back().right != tf.left) continue;
          pick.push_back(CellId{t});
          pick_frames.push_back(tf);
          self(self, slot + 1);
          pick.pop_back();
          pick_frames.pop_back();
        }
      };
      rec(rec, 0);
    }
  }

  // Pasting substitutes the inner trees into the leaves of the outer tree.
  auto source = std::make_shared<TabulatedStore::Source>();
  source->resolve_paste = [state](CellId outer, std::span<const CellId> inners) -> std::optional<CellId> {
    std::size_t next = 0;
    bool missing = false;
    auto subst = [&](auto&& self, CellId node) -> CellId {
      const Tree& t = state->trees[node.index()];
      if (t.gen < 0) return next < inners.size() ? inners[next++] : node;
      std::vector<CellId> kids;
      for (auto c : t.children) kids.push_back(self(self, c));
      auto it = state->by_shape.find({t.gen, kids});
      if (it == state->by_shape.end()) {
        missing = true;
        return node;
      }
      return it->second;
    };
    CellId out = subst(subst, outer);
    if (missing || next != inners.size()) return std::nullopt;
    return out;
  };
  b.set_source(source);
  return b.build_tabulated();
}

VirtualDoubleCategory make_f1() {
  Presentation p;
  p.objects = {"A"};
  p.proarrows = {{"J", "A", "A"}};
  return free_vdc(p);
}

VirtualDoubleCategory make_terminal(int max_arity) {
  VdcBuilder b;
  ObjId a = b.add_object("A");
  ProarrowId pr = b.add_proarrow("P", a, a);
  VArrowId id = b.vertical().identity(a);
  std::vector<CellId> cells(static_cast<std::size_t>(max_arity) + 1);
  for (int n = 0; n <= max_arity; ++n) {
    if (n == 1) {
      cells[1] = b.identity_cell(pr);
      continue;
    }
    Frame f{n == 0 ? Path::empty(a) : Path::of(std::vector<ProarrowId>(static_cast<std::size_t>(n), pr)), id, id, pr};
    cells[static_cast<std::size_t>(n)] = b.add_cell("c" + std::to_string(n), f);
  }
  // Every arrangement c_k(c_{n_1}, ..., c_{n_k}) with sum n_i <= max_arity.
  for (int k = 2; k <= max_arity; ++k) {
    std::vector<int> parts(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int slot, int used) -> void {
      if (slot == k) {
        std::vector<CellId> inners;
        for (int n : parts) inners.push_back(cells[static_cast<std::size_t>(n)]);
        b.set_paste(cells[static_cast<std::size_t>(k)], inners, cells[static_cast<std::size_t>(used)]);
        return;
      }
      for (int n = 0; used + n <= max_arity; ++n) {
        parts[static_cast<std::size_t>(slot)] = n;
        self(self, slot + 1, used + n);
      }
    };
    rec(rec, 0, 0);
  }
  return b.build_tabulated();
}

VirtualDoubleCategory make_cyclic(int order, bool corrupt) {
  VdcBuilder b;
  ObjId a = b.add_object("A");
  ProarrowId j = b.add_proarrow("J", a, a);
  VArrowId id = b.vertical().identity(a);
  std::vector<CellId> elems{b.identity_cell(j)};
  for (int k = 1; k < order; ++k) {
    elems.push_back(b.add_cell("a" + std::to_string(k), Frame{Path::of({j}), id, id, j}));
  }
  for (int x = 1; x < order; ++x) {
    for (int y = 1; y < order; ++y) {
      int z = (x + y) % order;
      if (corrupt && x == 1 && y == 1) z = 1;
      b.set_paste(elems[static_cast<std::size_t>(x)], {elems[static_cast<std::size_t>(y)]}, elems[static_cast<std::size_t>(z)]);
    }
  }
  return b.build_tabulated();
}

}  // namespace veq
