#pragma once

#include <cstddef>
#include <vector>

#include "veq/ids.hpp"

namespace veq {

// A composable list of proarrows. The empty path carries an explicit anchor
// object; non-empty paths keep the anchor invalid so that equality is purely
// structural.
struct Path {
  std::vector<ProarrowId> arrows;
  ObjId anchor;

  static Path empty(ObjId at) { return Path{{}, at}; }
  static Path of(std::vector<ProarrowId> ps) { return Path{std::move(ps), ObjId{}}; }

  [[nodiscard]] bool is_empty() const { return arrows.empty(); }
  [[nodiscard]] std::size_t size() const { return arrows.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

// Concatenates two paths; an empty side contributes nothing.
inline Path concat(const Path& a, const Path& b) {
  if (a.is_empty()) return b.is_empty() ? a : b;
  if (b.is_empty()) return a;
  Path out = a;
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

struct Frame {
  Path domain;
  VArrowId left;
  VArrowId right;
  ProarrowId codomain;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Tabulated cells carry a valid id; thin cells are identified by their frame
// alone and keep the id invalid. Equality of (id, frame) therefore realises
// both conventions.
struct Cell {
  CellId id;
  Frame frame;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept {
    std::size_t h = std::hash<ObjId>{}(p.anchor);
    for (auto a : p.arrows) h = hash_combine(h, std::hash<ProarrowId>{}(a));
    return h;
  }
};

struct FrameHash {
  std::size_t operator()(const Frame& f) const noexcept {
    std::size_t h = PathHash{}(f.domain);
    h = hash_combine(h, std::hash<VArrowId>{}(f.left));
    h = hash_combine(h, std::hash<VArrowId>{}(f.right));
    return hash_combine(h, std::hash<ProarrowId>{}(f.codomain));
  }
};

}  // namespace veq
