#include "veq/enumerate.hpp"

namespace veq {
namespace {

bool extend(const VirtualDoubleCategory& vdc, Path& path, ObjId at, ObjId to, int min_len, int max_len,
            const std::function<bool(const Path&)>& visit) {
  const int len = static_cast<int>(path.size());
  if (len >= min_len && at == to && len > 0) {
    if (!visit(path)) return false;
  }
  if (len == max_len) return true;
  for (std::size_t b = 0; b < vdc.object_count(); ++b) {
    for (auto p : vdc.proarrows_between(at, ObjId{b})) {
      path.arrows.push_back(p);
      bool go_on = extend(vdc, path, ObjId{b}, to, min_len, max_len, visit);
      path.arrows.pop_back();
      if (!go_on) return false;
    }
  }
  return true;
}

}  // namespace

bool for_each_path(const VirtualDoubleCategory& vdc, ObjId from, ObjId to, int min_len, int max_len,
                   const std::function<bool(const Path&)>& visit) {
  if (from == to && min_len <= 0) {
    if (!visit(Path::empty(from))) return false;
  }
  // Iterative deepening keeps the order shortest-first.
  for (int len = std::max(1, min_len); len <= max_len; ++len) {
    Path path;
    if (!extend(vdc, path, from, to, len, len, visit)) return false;
  }
  return true;
}

bool for_each_path_from(const VirtualDoubleCategory& vdc, ObjId from, int min_len, int max_len,
                        const std::function<bool(const Path&)>& visit) {
  for (int len = min_len; len <= max_len; ++len) {
    for (std::size_t b = 0; b < vdc.object_count(); ++b) {
      if (!for_each_path(vdc, from, ObjId{b}, len, len, visit)) return false;
    }
  }
  return true;
}

bool for_each_path_into(const VirtualDoubleCategory& vdc, ObjId to, int min_len, int max_len,
                        const std::function<bool(const Path&)>& visit) {
  for (int len = min_len; len <= max_len; ++len) {
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      if (!for_each_path(vdc, ObjId{a}, to, len, len, visit)) return false;
    }
  }
  return true;
}

bool for_each_frame_on(const VirtualDoubleCategory& vdc, const Path& domain,
                       const std::function<bool(const Frame&)>& visit) {
  const auto& v = vdc.vertical();
  Frame f{domain, {}, {}, {}};
  for (auto l : v.arrows_from(vdc.path_src(domain))) {
    for (auto r : v.arrows_from(vdc.path_tgt(domain))) {
      for (auto k : vdc.proarrows_between(v.cod(l), v.cod(r))) {
        f.left = l;
        f.right = r;
        f.codomain = k;
        if (!visit(f)) return false;
      }
    }
  }
  return true;
}

bool for_each_frame(const VirtualDoubleCategory& vdc, int max_len, const std::function<bool(const Frame&)>& visit) {
  for (int len = 0; len <= max_len; ++len) {
    for (std::size_t a = 0; a < vdc.object_count(); ++a) {
      for (std::size_t b = 0; b < vdc.object_count(); ++b) {
        bool go_on = for_each_path(vdc, ObjId{a}, ObjId{b}, len, len,
                                   [&](const Path& p) { return for_each_frame_on(vdc, p, visit); });
        if (!go_on) return false;
      }
    }
  }
  return true;
}

std::vector<Cell> enumerate_cells(const VirtualDoubleCategory& vdc, int max_len) {
  std::vector<Cell> out;
  for_each_frame(vdc, max_len, [&](const Frame& f) {
    for (auto& c : vdc.frame_cells(f)) out.push_back(std::move(c));
    return true;
  });
  return out;
}

}  // namespace veq
