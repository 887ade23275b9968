#pragma once

#include <functional>
#include <vector>

#include "veq/vdc.hpp"

namespace veq {

// Visits every composable path from `from` to `to` whose length lies in
// [min_len, max_len]. The empty path is visited when from == to and
// min_len == 0. Returning false from `visit` stops the walk; the function
// then returns false as well.
bool for_each_path(const VirtualDoubleCategory& vdc, ObjId from, ObjId to, int min_len, int max_len,
                   const std::function<bool(const Path&)>& visit);

// Paths out of `from` (any target), shortest first.
bool for_each_path_from(const VirtualDoubleCategory& vdc, ObjId from, int min_len, int max_len,
                        const std::function<bool(const Path&)>& visit);

// Paths into `to` (any source), shortest first.
bool for_each_path_into(const VirtualDoubleCategory& vdc, ObjId to, int min_len, int max_len,
                        const std::function<bool(const Path&)>& visit);

// Every frame whose domain has length <= max_len, in deterministic order.
bool for_each_frame(const VirtualDoubleCategory& vdc, int max_len, const std::function<bool(const Frame&)>& visit);

// Frames with a fixed domain, enumerating verticals and codomain.
bool for_each_frame_on(const VirtualDoubleCategory& vdc, const Path& domain,
                       const std::function<bool(const Frame&)>& visit);

// All cells whose domain has length <= max_len.
std::vector<Cell> enumerate_cells(const VirtualDoubleCategory& vdc, int max_len);

}  // namespace veq
