#pragma once
// Closed integer degree intervals [lo, hi]; empty when lo > hi.

#include <algorithm>

#include "opal/fp.hpp"

namespace opal {

struct DegInterval {
    i64 lo = 0, hi = -1;

    bool empty() const { return lo > hi; }
    i64 width() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(i64 d) const { return lo <= d && d <= hi; }
    DegInterval shifted(i64 t) const { return {lo + t, hi + t}; }

    // Minkowski sum; empty absorbs
    DegInterval plus(const DegInterval& o) const {
        if (empty() || o.empty()) return {};
        return {lo + o.lo, hi + o.hi};
    }
    DegInterval scaled(i64 c) const { return empty() ? DegInterval{} : DegInterval{lo * c, hi * c}; }

    bool intersects(const DegInterval& o) const {
        return !empty() && !o.empty() && std::max(lo, o.lo) <= std::min(hi, o.hi);
    }
    bool operator==(const DegInterval&) const = default;
};

}  // namespace opal
