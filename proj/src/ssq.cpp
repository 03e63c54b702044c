#include "opal/ssq.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::ssq {

namespace {

i64 ipow(i64 b, i64 e) {
    i64 r = 1;
    for (i64 j = 0; j < e; ++j) {
        if (r > (i64(1) << 55) / b) throw std::overflow_error("degree power overflows");
        r *= b;
    }
    return r;
}

bool odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

DegInterval hull_of(const DegInterval& a, const DegInterval& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace

i64 SpectralScenario::pk() const { return ipow(p, k); }
i64 SpectralScenario::pk1() const { return ipow(p, k + 1); }
i64 SpectralScenario::pk2() const { return ipow(p, k + 2); }

DegInterval SpectralScenario::N(int j) const {
    switch (j) {
        case 0: return {2 * i + 2 * pk(), m + 2 * pk()};
        case 1: return {ell + 2 * pk1(), m + 2 * pk1()};
        case 2: return {ell + 2 * pk2(), m + 2 * pk2()};
        default: throw std::invalid_argument("generator window index must be 0, 1 or 2");
    }
}

SpectralScenario make_scenario(int p, i64 ell, i64 m, i64 i, i64 k, i64 n) {
    if (!odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (ell < 0) throw std::invalid_argument("window bottom must be >= 0");
    if (ell > 2 * i) throw std::invalid_argument("the chosen class must lie in the window: ell <= 2i");
    if (ell > m) throw std::invalid_argument("window must be nonempty: ell <= m");
    if (i < 0 || k < 0 || n < 0) throw std::invalid_argument("i, k, n must be >= 0");
    SpectralScenario sc;
    sc.p = p;
    sc.ell = ell;
    sc.m = m;
    sc.i = i;
    sc.k = k;
    sc.n = n;
    sc.power_in_window = (2 * i <= m) && (2 * p * i <= m);
    sc.pk2();  // force the overflow guard early
    return sc;
}

i64 gap_assumption_rhs(const SpectralScenario& sc) {
    const i64 p = sc.p;
    return (p * p - 1) * sc.m + p * (sc.m - sc.ell) + (p * p - 2) * sc.n + 1;
}

bool gap_assumption_holds(const SpectralScenario& sc) {
    return 2 * sc.pk() > gap_assumption_rhs(sc);
}

DegInterval e1_column_interval(i64 u, i64 v, i64 w, const SpectralScenario& sc) {
    if (u < 0 || v < 0 || w < 0) throw std::invalid_argument("block exponents must be >= 0");
    const i64 c = u + v + w;
    if (c == 0) return {0, 0};
    const i64 p = sc.p;
    const i64 scale = 2 * (u + v * p + w * p * p) * sc.pk();
    const i64 lo = 2 * u * sc.i + (v + w) * sc.ell + scale;
    const i64 hi = c * sc.m + scale + (c - 1) * (sc.nprime() - 1);
    return {lo, hi};
}

i64 sharpened_lower_bound(i64 u, i64 v, i64 w, const SpectralScenario& sc) {
    return e1_column_interval(u, v, w, sc).lo + sc.p * (sc.nprime() - 1);
}

std::vector<std::array<i64, 3>> column_blocks(i64 column) {
    if (column < 0) throw std::invalid_argument("column must be >= 0");
    std::vector<std::array<i64, 3>> out;
    for (i64 u = 0; u <= column; ++u)
        for (i64 v = 0; v + u <= column; ++v) out.push_back({u, v, column - u - v});
    return out;
}

i64 connectivity_bound(i64 r, const SpectralScenario& sc) {
    return (r + 1) * (2 * sc.i + 2 * sc.pk()) - 1;
}

std::vector<DegGap> gap_check(std::vector<DegInterval> intervals) {
    std::erase_if(intervals, [](const DegInterval& d) { return d.empty(); });
    std::sort(intervals.begin(), intervals.end(),
              [](const DegInterval& a, const DegInterval& b) { return a.lo < b.lo; });
    std::vector<DegGap> gaps;
    if (intervals.empty()) return gaps;
    DegInterval run = intervals.front();
    for (size_t t = 1; t < intervals.size(); ++t) {
        const DegInterval& next = intervals[t];
        if (next.lo <= run.hi + 1) {
            run.hi = std::max(run.hi, next.hi);
            continue;
        }
        gaps.push_back({{run.hi + 1, next.lo - 1}, next.lo - run.hi - 1});
        run = next;
    }
    return gaps;
}

VWindows v_intervals(const SpectralScenario& sc) {
    if (sc.k < 1) throw std::invalid_argument("window regions need scale k >= 1");
    if (!gap_assumption_holds(sc))
        throw std::invalid_argument("window bound holds at these parameters; no gap structure");
    const i64 p = sc.p;
    const i64 np1 = sc.nprime() - 1;
    VWindows vw;
    vw.V0 = {2 * sc.i + 2 * sc.pk(), (p - 1) * sc.m + 2 * (p - 1) * sc.pk1() + (p - 2) * np1};
    vw.V1 = {2 * sc.i + (p - 1) * sc.ell + 2 * (p * p - p + 1) * sc.pk(),
             p * sc.m + 2 * (p * p - p + 1) * sc.pk() + (p - 1) * np1};
    vw.V2 = {sc.ell + 2 * sc.pk2(), p * sc.m + 2 * p * sc.pk2() + (p - 1) * np1};

    // exact hulls of the block unions behind the three displayed regions
    for (i64 u = 0; u <= p; ++u)
        for (i64 v = 0; u + v <= p; ++v) {
            if (u + v == 0) continue;
            const bool excluded = (u == 0 && v == p) || (u == 1 && v == p - 1);
            if (!excluded) vw.hull0 = hull_of(vw.hull0, e1_column_interval(u, v, 0, sc));
        }
    vw.hull1 = e1_column_interval(1, p - 1, 0, sc);
    vw.hull2 = e1_column_interval(0, p, 0, sc);
    for (i64 w = 1; w <= p; ++w)
        for (i64 u = 0; u + w <= p; ++u)
            for (i64 v = 0; u + v + w <= p; ++v)
                vw.hull2 = hull_of(vw.hull2, e1_column_interval(u, v, w, sc));
    auto inside = [](const DegInterval& hull, const DegInterval& disp) {
        return !hull.empty() && hull.lo >= disp.lo && hull.hi <= disp.hi;
    };
    vw.hulls_inside =
        inside(vw.hull0, vw.V0) && inside(vw.hull1, vw.V1) && inside(vw.hull2, vw.V2);

    for (i64 v = 0; v < p; ++v) vw.ladder.push_back(e1_column_interval(p - v, v, 0, sc));

    vw.gap_v0_v1 = vw.V1.lo - vw.V0.hi - 1;
    vw.gap_v1_v2 = vw.V2.lo - vw.V1.hi - 1;
    vw.dist_v0_v2 = vw.V2.lo - vw.V0.hi;
    vw.min_ladder_gap = vw.gap_v1_v2;  // ladder top N_0 N_1^{p-1} against V_2
    vw.min_ladder_two_apart = vw.V2.lo - vw.ladder[p - 2].hi;
    for (i64 v = 0; v + 1 < p; ++v)
        vw.min_ladder_gap =
            std::min(vw.min_ladder_gap, vw.ladder[v + 1].lo - vw.ladder[v].hi - 1);
    for (i64 v = 0; v + 2 < p; ++v)
        vw.min_ladder_two_apart =
            std::min(vw.min_ladder_two_apart, vw.ladder[v + 2].lo - vw.ladder[v].hi);

    vw.small_jump = 2 * (p - 1) * ipow(p, sc.k - 1);
    vw.big_jump = 2 * (p - 1) * sc.pk();
    vw.claims_hold = vw.hulls_inside && vw.gap_v0_v1 >= vw.small_jump &&
                     vw.gap_v1_v2 >= vw.small_jump && vw.dist_v0_v2 > vw.big_jump &&
                     vw.min_ladder_gap >= vw.small_jump &&
                     vw.min_ladder_two_apart > vw.big_jump;
    return vw;
}

int OpaqueUnit::value() const {
    throw std::logic_error("coefficient '" + tag + "' is an opaque invertible unit");
}

DTargetResult d_page_target(int p, i64 page, i64 s, int eps, i64 kx) {
    if (!odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (eps != 0 && eps != 1) throw std::invalid_argument("eps must be 0 or 1");
    if (s < 0 || (eps == 1 && s < 1))
        throw std::invalid_argument("operation index s(p-1)-eps must be >= 0");
    if ((kx + s) % 2 != 0)
        throw std::invalid_argument("representable index needs kx + s even");
    if (page < 1) throw std::invalid_argument("page must be >= 1");
    DTargetResult res;
    res.source_degree = p * kx + s * (p - 1) - eps;
    if (page != p - 1) return res;  // zero: below p-1 or past the representable families
    res.zero = false;
    res.bockstein = (eps == 0) ? 1 : 0;
    res.power = (kx + s) / 2;
    res.unit.tag = std::string(eps == 0 ? "u[" : "v[") + std::to_string(kx) + "," +
                   std::to_string(s) + "]";
    res.target_degree = kx + 2 * res.power * (p - 1) + res.bockstein;
    if (res.target_degree != res.source_degree + 1)
        throw std::logic_error("page p-1 target must raise total degree by exactly 1");
    return res;
}

namespace {

bool browder_product_over_leaves(const opcalc::MonoPtr& e) {
    using opcalc::NodeKind;
    switch (e->kind) {
        case NodeKind::Leaf: return true;
        case NodeKind::L:
        case NodeKind::Prod:
            for (const auto& kid : e->kids)
                if (!browder_product_over_leaves(kid)) return false;
            return true;
        case NodeKind::Q:
        case NodeKind::QU: return false;
    }
    return false;
}

}  // namespace

bool permanent_cycle_filter(const opcalc::MonoPtr& e, const SpectralScenario& sc,
                            const PermanenceContext& ctx) {
    if (!ctx.is_suspension) return false;
    if (browder_product_over_leaves(e)) return true;
    if (ctx.desuspension_index >= 0 && ctx.desuspension_index >= sc.nprime() - 1) {
        const opcalc::Ambient amb{sc.p, sc.nprime()};
        if (opcalc::weight(amb, *e) <= 2 * sc.p - 1) return true;
    }
    return false;
}

// --- attainable-degree sets -------------------------------------------------
//
// Degree sets are kept as boolean vectors over [0, target]; all generator
// degrees are nonnegative, so clipping at the target loses nothing for a
// membership query.  The sets are supersets of the truth (each window is
// treated as full), hence "not attainable" verdicts are sound; when the
// windows are single degrees the sets are exact.

namespace {

using Bits = std::vector<char>;

// dst |= (src + shift), clipped to dst.size()
void or_shifted(Bits& dst, const Bits& src, i64 shift) {
    if (shift < 0) throw std::logic_error("degree shifts are nonnegative");
    const i64 cap = static_cast<i64>(dst.size());
    const i64 limit = std::min<i64>(static_cast<i64>(src.size()), cap - shift);
    for (i64 d = 0; d < limit; ++d)
        if (src[d]) dst[d + shift] = 1;
}

// Minkowski sum clipped to [0, T]
Bits minkowski(const Bits& a, const Bits& b, i64 cap) {
    Bits out(cap + 1, 0);
    for (i64 d = 0; d <= cap; ++d)
        if (a[d]) or_shifted(out, b, d);
    return out;
}

Bits unite(const Bits& a, const Bits& b) {
    Bits out(a);
    for (size_t d = 0; d < out.size(); ++d) out[d] = out[d] || b[d];
    return out;
}

bool any_bit(const Bits& b) {
    return std::any_of(b.begin(), b.end(), [](char c) { return c != 0; });
}

// Feasible dual Dyer-Lashof decorations of a set of input degrees:
// j = s(p-1) - eps with 0 <= s <= cap_s, input degree + s even, j >= 0.
Bits decorate(const Bits& input, int p, i64 cap_s, i64 cap) {
    Bits out(cap + 1, 0);
    for (i64 d = 0; d < static_cast<i64>(input.size()); ++d) {
        if (!input[d]) continue;
        for (i64 s = 0; s <= cap_s; ++s) {
            if ((d + s) % 2 != 0) continue;
            for (int eps = 0; eps <= 1; ++eps) {
                const i64 j = s * (p - 1) - eps;
                if (j < 0) continue;
                const i64 deg = p * d + j;
                if (deg <= cap) out[deg] = 1;
            }
        }
    }
    return out;
}

struct ColumnSets {
    std::vector<Bits> all;     // products of anything allowed in the column
    std::vector<Bits> killer;  // ... containing a decoration on a Browder word
};

ColumnSets column_sets(i64 column, i64 target, const SpectralScenario& sc) {
    if (column < 0) throw std::invalid_argument("column must be >= 0");
    if (column > 64) throw std::invalid_argument("column out of range");
    if (target > 5'000'000) throw std::length_error("attainability window too large");
    const i64 cap = std::max<i64>(target, 0);
    const int p = sc.p;
    const i64 brk = sc.nprime() - 1;  // per-join Browder degree contribution
    const i64 cap_s = std::max<i64>(sc.nprime() - 1, 0);
    const i64 cc = column;

    Bits none(cap + 1, 0);
    Bits leaf(none);
    for (int j = 0; j < 3; ++j) {
        const DegInterval w = sc.N(j);
        for (i64 d = std::max<i64>(w.lo, 0); d <= std::min<i64>(w.hi, cap); ++d) leaf[d] = 1;
    }

    // products of c leaves
    std::vector<Bits> prod_leaves(cc + 1, none);
    prod_leaves[0] = none;
    if (cap >= 0) prod_leaves[0][0] = 1;
    for (i64 c = 1; c <= cc; ++c) prod_leaves[c] = minkowski(prod_leaves[c - 1], leaf, cap);

    // Browder words over c leaves (for use as decoration inputs)
    std::vector<Bits> lword(cc + 1, none);
    for (i64 c = 2; c <= cc; ++c) {
        lword[c] = none;
        or_shifted(lword[c], prod_leaves[c], (c - 1) * brk);
    }

    // single objects: a leaf, a decorated leaf (count p), a decorated
    // Browder word (count p*c1)
    std::vector<Bits> obj(cc + 1, none), objq(cc + 1, none);
    if (cc >= 1) obj[1] = leaf;
    for (i64 c1 = 1; p * c1 <= cc; ++c1) {
        const Bits dec = decorate(c1 == 1 ? leaf : lword[c1], p, cap_s, cap);
        obj[p * c1] = unite(obj[p * c1], dec);
        if (c1 >= 2) objq[p * c1] = unite(objq[p * c1], dec);
    }

    // Browder structures over t >= 2 objects: any bracket nesting over t
    // objects adds exactly (t-1)(nprime-1)
    std::vector<Bits> mix_prev = obj, mixq_prev = objq;  // t = 1
    std::vector<Bits> item = obj, itemq = objq;
    for (i64 t = 2; t <= cc; ++t) {
        std::vector<Bits> mix(cc + 1, none), mixq(cc + 1, none);
        for (i64 c = t; c <= cc; ++c)
            for (i64 c1 = 1; c1 + t - 1 <= c; ++c1) {
                mix[c] = unite(mix[c], minkowski(obj[c1], mix_prev[c - c1], cap));
                mixq[c] = unite(mixq[c], minkowski(obj[c1], mixq_prev[c - c1], cap));
                mixq[c] = unite(mixq[c], minkowski(objq[c1], mix_prev[c - c1], cap));
            }
        for (i64 c = t; c <= cc; ++c) {
            Bits shifted(none), shiftedq(none);
            or_shifted(shifted, mix[c], (t - 1) * brk);
            or_shifted(shiftedq, mixq[c], (t - 1) * brk);
            item[c] = unite(item[c], shifted);
            itemq[c] = unite(itemq[c], shiftedq);
        }
        mix_prev = std::move(mix);
        mixq_prev = std::move(mixq);
    }

    // products of items
    ColumnSets sets;
    sets.all.assign(cc + 1, none);
    sets.killer.assign(cc + 1, none);
    sets.all[0] = prod_leaves[0];
    for (i64 c = 1; c <= cc; ++c)
        for (i64 c1 = 1; c1 <= c; ++c1) {
            sets.all[c] = unite(sets.all[c], minkowski(item[c1], sets.all[c - c1], cap));
            sets.killer[c] =
                unite(sets.killer[c], minkowski(itemq[c1], sets.all[c - c1], cap));
            sets.killer[c] =
                unite(sets.killer[c], minkowski(item[c1], sets.killer[c - c1], cap));
        }
    return sets;
}

}  // namespace

bool column_degree_attainable(i64 column, i64 target, const SpectralScenario& sc) {
    if (target < 0) return false;
    const ColumnSets sets = column_sets(column, target, sc);
    return sets.all[column][target] != 0;
}

KillerQuery killer_degree_attainable(i64 column, i64 target, const SpectralScenario& sc) {
    KillerQuery q;
    q.column = column;
    q.target = target;
    if (target < 0) return q;
    const ColumnSets sets = column_sets(column, target, sc);
    q.attainable = sets.killer[column][target] != 0;
    if (q.attainable) {
        // coarse witness: one split into a decorated part and a remainder
        for (i64 c1 = 1; c1 <= column && q.witness.empty(); ++c1) {
            if (!any_bit(sets.killer[c1])) continue;
            for (i64 d = 0; d <= target; ++d) {
                if (sets.killer[c1][d] && sets.all[column - c1][target - d]) {
                    q.witness = "decorated part: count " + std::to_string(c1) + ", degree " +
                                std::to_string(d) + "; remainder degree " +
                                std::to_string(target - d);
                    break;
                }
            }
        }
        if (q.witness.empty()) q.witness = "attainable";
    }
    return q;
}

}  // namespace opal::ssq
