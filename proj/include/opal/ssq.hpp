#pragma once
// Degree bookkeeping for the loop-space spectral sequence whose E_1 columns
// are cohomologies of extended powers.  A scenario fixes a module window
// [ell, m], an even class in degree 2i, a scale p^k and a desuspension shift
// n; the generators of column -(u+v+w) then come from three shifted windows
//
//   N_0 = [2i + 2p^k,     m + 2p^k]      (bottom cut by a skeleton collapse)
//   N_1 = [ell + 2p^{k+1}, m + 2p^{k+1}]
//   N_2 = [ell + 2p^{k+2}, m + 2p^{k+2}]
//
// combined by products, Browder words and dual Dyer-Lashof operations.
// Everything in this header is exact integer arithmetic on degrees; no
// topology is computed.  The certificate engine (realize.hpp) consumes these
// intervals, gaps and attainability queries to verify vanishing arguments.

#include <array>
#include <string>
#include <vector>

#include "opal/fp.hpp"
#include "opal/interval.hpp"
#include "opal/opcalc.hpp"

namespace opal::ssq {

struct SpectralScenario {
    int p = 3;    // odd prime
    i64 ell = 0;  // bottom of the module window
    i64 m = 0;    // top of the module window
    i64 i = 0;    // half-degree of the chosen even class
    i64 k = 0;    // operations are indexed by p^k
    i64 n = 0;    // desuspension shift
    // True when the window can honestly contain the top power of the chosen
    // class, i.e. 2pi <= m.  Single-class test windows violate this; every
    // estimate that would silently use it must check the flag or re-derive
    // the inequality from the actual numbers.
    bool power_in_window = false;

    i64 nprime() const { return n + 2 * i + 1; }
    i64 pk() const;   // p^k
    i64 pk1() const;  // p^{k+1}
    i64 pk2() const;  // p^{k+2}

    DegInterval N(int j) const;  // generator window, j in {0, 1, 2}
};

// Validates inputs: p an odd prime, 0 <= ell <= 2i, ell <= m, k >= 0, n >= 0.
// Throws std::invalid_argument on violation.  2pi <= m is recorded in
// power_in_window, not enforced.
SpectralScenario make_scenario(int p, i64 ell, i64 m, i64 i, i64 k, i64 n);

// The strict inequality 2p^k > (p^2-1)m + p(m-ell) + (p^2-2)n + 1 whose
// refutation is the content of the nonrealization certificates.
i64 gap_assumption_rhs(const SpectralScenario& sc);
bool gap_assumption_holds(const SpectralScenario& sc);

// Degree window of the block N_0^u N_1^v N_2^w inside column -(u+v+w):
//   lower = u N_0.lo + v N_1.lo + w N_2.lo
//         = 2ui + (v+w)ell + 2(u + vp + wp^2)p^k
//   upper = (u+v+w)m + 2(u + vp + wp^2)p^k + (u+v+w-1)(nprime-1)
// (the last summand is the maximal Browder contribution: any bracket
// structure over c factors adds exactly (c - #top-level items)(nprime-1)).
// (0,0,0) is the unit block [0,0].
DegInterval e1_column_interval(i64 u, i64 v, i64 w, const SpectralScenario& sc);

// Lower bound for elements of the block that contain a dual Dyer-Lashof
// operation applied to a Browder word: block lower bound plus p(nprime-1).
// (A Browder word on s >= 2 inputs adds (s-1)(nprime-1) before the operation
// multiplies degrees by p, so the surcharge is at least p(nprime-1).)
i64 sharpened_lower_bound(i64 u, i64 v, i64 w, const SpectralScenario& sc);

// All blocks (u,v,w) with u+v+w == column.
std::vector<std::array<i64, 3>> column_blocks(i64 column);

// Connectivity of the column -(r+1) extended power: its cohomology vanishes
// in every degree <= (r+1)(2i + 2p^k) - 1.
i64 connectivity_bound(i64 r, const SpectralScenario& sc);

// Maximal integer gaps in the complement of a union of closed intervals
// (between min lo and max hi).  [0,1],[5,6] -> gap [2,4] of width 3.
// Touching or overlapping intervals merge; empty intervals are ignored.
struct DegGap {
    DegInterval span;
    i64 width = 0;
    bool operator==(const DegGap&) const = default;
};
std::vector<DegGap> gap_check(std::vector<DegInterval> intervals);

// The three degree regions of the column filtration argument, as displayed
// closed forms, together with the exact hulls of the defining block unions
// and the ladder of blocks N_0^{p-v} N_1^v.  Preconditions: k >= 1 and the
// gap assumption holds (otherwise no gap structure exists and the call
// throws std::invalid_argument).
struct VWindows {
    DegInterval V0, V1, V2;        // displayed closed forms
    DegInterval hull0, hull1, hull2;  // exact unions of the defining blocks
    bool hulls_inside = false;     // hulls contained in the displayed forms
    std::vector<DegInterval> ladder;  // N_0^{p-v} N_1^v for v = 0..p-1
    // gap widths (integers strictly between) and jump distances (lo - hi)
    i64 gap_v0_v1 = 0, gap_v1_v2 = 0;       // claims: >= 2(p-1)p^{k-1}
    i64 dist_v0_v2 = 0;                      // claim:  >  2(p-1)p^k
    i64 min_ladder_gap = 0;                  // claim:  >= 2(p-1)p^{k-1}
    i64 min_ladder_two_apart = 0;            // claim:  >  2(p-1)p^k
    i64 small_jump = 0;  // 2(p-1)p^{k-1}: max raise of an indexed power below the scale
    i64 big_jump = 0;    // 2(p-1)p^k:     raise of the scale power itself
    bool claims_hold = false;
};
VWindows v_intervals(const SpectralScenario& sc);

// First differentials on a dual Dyer-Lashof class Q^{s(p-1)-eps}(x) with x a
// column -1 class of H-degree kx: pages below p-1 give zero, page p-1 gives
// an invertible multiple of beta P^{(kx+s)/2}(x) (eps = 0) or of
// P^{(kx+s)/2}(x) (eps = 1), and higher pages give zero again (these are the
// only representable index families).  The coefficient is known invertible
// but not pinned; it is carried as an opaque tag and throws if read as a
// number.  Requires kx + s even (throws: representability couples the index
// to the parity of the internal degree); eps = 1 additionally needs s >= 1.
struct OpaqueUnit {
    std::string tag;
    int value() const;  // always throws std::logic_error
};

struct DTargetResult {
    bool zero = true;
    OpaqueUnit unit;        // e.g. "u[4,2]" / "v[4,2]"
    int bockstein = 0;      // 1: target is beta P^t(x)
    i64 power = 0;          // t = (kx+s)/2
    i64 source_degree = 0;  // p*kx + s(p-1) - eps
    i64 target_degree = 0;  // always source_degree + 1 when nonzero
};
DTargetResult d_page_target(int p, i64 page, i64 s, int eps, i64 kx);

// Conservative permanence test for an element written as a formal operation
// tree over column -1 leaves.
//  - Over a suspension, products and Browder words of column -1 leaves are
//    cycles for every differential, hence permanent.
//  - When every class of the underlying complex desuspends at least
//    nprime-1 times, whole columns up to 2p-1 are permanent.
//  - Anything else -- in particular any dual Dyer-Lashof node without the
//    desuspension hypothesis -- reports false.
struct PermanenceContext {
    bool is_suspension = false;
    i64 desuspension_index = -1;  // -1: unknown
};
bool permanent_cycle_filter(const opcalc::MonoPtr& e, const SpectralScenario& sc,
                            const PermanenceContext& ctx);

// Attainable-degree queries for column elements, refined by parity and
// Dyer-Lashof index feasibility.  Degrees are built from: leaves in the three
// windows; Browder structures over t objects (adding (t-1)(nprime-1));
// dual Dyer-Lashof decorations Q^j on a leaf or on a Browder word over
// leaves, with j = s(p-1) - eps, 0 <= s <= nprime-1 and input degree + s
// even (iterated decorations do not occur in columns below p^2).  Each window
// is treated as fully populated, so the computed sets are supersets of the
// truth: "not attainable" verdicts are sound, and for single-degree windows
// the sets are exact.
//
// column_degree_attainable: can ANY element of the column have this degree?
// killer_degree_attainable:  can an element containing a Dyer-Lashof
// decoration on a Browder word have this degree?  (Products of leaves and
// Browder words are permanent cycles, and decorations on single leaves are
// settled by the page p-1 computation, so these are the only candidates left
// for supporting a differential in the vanishing arguments.)
struct KillerQuery {
    i64 column = 0;
    i64 target = 0;
    bool attainable = false;
    std::string witness;  // coarse shape description when attainable
};
bool column_degree_attainable(i64 column, i64 target, const SpectralScenario& sc);
KillerQuery killer_degree_attainable(i64 column, i64 target, const SpectralScenario& sc);

}  // namespace opal::ssq
