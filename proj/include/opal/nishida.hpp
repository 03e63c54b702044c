#pragma once
// The two transcriptions of the Nishida relations for the extended-power
// calculus: the cohomological expansion of P^s Q^r and the homological
// expansion of P_s Q_r, together with the machinery that verifies their
// compatibility through the Kronecker pairing, generator shape by
// generator shape.

#include <functional>
#include <string>
#include <vector>

#include "opal/fp.hpp"
#include "opal/opcalc.hpp"

namespace opal::nishida {

using opcalc::Ambient;
using opcalc::Lin;

// Coefficient bundle for fixed (r, s, d = |x|).
//
// Cohomology:  P^s Q^r(x) =
//     sum_{i <= s/p}      a(i) c(i) Q^{r+2(s-pi)(p-1)}   P^i(x)
//   + [r even] sum_{i <= (s-1)/p} b(i) d(i) Q^{r+2(s-pi)(p-1)-p} P^i beta(x)
//   + [r = 0]  sum_{n in N} (1/e_n) star_{i=1}^p P^{n_i}(x)
// with
//   a(i) = C(floor(r/2) + (d-2i)(p-1)/2, s-pi)
//   b(i) = (-1)^{((p-1)/2)(d+1)+1} ((p-1)/2)! C(floor(r/2)+(d-2i)(p-1)/2-1, s-pi-1)
//   c(i) = gamma(d, r) / gamma(d+2(p-1)i,   r+2(s-pi)(p-1))
//   d(i) = gamma(d, r) / gamma(d+1+2(p-1)i, r-p+2(s-pi)(p-1))
//   N    = ascending non-constant p-tuples summing to s; e_n = |isotropy| mod p.
//
// Homology:  P_s Q_r(y) =
//     sum_{i <= s/p}      ha(i) Q_{r+2(pi-s)(p-1)}   P_i(y)
//   + [r odd] sum_{i <= (s-1)/p} hb(i) Q_{r+p+2(pi-s)(p-1)} beta P_i(y)
// with
//   ha(i) = C(s-ps   + floor(r/2)     + (p-1)d/2, s-pi)
//   hb(i) = (-1)^{((p-1)/2)d+1} ((p-1)/2)! C(s-ps-1+floor((r+1)/2)+(p-1)d/2, s-pi-1)
// (binomials with possibly negative numerator, taken in the signed sense).
struct NishidaCoefficients {
    i64 r = 0, s = 0, d = 0;
    std::vector<int> a, c;   // index range 0 .. floor(s/p)
    std::vector<int> b, dd;  // index range 0 .. floor((s-1)/p)
    bool delta = false;      // r even: Bockstein sum present in cohomology
    bool xi = false;         // r == 0: star-product sum present
    std::vector<std::vector<i64>> tuples;  // the set N, ascending order
    std::vector<int> e;                    // isotropy orders mod p, all units
    std::vector<int> e_inv;
    std::vector<int> ha, hb;
    bool hdelta = false;  // r odd: Bockstein sum present in homology
    // the stated hypothesis window 0 < r < (p-1)(n-1); r = 0 falls outside it
    // but is accepted by the expansions, with this flag left false
    bool hypothesis_window = false;
};

NishidaCoefficients nishida_coeffs(const Ambient& amb, const CoeffTables& tables, i64 r,
                                   i64 s, i64 d);

// Optional module action: value of P^i (eps = 0) or P^i beta (eps = 1) on
// the class being expanded, as a combination of plain classes.  Used to
// evaluate the expansion inside an unstable module, where most terms die.
using LeafAction = std::function<Lin(i64 i, int eps)>;

// The three-sum cohomological right-hand side for P^s Q^r(x).  Terms whose
// operation index is infeasible on its argument's degree are dropped, which
// at a finite ambient dimension is the main source of collapse.  An
// infeasible (r, |x|) start yields the zero combination outright.
Lin nishida_expand_coh(const Ambient& amb, const CoeffTables& tables, i64 s, i64 r,
                       const opcalc::FormalClass& x, const LeafAction* act = nullptr);

// The two-sum homological right-hand side for P_s Q_r(y); operation indices
// that drop below zero (or beyond the top operation at finite ambient)
// vanish.
Lin nishida_expand_hom(const Ambient& amb, const CoeffTables& tables, i64 s, i64 r,
                       const opcalc::FormalClass& y);

// Mechanized compatibility of the two expansions through the pairing.  For
// the class x of degree d, pairs P^s Q^r(x) against
//   - every degree-compatible dual generator Q_j(y), comparing the pairing
//     of the cohomological expansion with the pairing of Q^r(x) against the
//     homological expansion of P_s Q_j(y);
//   - Browder brackets (all pairings vanish on both sides);
//   - p-fold Pontryagin products against the Cartan expansion of P_s, the
//     case where the star-product sum and its isotropy bookkeeping matter;
//   - a 2-fold product as a degenerate-arity control.
// Symbolic equality of pairing polynomials is required, then re-checked
// under exhaustive scalar assignments to the leaf pairings (all values in
// {0,..,p-1} when few symbols occur, a fixed deterministic sample
// otherwise).
struct NishidaVerifyReport {
    bool ok = true;
    std::string failing_shape;  // e.g. "Q_j", "L", "product"; empty when ok
    i64 failing_index = 0;      // the index j or tuple position involved
    int shapes_checked = 0;
    long assignments_checked = 0;
    bool feasible = true;  // false: (r, d) infeasible, both sides trivially zero
};

NishidaVerifyReport verify_nishida_by_pairing(const Ambient& amb, const CoeffTables& tables,
                                              i64 s, i64 r, i64 d);

}  // namespace opal::nishida
