#pragma once
// The concrete modules acting in the nonrealization arguments: the rank-one
// cohomology F_p[t] ⊗ Λ(s) on a finite degree window, the submodules
// generated by t^{p^k}, their two-parameter quotients, and tensor products
// M ⊗ Φ(k, k+2) with their three degree blocks.

#include <array>

#include "opal/interval.hpp"
#include "opal/unstable.hpp"

namespace opal::phi {

using unstable::ApplyResult;
using unstable::GradedFpModule;

// F_p[t] ⊗ Λ(s) with |t| = 2, |s| = 1, truncated at degree cap (an incomplete
// module: targets beyond the cap are out of range, not zero).
// Basis names "t^n" and "t^n s"; degree-0 unit named "1", degree-1 class "s".
GradedFpModule make_bzp_cohomology(int p, i64 cap);

// index of t^n s^eps in the truncation, or -1 when beyond the cap
i64 bzp_index(const GradedFpModule& bzp, i64 n, int eps);

// Single operation beta (eps_op = 1, i ignored) or P^i on the basis element
// t^n s^eps, straight from the closed-form action rules.
ApplyResult bzp_action(const GradedFpModule& bzp, int eps_op, i64 i, i64 n, int eps);

// The quotient with basis {t^{p^j} : k <= j <= l}: P^{p^j} carries t^{p^j} to
// t^{p^{j+1}} for j < l, everything else acts by zero.  A complete module.
GradedFpModule make_phi_range(int p, i64 k, i64 l);

// Truncation of the full submodule generated by t^{p^k}: basis t^{p^j} with
// 2 p^j <= cap, incomplete (the top power map leaves the window).
GradedFpModule make_phi(int p, i64 k, i64 cap);

struct TensorPhiResult {
    GradedFpModule module;  // M ⊗ Phi(k, k+2)
    i64 k = 0;
    // degree blocks [M.lo + 2p^{k+j}, M.hi + 2p^{k+j}], j = 0, 1, 2
    std::array<DegInterval, 3> blocks;
};

TensorPhiResult tensor_with_phi(const GradedFpModule& m, i64 k);

}  // namespace opal::phi
