#pragma once
// Certificates for the nonrealization bounds.  Each entry point either
// confirms that a degree bound holds (nothing to prove) or replays the
// corresponding contradiction on a concrete module fixture, recording one
// step per verified claim: window placements, Cartan/Lucas survivors,
// instability cutoffs, gap crossings, column attainability, and the final
// assembly.  A certificate is valid iff every step passes; steps only ever
// build on steps recorded before them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opal/ssq.hpp"
#include "opal/unstable.hpp"

namespace opal::realize {

// One verified claim.  The machine-checkable core is `lhs <relation> rhs`
// with relation in {"<=", "<", ">=", ">", "==", "!="}; `margin` is the slack
// (negative when the step fails).  Conjunction steps count sub-checks:
// lhs = passed, rhs = total, relation "==".  `nums` and `notes` carry the
// values the claim was evaluated on; `uses` names earlier steps this one
// builds on.
struct CertStep {
    std::string name;
    std::string anchor;    // the mechanism the step exercises
    std::string check;     // human-readable statement with numbers inlined
    std::string relation;
    i64 lhs = 0, rhs = 0;
    bool pass = false;
    i64 margin = 0;
    std::map<std::string, i64> nums;
    std::map<std::string, std::string> notes;
    std::vector<std::string> uses;
};

struct Certificate {
    std::string kind;                    // which engine produced it
    std::map<std::string, i64> params;   // raw inputs, for regeneration
    ssq::SpectralScenario scenario;
    std::vector<CertStep> steps;
    std::string verdict;

    bool all_pass() const;
    const CertStep* find(const std::string& name) const;
};

// verdict vocabulary
inline constexpr const char* kVerdictNoObstruction =
    "no obstruction from this proposition";
inline constexpr const char* kVerdictRefusal =
    "theorem bound satisfied, no contradiction available";
inline constexpr const char* kVerdictObstructionAlgebra =
    "obstruction established: the tensor product admits no unstable algebra "
    "structure";
inline constexpr const char* kVerdictContradiction =
    "contradiction established: the parameters admit no realization";
inline constexpr const char* kVerdictInconclusive =
    "replay inconclusive at these parameters";
inline constexpr const char* kVerdictOddOrigin =
    "The case of a desuspension class of odd origin remains unsolved.";

// The closed bound 2 p^k <= (p^2 - 1) m + p (m - ell) for a module window
// [ell, m].  Preconditions: p an odd prime, 0 <= ell <= m, k >= 0.
struct BoundReport {
    int p = 3;
    i64 k = 0, ell = 0, m = 0;
    i64 lhs = 0, rhs = 0;
    bool pass = false;
    i64 margin = 0;
};
BoundReport thm_main_bound(int p, i64 k, i64 ell, i64 m);

// Smallest k whose scale 2 p^k exceeds the bound for this window.
i64 smallest_violating_k(int p, i64 ell, i64 m);

// Tensor with the two-window quotient (scales p^k, p^{k+1}).  When the
// instability bound 2 (p-2) p^{k+1} <= pm + m - p ell holds the certificate
// stops there; otherwise it replays the power walk: the Cartan/Lucas
// survivor P^{p^k + i} carries x (x) t^{p^k} onto a nonzero class, some
// intermediate power of the product lands in a degree with no basis class,
// and the two facts collide.  `module` overrides the default two-class
// fixture {x in degree 2i, P^i x nonzero on top}; it must contain a class in
// degree 2i with nonzero P^i.
Certificate prop_neqn_check(int p, i64 k, i64 ell, i64 m, i64 i,
                            const unstable::GradedFpModule* module = nullptr);

// Tensor with the three-window quotient (scales p^k .. p^{k+2}).  When
// 2 p^k <= m holds the certificate stops; otherwise it replays the product
// contradiction: b^p = P^i c is nonzero, every middle Cartan term of
// P^{p^k}(a b^{p-1}) dies in a degree gap, and a b^{p-1} itself sits in a
// gap, so its image cannot be b^p.
Certificate prop_unstable_algebra_check(
    int p, i64 k, i64 ell, i64 m, i64 i,
    const unstable::GradedFpModule* module = nullptr);

// The full column-filtration certificate.  Below the window bound it
// refuses (two steps); above it, it replays the whole chain: fixture module
// ladder, vanishing of intermediate powers, the composite power identity,
// exclusion of every potential killer column by connectivity, interval or
// operation-shape taxonomy, the Nishida reduction of the scale power of an
// index-zero operation to a star product, the filtration floor in its
// degree, the scale decomposition with its gap-counting ladder, and the
// final contradiction.
Certificate thm_nneq_certificate(int p, i64 k, i64 ell, i64 m, i64 i, i64 n);

// A module window that arose by suspending n times, carrying one witness
// class.  The desuspended (origin) degree is class_deg - n; the reduction
// only applies when it is even.
struct SuspensionDescriptor {
    i64 ell = 0, m = 0;  // window of the suspended module
    i64 n = 0;           // suspension count
    i64 class_deg = 0;   // degree of the witness class, ell <= class_deg <= m
};

struct MainTheoremResult {
    Certificate cert;                  // reduction bookkeeping
    std::optional<Certificate> inner;  // instantiated certificate, when run
};

// Checks the closed bound for the suspended window; on violation desuspends
// (ell, m, class) by n, verifies the reindexed window bound dominates, and
// instantiates the column-filtration certificate there (for n = 0, the
// power-product certificate instead).  A witness class of odd origin is
// rejected with its own verdict and no instantiation.
MainTheoremResult thm_main_from_nneq(int p, i64 k,
                                     const SuspensionDescriptor& d);

// Independent re-check: every step's relation is re-evaluated from its
// recorded endpoints, and the certificate is regenerated from its raw
// parameters and compared step by step (skipped when it was built on an
// external module fixture).
struct RecheckReport {
    bool relations_ok = true;
    bool regenerated = false;
    bool regeneration_ok = true;
    std::vector<std::string> problems;
    bool ok() const { return relations_ok && regeneration_ok; }
};
RecheckReport verify_certificate(const Certificate& c);

}  // namespace opal::realize
