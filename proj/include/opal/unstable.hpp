#pragma once
// Finite-type graded F_p modules with an action of the Bockstein and the
// reduced powers: instability checks, shifts, desuspension index/classes,
// and Cartan tensor products.

#include <map>
#include <string>
#include <vector>

#include "opal/linalg.hpp"
#include "opal/steenrod.hpp"

namespace opal::unstable {

struct BasisClass {
    std::string name;
    i64 deg = 0;
    bool operator==(const BasisClass&) const = default;
};

// action entry: op(basis[col]) contains c * basis[row]
struct Trip {
    i64 row = 0, col = 0;
    int c = 0;
    bool operator==(const Trip&) const = default;
};

struct GradedFpModule {
    int p = 3;
    std::vector<BasisClass> basis;
    i64 lo = 0, hi = -1;       // degree window; empty module has lo > hi
    bool complete = true;      // true: the module vanishes outside the window;
                               // false: finite truncation of something larger
    std::vector<Trip> beta;
    std::map<i64, std::vector<Trip>> powers;  // exponents >= 1; P^0 is the identity

    i64 dim() const { return static_cast<i64>(basis.size()); }
    bool is_zero() const { return basis.empty(); }
    i64 degree_of(const SparseVec& v) const;  // throws on inhomogeneous or zero
};

// Structural validation: index ranges, coefficient ranges, degree compatibility
// of every action entry, basis degrees inside the window, beta^2 = 0.
// Returns human-readable problems; empty means valid.
std::vector<std::string> validate_module(const GradedFpModule& m);

enum class ApplyStatus { Ok, OutOfRange };

struct ApplyResult {
    ApplyStatus status = ApplyStatus::Ok;
    SparseVec value;
    bool ok() const { return status == ApplyStatus::Ok; }
};

// beta^eps P^i on an element.  For a complete module a target degree outside
// the window is genuinely zero; for a truncation it is reported OutOfRange.
ApplyResult apply_op(const GradedFpModule& m, int eps, i64 i, const SparseVec& v);
ApplyResult apply_beta(const GradedFpModule& m, const SparseVec& v);
ApplyResult apply_power(const GradedFpModule& m, i64 i, const SparseVec& v);

struct InstabilityViolation {
    i64 class_index = -1;
    i64 i = 0;
    int eps = 0;
};

struct UnstableReport {
    bool ok = true;
    std::vector<InstabilityViolation> violations;
    i64 unverifiable = 0;  // truncated-module targets that left the window
};

// beta^eps P^i x must vanish whenever 2i + eps > |x|.  Includes the i = 0
// rules: a class in negative degree violates via P^0 = id, and beta kills
// classes of degree <= 0.
UnstableReport check_unstable(const GradedFpModule& m);
bool is_unstable(const GradedFpModule& m);

struct AdemComplianceReport {
    bool ok = true;
    i64 pairs_checked = 0, pairs_skipped = 0;
    std::string first_failure;
};

// For every basis element and inadmissible pair within the window, applying
// the pair equals applying its rewritten expansion.
AdemComplianceReport check_adem_compliance(const GradedFpModule& m);

GradedFpModule shift(const GradedFpModule& m, i64 n);

// max { n >= 0 : shift(M, -n) unstable }.  Requires a nonzero unstable
// complete module (throws std::invalid_argument otherwise).
i64 desuspension_index(const GradedFpModule& m);

struct DesuspensionClass {
    i64 class_index = -1;
    bool even_origin = true;
};

struct DesuspensionReport {
    i64 index = 0;
    std::vector<DesuspensionClass> classes;
};

// Basis classes x with P^{(|x|-n)/2} x != 0 (even origin) or
// beta P^{(|x|-n-1)/2} x != 0 (odd origin), n the desuspension index.
DesuspensionReport find_desuspension_classes(const GradedFpModule& m);

// Cartan tensor product of complete modules; basis ordered by degree then by
// factor indices.  beta acts as a derivation with the sign (-1)^{|x|}.
GradedFpModule tensor(const GradedFpModule& a, const GradedFpModule& b);

// convenience constructors for fixtures and tests
GradedFpModule single_class_module(int p, const std::string& name, i64 deg);
SparseVec basis_vec(i64 index);

}  // namespace opal::unstable
