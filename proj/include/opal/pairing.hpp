#pragma once
// Kronecker pairing between the cohomology operation calculus and the
// homology one.  Values are polynomials over F_p in formal leaf pairings
// <x, b^eps P_q y>, so identities can be compared symbolically and then
// evaluated under arbitrary assignments.

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "opal/fp.hpp"
#include "opal/opcalc.hpp"

namespace opal::pairing {

using opcalc::Ambient;
using opcalc::Lin;
using opcalc::Mono;

// the formal scalar <x, b^eps P_q y>; q = 0, eps = 0 is the plain <x, y>.
// Steenrod prefixes met on either side are moved to the homology argument
// without sign, so both transcriptions share one symbol space.
struct PairSymbol {
    std::string xname;
    std::string yname;
    i64 q = 0;
    int eps = 0;
    auto operator<=>(const PairSymbol&) const = default;
};

using PairMonomial = std::vector<PairSymbol>;  // kept sorted

struct PairPoly {
    std::map<PairMonomial, int> terms;
    bool is_zero() const { return terms.empty(); }
};

PairPoly poly_zero();
PairPoly poly_one();
PairPoly poly_symbol(const PairSymbol& s);
PairPoly poly_add(int p, const PairPoly& a, const PairPoly& b);
PairPoly poly_scale(int p, const PairPoly& a, int c);
PairPoly poly_mul(int p, const PairPoly& a, const PairPoly& b);
bool poly_equal(const PairPoly& a, const PairPoly& b);
std::string render(const PairSymbol& s);
std::string render(const PairPoly& a);
// evaluate under an assignment of values to symbols
int evaluate(const PairPoly& a, const std::function<int(const PairSymbol&)>& val, int p);

// Result of pairing: the polynomial together with a diagnostic flag raised
// when the two arguments disagree in total degree or weight -- such a pair
// is skipped as zero but almost always indicates a caller bug.  The flag
// never fires on structural zeros (<Q..., L...>, an arity mismatch between
// products, index conditions failing) nor on leaf pairings deep inside an
// expansion whose degrees merely happen to differ.
struct PairResult {
    PairPoly poly;
    bool mismatch = false;
};

// The pairing table, mono against mono:
//   <Q^r w, Q_s z>        = gamma(|w|, r) <w, z>      iff r = s = t(p-1)-eps
//   <Q^r x, y_1*...*y_k>  = prod_i <x, y_i>           iff r = 0 and k = p
//   <L^m(x_1..x_k), Q_s y> = lambda(|y|) prod <x_i, y> iff k = p, s = m(p-1)
//   <L^m(x_..), L_m(y_..)> = <tensor x_i, commutator expansion of L_0(y_..)>
//                            paired componentwise without Kuenneth signs
//   <x_1*...*x_k, y_1*...*y_k> = sum over permutations of prod <x_i, y_sig(i)>
//                                (a plain permanent, no signs)
// with every other combination of node kinds vanishing.  Decorated leaves on
// both sides at once are rejected (std::invalid_argument), as are nodes that
// have no pairing semantics (upper-indexed operations).
PairResult pair_mono(const Ambient& a, const CoeffTables& tables, const Mono& x,
                     const Mono& y);
// bilinear extension
PairResult pair(const Ambient& a, const CoeffTables& tables, const Lin& x, const Lin& y);

}  // namespace opal::pairing
