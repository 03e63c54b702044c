#pragma once
// Formal calculus of the operations acting on the (co)homology of extended
// powers: dual Dyer-Lashof operations Q^r, dual Browder operations L^{n-1}
// and the star pairing on the cohomology side; lower-indexed Dyer-Lashof
// operations Q_r, Browder brackets L_{n-1} and the Pontryagin product on the
// homology side.  Expressions are immutable monomial trees combined into
// F_p-linear combinations; every rewrite is pure.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opal/fp.hpp"

namespace opal::opcalc {

// ambient cube dimension; n = -1 encodes infinity
struct Ambient {
    int p = 3;
    i64 n = -1;
    bool finite() const { return n >= 0; }
};

// A formal (co)homology class.  `deg` is the degree of the class as written,
// `weight` its column (extended-power arity), and `susp` counts how many
// suspensions wrap the underlying class: susp >= 1 means the leaf reads
// sigma(x') with |x'| = deg - 1.
struct FormalClass {
    std::string name;
    i64 deg = 0;
    i64 weight = 1;
    i64 susp = 0;
    bool operator==(const FormalClass&) const = default;
};

enum class Side { Coh, Hom };

enum class NodeKind {
    Leaf,  // formal class, optionally decorated with a Steenrod prefix
    Q,     // dual Dyer-Lashof Q^r (Coh) / lower-indexed Q_r (Hom)
    QU,    // upper-indexed homology Dyer-Lashof Q^i (diagonal formulas only)
    L,     // dual Browder L^{level} (Coh) / iterated bracket L_{level} (Hom)
    Prod,  // star pairing (Coh) / Pontryagin product (Hom); order preserved
};

struct Mono;
using MonoPtr = std::shared_ptr<const Mono>;

struct Mono {
    Side side = Side::Coh;
    NodeKind kind = NodeKind::Leaf;
    // Leaf payload.  A decorated cohomology leaf means P^q b^eps (base);
    // a decorated homology leaf means b^eps P_q (base), matching the two
    // Nishida expansions.  q = 0, eps = 0 is stored undecorated.
    FormalClass base;
    i64 q = 0;
    int eps = 0;
    bool decorated = false;
    // Q / QU payload
    i64 r = 0;
    // L payload: the superscript, i.e. ambient minus one
    i64 level = 0;
    std::vector<MonoPtr> kids;
};

// F_p-linear combination of monomial trees; the zero element is {}
struct Lin {
    std::vector<std::pair<MonoPtr, int>> terms;
    bool is_zero() const { return terms.empty(); }
};

// linear combination of tensor words (componentwise monomials)
struct TensorLin {
    std::vector<std::pair<std::vector<MonoPtr>, int>> terms;
    bool is_zero() const { return terms.empty(); }
};

// --- constructors -----------------------------------------------------------

MonoPtr leaf(Side side, const FormalClass& c);
// beta^eps-and-power decoration; (0,0) collapses to the plain leaf
MonoPtr decorated_leaf(Side side, const FormalClass& base, i64 q, int eps);
MonoPtr unit_leaf(Side side);  // the multiplicative unit: degree 0, weight 0
bool is_unit(const Mono& m);

// L^{level} node; a single child collapses to the child itself.  On the
// homology side the k-ary node reads as the left-nested iterated bracket.
MonoPtr browder(Side side, i64 level, std::vector<MonoPtr> kids);
MonoPtr star(Side side, std::vector<MonoPtr> kids);  // construction order kept
MonoPtr q_raw(Side side, i64 r, MonoPtr kid);        // no feasibility filtering
MonoPtr qu_raw(i64 i, MonoPtr kid);                  // upper-indexed homology op

Lin lin(MonoPtr m, int c = 1);
Lin lin_zero();
Lin add(const Ambient& a, const Lin& x, const Lin& y);
Lin scale(const Ambient& a, const Lin& x, int c);

// deterministic serialization; doubles as the canonical comparison key
std::string render(const Mono& m);
std::string render(const Lin& l);
// merge parallel terms, drop zeros, order canonically
Lin simplify(const Ambient& a, const Lin& l);
bool equal(const Ambient& a, const Lin& x, const Lin& y);

// --- degree, weight, feasibility -------------------------------------------

// Coh: |Q^r x| = p|x|+r, |L^level(x_1..x_k)| = (k-1)level + sum |x_i|,
// star adds degrees.  Hom: |Q_r y| = p|y|+r, |Q^i y| = |y|+2i(p-1), brackets
// and products as on the cohomology side.  Decorated leaves shift by their
// Steenrod prefix (up in cohomology, down in homology).
i64 degree(const Ambient& a, const Mono& m);
i64 weight(const Ambient& a, const Mono& m);
// common degree/weight of all terms; throws std::invalid_argument when mixed
i64 degree(const Ambient& a, const Lin& l);
i64 weight(const Ambient& a, const Lin& l);

// Nonvanishing window for Q^r on a degree-d class: r = s(p-1) - eps with
// eps in {0,1}, 0 <= s (and s <= n-1 when the ambient is finite), r >= 0,
// and d + s even.
struct QFeasibility {
    bool ok = false;
    i64 s = 0;
    int eps = 0;
};
QFeasibility q_feasible(const Ambient& a, i64 r, i64 d);

// Q^r applied to a linear combination.  r > 0 distributes; r = 0 on more
// than one term is refused (std::invalid_argument) -- the expansion with its
// correction terms lives in q_linearity_expand.  Infeasible (r, degree)
// pairs produce zero.
Lin make_q(const Ambient& a, i64 r, const Lin& child);
// lower-indexed homology operation: linear; vanishes for r < 0 and, at
// finite ambient, for r > (n-1)(p-1)
Lin make_hom_q(const Ambient& a, i64 r, const Lin& child);

// index conversions between the two homology conventions on a degree-d class
i64 hom_upper_to_lower(const Ambient& a, i64 i, i64 d);  // (p-1)(2i - d)

// --- suspension maps --------------------------------------------------------

// Cohomological suspension compatibility: Q^r(sigma x) becomes Q^{r+p-1}(x)
// and L^{level}(tensor of sigma x_i) becomes L^{level+1}(tensor of x_i); the
// result lives one ambient dimension higher.  Leaves must carry susp >= 1;
// star products have no rewriting rule here -- both reject with
// std::invalid_argument.
Lin suspend_coh(const Ambient& a, const Lin& e);

// Homological suspension: pushing sigma through an expression.  Q_r(y)
// becomes nu(|y|) Q_{r-(p-1)}(sigma y), trivial when the index drops below
// zero; brackets lower their level with suspended arguments; Pontryagin
// products of positive-degree factors vanish.  Products with degree-zero
// factors are outside the rules and rejected.
Lin suspend_hom(const Ambient& a, const CoeffTables& tables, const Lin& e);

// Composition with the k-fold smash projection: Q and L vanish, a k-fold
// Pontryagin product symmetrizes over all permutations, a bare leaf of
// weight k = 1 passes through.
TensorLin tau_push(const Ambient& a, const Lin& e, i64 k);

// --- the subtop operation ---------------------------------------------------

// At a finite ambient dimension n the top homology operation is
// xi = Q_{(n-1)(p-1)} and the subtop one is zeta = Q_{(n-1)(p-1)-1}.  The
// Bockstein of xi is zeta only up to a p-fold iterated bracket:
//   zeta(x) = beta xi(x) - ad^{p-1}(x)(beta x).
// The rewrite is never applied implicitly; this materializes its pieces on
// demand: the two indices and the bracket summand (sign included), so that
// beta xi(x) + bracket_part is the rewritten class.  Requires n >= 2 and a
// positive-degree class.
struct SubtopRewrite {
    i64 zeta_index = 0;  // (n-1)(p-1) - 1
    i64 xi_index = 0;    // (n-1)(p-1)
    Lin bracket_part;    // -ad^{p-1}(x)(beta x) as an explicit iterated bracket
};
SubtopRewrite zeta_rewrite(const Ambient& a, const FormalClass& x);

// --- linearity of Q^0 -------------------------------------------------------

// Q^r(sum c_t x_t).  For r > 0 termwise.  For r = 0, termwise plus the
// correction sum_{j=1}^{p-1} 1/((p-j)! j!) u^{*j} * v^{*(p-j)} accumulated
// pairwise over the terms; the x_t must be pairwise distinct leaves.
Lin q_linearity_expand(const Ambient& a, const CoeffTables& tables, i64 r, const Lin& sum);

// --- diagonal Cartan formulas ----------------------------------------------

// coproduct value of a leaf: sum of x' (x) x'' with coefficients
struct Coproduct {
    std::vector<std::tuple<MonoPtr, MonoPtr, int>> terms;
};
// x primitive: psi(x) = x (x) 1 + 1 (x) x
Coproduct primitive_coproduct(const FormalClass& c);

// Expands psi over a homology monomial built from leaves, upper-indexed
// operations QU, binary brackets L, and Pontryagin products:
//   psi Q^k(x)        = sum_{i+j=k} sum_r Q^i(x'_r) (x) Q^j(x''_r)
//   psi L(x, y)       = sum (-1)^{level |x'| + |x''||y'|} L(x', y') (x) x''y''
//                     + sum (-1)^{level |y'| + |x''||y'|} x'y' (x) L(x'', y'')
// with unit rules Q^j(1) = 0 for j > 0, Q^0(1) = 1, L(x, 1) = L(1, x) = 0,
// and multiplicativity with the Koszul sign (-1)^{|a''||b'|} on products.
TensorLin diagonal_cartan(const Ambient& a, const MonoPtr& e,
                          const std::map<std::string, Coproduct>& psi);

// tensor-side helpers shared by the diagonal tests
TensorLin tensor_simplify(const Ambient& a, const TensorLin& t);
bool tensor_equal(const Ambient& a, const TensorLin& x, const TensorLin& y);
std::string render(const TensorLin& t);

}  // namespace opal::opcalc
