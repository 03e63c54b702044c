#include "opal/pairing.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::pairing {

using opcalc::NodeKind;
using opcalc::Side;

PairPoly poly_zero() { return {}; }

PairPoly poly_one() {
    PairPoly p;
    p.terms[{}] = 1;
    return p;
}

PairPoly poly_symbol(const PairSymbol& s) {
    PairPoly p;
    p.terms[{s}] = 1;
    return p;
}

PairPoly poly_add(int p, const PairPoly& a, const PairPoly& b) {
    PairPoly out = a;
    for (auto& [m, c] : b.terms) {
        int v = ((out.terms[m] + c) % p + p) % p;
        if (v)
            out.terms[m] = v;
        else
            out.terms.erase(m);
    }
    return out;
}

PairPoly poly_scale(int p, const PairPoly& a, int c) {
    PairPoly out;
    for (auto& [m, k] : a.terms) {
        int v = ((static_cast<i64>(k) * c) % p + p) % p;
        if (v) out.terms[m] = v;
    }
    return out;
}

PairPoly poly_mul(int p, const PairPoly& a, const PairPoly& b) {
    PairPoly out;
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            PairMonomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            int v = static_cast<int>(((out.terms[m] + static_cast<i64>(ca) * cb) % p + p) % p);
            if (v)
                out.terms[m] = v;
            else
                out.terms.erase(m);
        }
    return out;
}

bool poly_equal(const PairPoly& a, const PairPoly& b) { return a.terms == b.terms; }

std::string render(const PairSymbol& s) {
    std::string inner = s.yname;
    if (s.q > 0) inner = "P_" + std::to_string(s.q) + " " + inner;
    if (s.eps) inner = "b " + inner;
    return "<" + s.xname + ", " + inner + ">";
}

std::string render(const PairPoly& a) {
    if (a.terms.empty()) return "0";
    std::string out;
    for (auto& [m, c] : a.terms) {
        if (!out.empty()) out += " + ";
        std::string t;
        if (c != 1 || m.empty()) t = std::to_string(c);
        for (auto& s : m) {
            if (!t.empty()) t += " ";
            t += render(s);
        }
        out += t;
    }
    return out;
}

int evaluate(const PairPoly& a, const std::function<int(const PairSymbol&)>& val, int p) {
    i64 total = 0;
    for (auto& [m, c] : a.terms) {
        i64 prod = c;
        for (auto& s : m) prod = (prod * val(s)) % p;
        total = (total + prod) % p;
    }
    return static_cast<int>((total % p + p) % p);
}

namespace {

// does r admit a presentation t(p-1) - eps with eps in {0,1}, t >= 0?
bool index_representable(i64 r, int p) {
    if (r < 0) return false;
    i64 m = r % (p - 1);
    return m == 0 || m == p - 2;
}

PairPoly leaf_pair(const Ambient& a, const Mono& x, const Mono& y) {
    if (x.decorated && y.decorated)
        throw std::invalid_argument(
            "pair: Steenrod prefixes on both sides at once are ambiguous");
    // classes in different degrees or weights pair to zero
    if (opcalc::degree(a, x) != opcalc::degree(a, y)) return poly_zero();
    if (opcalc::weight(a, x) != opcalc::weight(a, y)) return poly_zero();
    if (opcalc::is_unit(x) && opcalc::is_unit(y)) return poly_one();
    if (opcalc::is_unit(x) != opcalc::is_unit(y)) return poly_zero();
    // move any prefix onto the homology argument without sign
    PairSymbol s;
    s.xname = x.base.name;
    s.yname = y.base.name;
    if (x.decorated) {
        s.q = x.q;
        s.eps = x.eps;
    } else if (y.decorated) {
        s.q = y.q;
        s.eps = y.eps;
    }
    return poly_symbol(s);
}

// commutator expansion of the left-nested bracket with all levels set to
// zero: a list of (ordered word, sign)
void l0_expansion(const Ambient& a, const std::vector<opcalc::MonoPtr>& ys,
                  std::vector<std::pair<std::vector<opcalc::MonoPtr>, int>>& out) {
    out = {{{ys[0]}, 1}};
    i64 wdeg = opcalc::degree(a, *ys[0]);
    for (std::size_t j = 1; j < ys.size(); ++j) {
        i64 dy = opcalc::degree(a, *ys[j]);
        std::vector<std::pair<std::vector<opcalc::MonoPtr>, int>> next;
        for (auto& [w, sgn] : out) {
            auto app = w;
            app.push_back(ys[j]);
            next.emplace_back(std::move(app), sgn);
            auto pre = w;
            pre.insert(pre.begin(), ys[j]);
            next.emplace_back(std::move(pre), -sgn * sign_pow(wdeg * dy));
        }
        out = std::move(next);
        wdeg += dy;
    }
}

PairPoly rec(const Ambient& a, const CoeffTables& tables, const Mono& x, const Mono& y) {
    if (x.side != Side::Coh || y.side != Side::Hom)
        throw std::invalid_argument("pair: expected a cohomology and a homology argument");
    if (x.kind == NodeKind::QU || y.kind == NodeKind::QU)
        throw std::invalid_argument("pair: upper-indexed operations have no pairing rule");

    const int p = a.p;

    if (x.kind == NodeKind::Leaf && y.kind == NodeKind::Leaf) return leaf_pair(a, x, y);

    if (x.kind == NodeKind::Q) {
        const Mono& w = *x.kids[0];
        switch (y.kind) {
            case NodeKind::Q: {
                // <Q^r w, Q_s z> = gamma(|w|, r) <w, z> iff r = s = t(p-1)-eps
                if (x.r != y.r || !index_representable(x.r, p)) return poly_zero();
                PairPoly inner = rec(a, tables, w, *y.kids[0]);
                return poly_scale(p, inner, tables.gamma(opcalc::degree(a, w), x.r));
            }
            case NodeKind::Prod: {
                // <Q^0 x, y_1 * ... * y_p> = prod <x, y_i>
                if (x.r != 0 || static_cast<i64>(y.kids.size()) != p) return poly_zero();
                PairPoly out = poly_one();
                for (auto& yk : y.kids) out = poly_mul(p, out, rec(a, tables, w, *yk));
                return out;
            }
            default:
                return poly_zero();  // <Q, L> and <Q, leaf>
        }
    }

    if (x.kind == NodeKind::L) {
        switch (y.kind) {
            case NodeKind::Q: {
                // <L^m(x_1..x_p), Q_s y> = lambda(|y|) prod <x_i, y>,
                // nonzero only for s = m(p-1)
                if (static_cast<i64>(x.kids.size()) != p) return poly_zero();
                if (y.r != x.level * (p - 1)) return poly_zero();
                const Mono& z = *y.kids[0];
                PairPoly out = poly_one();
                for (auto& xk : x.kids) out = poly_mul(p, out, rec(a, tables, *xk, z));
                return poly_scale(p, out,
                                  tables.lambda_(opcalc::degree(a, z), x.level + 1));
            }
            case NodeKind::L: {
                // levels must agree; the bracket drops to the commutator
                // expansion, paired componentwise without Kuenneth signs
                if (x.level != y.level) return poly_zero();
                if (x.kids.size() != y.kids.size()) return poly_zero();
                std::vector<std::pair<std::vector<opcalc::MonoPtr>, int>> words;
                l0_expansion(a, y.kids, words);
                PairPoly out = poly_zero();
                for (auto& [word, sgn] : words) {
                    PairPoly term = poly_one();
                    for (std::size_t i = 0; i < x.kids.size(); ++i)
                        term = poly_mul(p, term, rec(a, tables, *x.kids[i], *word[i]));
                    out = poly_add(p, out, poly_scale(p, term, sgn));
                }
                return out;
            }
            default:
                return poly_zero();  // <L, *> and <L, leaf>
        }
    }

    if (x.kind == NodeKind::Prod) {
        if (y.kind != NodeKind::Prod) return poly_zero();  // <*, Q> and <*, L>
        if (x.kids.size() != y.kids.size()) return poly_zero();
        // plain permanent: sum over permutations, no signs
        std::vector<std::size_t> idx(y.kids.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        PairPoly out = poly_zero();
        do {
            PairPoly term = poly_one();
            for (std::size_t i = 0; i < x.kids.size(); ++i)
                term = poly_mul(p, term, rec(a, tables, *x.kids[i], *y.kids[idx[i]]));
            out = poly_add(p, out, term);
        } while (std::next_permutation(idx.begin(), idx.end()));
        return out;
    }

    // leaf against an operation or product
    return poly_zero();
}

}  // namespace

PairResult pair_mono(const Ambient& a, const CoeffTables& tables, const Mono& x,
                     const Mono& y) {
    if (opcalc::degree(a, x) != opcalc::degree(a, y) ||
        opcalc::weight(a, x) != opcalc::weight(a, y))
        return {poly_zero(), true};
    return {rec(a, tables, x, y), false};
}

PairResult pair(const Ambient& a, const CoeffTables& tables, const Lin& x, const Lin& y) {
    PairResult out{poly_zero(), false};
    for (auto& [mx, cx] : x.terms)
        for (auto& [my, cy] : y.terms) {
            PairResult f = pair_mono(a, tables, *mx, *my);
            out.poly = poly_add(
                a.p, out.poly,
                poly_scale(a.p, f.poly, static_cast<int>((static_cast<i64>(cx) * cy) % a.p)));
            out.mismatch = out.mismatch || f.mismatch;
        }
    return out;
}

}  // namespace opal::pairing
