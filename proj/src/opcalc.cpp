#include "opal/opcalc.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::opcalc {

namespace {

int norm_coeff(i64 c, int p) { return static_cast<int>(((c % p) + p) % p); }

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// --- constructors -----------------------------------------------------------

MonoPtr leaf(Side side, const FormalClass& c) {
    auto m = std::make_shared<Mono>();
    m->side = side;
    m->base = c;
    return m;
}

MonoPtr decorated_leaf(Side side, const FormalClass& base, i64 q, int eps) {
    require(q >= 0 && (eps == 0 || eps == 1), "decorated_leaf: bad Steenrod prefix");
    if (q == 0 && eps == 0) return leaf(side, base);
    auto m = std::make_shared<Mono>();
    m->side = side;
    m->base = base;
    m->q = q;
    m->eps = eps;
    m->decorated = true;
    return m;
}

MonoPtr unit_leaf(Side side) { return leaf(side, FormalClass{"1", 0, 0, 0}); }

bool is_unit(const Mono& m) {
    return m.kind == NodeKind::Leaf && !m.decorated && m.base.deg == 0 &&
           m.base.weight == 0 && m.base.name == "1";
}

MonoPtr browder(Side side, i64 level, std::vector<MonoPtr> kids) {
    require(!kids.empty(), "browder: needs at least one argument");
    if (kids.size() == 1) return kids.front();  // a 1-ary bracket is the class itself
    auto m = std::make_shared<Mono>();
    m->side = side;
    m->kind = NodeKind::L;
    m->level = level;
    m->kids = std::move(kids);
    return m;
}

MonoPtr star(Side side, std::vector<MonoPtr> kids) {
    // flatten nested products and drop unit factors so that multiplication
    // is associative and unital on canonical keys
    std::vector<MonoPtr> flat;
    for (auto& k : kids) {
        if (is_unit(*k)) continue;
        if (k->kind == NodeKind::Prod)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    if (flat.empty()) return unit_leaf(side);
    if (flat.size() == 1) return flat.front();
    auto m = std::make_shared<Mono>();
    m->side = side;
    m->kind = NodeKind::Prod;
    m->kids = std::move(flat);
    return m;
}

MonoPtr q_raw(Side side, i64 r, MonoPtr kid) {
    auto m = std::make_shared<Mono>();
    m->side = side;
    m->kind = NodeKind::Q;
    m->r = r;
    m->kids = {std::move(kid)};
    return m;
}

MonoPtr qu_raw(i64 i, MonoPtr kid) {
    require(i >= 0, "qu_raw: negative index");
    auto m = std::make_shared<Mono>();
    m->side = Side::Hom;
    m->kind = NodeKind::QU;
    m->r = i;
    m->kids = {std::move(kid)};
    return m;
}

Lin lin(MonoPtr m, int c) { return Lin{{{std::move(m), c}}}; }
Lin lin_zero() { return {}; }

Lin add(const Ambient& a, const Lin& x, const Lin& y) {
    Lin out = x;
    out.terms.insert(out.terms.end(), y.terms.begin(), y.terms.end());
    return simplify(a, out);
}

Lin scale(const Ambient& a, const Lin& x, int c) {
    Lin out;
    for (auto& [m, k] : x.terms) {
        int v = norm_coeff(i64(k) * c, a.p);
        if (v) out.terms.emplace_back(m, v);
    }
    return out;
}

// --- rendering and canonical keys ------------------------------------------

std::string render(const Mono& m) {
    switch (m.kind) {
        case NodeKind::Leaf: {
            std::string name = m.base.name;
            if (m.base.susp == 1)
                name = "sus(" + name + ")";
            else if (m.base.susp > 1)
                name = "sus^" + std::to_string(m.base.susp) + "(" + name + ")";
            if (!m.decorated) return name;
            if (m.side == Side::Coh)  // P^q b^eps (x)
                return "P^" + std::to_string(m.q) + (m.eps ? " b(" : "(") + name + ")";
            // b^eps P_q (y)
            return std::string(m.eps ? "b " : "") + "P_" + std::to_string(m.q) + "(" + name + ")";
        }
        case NodeKind::Q:
            return (m.side == Side::Coh ? "Q^" : "Q_") + std::to_string(m.r) + "(" +
                   render(*m.kids[0]) + ")";
        case NodeKind::QU:
            return "Q^" + std::to_string(m.r) + "(" + render(*m.kids[0]) + ")";
        case NodeKind::L: {
            std::string s = "L" + std::to_string(m.level) + "(";
            for (std::size_t i = 0; i < m.kids.size(); ++i)
                s += (i ? ", " : "") + render(*m.kids[i]);
            return s + ")";
        }
        case NodeKind::Prod: {
            std::string s;
            for (std::size_t i = 0; i < m.kids.size(); ++i)
                s += (i ? " * " : "") + render(*m.kids[i]);
            return s;
        }
    }
    return "?";
}

std::string render(const Lin& l) {
    if (l.terms.empty()) return "0";
    std::vector<std::pair<std::string, int>> parts;
    for (auto& [m, c] : l.terms) parts.emplace_back(render(*m), c);
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto& [k, c] : parts) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + " ";
        s += k;
    }
    return s;
}

Lin simplify(const Ambient& a, const Lin& l) {
    std::map<std::string, std::pair<MonoPtr, i64>> acc;
    for (auto& [m, c] : l.terms) {
        auto key = render(*m);
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::make_pair(m, i64(c)));
        else
            it->second.second += c;
    }
    Lin out;
    for (auto& [key, mc] : acc) {
        (void)key;
        int v = norm_coeff(mc.second, a.p);
        if (v) out.terms.emplace_back(mc.first, v);
    }
    return out;
}

bool equal(const Ambient& a, const Lin& x, const Lin& y) {
    return render(simplify(a, x)) == render(simplify(a, y));
}

// --- degree and weight ------------------------------------------------------

i64 degree(const Ambient& a, const Mono& m) {
    switch (m.kind) {
        case NodeKind::Leaf:
            if (!m.decorated) return m.base.deg;
            // cohomology prefixes raise degree, homology ones lower it
            return m.side == Side::Coh ? m.base.deg + m.eps + 2 * m.q * (a.p - 1)
                                       : m.base.deg - 2 * m.q * (a.p - 1) - m.eps;
        case NodeKind::Q:
            return a.p * degree(a, *m.kids[0]) + m.r;
        case NodeKind::QU:
            return degree(a, *m.kids[0]) + 2 * m.r * (a.p - 1);
        case NodeKind::L: {
            i64 d = (static_cast<i64>(m.kids.size()) - 1) * m.level;
            for (auto& k : m.kids) d += degree(a, *k);
            return d;
        }
        case NodeKind::Prod: {
            i64 d = 0;
            for (auto& k : m.kids) d += degree(a, *k);
            return d;
        }
    }
    return 0;
}

i64 weight(const Ambient& a, const Mono& m) {
    switch (m.kind) {
        case NodeKind::Leaf:
            return m.base.weight;
        case NodeKind::Q:
        case NodeKind::QU:
            return a.p * weight(a, *m.kids[0]);
        case NodeKind::L:
        case NodeKind::Prod: {
            i64 w = 0;
            for (auto& k : m.kids) w += weight(a, *k);
            return w;
        }
    }
    return 0;
}

i64 degree(const Ambient& a, const Lin& l) {
    require(!l.terms.empty(), "degree: zero expression has no degree");
    i64 d = degree(a, *l.terms.front().first);
    for (auto& [m, c] : l.terms) {
        (void)c;
        require(degree(a, *m) == d, "degree: inhomogeneous expression");
    }
    return d;
}

i64 weight(const Ambient& a, const Lin& l) {
    require(!l.terms.empty(), "weight: zero expression has no weight");
    i64 w = weight(a, *l.terms.front().first);
    for (auto& [m, c] : l.terms) {
        (void)c;
        require(weight(a, *m) == w, "weight: mixed-weight expression");
    }
    return w;
}

// --- feasibility ------------------------------------------------------------

QFeasibility q_feasible(const Ambient& a, i64 r, i64 d) {
    if (r < 0) return {};
    i64 m = r % (a.p - 1);
    i64 s;
    int eps;
    if (m == 0) {
        s = r / (a.p - 1);
        eps = 0;
    } else if (m == a.p - 2) {
        s = (r + 1) / (a.p - 1);
        eps = 1;
    } else {
        return {};
    }
    if (a.finite() && s > a.n - 1) return {};
    if ((d + s) % 2 != 0) return {};
    return {true, s, eps};
}

Lin make_q(const Ambient& a, i64 r, const Lin& child) {
    if (r == 0 && child.terms.size() > 1)
        throw std::invalid_argument(
            "make_q: Q^0 is not additive; expand sums through q_linearity_expand");
    Lin out;
    for (auto& [m, c] : child.terms) {
        if (!q_feasible(a, r, degree(a, *m)).ok) continue;
        out.terms.emplace_back(q_raw(Side::Coh, r, m), c);
    }
    return out;
}

Lin make_hom_q(const Ambient& a, i64 r, const Lin& child) {
    if (r < 0) return {};
    if (a.finite() && r > (a.n - 1) * (a.p - 1)) return {};
    Lin out;
    for (auto& [m, c] : child.terms) out.terms.emplace_back(q_raw(Side::Hom, r, m), c);
    return out;
}

i64 hom_upper_to_lower(const Ambient& a, i64 i, i64 d) { return (a.p - 1) * (2 * i - d); }

// --- suspensions ------------------------------------------------------------

namespace {

MonoPtr suspend_coh_mono(const Ambient& a, const Mono& m) {
    switch (m.kind) {
        case NodeKind::Leaf: {
            require(!m.decorated, "suspend_coh: no rule for Steenrod-decorated leaves");
            require(m.base.susp >= 1, "suspend_coh: leaf is not a suspension");
            FormalClass c = m.base;
            c.susp -= 1;
            c.deg -= 1;
            return leaf(Side::Coh, c);
        }
        case NodeKind::Q:
            return q_raw(Side::Coh, m.r + a.p - 1, suspend_coh_mono(a, *m.kids[0]));
        case NodeKind::L: {
            std::vector<MonoPtr> kids;
            for (auto& k : m.kids) kids.push_back(suspend_coh_mono(a, *k));
            return browder(Side::Coh, m.level + 1, std::move(kids));
        }
        default:
            throw std::invalid_argument("suspend_coh: no rule for star products");
    }
}

// returns the pushed expression together with its scalar factor; empty => 0
Lin suspend_hom_mono(const Ambient& a, const CoeffTables& tables, const Mono& m) {
    switch (m.kind) {
        case NodeKind::Leaf: {
            require(!m.decorated, "suspend_hom: no rule for Steenrod-decorated leaves");
            FormalClass c = m.base;
            c.susp += 1;
            c.deg += 1;
            return lin(leaf(Side::Hom, c));
        }
        case NodeKind::Q: {
            i64 d = degree(a, *m.kids[0]);
            i64 r2 = m.r - (a.p - 1);
            if (r2 < 0) return {};  // trivial for negative lower index
            Lin inner = suspend_hom_mono(a, tables, *m.kids[0]);
            Lin out;
            for (auto& [k, c] : inner.terms)
                out.terms.emplace_back(q_raw(Side::Hom, r2, k),
                                       norm_coeff(i64(c) * tables.nu(d), a.p));
            return out;
        }
        case NodeKind::L: {
            require(m.level >= 1, "suspend_hom: bracket level cannot drop below zero");
            // distribute over each argument's rewrite
            std::vector<Lin> parts;
            for (auto& k : m.kids) {
                Lin pk = suspend_hom_mono(a, tables, *k);
                if (pk.is_zero()) return {};
                parts.push_back(std::move(pk));
            }
            // expand the multilinear bracket argument by argument
            std::vector<std::pair<std::vector<MonoPtr>, int>> words{{{}, 1}};
            for (auto& part : parts) {
                std::vector<std::pair<std::vector<MonoPtr>, int>> next;
                for (auto& [w, cw] : words)
                    for (auto& [k, ck] : part.terms) {
                        auto w2 = w;
                        w2.push_back(k);
                        next.emplace_back(std::move(w2), norm_coeff(i64(cw) * ck, a.p));
                    }
                words = std::move(next);
            }
            Lin out;
            for (auto& [w, c] : words)
                out.terms.emplace_back(browder(Side::Hom, m.level - 1, w), c);
            return out;
        }
        case NodeKind::Prod: {
            for (auto& k : m.kids)
                require(degree(a, *k) > 0,
                        "suspend_hom: products with degree-zero factors are not covered");
            return {};  // products of positive-degree classes vanish
        }
        default:
            throw std::invalid_argument("suspend_hom: unsupported node");
    }
}

}  // namespace

Lin suspend_coh(const Ambient& a, const Lin& e) {
    Lin out;
    for (auto& [m, c] : e.terms) out.terms.emplace_back(suspend_coh_mono(a, *m), c);
    return simplify(a, out);
}

Lin suspend_hom(const Ambient& a, const CoeffTables& tables, const Lin& e) {
    Lin out;
    for (auto& [m, c] : e.terms) out = add(a, out, scale(a, suspend_hom_mono(a, tables, *m), c));
    return out;
}

TensorLin tau_push(const Ambient& a, const Lin& e, i64 k) {
    TensorLin out;
    for (auto& [m, c] : e.terms) {
        require(weight(a, *m) == k, "tau_push: expression weight does not match the arity");
        switch (m->kind) {
            case NodeKind::Q:
            case NodeKind::QU:
            case NodeKind::L:
                break;  // in the kernel
            case NodeKind::Leaf:
                require(k == 1, "tau_push: a bare class needs arity one");
                out.terms.push_back({{m}, c});
                break;
            case NodeKind::Prod: {
                require(static_cast<i64>(m->kids.size()) == k,
                        "tau_push: product arity does not match");
                std::vector<std::size_t> idx(m->kids.size());
                for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                std::sort(idx.begin(), idx.end());
                do {
                    std::vector<MonoPtr> word;
                    for (std::size_t i : idx) word.push_back(m->kids[i]);
                    out.terms.push_back({std::move(word), c});
                } while (std::next_permutation(idx.begin(), idx.end()));
                break;
            }
        }
    }
    return tensor_simplify(a, out);
}

// --- the subtop operation ---------------------------------------------------

SubtopRewrite zeta_rewrite(const Ambient& a, const FormalClass& x) {
    if (a.n < 2)
        throw std::invalid_argument(
            "zeta_rewrite: the top operations need a finite ambient dimension >= 2");
    if (x.deg <= 0)
        throw std::invalid_argument(
            "zeta_rewrite: the class must have positive degree");
    SubtopRewrite out;
    out.xi_index = static_cast<i64>(a.n - 1) * (a.p - 1);
    out.zeta_index = out.xi_index - 1;
    MonoPtr acc = decorated_leaf(Side::Hom, x, 0, 1);  // beta x
    for (int j = 0; j < a.p - 1; ++j)
        acc = browder(Side::Hom, a.n - 1, {leaf(Side::Hom, x), acc});
    out.bracket_part.terms.push_back({std::move(acc), a.p - 1});  // the minus
    return out;
}

// --- linearity of Q^0 -------------------------------------------------------

Lin q_linearity_expand(const Ambient& a, const CoeffTables& tables, i64 r, const Lin& sum) {
    if (r != 0) return make_q(a, r, sum);
    for (auto& [m, c] : sum.terms) {
        (void)c;
        require(m->kind == NodeKind::Leaf && !m->decorated,
                "q_linearity_expand: terms must be plain classes");
    }
    Lin out;
    std::vector<std::pair<MonoPtr, int>> prev;
    for (auto& [y, cy] : sum.terms) {
        out = add(a, out, make_q(a, 0, lin(y, cy)));
        if (!prev.empty()) {
            // correction for splitting off y from the accumulated partial sum
            for (i64 j = 1; j <= a.p - 1; ++j) {
                i64 unit = (i64(tables.inv(tables.factorial(a.p - j))) *
                            tables.inv(tables.factorial(j))) %
                           a.p;
                // expand (sum prev)^{*j} into multisets with multinomial counts
                std::vector<std::size_t> pick;
                std::function<void(std::size_t, i64)> rec = [&](std::size_t start, i64 left) {
                    if (left == 0) {
                        // multinomial: j! / prod (multiplicities!)
                        i64 ways = tables.factorial(j);
                        i64 coeff = unit;
                        std::size_t t = 0;
                        while (t < pick.size()) {
                            std::size_t u = t;
                            while (u < pick.size() && pick[u] == pick[t]) ++u;
                            ways = (ways * tables.inv(tables.factorial(static_cast<i64>(u - t)))) %
                                   a.p;
                            for (std::size_t v = t; v < u; ++v)
                                coeff = (coeff * prev[pick[t]].second) % a.p;
                            t = u;
                        }
                        coeff = (coeff * ways) % a.p;
                        for (i64 v = 0; v < a.p - j; ++v) coeff = (coeff * cy) % a.p;
                        std::vector<MonoPtr> factors;
                        for (std::size_t i : pick) factors.push_back(prev[i].first);
                        for (i64 v = 0; v < a.p - j; ++v) factors.push_back(y);
                        std::sort(factors.begin(), factors.end(),
                                  [](const MonoPtr& x, const MonoPtr& z) {
                                      return render(*x) < render(*z);
                                  });
                        int cc = norm_coeff(coeff, a.p);
                        if (cc)
                            out = add(a, out, lin(star(Side::Coh, factors), cc));
                        return;
                    }
                    for (std::size_t t = start; t < prev.size(); ++t) {
                        pick.push_back(t);
                        rec(t, left - 1);
                        pick.pop_back();
                    }
                };
                rec(0, j);
            }
        }
        prev.emplace_back(y, cy);
    }
    return simplify(a, out);
}

// --- diagonal Cartan formulas ----------------------------------------------

Coproduct primitive_coproduct(const FormalClass& c) {
    Coproduct psi;
    psi.terms.emplace_back(leaf(Side::Hom, c), unit_leaf(Side::Hom), 1);
    psi.terms.emplace_back(unit_leaf(Side::Hom), leaf(Side::Hom, c), 1);
    return psi;
}

namespace {

using TPair = std::tuple<MonoPtr, MonoPtr, int>;

std::vector<TPair> diag(const Ambient& a, const Mono& m,
                        const std::map<std::string, Coproduct>& psi) {
    switch (m.kind) {
        case NodeKind::Leaf: {
            require(!m.decorated, "diagonal_cartan: no rule for decorated leaves");
            if (is_unit(m)) return {{unit_leaf(Side::Hom), unit_leaf(Side::Hom), 1}};
            auto it = psi.find(m.base.name);
            require(it != psi.end(), "diagonal_cartan: leaf without a coproduct assignment");
            return it->second.terms;
        }
        case NodeKind::QU: {
            std::vector<TPair> out;
            for (auto& [x1, x2, c] : diag(a, *m.kids[0], psi))
                for (i64 i = 0; i <= m.r; ++i) {
                    i64 j = m.r - i;
                    // unit rules: Q^t(1) = 0 for t > 0 and Q^0(1) = 1
                    MonoPtr left, right;
                    if (is_unit(*x1))
                        left = i == 0 ? x1 : nullptr;
                    else
                        left = qu_raw(i, x1);
                    if (is_unit(*x2))
                        right = j == 0 ? x2 : nullptr;
                    else
                        right = qu_raw(j, x2);
                    if (left && right) out.emplace_back(left, right, c);
                }
            return out;
        }
        case NodeKind::L: {
            require(m.kids.size() == 2, "diagonal_cartan: brackets must be binary");
            std::vector<TPair> out;
            for (auto& [x1, x2, cx] : diag(a, *m.kids[0], psi))
                for (auto& [y1, y2, cy] : diag(a, *m.kids[1], psi)) {
                    int c = norm_coeff(i64(cx) * cy, a.p);
                    if (!c) continue;
                    i64 dx1 = degree(a, *x1), dx2 = degree(a, *x2);
                    i64 dy1 = degree(a, *y1), dy2 = degree(a, *y2);
                    (void)dy2;
                    // brackets with the unit vanish
                    if (!is_unit(*x1) && !is_unit(*y1)) {
                        int sgn = sign_pow(m.level * dx1 + dx2 * dy1);
                        out.emplace_back(browder(Side::Hom, m.level, {x1, y1}),
                                         star(Side::Hom, {x2, y2}),
                                         norm_coeff(i64(c) * sgn, a.p));
                    }
                    if (!is_unit(*x2) && !is_unit(*y2)) {
                        int sgn = sign_pow(m.level * dy1 + dx2 * dy1);
                        out.emplace_back(star(Side::Hom, {x1, y1}),
                                         browder(Side::Hom, m.level, {x2, y2}),
                                         norm_coeff(i64(c) * sgn, a.p));
                    }
                }
            return out;
        }
        case NodeKind::Prod: {
            std::vector<TPair> acc{{unit_leaf(Side::Hom), unit_leaf(Side::Hom), 1}};
            for (auto& k : m.kids) {
                auto dk = diag(a, *k, psi);
                std::vector<TPair> next;
                for (auto& [a1, a2, ca] : acc)
                    for (auto& [b1, b2, cb] : dk) {
                        int sgn = sign_pow(degree(a, *a2) * degree(a, *b1));
                        int c = norm_coeff(i64(ca) * cb * sgn, a.p);
                        if (c)
                            next.emplace_back(star(Side::Hom, {a1, b1}),
                                              star(Side::Hom, {a2, b2}), c);
                    }
                acc = std::move(next);
            }
            return acc;
        }
        default:
            throw std::invalid_argument(
                "diagonal_cartan: only leaves, upper-indexed operations, binary "
                "brackets and products are supported");
    }
}

}  // namespace

TensorLin diagonal_cartan(const Ambient& a, const MonoPtr& e,
                          const std::map<std::string, Coproduct>& psi) {
    TensorLin out;
    for (auto& [x1, x2, c] : diag(a, *e, psi)) out.terms.push_back({{x1, x2}, c});
    return tensor_simplify(a, out);
}

TensorLin tensor_simplify(const Ambient& a, const TensorLin& t) {
    std::map<std::string, std::pair<std::vector<MonoPtr>, i64>> acc;
    for (auto& [word, c] : t.terms) {
        std::string key;
        for (auto& m : word) key += render(*m) + " (x) ";
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::make_pair(word, i64(c)));
        else
            it->second.second += c;
    }
    TensorLin out;
    for (auto& [key, wc] : acc) {
        (void)key;
        int v = norm_coeff(wc.second, a.p);
        if (v) out.terms.push_back({wc.first, v});
    }
    return out;
}

bool tensor_equal(const Ambient& a, const TensorLin& x, const TensorLin& y) {
    return render(tensor_simplify(a, x)) == render(tensor_simplify(a, y));
}

std::string render(const TensorLin& t) {
    if (t.terms.empty()) return "0";
    std::vector<std::pair<std::string, int>> parts;
    for (auto& [word, c] : t.terms) {
        std::string key;
        for (std::size_t i = 0; i < word.size(); ++i)
            key += (i ? " (x) " : "") + render(*word[i]);
        parts.emplace_back(key, c);
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto& [k, c] : parts) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + " ";
        s += k;
    }
    return s;
}

}  // namespace opal::opcalc
