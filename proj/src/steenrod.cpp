#include "opal/steenrod.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::steenrod {

i64 Monomial::degree(int p) const {
    i64 d = 0;
    for (i64 v : s) d += 2 * v * (p - 1);
    for (int e : eps) d += e;
    return d;
}

std::vector<i64> Monomial::packed() const {
    std::vector<i64> w;
    w.reserve(2 * s.size() + 1);
    w.push_back(eps[0]);
    for (std::size_t i = 0; i < s.size(); ++i) {
        w.push_back(s[i]);
        w.push_back(eps[i + 1]);
    }
    return w;
}

Monomial Monomial::from_packed(const std::vector<i64>& w) {
    if (w.size() % 2 == 0) throw std::invalid_argument("packed word must have odd length");
    Monomial m;
    m.eps.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i % 2 == 0) {
            if (w[i] != 0 && w[i] != 1) throw std::invalid_argument("Bockstein bit must be 0/1");
            m.eps.push_back(static_cast<int>(w[i]));
        } else {
            if (w[i] < 1) throw std::invalid_argument("power exponent must be >= 1");
            m.s.push_back(w[i]);
        }
    }
    return m;
}

Word Monomial::letters() const {
    Word w;
    if (eps[0]) w.push_back(Letter::B());
    for (std::size_t i = 0; i < s.size(); ++i) {
        w.push_back(Letter::P(s[i]));
        if (eps[i + 1]) w.push_back(Letter::B());
    }
    return w;
}

std::string Monomial::str() const {
    if (s.empty()) return eps[0] ? "b" : "1";
    std::string out = eps[0] ? "b " : "";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += "P" + std::to_string(s[i]);
        if (eps[i + 1]) out += " b";
        if (i + 1 < s.size()) out += " ";
    }
    return out;
}

bool Monomial::operator<(const Monomial& o) const {
    auto a = packed(), b = o.packed();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool is_admissible(const Monomial& m, int p) {
    for (std::size_t i = 0; i + 1 < m.s.size(); ++i)
        if (m.s[i] < p * m.s[i + 1] + m.eps[i + 1]) return false;
    return true;
}

Element Element::unit(int p) {
    Element e(p);
    e.terms[Monomial{}] = 1;
    return e;
}

void Element::add_term(const Monomial& m, i64 c) {
    c = ((c % p) + p) % p;
    if (!c) return;
    auto [it, inserted] = terms.try_emplace(m, static_cast<int>(c));
    if (!inserted) {
        it->second = static_cast<int>((it->second + c) % p);
        if (!it->second) terms.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

Element Element::scaled(i64 c) const {
    Element out(p);
    for (auto& [m, v] : terms) out.add_term(m, v * c);
    return out;
}

bool Element::is_homogeneous(i64* deg) const {
    if (terms.empty()) return true;
    i64 d = terms.begin()->first.degree(p);
    for (auto& [m, c] : terms)
        if (m.degree(p) != d) return false;
    if (deg) *deg = d;
    return true;
}

std::string Element::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms) {
        if (!out.empty()) out += " + ";
        bool unit = m.s.empty() && !m.eps[0];
        if (c != 1)
            out += std::to_string(c) + (unit ? "" : " ");
        else if (unit)
            out += "1";
        if (!unit) out += m.str();
    }
    return out;
}

AdemContext::AdemContext(int p) : p_(p), ct_(p) {}

Element adem_reduce(const Word& w, int p) {
    AdemContext ctx(p);
    return ctx.reduce_word(w);
}

Element AdemContext::reduce_word(const Word& w) {
    Element e = Element::unit(p_);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Element next(p_);
        for (auto& [m, c] : e.terms) next += mult_letter(*it, m).scaled(c);
        e = std::move(next);
    }
    return e;
}

Element AdemContext::mult_word(const Word& w, const Element& e) {
    Element out(p_);
    for (auto& [m, c] : e.terms) {
        Element acc(p_);
        acc.add_term(m, 1);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            Element next(p_);
            for (auto& [mm, cc] : acc.terms) next += mult_letter(*it, mm).scaled(cc);
            acc = std::move(next);
        }
        out += acc.scaled(c);
    }
    return out;
}

Element AdemContext::mult_letter(const Letter& f, const Monomial& m) {
    if (!f.bock && f.s == 0) {  // P^0 = id
        Element e(p_);
        e.add_term(m, 1);
        return e;
    }
    std::pair<i64, std::vector<i64>> key{f.bock ? -1 : f.s, m.packed()};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    Element out(p_);
    if (f.bock) {
        if (m.eps[0] == 0) {  // beta beta = 0 otherwise
            Monomial n = m;
            n.eps[0] = 1;
            out.add_term(n, 1);
        }
        cache_.emplace(key, out);
        return out;
    }

    i64 a = f.s;
    int e0 = m.eps[0];
    if (m.s.empty()) {
        Monomial n;
        n.s = {a};
        n.eps = {0, e0};
        out.add_term(n, 1);
    } else if (a >= p_ * m.s[0] + e0) {
        Monomial n = m;
        n.s.insert(n.s.begin(), a);
        n.eps[0] = 0;
        n.eps.insert(n.eps.begin() + 1, e0);
        out.add_term(n, 1);
    } else {
        // tail = monomial after the leading beta^{e0} P^{s1}: beta^{e1} P^{s2} ...
        i64 b = m.s[0];
        Monomial tail = m;
        tail.s.erase(tail.s.begin());
        tail.eps.erase(tail.eps.begin());

        if (e0 == 0) {
            // P^a P^b, a < pb
            for (i64 t = 0; t <= a / p_; ++t) {
                int c = binom_mod((p_ - 1) * (b - t) - 1, a - p_ * t, p_);
                if (!c) continue;
                i64 sign = sign_pow(a + t);
                Element inner = mult_letter(Letter::P(t), tail);
                Element piece(p_);
                for (auto& [mm, cc] : inner.terms)
                    piece += mult_letter(Letter::P(a + b - t), mm).scaled(cc);
                out += piece.scaled(sign * c);
            }
        } else {
            // P^a beta P^b, a <= pb
            for (i64 t = 0; t <= a / p_; ++t) {
                int c = binom_mod((p_ - 1) * (b - t), a - p_ * t, p_);
                if (!c) continue;
                i64 sign = sign_pow(a + t);
                Element inner = mult_letter(Letter::P(t), tail);
                Element piece(p_);
                for (auto& [mm, cc] : inner.terms)
                    piece += mult_letter(Letter::P(a + b - t), mm).scaled(cc);
                Element withb(p_);
                for (auto& [mm, cc] : piece.terms) withb += mult_letter(Letter::B(), mm).scaled(cc);
                out += withb.scaled(sign * c);
            }
            for (i64 t = 0; a - p_ * t - 1 >= 0; ++t) {
                int c = binom_mod((p_ - 1) * (b - t) - 1, a - p_ * t - 1, p_);
                if (!c) continue;
                i64 sign = -sign_pow(a + t);  // (-1)^{a+t-1}
                Element inner = mult_letter(Letter::P(t), tail);
                Element withb(p_);
                for (auto& [mm, cc] : inner.terms) withb += mult_letter(Letter::B(), mm).scaled(cc);
                Element piece(p_);
                for (auto& [mm, cc] : withb.terms)
                    piece += mult_letter(Letter::P(a + b - t), mm).scaled(cc);
                out += piece.scaled(sign * c);
            }
        }
    }
    cache_.emplace(key, out);
    return out;
}

namespace {

void gen_tail(i64 d, i64 s_prev, int p, Monomial& acc, std::vector<Monomial>& out) {
    // terminate with the trailing Bockstein bit
    if (d == 0 || d == 1) {
        Monomial m = acc;
        m.eps.push_back(static_cast<int>(d));
        out.push_back(std::move(m));
        if (d == 0) return;  // d == 1 could also continue via eps=1 + powers below
    }
    for (int eps = 0; eps <= 1; ++eps) {
        i64 smax = (s_prev - eps) / p;
        for (i64 sn = 1; sn <= smax && 2 * sn * (p - 1) + eps <= d; ++sn) {
            acc.eps.push_back(eps);
            acc.s.push_back(sn);
            gen_tail(d - eps - 2 * sn * (p - 1), sn, p, acc, out);
            acc.s.pop_back();
            acc.eps.pop_back();
        }
    }
}

}  // namespace

std::vector<Monomial> basis_in_degree(i64 d, int p, i64 max_degree) {
    if (d > max_degree)
        throw std::invalid_argument("basis_in_degree: degree exceeds the guard bound");
    std::vector<Monomial> out;
    if (d < 0) return out;
    for (int e0 = 0; e0 <= 1; ++e0) {
        if (d == e0) {
            Monomial m;
            m.eps = {e0};
            out.push_back(m);
            continue;
        }
        for (i64 s1 = 1; 2 * s1 * (p - 1) + e0 <= d; ++s1) {
            Monomial acc;
            acc.eps = {e0};
            acc.s = {s1};
            std::vector<Monomial> tails;
            gen_tail(d - e0 - 2 * s1 * (p - 1), s1, p, acc, tails);
            for (auto& m : tails) out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct SpanSearch {
    int p;
    i64 k, max_top, max_words;
    AdemContext ctx;
    std::vector<Monomial> basis;
    std::map<Monomial, i64> index;
    FpSolver solver;
    std::vector<std::vector<i64>> words;
    SparseVec target;
    bool found = false;
    std::vector<std::pair<std::size_t, int>> combo;

    SpanSearch(int p_, i64 k_, i64 max_top_, i64 max_words_, i64 d, i64 max_degree)
        : p(p_), k(k_), max_top(max_top_), max_words(max_words_), ctx(p_),
          basis(basis_in_degree(d, p_, max_degree)),
          solver(p_, static_cast<i64>(basis.size())) {
        for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<i64>(i);
    }

    SparseVec vec_of(const Element& e) {
        std::vector<std::pair<i64, int>> v;
        for (auto& [m, c] : e.terms) v.emplace_back(index.at(m), c);
        std::sort(v.begin(), v.end());
        return v;
    }

    // remaining: power-sum still to place; exponents tried largest first
    void dfs(i64 remaining, i64 top_used, std::vector<i64>& word) {
        if (found || static_cast<i64>(words.size()) >= max_words) return;
        if (remaining == 0) {
            Word w;
            for (i64 e : word) w.push_back(Letter::P(e));
            Element red = ctx.reduce_word(w);
            words.push_back(word);
            bool grew = solver.add_row(vec_of(red));
            if (grew && solver.in_span(target, &combo)) found = true;
            return;
        }
        i64 pj = 1;
        std::vector<i64> exps;
        for (i64 j = 0; j <= k; ++j, pj *= p) exps.push_back(pj);
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
            i64 e = *it;
            if (e > remaining) continue;
            bool is_top = (e == exps.back());
            if (is_top && max_top >= 0 && top_used >= max_top) continue;
            word.push_back(e);
            dfs(remaining - e, top_used + (is_top ? 1 : 0), word);
            word.pop_back();
            if (found) return;
        }
    }
};

}  // namespace

MembershipResult membership_in_word_span(const Element& x, i64 k, i64 max_top_factors,
                                         i64 max_words, i64 max_degree) {
    MembershipResult res;
    if (x.is_zero()) {
        res.in_span = true;
        return res;
    }
    i64 d = 0;
    if (!x.is_homogeneous(&d))
        throw std::invalid_argument("membership_in_word_span: element must be homogeneous");
    if (d % (2 * (x.p - 1)) != 0) return res;  // words have degree 2(p-1) * power-sum
    // Bocksteins never arise in power words; reject targets that carry them
    for (auto& [m, c] : x.terms)
        for (int e : m.eps)
            if (e) return res;

    SpanSearch search(x.p, k, max_top_factors, max_words, d, max_degree);
    search.target = search.vec_of(x);
    std::vector<i64> word;
    search.dfs(d / (2 * (x.p - 1)), 0, word);

    res.words_tried = static_cast<i64>(search.words.size());
    res.rank = search.solver.rank();
    res.basis_dim = static_cast<i64>(search.basis.size());
    res.in_span = search.found;
    if (search.found)
        for (auto& [idx, c] : search.combo) res.witness.emplace_back(search.words[idx], c);
    return res;
}

bool SubalgReport::ok() const {
    if (!relation_ok || !i0_vanishes || !decomposition_ok) return false;
    for (auto& t : terms)
        if (!t.outer.in_span || !t.inner.in_span) return false;
    return max_top_factors_seen <= p - 1;
}

SubalgReport verify_subalg_lemma(int p, i64 k) {
    if (k < 1) throw std::invalid_argument("verify_subalg_lemma: k >= 1 required");
    SubalgReport rep;
    rep.p = p;
    rep.k = k;
    i64 pk = 1;
    for (i64 j = 0; j < k; ++j) pk *= p;
    i64 a = pk, b = (p - 1) * pk;

    AdemContext ctx(p);
    Element lhs = ctx.reduce_word({Letter::P(a), Letter::P(b)});

    // closed-form right side of the rewriting, coefficients c_t for t >= 1
    Element rhs(p);
    i64 pk1 = pk / p;  // p^{k-1}
    std::vector<std::pair<i64, int>> coeffs;
    for (i64 t = 1; t <= pk1; ++t) {
        int c = binom_mod((p - 1) * (b - t) - 1, a - p * t, p);
        if (!c) continue;
        int sc = static_cast<int>(((sign_pow(a + t) * c) % p + p) % p);
        coeffs.emplace_back(t, sc);
        rhs += ctx.reduce_word({Letter::P(a + b - t), Letter::P(t)}).scaled(sc);
    }
    rep.relation_ok = (lhs == rhs);

    // the t = 0 coefficient vanishes: C((p-1)^2 p^k - 1, p^k) == 0 mod p
    i64 n0 = (p - 1) * b - 1;
    rep.i0_vanishes = (binom_mod(n0, a, p) == 0);
    for (i64 v = n0; v > 0; v /= p) rep.i0_digits.push_back(static_cast<int>(v % p));
    // P^{p^k} has digit 1 at position k; the vanishing needs digit(n0, k) == 0
    rep.failing_digit = (static_cast<i64>(rep.i0_digits.size()) > k && rep.i0_digits[k] == 0) ? k : -1;

    Element assembled(p);
    for (auto& [t, c] : coeffs) {
        SubalgTerm term;
        term.i = t;
        term.coeff = c;
        Element outer(p);
        outer.add_term(Monomial::from_packed({0, a + b - t, 0}), 1);
        term.outer = membership_in_word_span(outer, k, p - 1);
        Element inner(p);
        inner.add_term(Monomial::from_packed({0, t, 0}), 1);
        term.inner = membership_in_word_span(inner, k - 1);

        if (term.outer.in_span && term.inner.in_span) {
            for (auto& [wo, co] : term.outer.witness) {
                i64 tops = static_cast<i64>(std::count(wo.begin(), wo.end(), pk));
                rep.max_top_factors_seen = std::max(rep.max_top_factors_seen, tops);
                for (auto& [wi, ci] : term.inner.witness) {
                    Word w;
                    for (i64 e : wo) w.push_back(Letter::P(e));
                    for (i64 e : wi) w.push_back(Letter::P(e));
                    assembled += ctx.reduce_word(w).scaled(i64(c) * co % p * ci % p);
                }
            }
        }
        rep.terms.push_back(std::move(term));
    }
    rep.decomposition_ok = (assembled == lhs);
    return rep;
}

}  // namespace opal::steenrod
