#include "opal/unstable.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal::unstable {

i64 GradedFpModule::degree_of(const SparseVec& v) const {
    if (v.empty()) throw std::invalid_argument("degree_of: zero element has no degree");
    i64 d = basis.at(v.front().first).deg;
    for (auto& [i, c] : v)
        if (basis.at(i).deg != d) throw std::invalid_argument("degree_of: inhomogeneous element");
    return d;
}

namespace {

// entries of one operation matrix acting on basis column j
SparseVec column_of(const std::vector<Trip>& mat, i64 j, int p) {
    SparseVec out;
    for (auto& t : mat)
        if (t.col == j) out.emplace_back(t.row, ((t.c % p) + p) % p);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::string> validate_module(const GradedFpModule& m) {
    std::vector<std::string> bad;
    if (!is_prime(m.p) || m.p < 3) bad.push_back("p must be an odd prime");
    for (auto& b : m.basis)
        if (!m.basis.empty() && m.lo <= m.hi && (b.deg < m.lo || b.deg > m.hi))
            bad.push_back("class " + b.name + " outside the degree window");
    bool indices_ok = true;
    auto check_mat = [&](const std::vector<Trip>& mat, i64 opdeg, const std::string& tag) {
        for (auto& t : mat) {
            if (t.row < 0 || t.row >= m.dim() || t.col < 0 || t.col >= m.dim()) {
                bad.push_back(tag + ": index out of range");
                indices_ok = false;
                continue;
            }
            if (t.c % m.p == 0) bad.push_back(tag + ": zero coefficient entry");
            if (m.basis[t.row].deg != m.basis[t.col].deg + opdeg)
                bad.push_back(tag + ": entry violates degree bookkeeping");
        }
    };
    check_mat(m.beta, 1, "beta");
    for (auto& [i, mat] : m.powers) {
        if (i < 1) bad.push_back("powers: exponent must be >= 1 (P^0 is implicit)");
        check_mat(mat, 2 * i * (m.p - 1), "P^" + std::to_string(i));
    }
    // beta^2 = 0 wherever both applications stay in the window; needs sane
    // indices to even be computable
    for (i64 j = 0; indices_ok && j < m.dim(); ++j) {
        auto once = apply_beta(m, basis_vec(j));
        if (!once.ok()) continue;
        auto twice = apply_beta(m, once.value);
        if (twice.ok() && !twice.value.empty())
            bad.push_back("beta^2 != 0 on " + m.basis[j].name);
    }
    return bad;
}

SparseVec basis_vec(i64 index) { return {{index, 1}}; }

ApplyResult apply_power(const GradedFpModule& m, i64 i, const SparseVec& v) {
    if (i < 0) throw std::invalid_argument("apply_power: negative exponent");
    ApplyResult res;
    if (i == 0) {
        res.value = v;
        return res;
    }
    i64 opdeg = 2 * i * (m.p - 1);
    auto it = m.powers.find(i);
    for (auto& [j, c] : v) {
        i64 target = m.basis.at(j).deg + opdeg;
        if (target > m.hi || target < m.lo) {
            if (!m.complete) {
                res.status = ApplyStatus::OutOfRange;
                return res;
            }
            continue;  // complete module: zero out there
        }
        if (it == m.powers.end()) continue;
        res.value = sparse_axpy(res.value, column_of(it->second, j, m.p), c, m.p);
    }
    return res;
}

ApplyResult apply_beta(const GradedFpModule& m, const SparseVec& v) {
    ApplyResult res;
    for (auto& [j, c] : v) {
        i64 target = m.basis.at(j).deg + 1;
        if (target > m.hi || target < m.lo) {
            if (!m.complete) {
                res.status = ApplyStatus::OutOfRange;
                return res;
            }
            continue;
        }
        res.value = sparse_axpy(res.value, column_of(m.beta, j, m.p), c, m.p);
    }
    return res;
}

ApplyResult apply_op(const GradedFpModule& m, int eps, i64 i, const SparseVec& v) {
    ApplyResult r = apply_power(m, i, v);
    if (!r.ok() || !eps) return r;
    return apply_beta(m, r.value);
}

UnstableReport check_unstable(const GradedFpModule& m) {
    UnstableReport rep;
    for (i64 j = 0; j < m.dim(); ++j) {
        i64 d = m.basis[j].deg;
        // P^0 = identity: a class in negative degree is itself a violation
        if (d < 0) {
            rep.ok = false;
            rep.violations.push_back({j, 0, 0});
        }
        // beta on degree <= 0 classes must vanish (2*0 + 1 > d)
        if (d <= 0) {
            auto b = apply_beta(m, basis_vec(j));
            if (!b.ok())
                ++rep.unverifiable;
            else if (!b.value.empty()) {
                rep.ok = false;
                rep.violations.push_back({j, 0, 1});
            }
        }
        for (auto& [i, mat] : m.powers) {
            (void)mat;
            for (int eps = 0; eps <= 1; ++eps) {
                if (2 * i + eps <= d) continue;
                auto r = apply_op(m, eps, i, basis_vec(j));
                if (!r.ok())
                    ++rep.unverifiable;
                else if (!r.value.empty()) {
                    rep.ok = false;
                    rep.violations.push_back({j, i, eps});
                }
            }
        }
    }
    return rep;
}

bool is_unstable(const GradedFpModule& m) { return check_unstable(m).ok; }

AdemComplianceReport check_adem_compliance(const GradedFpModule& m) {
    AdemComplianceReport rep;
    if (m.is_zero()) return rep;
    steenrod::AdemContext ctx(m.p);
    i64 bmax = (m.hi - m.lo) / (2 * (m.p - 1)) + 1;

    auto apply_element = [&](const steenrod::Element& e, i64 j, bool& in_range) -> SparseVec {
        SparseVec acc;
        in_range = true;
        for (auto& [mono, c] : e.terms) {
            // apply the monomial letters right-to-left
            ApplyResult cur;
            cur.value = basis_vec(j);
            auto letters = mono.letters();
            for (auto it = letters.rbegin(); it != letters.rend() && cur.ok(); ++it)
                cur = it->bock ? apply_beta(m, cur.value) : apply_power(m, it->s, cur.value);
            if (!cur.ok()) {
                in_range = false;
                return {};
            }
            acc = sparse_axpy(acc, cur.value, c, m.p);
        }
        return acc;
    };

    auto compare = [&](const steenrod::Word& w, i64 j) {
        bool ok1 = true, ok2 = true;
        // direct application of the word
        ApplyResult cur;
        cur.value = basis_vec(j);
        for (auto it = w.rbegin(); it != w.rend() && cur.ok(); ++it)
            cur = it->bock ? apply_beta(m, cur.value) : apply_power(m, it->s, cur.value);
        ok1 = cur.ok();
        SparseVec via_adem = apply_element(ctx.reduce_word(w), j, ok2);
        if (!ok1 || !ok2) {
            ++rep.pairs_skipped;
            return;
        }
        ++rep.pairs_checked;
        if (cur.value != via_adem && rep.ok) {
            rep.ok = false;
            rep.first_failure = "word on basis index " + std::to_string(j);
        }
    };

    for (i64 j = 0; j < m.dim(); ++j) {
        for (i64 b = 1; b <= bmax; ++b) {
            for (i64 a = 1; a < m.p * b; ++a)
                compare({steenrod::Letter::P(a), steenrod::Letter::P(b)}, j);
            for (i64 a = 1; a <= m.p * b; ++a)
                compare({steenrod::Letter::P(a), steenrod::Letter::B(), steenrod::Letter::P(b)}, j);
        }
    }
    return rep;
}

GradedFpModule shift(const GradedFpModule& m, i64 n) {
    GradedFpModule out = m;
    for (auto& b : out.basis) b.deg += n;
    out.lo += n;
    out.hi += n;
    return out;
}

i64 desuspension_index(const GradedFpModule& m) {
    if (m.is_zero()) throw std::invalid_argument("desuspension_index: zero module");
    if (!m.complete)
        throw std::invalid_argument("desuspension_index: module must be complete");
    if (!is_unstable(m)) throw std::invalid_argument("desuspension_index: module not unstable");
    i64 mindeg = m.basis.front().deg;
    for (auto& b : m.basis) mindeg = std::min(mindeg, b.deg);
    for (i64 n = 1;; ++n) {
        if (!is_unstable(shift(m, -n))) return n - 1;
        if (n > mindeg) throw std::logic_error("desuspension descent failed to terminate");
    }
}

DesuspensionReport find_desuspension_classes(const GradedFpModule& m) {
    DesuspensionReport rep;
    rep.index = desuspension_index(m);
    for (i64 j = 0; j < m.dim(); ++j) {
        i64 d = m.basis[j].deg - rep.index;
        if (d < 0) continue;
        if (d % 2 == 0) {
            auto r = apply_op(m, 0, d / 2, basis_vec(j));
            if (r.ok() && !r.value.empty()) rep.classes.push_back({j, true});
        } else {
            auto r = apply_op(m, 1, (d - 1) / 2, basis_vec(j));
            if (r.ok() && !r.value.empty()) rep.classes.push_back({j, false});
        }
    }
    return rep;
}

GradedFpModule tensor(const GradedFpModule& a, const GradedFpModule& b) {
    if (a.p != b.p) throw std::invalid_argument("tensor: mismatched primes");
    if (!a.complete || !b.complete)
        throw std::invalid_argument("tensor: factors must be complete modules");
    GradedFpModule out;
    out.p = a.p;
    out.complete = true;
    out.lo = a.lo + b.lo;
    out.hi = a.hi + b.hi;

    // basis ordered by degree, then by (left, right) index
    std::vector<std::pair<i64, i64>> pairs;
    for (i64 i = 0; i < a.dim(); ++i)
        for (i64 j = 0; j < b.dim(); ++j) pairs.emplace_back(i, j);
    std::stable_sort(pairs.begin(), pairs.end(), [&](auto& x, auto& y) {
        i64 dx = a.basis[x.first].deg + b.basis[x.second].deg;
        i64 dy = a.basis[y.first].deg + b.basis[y.second].deg;
        if (dx != dy) return dx < dy;
        return x < y;
    });
    std::map<std::pair<i64, i64>, i64> index;
    for (auto& pr : pairs) {
        index[pr] = out.dim();
        out.basis.push_back(
            {a.basis[pr.first].name + "⊗" + b.basis[pr.second].name,
             a.basis[pr.first].deg + b.basis[pr.second].deg});
    }
    if (out.basis.empty()) {
        out.lo = 0;
        out.hi = -1;
        return out;
    }

    auto add_entries = [&](std::vector<Trip>& mat, i64 col, const SparseVec& va, const SparseVec& vb,
                           int sign) {
        for (auto& [ia, ca] : va)
            for (auto& [ib, cb] : vb) {
                int c = static_cast<int>((i64(ca) * cb % out.p) * ((sign % out.p) + out.p) % out.p);
                c = ((c % out.p) + out.p) % out.p;
                if (!c) continue;
                mat.push_back({index.at({ia, ib}), col, c});
            }
    };

    for (auto& pr : pairs) {
        i64 col = index.at(pr);
        auto [i, j] = pr;
        // beta(x ⊗ y) = beta x ⊗ y + (-1)^{|x|} x ⊗ beta y
        auto ba = apply_beta(a, basis_vec(i));
        auto bb = apply_beta(b, basis_vec(j));
        add_entries(out.beta, col, ba.value, basis_vec(j), 1);
        add_entries(out.beta, col, basis_vec(i), bb.value,
                    a.basis[i].deg % 2 == 0 ? 1 : -1);
        // P^k via Cartan
        i64 kmax = (out.hi - (a.basis[i].deg + b.basis[j].deg)) / (2 * (out.p - 1));
        for (i64 k = 1; k <= kmax; ++k) {
            std::vector<Trip>& mat = out.powers[k];
            for (i64 u = 0; u <= k; ++u) {
                auto pa = apply_power(a, u, basis_vec(i));
                auto pb = apply_power(b, k - u, basis_vec(j));
                add_entries(mat, col, pa.value, pb.value, 1);
            }
        }
    }
    // combine duplicate entries and drop zero columns/rows of the maps
    auto normalize = [&](std::vector<Trip>& mat) {
        std::map<std::pair<i64, i64>, i64> acc;
        for (auto& t : mat) acc[{t.row, t.col}] += t.c;
        mat.clear();
        for (auto& [rc, c] : acc) {
            int cc = static_cast<int>(((c % out.p) + out.p) % out.p);
            if (cc) mat.push_back({rc.first, rc.second, cc});
        }
    };
    normalize(out.beta);
    for (auto it = out.powers.begin(); it != out.powers.end();) {
        normalize(it->second);
        it = it->second.empty() ? out.powers.erase(it) : std::next(it);
    }

    // instability is inherited; verify rather than assume
    if (is_unstable(a) && is_unstable(b) && !is_unstable(out))
        throw std::logic_error("tensor: instability was not preserved");
    return out;
}

GradedFpModule single_class_module(int p, const std::string& name, i64 deg) {
    GradedFpModule m;
    m.p = p;
    m.basis = {{name, deg}};
    m.lo = m.hi = deg;
    m.complete = true;
    return m;
}

}  // namespace opal::unstable
