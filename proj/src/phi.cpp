#include "opal/phi.hpp"

#include <stdexcept>
#include <string>

namespace opal::phi {

namespace {

std::string bzp_name(i64 n, int eps) {
    if (n == 0) return eps ? "s" : "1";
    std::string t = "t^" + std::to_string(n);
    return eps ? t + " s" : t;
}

i64 ipow(i64 b, i64 e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

GradedFpModule make_bzp_cohomology(int p, i64 cap) {
    if (cap < 0) throw std::invalid_argument("make_bzp_cohomology: negative cap");
    GradedFpModule m;
    m.p = p;
    m.complete = false;  // truncation of an infinite module
    m.lo = 0;
    m.hi = cap;
    // basis ordered by degree: t^n (2n), t^n s (2n+1)
    for (i64 d = 0; d <= cap; ++d) {
        i64 n = d / 2;
        int eps = static_cast<int>(d % 2);
        m.basis.push_back({bzp_name(n, eps), d});
    }
    // beta(t^n s) = t^{n+1}
    for (i64 d = 1; d + 1 <= cap; d += 2)
        m.beta.push_back({d + 1, d, 1});
    // P^i(t^n s^eps) = C(n, i) t^{n + i(p-1)} s^eps
    for (i64 d = 0; d <= cap; ++d) {
        i64 n = d / 2;
        for (i64 i = 1; i <= n; ++i) {
            i64 target = d + 2 * i * (p - 1);
            if (target > cap) break;
            int c = binom_mod(n, i, p);
            if (c) m.powers[i].push_back({target, d, c});
        }
    }
    return m;
}

i64 bzp_index(const GradedFpModule& bzp, i64 n, int eps) {
    i64 d = 2 * n + eps;
    return (n >= 0 && d <= bzp.hi) ? d : -1;
}

ApplyResult bzp_action(const GradedFpModule& bzp, int eps_op, i64 i, i64 n, int eps) {
    ApplyResult res;
    i64 src = bzp_index(bzp, n, eps);
    if (src < 0) throw std::invalid_argument("bzp_action: source beyond the window");
    if (eps_op) {  // the Bockstein
        if (eps == 0) return res;
        i64 tgt = bzp_index(bzp, n + 1, 0);
        if (tgt < 0) {
            res.status = unstable::ApplyStatus::OutOfRange;
            return res;
        }
        res.value = {{tgt, 1}};
        return res;
    }
    if (i == 0) {
        res.value = {{src, 1}};
        return res;
    }
    int c = (i <= n) ? binom_mod(n, i, bzp.p) : 0;
    if (!c) return res;  // genuinely zero, independent of the window
    i64 tgt = bzp_index(bzp, n + i * (bzp.p - 1), eps);
    if (tgt < 0) {
        res.status = unstable::ApplyStatus::OutOfRange;
        return res;
    }
    res.value = {{tgt, c}};
    return res;
}

GradedFpModule make_phi_range(int p, i64 k, i64 l) {
    if (k < 0 || l <= k) throw std::invalid_argument("make_phi_range: need 0 <= k < l");
    GradedFpModule m;
    m.p = p;
    m.complete = true;  // honest quotient: zero outside is provable
    for (i64 j = k; j <= l; ++j) {
        i64 pj = ipow(p, j);
        m.basis.push_back({"t^" + std::to_string(pj), 2 * pj});
        if (j < l) m.powers[pj].push_back({j - k + 1, j - k, 1});
    }
    m.lo = m.basis.front().deg;
    m.hi = m.basis.back().deg;
    return m;
}

GradedFpModule make_phi(int p, i64 k, i64 cap) {
    if (k < 0) throw std::invalid_argument("make_phi: k >= 0 required");
    GradedFpModule m;
    m.p = p;
    m.complete = false;  // truncation of the infinite submodule
    m.lo = 2 * ipow(p, k);
    m.hi = cap;
    for (i64 j = k;; ++j) {
        i64 pj = ipow(p, j);
        if (2 * pj > cap) break;
        m.basis.push_back({"t^" + std::to_string(pj), 2 * pj});
        if (2 * pj * p <= cap) m.powers[pj].push_back({j - k + 1, j - k, 1});
    }
    if (m.basis.empty()) throw std::invalid_argument("make_phi: cap below the generator degree");
    return m;
}

TensorPhiResult tensor_with_phi(const GradedFpModule& m, i64 k) {
    if (m.is_zero()) throw std::invalid_argument("tensor_with_phi: zero module");
    TensorPhiResult out;
    out.k = k;
    out.module = unstable::tensor(m, make_phi_range(m.p, k, k + 2));
    for (i64 j = 0; j < 3; ++j) {
        i64 block = 2 * ipow(m.p, k + j);
        out.blocks[static_cast<std::size_t>(j)] = {m.lo + block, m.hi + block};
    }
    return out;
}

}  // namespace opal::phi
