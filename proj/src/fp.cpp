#include "opal/fp.hpp"

#include <stdexcept>

namespace opal {

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

int pow_mod(i64 base, i64 exp, int p) {
    i64 b = ((base % p) + p) % p, r = 1;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<int>(r);
}

int inv_mod(i64 a, int p) {
    a = ((a % p) + p) % p;
    if (a == 0) throw std::domain_error("inv_mod: zero is not invertible");
    return pow_mod(a, p - 2, p);
}

namespace {

// C(n, k) mod p for 0 <= n, k < p, from factorials computed on the fly.
int binom_small(int n, int k, int p) {
    if (k < 0 || k > n) return 0;
    i64 num = 1, den = 1;
    for (int j = 0; j < k; ++j) {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    return static_cast<int>(num * inv_mod(den, p) % p);
}

}  // namespace

int binom_mod(i64 n, i64 k, int p) {
    if (n < 0 || k < 0) throw std::invalid_argument("binom_mod: negative argument");
    if (k > n) return 0;
    i64 r = 1;
    while (n > 0 || k > 0) {
        int nd = static_cast<int>(n % p), kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        r = r * binom_small(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<int>(r);
}

int binom_signed(i64 n, i64 k, int p) {
    if (k < 0) return 0;
    if (n >= 0) return binom_mod(n, k, p);
    int c = binom_mod(k - n - 1, k, p);
    return ((sign_pow(k) * c) % p + p) % p;
}

CoeffTables::CoeffTables(int p) : p_(p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("CoeffTables: p must be an odd prime");
    fact_.resize(p);
    inv_.resize(p);
    fact_[0] = 1;
    for (int n = 1; n < p; ++n) fact_[n] = static_cast<int>(i64(fact_[n - 1]) * n % p);
    inv_[0] = 0;
    for (int a = 1; a < p; ++a) inv_[a] = inv_mod(a, p);
}

int CoeffTables::inv(int a) const {
    int r = ((a % p_) + p_) % p_;
    if (r == 0) throw std::domain_error("CoeffTables::inv: zero is not invertible");
    return inv_[r];
}

int CoeffTables::nu(i64 q) const {
    // exponent (p-1)q/2 = ((p-1)/2) q, so only the parity of ((p-1)/2) q matters
    int s = sign_pow(((p_ - 1) / 2) % 2 * (q % 2));
    return ((s * half_factorial()) % p_ + p_) % p_;
}

int CoeffTables::gamma(i64 q, i64 r) const {
    if (r < 0) throw std::invalid_argument("CoeffTables::gamma: r must be >= 0");
    i64 t = r / (p_ - 1);
    i64 v = 1;
    for (i64 i = 0; i < t; ++i) v = v * nu(q + i) % p_;
    return static_cast<int>(v);
}

int CoeffTables::lambda_(i64 q, i64 n) const {
    if (n < 1) throw std::invalid_argument("CoeffTables::lambda_: n must be >= 1");
    i64 v = 1;
    for (i64 i = 0; i + 2 <= n; ++i) v = v * nu(q + i) % p_;
    return static_cast<int>(v);
}

bool CoeffTables::half_factorial_square_identity() const {
    int lhs = static_cast<int>(i64(half_factorial()) * half_factorial() % p_);
    int rhs = ((sign_pow((p_ + 1) / 2) % p_) + p_) % p_;
    return lhs == rhs;
}

}  // namespace opal
