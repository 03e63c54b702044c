#pragma once
// Arithmetic mod an odd prime p: binomial coefficients via base-p digits,
// inverses, and the coefficient functions nu/gamma/lambda used throughout
// the operation calculus.

#include <cstdint>
#include <vector>

namespace opal {

using i64 = std::int64_t;

bool is_prime(i64 n);

// (-1)^e as +1/-1 (e may be negative).
inline int sign_pow(i64 e) { return (e % 2 == 0) ? 1 : -1; }

// base^exp mod p, exp >= 0.
int pow_mod(i64 base, i64 exp, int p);

// Inverse of a mod p via Fermat; throws std::domain_error when a == 0 mod p.
int inv_mod(i64 a, int p);

// C(n, k) mod p for n, k >= 0, digit by digit in base p.
int binom_mod(i64 n, i64 k, int p);

// C(n, k) mod p allowing negative n, via C(n,k) = (-1)^k C(k-n-1, k).
// Zero for k < 0.  Needed by the homology-side Nishida coefficients.
int binom_signed(i64 n, i64 k, int p);

// Cached factorials/inverses for a fixed odd prime together with the
// coefficient functions:
//   nu(q)       = (-1)^{(p-1)q/2} ((p-1)/2)!
//   gamma(q, r) = prod_{i=0}^{t-1} nu(q+i)   where r = t(p-1)+k, 0 <= k < p-1
//   lambda_(q, n) = prod_{i=0}^{n-2} nu(q+i)  (ambient dimension n explicit)
// All three take values in the units of F_p.
class CoeffTables {
public:
    explicit CoeffTables(int p);  // throws std::invalid_argument unless p is an odd prime

    int p() const { return p_; }
    int factorial(int n) const { return fact_[n]; }   // n! mod p, 0 <= n < p
    int inv(int a) const;                             // inverse of a mod p, a != 0 mod p
    int half_factorial() const { return fact_[(p_ - 1) / 2]; }

    int nu(i64 q) const;
    int gamma(i64 q, i64 r) const;       // r >= 0
    int lambda_(i64 q, i64 n) const;     // n >= 1

    // Wilson-type sanity identity ((p-1)/2)!^2 == (-1)^{(p+1)/2} mod p.
    bool half_factorial_square_identity() const;

private:
    int p_;
    std::vector<int> fact_, inv_;
};

}  // namespace opal
