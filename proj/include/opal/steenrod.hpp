#pragma once
// Words of odd-primary cohomology operations (Bocksteins and p-th powers),
// rewriting into admissible form, bases by degree, and span membership for
// words over a restricted set of power operations.

#include <map>
#include <string>
#include <vector>

#include "opal/fp.hpp"
#include "opal/linalg.hpp"

namespace opal::steenrod {

// One letter of a word: the Bockstein, or the power P^s (s >= 0; P^0 = id).
struct Letter {
    bool bock = false;
    i64 s = 0;
    static Letter B() { return {true, 0}; }
    static Letter P(i64 s) { return {false, s}; }
    bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

// beta^{e0} P^{s1} beta^{e1} ... P^{sr} beta^{er} with s_i >= 1.
// Admissible when s_i >= p s_{i+1} + e_i for 1 <= i < r.
struct Monomial {
    std::vector<i64> s;            // r exponents
    std::vector<int> eps = {0};    // r+1 Bockstein bits

    i64 degree(int p) const;
    // packed form [e0, s1, e1, ..., sr, er]; also the serialization format
    std::vector<i64> packed() const;
    static Monomial from_packed(const std::vector<i64>& w);  // validates shape
    Word letters() const;
    std::string str() const;  // e.g. "b P3 P1", "1" for the unit

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const;  // by word length, then lexicographic
};

bool is_admissible(const Monomial& m, int p);

// Sum of admissible monomials with coefficients in 1..p-1.
struct Element {
    int p;
    std::map<Monomial, int> terms;

    explicit Element(int p_) : p(p_) {}
    static Element zero(int p) { return Element(p); }
    static Element unit(int p);

    void add_term(const Monomial& m, i64 c);
    Element& operator+=(const Element& o);
    Element scaled(i64 c) const;
    bool is_zero() const { return terms.empty(); }
    bool is_homogeneous(i64* deg = nullptr) const;
    std::string str() const;
    bool operator==(const Element&) const = default;
};

// Rewrites words into sums of admissibles, memoizing letter-times-monomial
// products across calls.
class AdemContext {
public:
    explicit AdemContext(int p);
    int p() const { return p_; }

    Element reduce_word(const Word& w);
    // letter applied on the left of an admissible monomial / element
    Element mult_letter(const Letter& f, const Monomial& m);
    Element mult_word(const Word& w, const Element& e);

private:
    int p_;
    CoeffTables ct_;
    std::map<std::pair<i64, std::vector<i64>>, Element> cache_;
};

Element adem_reduce(const Word& w, int p);

// Admissible monomials of degree exactly d, in increasing monomial order.
// Throws std::invalid_argument when d exceeds the guard bound.
std::vector<Monomial> basis_in_degree(i64 d, int p, i64 max_degree = 200);

// --- span membership over restricted power words ---------------------------

// Words are products of P^{p^j}, 0 <= j <= k, recorded by their exponents.
struct MembershipResult {
    bool in_span = false;
    std::vector<std::pair<std::vector<i64>, int>> witness;  // (exponent list, coeff)
    i64 words_tried = 0;
    i64 rank = 0;
    i64 basis_dim = 0;
};

// Decides whether the homogeneous element x lies in the span of products of
// P^{p^j} (j <= k) of matching degree, using at most max_top_factors letters
// P^{p^k} per word.  max_top_factors < 0 means no limit.
MembershipResult membership_in_word_span(const Element& x, i64 k, i64 max_top_factors = -1,
                                         i64 max_words = 500000, i64 max_degree = 400);

// --- the power-product decomposition P^{p^k} P^{(p-1)p^k} ------------------

struct SubalgTerm {
    i64 i;       // inner exponent, 1 <= i <= p^{k-1}
    int coeff;   // nonzero relation coefficient mod p
    MembershipResult outer;  // P^{p^{k+1}-i} over words with <= p-1 top letters
    MembershipResult inner;  // P^i over words of level k-1
};

struct SubalgReport {
    int p = 0;
    i64 k = 0;
    bool relation_ok = false;       // rewriting the product matches the closed-form sum
    bool i0_vanishes = false;       // leading binomial C((p-1)^2 p^k - 1, p^k) == 0
    std::vector<int> i0_digits;     // base-p digits of (p-1)^2 p^k - 1, low to high
    i64 failing_digit = -1;         // digit position witnessing the vanishing
    std::vector<SubalgTerm> terms;
    bool decomposition_ok = false;  // assembled witness words re-reduce to the product
    i64 max_top_factors_seen = 0;
    bool ok() const;
};

// Verifies that P^{p^k} P^{(p-1)p^k} decomposes over words in P^1, ..., P^{p^k}
// with every summand using at most p-1 letters P^{p^k}, the inner factors lying
// in level k-1 words.
SubalgReport verify_subalg_lemma(int p, i64 k);

}  // namespace opal::steenrod
