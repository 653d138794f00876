#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unistab/errors.hpp"
#include "unistab/oi.hpp"
#include "unistab/ring.hpp"
#include "unistab/scalar.hpp"

namespace unistab {

// Exponent-matrix monomial over a free-additive ring R: an n x d matrix with
// pivot rows alpha, fixed 1 at the pivots, zeros below them, and free R
// entries strictly above.  The monoid product adds exponent matrices.
struct Monomial {
    int n = 0;
    int d = 0;
    std::vector<int> alpha;                       // strictly increasing in [1..n]
    std::vector<std::vector<RingElem>> entries;   // entries[j][i]: row i+1 of column j+1

    Monomial() = default;
    Monomial(const Ring& r, int n, int d, std::vector<int> alpha,
             std::vector<std::vector<RingElem>> entries);
    // all above-pivot entries zero
    static Monomial pivots_only(const Ring& r, int n, std::vector<int> alpha);

    const RingElem& cell(int i, int j) const; // 1-based, requires i < alpha[j-1]
    bool all_entries_in_cone(const Ring& r) const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.n == b.n && a.d == b.d && a.alpha == b.alpha && a.entries == b.entries;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.d != b.d) return a.d < b.d;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.entries < b.entries;
    }

    std::string to_json() const;
    static Monomial from_json_string(const Ring& r, const std::string& text);
};

// exponent addition; both factors must share (n, d, alpha)
Monomial mul_monomial(const Ring& r, const Monomial& a, const Monomial& b);

// tau lies in the k-positive stratum: every entry in rows >= alpha_k is in
// the positive cone (alpha_0 = 0, so k = 0 demands full positivity).
bool in_stratum(const Ring& r, const Monomial& tau, int k);

// Finite k-linear combination of monomials sharing (n, d).  Coefficients are
// exact; zero coefficients are never stored.
template <class K = Rational>
struct FormalSum {
    std::map<Monomial, K> terms;

    void add_term(const Monomial& m, const K& c) {
        if (scalar_is_zero(c)) return;
        if (!terms.empty()) {
            const Monomial& ref = terms.begin()->first;
            if (ref.n != m.n || ref.d != m.d)
                throw ValidationError("FormalSum: monomials must share (n, d)");
        }
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (scalar_is_zero(it->second)) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    // the common pivot sequence, when one exists
    std::optional<std::vector<int>> shared_alpha() const {
        if (terms.empty()) return std::nullopt;
        const std::vector<int>& a = terms.begin()->first.alpha;
        for (const auto& [m, c] : terms)
            if (m.alpha != a) return std::nullopt;
        return a;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms == b.terms; }
};

// Left-compose every monomial of x with the elementary operator sending
// e_{alpha_j} to r e_i + e_{alpha_j}; linear over coefficients.  Requires
// 1 <= j <= d, 1 <= i < alpha_j, and a shared alpha across x.
template <class K>
FormalSum<K> apply_E(const Ring& r, int i, int j, const RingElem& rv, const FormalSum<K>& x);

template <class K>
struct FinAlphaResult {
    bool zero = true;
    std::vector<int> alpha; // meaningful only when !zero
    FormalSum<K> part;
};

// Component at the lexicographically largest pivot sequence with a nonzero
// part; fin_alpha(0) = 0.
template <class K>
FinAlphaResult<K> fin_alpha(const FormalSum<K>& x);

// Initial-part extraction in the Substep-2e variable order: group by the
// exponents on S' = { cells (i, j) : k+1 <= j <= d, max(alpha_k, 1) <= i <
// alpha_{k+1} } and keep the group with the largest exponent vector.
// Requires every monomial of x to lie in the k-positive stratum.
template <class K>
FormalSum<K> fin_var(const Ring& r, const FormalSum<K>& x, int k);

// --- Higman words --------------------------------------------------------------

struct HigmanLetter {
    std::vector<RingElem> coord; // size d; ignored where spade
    std::vector<char> spade;     // size d

    friend bool operator==(const HigmanLetter& a, const HigmanLetter& b) {
        if (a.spade != b.spade) return false;
        for (std::size_t j = 0; j < a.spade.size(); ++j)
            if (!a.spade[j] && !(a.coord[j] == b.coord[j])) return false;
        return true;
    }
};

struct HigmanWord {
    int d = 0;
    std::vector<HigmanLetter> letters;

    friend bool operator==(const HigmanWord& a, const HigmanWord& b) {
        return a.d == b.d && a.letters == b.letters;
    }

    std::string to_json() const;
    static HigmanWord from_json_string(const Ring& r, const std::string& text);
};

// letters compared coordinatewise; spade only matches spade
bool letter_leq(const HigmanLetter& a, const HigmanLetter& b);

// word of tau: letter i has coordinate j equal to the (i, j) exponent, with a
// spade at the pivot rows.  Requires all entries in the positive cone.
HigmanWord psi(const Ring& r, const Monomial& tau);

// Higman subword order: a strictly increasing letter matching with
// letter_leq at every position.
bool leq_word(const HigmanWord& a, const HigmanWord& b);

// Divisibility order on positive monomials: some marked injection iota with
// tau' - iota_*(tau) entrywise in the cone.  Enumeration is exponential in
// the target size; hard cap n' <= 6.
bool leq_monomial(const Ring& r, const Monomial& tau, const Monomial& tau2);

} // namespace unistab
