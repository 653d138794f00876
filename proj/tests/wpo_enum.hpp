#pragma once

// Exhaustive bounded monomial sets for order-axiom and embedding checks.

#include <vector>

#include "unistab/wpo.hpp"

namespace wpo_enum {

using unistab::Monomial;
using unistab::Ring;
using unistab::RingElem;

// All monomials with the given n and d over ring r (free-additive), every
// above-pivot entry ranging over the box [0..emax]^rank.
inline std::vector<Monomial> positive_monomials(const Ring& r, int n, int d, int emax) {
    std::vector<Monomial> out;
    const int rank = r.rank();
    // coordinate box values
    std::vector<RingElem> box;
    {
        RingElem cur;
        cur.c.assign(rank, 0);
        for (;;) {
            box.push_back(cur);
            int t = rank - 1;
            while (t >= 0 && cur.c[t] == emax) cur.c[t--] = 0;
            if (t < 0) break;
            ++cur.c[t];
        }
    }
    for (const auto& alpha : unistab::increasing_tuples(d, n)) {
        int cells = 0;
        for (int p : alpha) cells += p - 1;
        std::vector<std::size_t> odo(cells, 0);
        for (;;) {
            std::vector<std::vector<RingElem>> entries(d);
            int t = 0;
            for (int j = 0; j < d; ++j) {
                entries[j].reserve(alpha[j] - 1);
                for (int i = 0; i < alpha[j] - 1; ++i) entries[j].push_back(box[odo[t++]]);
            }
            out.push_back(Monomial(r, n, d, alpha, std::move(entries)));
            int k = cells - 1;
            while (k >= 0 && odo[k] == box.size() - 1) odo[k--] = 0;
            if (k < 0) break;
            ++odo[k];
        }
    }
    return out;
}

// The union over 1 <= n <= n_max (for fixed d).
inline std::vector<Monomial> positive_monomials_up_to(const Ring& r, int n_max, int d, int emax) {
    std::vector<Monomial> out;
    for (int n = d; n <= n_max; ++n) {
        auto part = positive_monomials(r, n, d, emax);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace wpo_enum
