#include "unistab/wpo.hpp"

#include <algorithm>

#include <json.hpp>

namespace unistab {

using nlohmann::json;

namespace {

constexpr int kIotaTargetCap = 6; // leq_monomial enumeration cap on n'

} // namespace

Monomial::Monomial(const Ring& r, int n_, int d_, std::vector<int> alpha_,
                   std::vector<std::vector<RingElem>> entries_)
    : n(n_), d(d_), alpha(std::move(alpha_)), entries(std::move(entries_)) {
    if (r.kind() != RingKind::FreeAdditive)
        throw UnsupportedError("Monomial: free-additive rings only");
    if (d != static_cast<int>(alpha.size()))
        throw ValidationError("Monomial: d must equal the pivot count");
    OIMorphism check(d, n, alpha); // strict increase, range
    if (static_cast<int>(entries.size()) != d)
        throw ValidationError("Monomial: one entry column per pivot");
    for (int j = 0; j < d; ++j) {
        if (static_cast<int>(entries[j].size()) != alpha[j] - 1)
            throw ValidationError("Monomial: column " + std::to_string(j + 1) +
                                  " must have pivot-1 above entries");
        for (const auto& e : entries[j])
            if (static_cast<int>(e.c.size()) != r.rank())
                throw ValidationError("Monomial: entry coordinate length != ring rank");
    }
}

Monomial Monomial::pivots_only(const Ring& r, int n, std::vector<int> alpha) {
    int d = static_cast<int>(alpha.size());
    std::vector<std::vector<RingElem>> entries(d);
    for (int j = 0; j < d; ++j) entries[j].assign(alpha[j] - 1, r.zero());
    return Monomial(r, n, d, std::move(alpha), std::move(entries));
}

const RingElem& Monomial::cell(int i, int j) const {
    if (j < 1 || j > d || i < 1 || i >= alpha[j - 1])
        throw ValidationError("Monomial::cell: (i, j) is not an above-pivot cell");
    return entries[j - 1][i - 1];
}

bool Monomial::all_entries_in_cone(const Ring& r) const {
    for (const auto& col : entries)
        for (const auto& e : col)
            if (!r.in_positive_cone(e)) return false;
    return true;
}

Monomial mul_monomial(const Ring& r, const Monomial& a, const Monomial& b) {
    if (a.n != b.n || a.d != b.d || a.alpha != b.alpha)
        throw ValidationError("mul_monomial: factors must share (n, d, alpha)");
    Monomial out = a;
    for (int j = 0; j < a.d; ++j)
        for (std::size_t i = 0; i < out.entries[j].size(); ++i)
            out.entries[j][i] = r.add(a.entries[j][i], b.entries[j][i]);
    return out;
}

bool in_stratum(const Ring& r, const Monomial& tau, int k) {
    if (k < 0 || k > tau.d) throw ValidationError("in_stratum: k must be in [0..d]");
    int alpha_k = (k == 0) ? 0 : tau.alpha[k - 1];
    for (int j = 1; j <= tau.d; ++j)
        for (int i = std::max(alpha_k, 1); i < tau.alpha[j - 1]; ++i)
            if (!r.in_positive_cone(tau.cell(i, j))) return false;
    return true;
}

template <class K>
FormalSum<K> apply_E(const Ring& r, int i, int j, const RingElem& rv, const FormalSum<K>& x) {
    if (x.is_zero()) return x;
    auto alpha = x.shared_alpha();
    if (!alpha) throw ValidationError("apply_E: monomials carry mixed pivot sequences");
    int d = static_cast<int>(alpha->size());
    if (j < 1 || j > d) throw ValidationError("apply_E: column out of range");
    if (i < 1 || i >= (*alpha)[j - 1]) throw ValidationError("apply_E: requires 1 <= i < alpha_j");

    FormalSum<K> out;
    for (const auto& [m, c] : x.terms) {
        auto entries = m.entries;
        // column j gains r at row i (the pivot contributes r * 1)
        entries[j - 1][i - 1] = r.add(entries[j - 1][i - 1], rv);
        // columns past j gain r * (their row-alpha_j entry) at row i
        for (int c2 = j; c2 < d; ++c2) {
            const RingElem& src = m.entries[c2][(*alpha)[j - 1] - 1];
            entries[c2][i - 1] = r.add(entries[c2][i - 1], r.mul(rv, src));
        }
        out.add_term(Monomial(r, m.n, m.d, m.alpha, std::move(entries)), c);
    }
    return out;
}

template <class K>
FinAlphaResult<K> fin_alpha(const FormalSum<K>& x) {
    FinAlphaResult<K> res;
    if (x.is_zero()) return res;
    std::map<std::vector<int>, FormalSum<K>> by_alpha;
    for (const auto& [m, c] : x.terms) by_alpha[m.alpha].add_term(m, c);
    // components are nonzero by construction; take the lex-largest index
    auto it = by_alpha.rbegin();
    res.zero = false;
    res.alpha = it->first;
    res.part = it->second;
    return res;
}

namespace {

// first nonzero coordinate of b - a positive  <=>  a < b  (returns -1)
int compare_ring_elems(const RingElem& a, const RingElem& b) {
    for (std::size_t t = 0; t < a.c.size(); ++t) {
        std::int64_t diff = b.c[t] - a.c[t];
        if (diff > 0) return -1;
        if (diff < 0) return 1;
    }
    return 0;
}

int compare_exponent_vectors(const std::vector<RingElem>& a, const std::vector<RingElem>& b) {
    for (std::size_t q = 0; q < a.size(); ++q) {
        int c = compare_ring_elems(a[q], b[q]);
        if (c != 0) return c;
    }
    return 0;
}

} // namespace

template <class K>
FormalSum<K> fin_var(const Ring& r, const FormalSum<K>& x, int k) {
    if (x.is_zero()) return x;
    auto alpha = x.shared_alpha();
    if (!alpha) throw ValidationError("fin_var: monomials carry mixed pivot sequences");
    const int d = static_cast<int>(alpha->size());
    if (k < 0 || k > d) throw ValidationError("fin_var: k must be in [0..d]");
    for (const auto& [m, c] : x.terms)
        if (!in_stratum(r, m, k))
            throw ValidationError("fin_var: a monomial violates the k-positive stratum");
    if (k == d) return x; // no S' variables; everything is one group

    // S' cells in the fixed variable order: rows first, then columns
    const int lo = std::max(k == 0 ? 0 : (*alpha)[k - 1], 1);
    const int hi = (*alpha)[k] - 1;
    std::vector<std::pair<int, int>> cells; // (i, j), 1-based
    for (int i = lo; i <= hi; ++i)
        for (int j = k + 1; j <= d; ++j) cells.push_back({i, j});

    auto exponent_of = [&](const Monomial& m) {
        std::vector<RingElem> e;
        e.reserve(cells.size());
        for (const auto& [i, j] : cells) e.push_back(m.cell(i, j));
        return e;
    };

    std::optional<std::vector<RingElem>> best;
    for (const auto& [m, c] : x.terms) {
        auto e = exponent_of(m);
        if (!best || compare_exponent_vectors(*best, e) < 0) best = std::move(e);
    }
    FormalSum<K> out;
    for (const auto& [m, c] : x.terms)
        if (compare_exponent_vectors(*best, exponent_of(m)) == 0) out.add_term(m, c);
    return out;
}

template FormalSum<Rational> apply_E(const Ring&, int, int, const RingElem&,
                                     const FormalSum<Rational>&);
template FormalSum<Fp> apply_E(const Ring&, int, int, const RingElem&, const FormalSum<Fp>&);
template FinAlphaResult<Rational> fin_alpha(const FormalSum<Rational>&);
template FinAlphaResult<Fp> fin_alpha(const FormalSum<Fp>&);
template FormalSum<Rational> fin_var(const Ring&, const FormalSum<Rational>&, int);
template FormalSum<Fp> fin_var(const Ring&, const FormalSum<Fp>&, int);

// --- Higman words --------------------------------------------------------------

bool letter_leq(const HigmanLetter& a, const HigmanLetter& b) {
    if (a.spade.size() != b.spade.size()) return false;
    for (std::size_t j = 0; j < a.spade.size(); ++j) {
        if (a.spade[j] != b.spade[j]) return false; // spade only matches spade
        if (a.spade[j]) continue;
        for (std::size_t t = 0; t < a.coord[j].c.size(); ++t)
            if (b.coord[j].c[t] - a.coord[j].c[t] < 0) return false;
    }
    return true;
}

HigmanWord psi(const Ring& r, const Monomial& tau) {
    if (!tau.all_entries_in_cone(r))
        throw ValidationError("psi: monomial has an entry outside the positive cone");
    HigmanWord w;
    w.d = tau.d;
    w.letters.resize(tau.n);
    for (int i = 1; i <= tau.n; ++i) {
        HigmanLetter& l = w.letters[i - 1];
        l.coord.assign(tau.d, r.zero());
        l.spade.assign(tau.d, 0);
        for (int j = 1; j <= tau.d; ++j) {
            if (i == tau.alpha[j - 1]) {
                l.spade[j - 1] = 1;
            } else if (i < tau.alpha[j - 1]) {
                l.coord[j - 1] = tau.cell(i, j);
            } // below the pivot the exponent is zero
        }
    }
    return w;
}

bool leq_word(const HigmanWord& a, const HigmanWord& b) {
    if (a.d != b.d) return false;
    // greedy earliest match; correct for subsequence embeddings
    std::size_t pos = 0;
    for (const auto& la : a.letters) {
        while (pos < b.letters.size() && !letter_leq(la, b.letters[pos])) ++pos;
        if (pos == b.letters.size()) return false;
        ++pos;
    }
    return true;
}

bool leq_monomial(const Ring& r, const Monomial& tau, const Monomial& tau2) {
    if (!tau.all_entries_in_cone(r) || !tau2.all_entries_in_cone(r))
        throw ValidationError("leq_monomial: monomials must be entrywise in the positive cone");
    if (tau.d != tau2.d) return false;
    if (tau2.n > kIotaTargetCap)
        throw ResourceError("leq_monomial: target size exceeds the enumeration cap n' <= " +
                            std::to_string(kIotaTargetCap));

    OIdObject src(tau.n, tau.alpha), dst(tau2.n, tau2.alpha);
    for (const auto& iota : enumerate_hom_oid(src, dst)) {
        std::vector<int> preimage(tau2.n + 1, 0); // 0 = no preimage
        for (int i = 1; i <= tau.n; ++i) preimage[iota(i)] = i;

        bool ok = true;
        for (int j = 1; j <= tau2.d && ok; ++j) {
            for (int i2 = 1; i2 < tau2.alpha[j - 1] && ok; ++i2) {
                RingElem v = tau2.cell(i2, j);
                int i = preimage[i2];
                if (i != 0 && i < tau.alpha[j - 1]) v = r.sub(v, tau.cell(i, j));
                if (!r.in_positive_cone(v)) ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

// --- JSON ----------------------------------------------------------------------

std::string Monomial::to_json() const {
    json j;
    j["n"] = n;
    j["d"] = d;
    j["alpha"] = alpha;
    json cols = json::array();
    for (const auto& col : entries) {
        json jc = json::array();
        for (const auto& e : col) jc.push_back(e.c);
        cols.push_back(jc);
    }
    j["entries"] = cols;
    return j.dump();
}

Monomial Monomial::from_json_string(const Ring& r, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("monomial: bad JSON: ") + e.what());
    }
    try {
        std::vector<std::vector<RingElem>> entries;
        for (const auto& col : j.at("entries")) {
            std::vector<RingElem> c;
            for (const auto& e : col) c.push_back(RingElem{e.get<std::vector<std::int64_t>>()});
            entries.push_back(std::move(c));
        }
        return Monomial(r, j.at("n").get<int>(), j.at("d").get<int>(),
                        j.at("alpha").get<std::vector<int>>(), std::move(entries));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("monomial: missing or mistyped field: ") + e.what());
    }
}

std::string HigmanWord::to_json() const {
    json j;
    j["d"] = d;
    json ls = json::array();
    for (const auto& l : letters) {
        json jl = json::array();
        for (int t = 0; t < d; ++t) {
            if (l.spade[t]) jl.push_back("spade");
            else jl.push_back(l.coord[t].c);
        }
        ls.push_back(jl);
    }
    j["letters"] = ls;
    return j.dump();
}

HigmanWord HigmanWord::from_json_string(const Ring& r, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("word: bad JSON: ") + e.what());
    }
    HigmanWord w;
    try {
        w.d = j.at("d").get<int>();
        for (const auto& jl : j.at("letters")) {
            HigmanLetter l;
            l.coord.assign(w.d, r.zero());
            l.spade.assign(w.d, 0);
            int t = 0;
            for (const auto& e : jl) {
                if (t >= w.d) throw ValidationError("word: letter arity != d");
                if (e.is_string() && e.get<std::string>() == "spade") l.spade[t] = 1;
                else l.coord[t] = RingElem{e.get<std::vector<std::int64_t>>()};
                ++t;
            }
            if (t != w.d) throw ValidationError("word: letter arity != d");
            w.letters.push_back(std::move(l));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("word: missing or mistyped field: ") + e.what());
    }
    return w;
}

} // namespace unistab
