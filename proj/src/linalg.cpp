#include "unistab/linalg.hpp"

#include <cassert>
#include <cstdlib>

namespace unistab {

namespace {

using IRow = std::vector<std::pair<int, Integer>>;

Integer gcd_z(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm_z(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

void divexact_row(IRow& r, const Integer& g) {
    if (g == 1) return;
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

Integer row_content(const IRow& r) {
    Integer g = 0;
    for (const auto& [c, v] : r) {
        g = gcd_z(g, v);
        if (g == 1) break;
    }
    return g;
}

const Integer* row_entry(const IRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const std::pair<int, Integer>& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

// r <- a*r - b*p, result content-stripped.  Fraction-free: only integers ever
// appear.
IRow combine_rows(const IRow& r, const Integer& a, const IRow& p, const Integer& b) {
    IRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j >= p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back({r[i].first, a * r[i].second});
            ++i;
        } else if (i >= r.size() || p[j].first < r[i].first) {
            out.push_back({p[j].first, -b * p[j].second});
            ++j;
        } else {
            Integer v = a * r[i].second - b * p[j].second;
            if (sgn(v) != 0) out.push_back({r[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    Integer g = row_content(out);
    if (sgn(g) != 0 && g != 1) divexact_row(out, g);
    return out;
}

// Minimal-fill elimination on integer rows: pivot column is the sparsest
// active column (smallest index on ties), pivot row the sparsest row in that
// column.  Deterministic by construction.
int eliminate_integer_rows(std::vector<IRow>& rows, int ncols) {
    int n = static_cast<int>(rows.size());
    std::vector<char> active(n, 1);
    std::vector<int> colcnt(ncols, 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++colcnt[c];

    int rank = 0;
    for (;;) {
        int pc = -1;
        for (int c = 0; c < ncols; ++c)
            if (colcnt[c] > 0 && (pc < 0 || colcnt[c] < colcnt[pc])) pc = c;
        if (pc < 0) break;

        int pr = -1;
        std::size_t best = 0;
        for (int i = 0; i < n; ++i) {
            if (!active[i]) continue;
            if (row_entry(rows[i], pc) == nullptr) continue;
            if (pr < 0 || rows[i].size() < best) {
                pr = i;
                best = rows[i].size();
            }
        }
        assert(pr >= 0);

        const Integer pv = *row_entry(rows[pr], pc);
        for (int i = 0; i < n; ++i) {
            if (!active[i] || i == pr) continue;
            const Integer* e = row_entry(rows[i], pc);
            if (e == nullptr) continue;
            for (const auto& [c, v] : rows[i]) --colcnt[c];
            rows[i] = combine_rows(rows[i], pv, rows[pr], *e);
            for (const auto& [c, v] : rows[i]) ++colcnt[c];
        }
        for (const auto& [c, v] : rows[pr]) --colcnt[c];
        active[pr] = 0;
        rows[pr].clear();
        ++rank;
    }
    return rank;
}

std::vector<IRow> to_primitive_integer_rows(const SparseMat<Rational>& m) {
    std::vector<IRow> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        Integer den = 1;
        for (const auto& [c, v] : m.row(i)) den = lcm_z(den, v.get_den());
        IRow r;
        r.reserve(m.row(i).size());
        for (const auto& [c, v] : m.row(i)) {
            Integer t = v.get_num() * (den / v.get_den());
            r.push_back({c, std::move(t)});
        }
        Integer g = row_content(r);
        if (sgn(g) != 0 && g != 1) divexact_row(r, g);
        rows[i] = std::move(r);
    }
    return rows;
}

} // namespace

int rank(const SparseMat<Rational>& m) {
    // Work with the orientation that gives many short rows.
    if (m.cols() > m.rows()) return rank(m.transposed());
    auto rows = to_primitive_integer_rows(m);
    return eliminate_integer_rows(rows, m.cols());
}

int rank(const SparseMat<Fp>& m) {
    if (m.cols() > m.rows()) return rank(m.transposed());
    using FRow = std::vector<std::pair<int, Fp>>;
    std::vector<FRow> rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) rows[i] = m.row(i);

    int n = static_cast<int>(rows.size());
    int ncols = m.cols();
    std::vector<char> active(n, 1);
    std::vector<int> colcnt(ncols, 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++colcnt[c];

    auto entry = [](const FRow& r, int col) -> const Fp* {
        auto it = std::lower_bound(r.begin(), r.end(), col,
                                   [](const std::pair<int, Fp>& e, int c) { return e.first < c; });
        if (it != r.end() && it->first == col) return &it->second;
        return nullptr;
    };

    int rank = 0;
    for (;;) {
        int pc = -1;
        for (int c = 0; c < ncols; ++c)
            if (colcnt[c] > 0 && (pc < 0 || colcnt[c] < colcnt[pc])) pc = c;
        if (pc < 0) break;
        int pr = -1;
        std::size_t best = 0;
        for (int i = 0; i < n; ++i) {
            if (!active[i] || entry(rows[i], pc) == nullptr) continue;
            if (pr < 0 || rows[i].size() < best) {
                pr = i;
                best = rows[i].size();
            }
        }
        assert(pr >= 0);
        Fp pinv = entry(rows[pr], pc)->inv();
        for (int i = 0; i < n; ++i) {
            if (!active[i] || i == pr) continue;
            const Fp* e = entry(rows[i], pc);
            if (e == nullptr) continue;
            Fp f = *e * pinv;
            for (const auto& [c, v] : rows[i]) --colcnt[c];
            FRow out;
            out.reserve(rows[i].size() + rows[pr].size());
            std::size_t a = 0, b = 0;
            const FRow& r = rows[i];
            const FRow& p = rows[pr];
            while (a < r.size() || b < p.size()) {
                if (b >= p.size() || (a < r.size() && r[a].first < p[b].first)) {
                    out.push_back(r[a++]);
                } else if (a >= r.size() || p[b].first < r[a].first) {
                    out.push_back({p[b].first, -(f * p[b].second)});
                    ++b;
                } else {
                    Fp v = r[a].second - f * p[b].second;
                    if (!v.is_zero()) out.push_back({r[a].first, v});
                    ++a;
                    ++b;
                }
            }
            rows[i] = std::move(out);
            for (const auto& [c, v] : rows[i]) ++colcnt[c];
        }
        for (const auto& [c, v] : rows[pr]) --colcnt[c];
        active[pr] = 0;
        rows[pr].clear();
        ++rank;
    }
    return rank;
}

int rank(const SparseMat<Integer>&) {
    throw UnsupportedError("rank over Z is not defined; use snf");
}

namespace {

// Shared echelon + back-substitution for kernel computation over a field.
template <class Domain>
std::vector<std::vector<typename Domain::Scalar>> kernel_core(
    const SparseMat<typename Domain::Scalar>& m, const Domain& dom) {
    using S = typename Domain::Scalar;
    using Row = std::vector<std::pair<int, S>>;

    std::vector<Row> pivots;       // rows normalized to leading 1
    std::vector<int> pivot_col;    // lead of pivots[i]
    std::vector<int> where(m.cols(), -1);

    for (int i = 0; i < m.rows(); ++i) {
        Row r = m.row(i);
        while (!r.empty()) {
            int lead = r[0].first;
            if (where[lead] < 0) {
                S inv = field_inv(r[0].second);
                for (auto& [c, v] : r) v = v * inv;
                where[lead] = static_cast<int>(pivots.size());
                pivots.push_back(std::move(r));
                pivot_col.push_back(lead);
                break;
            }
            const Row& p = pivots[where[lead]];
            S f = r[0].second;
            Row out;
            out.reserve(r.size() + p.size());
            std::size_t a = 0, b = 0;
            while (a < r.size() || b < p.size()) {
                if (b >= p.size() || (a < r.size() && r[a].first < p[b].first)) {
                    out.push_back(r[a++]);
                } else if (a >= r.size() || p[b].first < r[a].first) {
                    S v = -(f * p[b].second);
                    if (!scalar_is_zero(v)) out.push_back({p[b].first, v});
                    ++b;
                } else {
                    S v = r[a].second - f * p[b].second;
                    if (!scalar_is_zero(v)) out.push_back({r[a].first, v});
                    ++a;
                    ++b;
                }
            }
            r = std::move(out);
        }
    }

    // pivot rows ordered by decreasing lead for back-substitution
    std::vector<int> order(pivots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pivot_col[a] > pivot_col[b]; });

    std::vector<std::vector<S>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (where[f] >= 0) continue;
        std::vector<S> x(m.cols(), dom.from_int(0));
        x[f] = dom.from_int(1);
        for (int oi : order) {
            const Row& p = pivots[oi];
            int lead = pivot_col[oi];
            if (lead > f) continue; // x is zero past f except at pivots already set
            S acc = dom.from_int(0);
            for (std::size_t t = 1; t < p.size(); ++t)
                acc = acc + p[t].second * x[p[t].first];
            x[lead] = -acc;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace

std::vector<std::vector<Rational>> kernel_basis(const SparseMat<Rational>& m) {
    return kernel_core(m, QDomain{});
}

std::vector<std::vector<Fp>> kernel_basis(const SparseMat<Fp>& m) {
    std::uint32_t p = 0;
    for (int i = 0; i < m.rows() && p == 0; ++i)
        if (!m.row(i).empty()) p = m.row(i)[0].second.p;
    if (p == 0)
        throw ValidationError("kernel_basis over F_p needs at least one entry to read p from");
    return kernel_core(m, FpDomain(p));
}

// ---- Smith normal form -------------------------------------------------------

namespace {

constexpr long kSnfEntryCap = 1000000; // dense working set cap, desk scale

struct SnfWork {
    DenseInt D, U, V, Vinv;
    int R, C;

    void row_swap(int a, int b) {
        std::swap(D[a], D[b]);
        std::swap(U[a], U[b]);
    }
    void row_negate(int a) {
        for (auto& x : D[a]) x = -x;
        for (auto& x : U[a]) x = -x;
    }
    // row_a += q * row_b
    void row_add(int a, int b, const Integer& q) {
        for (int j = 0; j < C; ++j) D[a][j] += q * D[b][j];
        for (int j = 0; j < R; ++j) U[a][j] += q * U[b][j];
    }
    void col_swap(int a, int b) {
        for (auto& row : D) std::swap(row[a], row[b]);
        for (auto& row : V) std::swap(row[a], row[b]);
        std::swap(Vinv[a], Vinv[b]);
    }
    void col_negate(int a) {
        for (auto& row : D) row[a] = -row[a];
        for (auto& row : V) row[a] = -row[a];
        for (auto& x : Vinv[a]) x = -x;
    }
    // col_a += q * col_b; Vinv gets the inverse row operation
    void col_add(int a, int b, const Integer& q) {
        for (auto& row : D) row[a] += q * row[b];
        for (auto& row : V) row[a] += q * row[b];
        for (int j = 0; j < C; ++j) Vinv[b][j] -= q * Vinv[a][j];
    }
};

} // namespace

SnfResult snf(const SparseMat<Integer>& m) {
    const int R = m.rows(), C = m.cols();
    if (static_cast<long>(R) * C > kSnfEntryCap)
        throw ResourceError("snf: matrix has " + std::to_string(static_cast<long>(R) * C) +
                            " entries; dense Smith reduction is capped at " +
                            std::to_string(kSnfEntryCap));

    SnfWork w;
    w.R = R;
    w.C = C;
    w.D.assign(R, std::vector<Integer>(C, 0));
    for (int i = 0; i < R; ++i)
        for (const auto& [j, v] : m.row(i)) w.D[i][j] = v;
    auto ident = [](int n) {
        DenseInt I(n, std::vector<Integer>(n, 0));
        for (int i = 0; i < n; ++i) I[i][i] = 1;
        return I;
    };
    w.U = ident(R);
    w.V = ident(C);
    w.Vinv = ident(C);

    const int T = std::min(R, C);
    for (int t = 0; t < T; ++t) {
        // pivot: smallest absolute nonzero in the active submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j) {
                if (sgn(w.D[i][j]) == 0) continue;
                if (pi < 0 || cmp(abs(w.D[i][j]), abs(w.D[pi][pj])) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // all zero from here on
        if (pi != t) w.row_swap(pi, t);
        if (pj != t) w.col_swap(pj, t);

        for (;;) {
            // clear column t
            bool swapped = true;
            while (swapped) {
                swapped = false;
                for (int i = t + 1; i < R; ++i) {
                    if (sgn(w.D[i][t]) == 0) continue;
                    Integer q = w.D[i][t] / w.D[t][t]; // truncated
                    if (sgn(q) != 0) w.row_add(i, t, -q);
                    if (sgn(w.D[i][t]) != 0) {
                        w.row_swap(i, t);
                        swapped = true;
                    }
                }
            }
            // clear row t
            swapped = true;
            while (swapped) {
                swapped = false;
                for (int j = t + 1; j < C; ++j) {
                    if (sgn(w.D[t][j]) == 0) continue;
                    Integer q = w.D[t][j] / w.D[t][t];
                    if (sgn(q) != 0) w.col_add(j, t, -q);
                    if (sgn(w.D[t][j]) != 0) {
                        w.col_swap(j, t);
                        swapped = true;
                    }
                }
            }
            // clearing the row may have dirtied the column
            bool col_clear = true;
            for (int i = t + 1; i < R; ++i)
                if (sgn(w.D[i][t]) != 0) col_clear = false;
            if (!col_clear) continue;

            // enforce pivot | submatrix so divisors chain up
            int bi = -1, bj = -1;
            for (int i = t + 1; i < R && bi < 0; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (sgn(w.D[i][j] % w.D[t][t]) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;
            w.row_add(t, bi, 1);
        }
        if (sgn(w.D[t][t]) < 0) w.row_negate(t);
    }

    SnfResult out;
    out.divisors.resize(T);
    for (int t = 0; t < T; ++t) out.divisors[t] = w.D[t][t];
    out.U = std::move(w.U);
    out.V = std::move(w.V);
    out.Vinv = std::move(w.Vinv);
    return out;
}

Integer dense_det(const DenseInt& a0) {
    DenseInt a = a0;
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (sgn(a[i][k]) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

bool verify_snf(const SparseMat<Integer>& m, const SnfResult& s) {
    const int R = m.rows(), C = m.cols();
    // U*m*V == diag
    DenseInt prod(R, std::vector<Integer>(C, 0));
    // (U*m) first
    DenseInt um(R, std::vector<Integer>(C, 0));
    for (int i = 0; i < R; ++i)
        for (int k = 0; k < R; ++k) {
            if (sgn(s.U[i][k]) == 0) continue;
            for (const auto& [j, v] : m.row(k)) um[i][j] += s.U[i][k] * v;
        }
    for (int i = 0; i < R; ++i)
        for (int k = 0; k < C; ++k) {
            if (sgn(um[i][k]) == 0) continue;
            for (int j = 0; j < C; ++j)
                if (sgn(s.V[k][j]) != 0) prod[i][j] += um[i][k] * s.V[k][j];
        }
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            Integer want = (i == j && i < static_cast<int>(s.divisors.size())) ? s.divisors[i]
                                                                               : Integer(0);
            if (prod[i][j] != want) return false;
        }
    for (std::size_t t = 0; t + 1 < s.divisors.size(); ++t) {
        if (sgn(s.divisors[t]) == 0 && sgn(s.divisors[t + 1]) != 0) return false;
        if (sgn(s.divisors[t]) != 0 && sgn(s.divisors[t + 1] % s.divisors[t]) != 0) return false;
    }
    if (abs(dense_det(s.U)) != 1) return false;
    if (abs(dense_det(s.V)) != 1) return false;
    // V * Vinv == I
    const int n = C;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Integer acc = 0;
            for (int k = 0; k < n; ++k) acc += s.V[i][k] * s.Vinv[k][j];
            if (acc != (i == j ? 1 : 0)) return false;
        }
    return true;
}

bool RationalSpan::insert(const std::vector<Rational>& v, const std::vector<Rational>& tag) {
    if (static_cast<int>(v.size()) != ambient_)
        throw ValidationError("RationalSpan: vector length mismatch");
    std::vector<std::pair<int, Rational>> r;
    for (int i = 0; i < ambient_; ++i)
        if (sgn(v[i]) != 0) r.push_back({i, v[i]});
    std::vector<Rational> t = tag;
    t.resize(tag_dim_, Rational(0));

    while (!r.empty()) {
        auto it = lead_to_row_.find(r[0].first);
        if (it == lead_to_row_.end()) {
            Rational inv = Rational(1) / r[0].second;
            for (auto& [c, x] : r) x *= inv;
            for (auto& x : t) x *= inv;
            lead_to_row_[r[0].first] = static_cast<int>(rows_.size());
            rows_.push_back({std::move(r), std::move(t)});
            return true;
        }
        const TrackedRow& p = rows_[it->second];
        Rational f = r[0].second;
        std::vector<std::pair<int, Rational>> out;
        out.reserve(r.size() + p.v.size());
        std::size_t a = 0, b = 0;
        while (a < r.size() || b < p.v.size()) {
            if (b >= p.v.size() || (a < r.size() && r[a].first < p.v[b].first)) {
                out.push_back(r[a++]);
            } else if (a >= r.size() || p.v[b].first < r[a].first) {
                Rational x = -(f * p.v[b].second);
                if (sgn(x) != 0) out.push_back({p.v[b].first, x});
                ++b;
            } else {
                Rational x = r[a].second - f * p.v[b].second;
                if (sgn(x) != 0) out.push_back({r[a].first, x});
                ++a;
                ++b;
            }
        }
        for (int i = 0; i < tag_dim_; ++i) t[i] -= f * p.tag[i];
        r = std::move(out);
    }
    return false;
}

std::optional<std::vector<Rational>> RationalSpan::express(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw ValidationError("RationalSpan: vector length mismatch");
    std::vector<std::pair<int, Rational>> r;
    for (int i = 0; i < ambient_; ++i)
        if (sgn(v[i]) != 0) r.push_back({i, v[i]});
    std::vector<Rational> acc(tag_dim_, Rational(0));
    while (!r.empty()) {
        auto it = lead_to_row_.find(r[0].first);
        if (it == lead_to_row_.end()) return std::nullopt;
        const TrackedRow& p = rows_[it->second];
        Rational f = r[0].second;
        std::vector<std::pair<int, Rational>> out;
        std::size_t a = 0, b = 0;
        while (a < r.size() || b < p.v.size()) {
            if (b >= p.v.size() || (a < r.size() && r[a].first < p.v[b].first)) {
                out.push_back(r[a++]);
            } else if (a >= r.size() || p.v[b].first < r[a].first) {
                Rational x = -(f * p.v[b].second);
                if (sgn(x) != 0) out.push_back({p.v[b].first, x});
                ++b;
            } else {
                Rational x = r[a].second - f * p.v[b].second;
                if (sgn(x) != 0) out.push_back({r[a].first, x});
                ++a;
                ++b;
            }
        }
        for (int i = 0; i < tag_dim_; ++i) acc[i] += f * p.tag[i];
        r = std::move(out);
    }
    return acc;
}

std::vector<IntegralHomology> homology_groups_integral(const ChainComplex<Integer>& c) {
    c.check_d_squared();

    // SNF of each differential, reused for kernel coordinates.
    std::vector<std::optional<SnfResult>> s(c.top + 1);
    for (int k = 1; k <= c.top; ++k) s[k] = snf(c.d[k]);

    std::vector<IntegralHomology> out(c.top + 1);
    for (int k = 0; k <= c.top; ++k) {
        const long mdim = c.dims[k];
        long rk = 0; // rank of d_k
        if (k >= 1) rk = s[k]->nonzero_count();
        const long kdim = mdim - rk; // rank of ker d_k

        if (k == c.top) {
            out[k].free_rank = kdim;
            continue;
        }

        // Express the columns of d_{k+1} in kernel coordinates.  For k = 0 the
        // kernel is everything and coordinates are the raw columns; otherwise
        // y = Vinv * col must vanish on the first rk positions (the nonzero
        // Smith divisors sit there), and the tail gives the coordinates in
        // the kernel summand of the unimodular basis V.
        const SparseMat<Integer>& dn = c.d[k + 1];
        SparseMat<Integer> coords(static_cast<int>(kdim), dn.cols());
        if (k == 0) {
            coords = dn;
        } else {
            const DenseInt& Vinv = s[k]->Vinv;
            SparseMat<Integer> dnt = dn.transposed(); // rows of dnt are columns of dn
            for (int col = 0; col < dn.cols(); ++col) {
                for (long i = 0; i < mdim; ++i) {
                    Integer acc = 0;
                    for (const auto& [r, v] : dnt.row(col)) acc += Vinv[i][r] * v;
                    if (i < rk) {
                        if (sgn(acc) != 0)
                            throw IntegrityError(
                                "integral homology: boundary not contained in cycles at degree " +
                                std::to_string(k));
                    } else {
                        coords.set(static_cast<int>(i - rk), col, acc);
                    }
                }
            }
        }

        SnfResult sk = snf(coords);
        long img = sk.nonzero_count();
        out[k].free_rank = kdim - img;
        for (const auto& dv : sk.divisors)
            if (sgn(dv) != 0 && dv != 1) out[k].torsion.push_back(dv);
    }
    return out;
}

} // namespace unistab
