#include "unistab/homology.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace unistab {

// --- Lie presentation -----------------------------------------------------------

LieAlgebraPresentation::LieAlgebraPresentation(const Ring& r, int n) : n_(n) {
    if (r.kind() != RingKind::FreeAdditive)
        throw UnsupportedError("LieAlgebraPresentation: free-additive rings only");
    if (n < 0) throw ValidationError("LieAlgebraPresentation: n must be >= 0");
    const int rank = r.rank();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int a = 0; a < rank; ++a) basis_.push_back({i, j, a});
    // basis_ is sorted by construction

    const int B = dim();
    bracket_.assign(B, std::vector<std::vector<std::pair<int, std::int64_t>>>(B));
    auto gamma = [&](int a, int b, int c) {
        RingElem ea = r.zero(), eb = r.zero();
        ea.c[a] = 1;
        eb.c[b] = 1;
        return r.mul(ea, eb).c[c];
    };
    for (int u = 0; u < B; ++u)
        for (int v = 0; v < B; ++v) {
            const BasisLabel& x = basis_[u];
            const BasisLabel& y = basis_[v];
            std::map<int, std::int64_t> acc;
            if (x.j == y.i) { // E_il (x) (b_a b_b)
                for (int c = 0; c < rank; ++c) {
                    std::int64_t g = gamma(x.a, y.a, c);
                    if (g != 0) acc[index_of({x.i, y.j, c})] += g;
                }
            }
            if (y.j == x.i) { // - E_kj (x) (b_b b_a)
                for (int c = 0; c < rank; ++c) {
                    std::int64_t g = gamma(y.a, x.a, c);
                    if (g != 0) acc[index_of({y.i, x.j, c})] -= g;
                }
            }
            for (const auto& [idx, coeff] : acc)
                if (coeff != 0) bracket_[u][v].push_back({idx, coeff});
        }
    verify_antisymmetry_and_jacobi();
}

int LieAlgebraPresentation::index_of(const BasisLabel& b) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), b);
    if (it == basis_.end() || !(*it == b))
        throw ValidationError("LieAlgebraPresentation: unknown basis label");
    return static_cast<int>(it - basis_.begin());
}

const std::vector<std::pair<int, std::int64_t>>& LieAlgebraPresentation::bracket(int u,
                                                                                 int v) const {
    return bracket_.at(u).at(v);
}

void LieAlgebraPresentation::verify_antisymmetry_and_jacobi() const {
    const int B = dim();
    auto add_into = [](std::map<int, std::int64_t>& acc,
                       const std::vector<std::pair<int, std::int64_t>>& terms,
                       std::int64_t scale) {
        for (const auto& [idx, c] : terms) acc[idx] += scale * c;
    };
    for (int u = 0; u < B; ++u) {
        if (!bracket_[u][u].empty())
            throw IntegrityError("Lie bracket: [x,x] != 0 on a basis element");
        for (int v = 0; v < B; ++v) {
            std::map<int, std::int64_t> acc;
            add_into(acc, bracket_[u][v], 1);
            add_into(acc, bracket_[v][u], 1);
            for (const auto& [idx, c] : acc)
                if (c != 0) throw IntegrityError("Lie bracket: antisymmetry fails");
        }
    }
    for (int u = 0; u < B; ++u)
        for (int v = 0; v < B; ++v)
            for (int w = 0; w < B; ++w) {
                std::map<int, std::int64_t> acc;
                auto cyc = [&](int a, int b, int c) {
                    for (const auto& [m, coeff] : bracket_[a][b]) // [[a,b],c]
                        add_into(acc, bracket_[m][c], coeff);
                };
                cyc(u, v, w);
                cyc(v, w, u);
                cyc(w, u, v);
                for (const auto& [idx, c] : acc)
                    if (c != 0) throw IntegrityError("Lie bracket: Jacobi identity fails");
            }
}

// --- Koszul / Chevalley-Eilenberg complex ------------------------------------------

namespace {

// k-subsets of {0..B-1}, lexicographic; shared by the complex builder and the
// induced-map machinery so column indexing always agrees
std::vector<std::vector<int>> exterior_basis(int B, int k) {
    std::vector<std::vector<int>> out;
    for (auto t : increasing_tuples(k, B)) {
        for (auto& v : t) --v;
        out.push_back(std::move(t));
    }
    return out;
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    return count_hom(k, n);
}

} // namespace

template <class Domain>
ChainComplex<typename Domain::Scalar> koszul_complex(const LieAlgebraPresentation& lie,
                                                     int top_degree, const Domain& dom) {
    using K = typename Domain::Scalar;
    const int B = lie.dim();
    if (top_degree < 0) throw ValidationError("koszul_complex: negative top degree");
    for (int k = 0; k <= top_degree; ++k) {
        std::uint64_t dk = binom(B, k);
        if (dk > static_cast<std::uint64_t>(kExteriorDimCap))
            throw ResourceError("koszul_complex: exterior power dimension C(" +
                                std::to_string(B) + "," + std::to_string(k) + ") = " +
                                std::to_string(dk) + " exceeds the cap " +
                                std::to_string(kExteriorDimCap));
    }

    ChainComplex<K> c;
    c.top = top_degree;
    c.dims.resize(top_degree + 1);
    c.d.resize(top_degree + 1);

    std::vector<std::vector<std::vector<int>>> bases(top_degree + 1);
    std::vector<std::map<std::vector<int>, int>> index(top_degree + 1);
    for (int k = 0; k <= top_degree; ++k) {
        bases[k] = exterior_basis(B, k);
        c.dims[k] = static_cast<long>(bases[k].size());
        for (std::size_t t = 0; t < bases[k].size(); ++t)
            index[k][bases[k][t]] = static_cast<int>(t);
    }

    for (int k = 1; k <= top_degree; ++k) {
        SparseMat<K> d(static_cast<int>(c.dims[k - 1]), static_cast<int>(c.dims[k]));
        for (std::size_t col = 0; col < bases[k].size(); ++col) {
            const auto& S = bases[k][col];
            for (int p = 0; p < k; ++p)
                for (int q = p + 1; q < k; ++q) {
                    const auto& br = lie.bracket(S[p], S[q]);
                    if (br.empty()) continue;
                    // (-1)^{p+q} with 1-based positions
                    int base_sign = ((p + q) % 2 == 0) ? 1 : -1;
                    std::vector<int> rest;
                    rest.reserve(k - 2);
                    for (int t = 0; t < k; ++t)
                        if (t != p && t != q) rest.push_back(S[t]);
                    for (const auto& [m, coeff] : br) {
                        auto it = std::lower_bound(rest.begin(), rest.end(), m);
                        if (it != rest.end() && *it == m) continue; // repeated factor
                        int pos = static_cast<int>(it - rest.begin());
                        std::vector<int> target = rest;
                        target.insert(target.begin() + pos, m);
                        int sign = base_sign * (pos % 2 == 0 ? 1 : -1);
                        d.add_to(index[k - 1].at(target), static_cast<int>(col),
                                 dom.from_int(sign * coeff));
                    }
                }
        }
        c.d[k] = std::move(d);
    }
    return c;
}

template <class Domain>
std::vector<long> lie_homology_dims(const Ring& r, int n, int i_max, const Domain& dom) {
    if (i_max < 0) throw ValidationError("lie_homology_dims: negative i_max");
    LieAlgebraPresentation lie(r, n);
    auto c = koszul_complex(lie, i_max + 1, dom);
    auto h = homology_dims(c);
    h.resize(i_max + 1);
    return h;
}

template ChainComplex<Rational> koszul_complex(const LieAlgebraPresentation&, int,
                                               const QDomain&);
template ChainComplex<Fp> koszul_complex(const LieAlgebraPresentation&, int, const FpDomain&);
template std::vector<long> lie_homology_dims(const Ring&, int, int, const QDomain&);
template std::vector<long> lie_homology_dims(const Ring&, int, int, const FpDomain&);

// --- inversion numbers --------------------------------------------------------------

std::vector<std::vector<long long>> inversion_numbers(int i_max, int n_max) {
    if (i_max < 0 || n_max < 0) throw ValidationError("inversion_numbers: negative bound");
    if (n_max > 20 || i_max > 200)
        throw ResourceError("inversion_numbers: bounds beyond the 64-bit-safe range");

    // route 1: expand (1+q)(1+q+q^2)...(1+...+q^{n-1}), truncated past i_max
    std::vector<std::vector<long long>> prod(i_max + 1, std::vector<long long>(n_max + 1, 0));
    std::vector<long long> poly{1};
    for (int i = 0; i <= i_max; ++i) prod[i][0] = (i == 0);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<long long> next(
            std::min<std::size_t>(poly.size() + n - 1, static_cast<std::size_t>(i_max) + 1), 0);
        for (std::size_t t = 0; t < poly.size(); ++t)
            for (int s = 0; s < n && t + s < next.size(); ++s) next[t + s] += poly[t];
        poly = std::move(next);
        for (int i = 0; i <= i_max; ++i)
            prod[i][n] = (static_cast<std::size_t>(i) < poly.size()) ? poly[i] : 0;
    }

    // route 2: I(i,n) - I(i,n-1) = sum_{j<i} I(j,n-1) for n > i, completed by
    // the convolution over the last factor for n <= i
    std::vector<std::vector<long long>> rec(i_max + 1, std::vector<long long>(n_max + 1, 0));
    for (int i = 0; i <= i_max; ++i) rec[i][0] = (i == 0);
    for (int n = 1; n <= n_max; ++n)
        for (int i = 0; i <= i_max; ++i) {
            if (n > i) {
                long long acc = rec[i][n - 1];
                for (int j = 0; j < i; ++j) acc += rec[j][n - 1];
                rec[i][n] = acc;
            } else {
                long long acc = 0;
                for (int t = 0; t <= std::min(i, n - 1); ++t) acc += rec[i - t][n - 1];
                rec[i][n] = acc;
            }
        }

    for (int i = 0; i <= i_max; ++i)
        for (int n = 0; n <= n_max; ++n)
            if (prod[i][n] != rec[i][n])
                throw IntegrityError("inversion_numbers: product and recurrence disagree at I(" +
                                     std::to_string(i) + "," + std::to_string(n) + ")");
    return prod;
}

// --- group tables ---------------------------------------------------------------------

GroupTable GroupTable::cyclic(int m) {
    if (m < 1) throw ValidationError("cyclic: order must be positive");
    GroupTable t;
    t.size = m;
    t.mul.assign(m, std::vector<int>(m));
    t.inv.resize(m);
    t.id = 0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) t.mul[a][b] = (a + b) % m;
        t.inv[a] = (m - a) % m;
    }
    return t;
}

GroupTable GroupTable::from_matrix_group(const FiniteMatrixGroup& g) {
    GroupTable t;
    t.size = g.size();
    t.mul = g.mult_table();
    t.id = g.identity_index;
    t.inv.resize(t.size);
    for (int a = 0; a < t.size; ++a) t.inv[a] = g.inv(a);
    t.validate();
    return t;
}

GroupTable GroupTable::from_raw(std::vector<std::vector<int>> mul_table) {
    GroupTable t;
    t.size = static_cast<int>(mul_table.size());
    t.mul = std::move(mul_table);
    t.id = -1;
    for (int e = 0; e < t.size; ++e) {
        bool ok = true;
        for (int a = 0; a < t.size; ++a)
            if (t.mul[e][a] != a || t.mul[a][e] != a) ok = false;
        if (ok) {
            t.id = e;
            break;
        }
    }
    if (t.id < 0) throw ValidationError("group table: no identity element");
    t.inv.assign(t.size, -1);
    for (int a = 0; a < t.size; ++a)
        for (int b = 0; b < t.size; ++b)
            if (t.mul[a][b] == t.id && t.mul[b][a] == t.id) t.inv[a] = b;
    t.validate();
    return t;
}

void GroupTable::validate() const {
    if (static_cast<int>(mul.size()) != size) throw ValidationError("group table: not square");
    for (const auto& row : mul) {
        if (static_cast<int>(row.size()) != size) throw ValidationError("group table: not square");
        for (int v : row)
            if (v < 0 || v >= size) throw ValidationError("group table: entry out of range");
    }
    if (id < 0 || id >= size) throw ValidationError("group table: identity out of range");
    if (static_cast<int>(inv.size()) != size)
        throw ValidationError("group table: inverse list length mismatch");
    for (int a = 0; a < size; ++a) {
        if (mul[id][a] != a || mul[a][id] != a) throw ValidationError("group table: identity fails");
        if (inv[a] < 0 || inv[a] >= size || mul[a][inv[a]] != id || mul[inv[a]][a] != id)
            throw ValidationError("group table: inverses fail");
    }
    // associativity: exhaustive when cheap, deterministic sample otherwise
    auto check = [&](int a, int b, int c) {
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw ValidationError("group table: associativity fails");
    };
    if (static_cast<long>(size) * size * size <= 2000000) {
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b)
                for (int c = 0; c < size; ++c) check(a, b, c);
    } else {
        std::uint64_t state = 0x9e3779b97f4a7c15ull;
        for (int t = 0; t < 20000; ++t) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            check(static_cast<int>((state >> 33) % size), static_cast<int>((state >> 17) % size),
                  static_cast<int>(state % size));
        }
    }
}

void GroupPresentation::validate_module(int samples) const {
    if (trivial_module()) {
        if (module_dim != 1) throw ValidationError("module: trivial module must have dim 1");
        return;
    }
    if (static_cast<int>(module_action.size()) != table.size)
        throw ValidationError("module: need one matrix per group element");
    for (const auto& m : module_action) {
        if (static_cast<int>(m.size()) != module_dim)
            throw ValidationError("module: matrix shape mismatch");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != module_dim)
                throw ValidationError("module: matrix shape mismatch");
    }
    for (int i = 0; i < module_dim; ++i)
        for (int j = 0; j < module_dim; ++j)
            if (module_action[table.id][i][j] != (i == j ? 1 : 0))
                throw ValidationError("module: identity must act as the identity matrix");
    // rho(g) rho(h) = rho(gh) on a deterministic sample of pairs
    long total = static_cast<long>(table.size) * table.size;
    long stride = std::max(1L, total / std::max(1, samples));
    for (long t = 0; t < total; t += stride) {
        int g = static_cast<int>(t / table.size);
        int h = static_cast<int>(t % table.size);
        for (int i = 0; i < module_dim; ++i)
            for (int j = 0; j < module_dim; ++j) {
                std::int64_t acc = 0;
                for (int k = 0; k < module_dim; ++k)
                    acc += module_action[g][i][k] * module_action[h][k][j];
                if (acc != module_action[table.mul[g][h]][i][j])
                    throw ValidationError(
                        "module: action does not respect the multiplication table");
            }
    }
}

// --- bar complex -------------------------------------------------------------------

namespace {

struct BarIndex {
    int w = 0;              // |G| - 1
    std::vector<int> nonid; // element indices, ascending
    std::vector<int> code;  // element index -> digit, id -> -1

    explicit BarIndex(const GroupTable& g) : code(g.size, -1) {
        for (int e = 0; e < g.size; ++e)
            if (e != g.id) {
                code[e] = static_cast<int>(nonid.size());
                nonid.push_back(e);
            }
        w = static_cast<int>(nonid.size());
    }

    long tuples(int k) const {
        long t = 1;
        for (int s = 0; s < k; ++s) {
            if (t > kBarDimCap) return t;
            t *= w;
        }
        return t;
    }

    long encode(const std::vector<int>& tuple) const {
        long idx = 0;
        for (int e : tuple) idx = idx * w + code[e];
        return idx;
    }
};

} // namespace

template <class Domain>
ChainComplex<typename Domain::Scalar> bar_complex(const GroupPresentation& g, int top_degree,
                                                  const Domain& dom) {
    using K = typename Domain::Scalar;
    g.table.validate();
    g.validate_module();
    if (top_degree < 0) throw ValidationError("bar_complex: negative top degree");

    BarIndex bi(g.table);
    for (int k = 0; k <= top_degree; ++k) {
        long t = bi.tuples(k);
        if (t > kBarDimCap)
            throw ResourceError("bar_complex: (|G|-1)^" + std::to_string(k) +
                                " exceeds the cap " + std::to_string(kBarDimCap) +
                                "; lower the degree");
    }

    const int md = g.module_dim;
    ChainComplex<K> c;
    c.top = top_degree;
    c.dims.resize(top_degree + 1);
    c.d.resize(top_degree + 1);
    for (int k = 0; k <= top_degree; ++k) c.dims[k] = bi.tuples(k) * md;

    for (int k = 1; k <= top_degree; ++k) {
        SparseMat<K> d(static_cast<int>(c.dims[k - 1]), static_cast<int>(c.dims[k]));
        std::vector<int> tuple(k);
        const long ntup = bi.tuples(k);
        for (long t = 0; t < ntup; ++t) {
            long rem = t;
            for (int s = k - 1; s >= 0; --s) {
                tuple[s] = bi.nonid[rem % bi.w];
                rem /= bi.w;
            }
            // face 0: m.g_1 (x) [g_2..g_k]
            {
                std::vector<int> tail(tuple.begin() + 1, tuple.end());
                long row_t = bi.encode(tail);
                if (g.trivial_module()) {
                    d.add_to(static_cast<int>(row_t * md), static_cast<int>(t * md),
                             dom.from_int(1));
                } else {
                    const auto& act = g.module_action[g.table.inv[tuple[0]]];
                    for (int v = 0; v < md; ++v)
                        for (int u = 0; u < md; ++u)
                            if (act[u][v] != 0)
                                d.add_to(static_cast<int>(row_t * md + u),
                                         static_cast<int>(t * md + v), dom.from_int(act[u][v]));
                }
            }
            // faces 1..k-1: merge adjacent entries; a merge hitting the
            // identity dies in the normalized complex
            for (int s = 1; s < k; ++s) {
                int prod = g.table.mul[tuple[s - 1]][tuple[s]];
                if (prod == g.table.id) continue;
                std::vector<int> merged;
                merged.reserve(k - 1);
                for (int q = 0; q < s - 1; ++q) merged.push_back(tuple[q]);
                merged.push_back(prod);
                for (int q = s + 1; q < k; ++q) merged.push_back(tuple[q]);
                long row_t = bi.encode(merged);
                int sign = (s % 2 == 0) ? 1 : -1;
                for (int v = 0; v < md; ++v)
                    d.add_to(static_cast<int>(row_t * md + v), static_cast<int>(t * md + v),
                             dom.from_int(sign));
            }
            // face k: drop the last entry
            {
                std::vector<int> head(tuple.begin(), tuple.end() - 1);
                long row_t = bi.encode(head);
                int sign = (k % 2 == 0) ? 1 : -1;
                for (int v = 0; v < md; ++v)
                    d.add_to(static_cast<int>(row_t * md + v), static_cast<int>(t * md + v),
                             dom.from_int(sign));
            }
        }
        c.d[k] = std::move(d);
    }
    return c;
}

template ChainComplex<Rational> bar_complex(const GroupPresentation&, int, const QDomain&);
template ChainComplex<Fp> bar_complex(const GroupPresentation&, int, const FpDomain&);
template ChainComplex<Integer> bar_complex(const GroupPresentation&, int, const ZDomain&);

template <class Domain>
std::vector<long> group_homology_dims(const GroupPresentation& g, int i_max, const Domain& dom,
                                      HomologyBackend backend) {
    if (i_max < 0) throw ValidationError("group_homology_dims: negative i_max");
    if (backend == HomologyBackend::MinimalResolution) {
        if constexpr (std::is_same_v<Domain, FpDomain>) {
            if (!g.trivial_module())
                throw UnsupportedError("minimal-resolution backend: trivial coefficients only");
            return pgroup_betti_numbers(g.table, dom.p, i_max);
        } else {
            throw UnsupportedError("minimal-resolution backend: F_p coefficients only");
        }
    }
    auto c = bar_complex(g, i_max + 1, dom);
    auto h = homology_dims(c);
    h.resize(i_max + 1);
    return h;
}

template std::vector<long> group_homology_dims(const GroupPresentation&, int, const QDomain&,
                                               HomologyBackend);
template std::vector<long> group_homology_dims(const GroupPresentation&, int, const FpDomain&,
                                               HomologyBackend);

std::vector<IntegralHomology> group_homology_integral(const GroupPresentation& g, int i_max) {
    if (i_max < 0) throw ValidationError("group_homology_integral: negative i_max");
    auto c = bar_complex(g, i_max + 1, ZDomain{});
    auto h = homology_groups_integral(c);
    h.resize(i_max + 1);
    return h;
}

// --- minimal resolution over F_p[G] ---------------------------------------------------

namespace {

// dense echelon span over F_p
struct SpanFp {
    std::uint32_t p;
    int len;
    std::vector<std::vector<std::uint32_t>> rows; // echelon, lead scaled to 1
    std::vector<int> lead;                        // ascending

    SpanFp(std::uint32_t p_, int len_) : p(p_), len(len_) {}

    static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
        long long t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        return static_cast<std::uint32_t>(t < 0 ? t + p : t);
    }

    void reduce(std::vector<std::uint32_t>& v) const {
        for (std::size_t s = 0; s < rows.size(); ++s) {
            std::uint32_t c = v[lead[s]];
            if (c == 0) continue;
            const auto& r = rows[s];
            for (int t = lead[s]; t < len; ++t)
                v[t] = (v[t] + static_cast<std::uint64_t>(p - c) * r[t]) % p;
        }
    }

    bool insert(std::vector<std::uint32_t> v) {
        reduce(v);
        int l = -1;
        for (int t = 0; t < len; ++t)
            if (v[t] != 0) {
                l = t;
                break;
            }
        if (l < 0) return false;
        std::uint32_t iv = inv_mod(v[l], p);
        for (int t = l; t < len; ++t)
            v[t] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v[t]) * iv % p);
        auto it = std::lower_bound(lead.begin(), lead.end(), l);
        int pos = static_cast<int>(it - lead.begin());
        lead.insert(it, l);
        rows.insert(rows.begin() + pos, std::move(v));
        return true;
    }

    int dim() const { return static_cast<int>(rows.size()); }
};

std::vector<std::vector<std::uint32_t>> kernel_fp_dense(
    const std::vector<std::vector<std::uint32_t>>& mat, int cols, std::uint32_t p) {
    SpanFp ech(p, cols);
    for (const auto& r : mat) ech.insert(r);
    std::vector<char> is_pivot(cols, 0);
    for (int l : ech.lead) is_pivot[l] = 1;
    std::vector<std::vector<std::uint32_t>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint32_t> x(cols, 0);
        x[f] = 1;
        for (int s = ech.dim() - 1; s >= 0; --s) { // decreasing lead
            const auto& r = ech.rows[s];
            int l = ech.lead[s];
            std::uint64_t acc = 0;
            for (int t = l + 1; t < cols; ++t)
                if (r[t] != 0 && x[t] != 0) acc += static_cast<std::uint64_t>(r[t]) * x[t] % p;
            x[l] = static_cast<std::uint32_t>((p - acc % p) % p);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace

std::vector<long> pgroup_betti_numbers(const GroupTable& g, std::uint32_t p, int i_max) {
    g.validate();
    if (i_max < 0) throw ValidationError("pgroup_betti_numbers: negative i_max");
    long order = g.size;
    while (order % p == 0) order /= p;
    if (order != 1) throw UnsupportedError("pgroup_betti_numbers: |G| must be a power of p");

    const int G = g.size;
    std::vector<long> betti{1}; // b_0
    if (i_max == 0) return betti;

    // left multiplication h |-> gh permutes the A-basis of each block
    auto act = [&](int gg, const std::vector<std::uint32_t>& x, int blocks) {
        std::vector<std::uint32_t> y(x.size(), 0);
        for (int t = 0; t < blocks; ++t)
            for (int h = 0; h < G; ++h)
                y[static_cast<std::size_t>(t) * G + g.mul[gg][h]] =
                    x[static_cast<std::size_t>(t) * G + h];
        return y;
    };

    // first syzygy: the augmentation ideal with basis (g - id)
    int blocks = 1;
    std::vector<std::vector<std::uint32_t>> omega;
    for (int e = 0; e < G; ++e) {
        if (e == g.id) continue;
        std::vector<std::uint32_t> v(G, 0);
        v[e] = 1;
        v[g.id] = p - 1;
        omega.push_back(std::move(v));
    }

    for (int i = 1; i <= i_max; ++i) {
        const int len = blocks * G;
        SpanFp ospan(p, len);
        for (const auto& v : omega) ospan.insert(v);
        const auto& obasis = ospan.rows; // echelon basis of omega

        // rad . omega = span{ (g - 1) x }
        SpanFp radspan(p, len);
        for (int e = 0; e < G; ++e) {
            if (e == g.id) continue;
            for (const auto& x : obasis) {
                auto y = act(e, x, blocks);
                for (int t = 0; t < len; ++t)
                    y[t] = static_cast<std::uint32_t>(
                        (y[t] + static_cast<std::uint64_t>(p - 1) * x[t]) % p);
                radspan.insert(std::move(y));
            }
        }

        // minimal generators: echelon vectors of omega independent mod rad.omega
        std::vector<std::vector<std::uint32_t>> gens;
        SpanFp probe = radspan;
        for (const auto& x : obasis)
            if (probe.insert(x)) gens.push_back(x);
        betti.push_back(static_cast<long>(gens.size()));
        if (i == i_max) break;

        // next syzygy: kernel of A^{b_i} -> A^{blocks}, e_{t,h} |-> h . x_t
        const int bi = static_cast<int>(gens.size());
        const int ncols = bi * G;
        std::vector<std::vector<std::uint32_t>> rows(len, std::vector<std::uint32_t>(ncols, 0));
        for (int t = 0; t < bi; ++t)
            for (int h = 0; h < G; ++h) {
                auto col = act(h, gens[t], blocks);
                int cidx = t * G + h;
                for (int ridx = 0; ridx < len; ++ridx) rows[ridx][cidx] = col[ridx];
            }
        auto ker = kernel_fp_dense(rows, ncols, p);
        // the image must be exactly omega (Nakayama)
        if (static_cast<int>(ker.size()) != ncols - ospan.dim())
            throw IntegrityError("pgroup_betti_numbers: syzygy rank mismatch");
        omega = std::move(ker);
        blocks = bi;
    }
    return betti;
}

// --- induced OI maps on Lie homology ---------------------------------------------------

namespace {

struct HomologyBasisData {
    long chain_dim = 0;
    std::vector<std::vector<Rational>> reps; // cycle representatives
    RationalSpan expr{0, 0};
};

HomologyBasisData homology_basis(const ChainComplex<Rational>& c, int i) {
    HomologyBasisData out;
    out.chain_dim = c.dims[i];
    const int dim = static_cast<int>(c.dims[i]);

    std::vector<std::vector<Rational>> cycles;
    if (i == 0) {
        for (int t = 0; t < dim; ++t) {
            std::vector<Rational> e(dim, Rational(0));
            e[t] = Rational(1);
            cycles.push_back(std::move(e));
        }
    } else {
        cycles = kernel_basis(c.d[i]);
    }

    std::vector<std::vector<Rational>> boundary_cols;
    if (i + 1 <= c.top) {
        const auto& dn = c.d[i + 1];
        auto dnt = dn.transposed();
        for (int col = 0; col < dn.cols(); ++col) {
            std::vector<Rational> b(dim, Rational(0));
            for (const auto& [r, v] : dnt.row(col)) b[r] = v;
            boundary_cols.push_back(std::move(b));
        }
    }

    RationalSpan bspan(dim);
    for (const auto& b : boundary_cols) bspan.insert(b);
    for (const auto& z : cycles)
        if (bspan.insert(z)) out.reps.push_back(z);

    out.expr = RationalSpan(dim, static_cast<int>(out.reps.size()));
    for (const auto& b : boundary_cols) out.expr.insert(b, {});
    for (std::size_t t = 0; t < out.reps.size(); ++t) {
        std::vector<Rational> tag(out.reps.size(), Rational(0));
        tag[t] = Rational(1);
        out.expr.insert(out.reps[t], tag);
    }
    return out;
}

} // namespace

TabulatedOIModule induced_oi_maps(const Ring& r, int i, int n_max) {
    if (i < 0 || n_max < 0) throw ValidationError("induced_oi_maps: negative bound");

    std::vector<LieAlgebraPresentation> lies;
    std::vector<ChainComplex<Rational>> complexes;
    std::vector<HomologyBasisData> bases;
    std::vector<std::vector<std::vector<int>>> exterior; // degree-i subsets per n
    for (int n = 0; n <= n_max; ++n) {
        lies.emplace_back(r, n);
        complexes.push_back(koszul_complex(lies[n], i + 1, QDomain{}));
        complexes[n].check_d_squared();
        bases.push_back(homology_basis(complexes[n], i));
        exterior.push_back(exterior_basis(lies[n].dim(), i));
    }

    TabulatedOIModule t;
    t.n_max = n_max;
    t.dims.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) t.dims[n] = static_cast<long>(bases[n].reps.size());

    for (int k = 0; k <= n_max; ++k)
        for (int m = k; m <= n_max; ++m)
            for (const auto& f : enumerate_hom(k, m)) {
                std::map<std::vector<int>, int> target_index;
                for (std::size_t s = 0; s < exterior[m].size(); ++s)
                    target_index[exterior[m][s]] = static_cast<int>(s);

                std::vector<int> label_map(lies[k].dim());
                for (int b = 0; b < lies[k].dim(); ++b) {
                    auto lab = lies[k].basis()[b];
                    label_map[b] = lies[m].index_of({f(lab.i), f(lab.j), lab.a});
                }

                SparseMat<Rational> mat(static_cast<int>(t.dims[m]), static_cast<int>(t.dims[k]));
                for (std::size_t rep = 0; rep < bases[k].reps.size(); ++rep) {
                    const auto& v = bases[k].reps[rep];
                    std::vector<Rational> w(bases[m].chain_dim, Rational(0));
                    for (std::size_t s = 0; s < exterior[k].size(); ++s) {
                        if (sgn(v[s]) == 0) continue;
                        std::vector<int> img;
                        img.reserve(exterior[k][s].size());
                        for (int b : exterior[k][s]) img.push_back(label_map[b]);
                        // the label map is order-preserving, so img stays sorted
                        w[target_index.at(img)] += v[s];
                    }
                    auto coords = bases[m].expr.express(w);
                    if (!coords)
                        throw IntegrityError("induced_oi_maps: image of a cycle is not a cycle");
                    for (std::size_t row = 0; row < coords->size(); ++row)
                        if (sgn((*coords)[row]) != 0)
                            mat.set(static_cast<int>(row), static_cast<int>(rep), (*coords)[row]);
                }
                t.maps.emplace(f, std::move(mat));
            }

    t.check_functoriality();
    return t;
}

} // namespace unistab
