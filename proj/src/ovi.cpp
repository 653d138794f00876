#include "unistab/ovi.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace unistab {

using nlohmann::json;

namespace {

constexpr int kGroupRankCap = 5;     // n <= 5
constexpr int kGroupRingCap = 4;     // |R| <= 4
constexpr long kGroupElementCap = 200000;
constexpr long kMultTableCap = 2048; // export / table materialization

} // namespace

MatN MatN::identity(const Ring& r, int n) {
    MatN m;
    m.n = n;
    m.e.assign(static_cast<std::size_t>(n) * n, r.zero_idx());
    for (int i = 0; i < n; ++i) m.put(i, i, r.one_idx());
    return m;
}

bool MatN::is_upper_unitriangular(const Ring& r) const {
    for (int i = 0; i < n; ++i) {
        if (at(i, i) != r.one_idx()) return false;
        for (int j = 0; j < i; ++j)
            if (at(i, j) != r.zero_idx()) return false;
    }
    return true;
}

MatN mat_mul(const Ring& r, const MatN& a, const MatN& b) {
    if (a.n != b.n) throw ValidationError("mat_mul: size mismatch");
    MatN c;
    c.n = a.n;
    c.e.assign(static_cast<std::size_t>(a.n) * a.n, r.zero_idx());
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            int aik = a.at(i, k);
            if (aik == r.zero_idx()) continue;
            for (int j = 0; j < a.n; ++j) {
                int bkj = b.at(k, j);
                if (bkj == r.zero_idx()) continue;
                c.put(i, j, r.add_idx(c.at(i, j), r.mul_idx(aik, bkj)));
            }
        }
    return c;
}

OviMorphism::OviMorphism(const Ring& r, int d_, int n_, std::vector<int> pivots_,
                         std::vector<std::vector<int>> entries_)
    : d(d_), n(n_), pivots(std::move(pivots_)), entries(std::move(entries_)) {
    r.size(); // finite ring required
    OIMorphism check(d, n, pivots); // validates strict increase and range
    if (static_cast<int>(entries.size()) != d)
        throw ValidationError("OviMorphism: one entry column per source basis vector");
    for (int j = 0; j < d; ++j) {
        if (static_cast<int>(entries[j].size()) != pivots[j] - 1)
            throw ValidationError("OviMorphism: column " + std::to_string(j + 1) +
                                  " must have exactly pivot-1 above entries");
        for (int v : entries[j])
            if (v < 0 || v >= r.size())
                throw ValidationError("OviMorphism: entry index out of range");
    }
}

OviMorphism OviMorphism::standard(const Ring& r, const OIMorphism& f0) {
    std::vector<std::vector<int>> entries(f0.src);
    for (int j = 0; j < f0.src; ++j) entries[j].assign(f0.image[j] - 1, r.zero_idx());
    return OviMorphism(r, f0.src, f0.dst, f0.image, std::move(entries));
}

OIMorphism OviMorphism::underlying() const { return OIMorphism(d, n, pivots); }

int OviMorphism::entry(const Ring& r, int i, int j) const {
    if (i < 1 || i > n || j < 1 || j > d) throw ValidationError("OviMorphism::entry: out of range");
    int piv = pivots[j - 1];
    if (i == piv) return r.one_idx();
    if (i > piv) return r.zero_idx();
    return entries[j - 1][i - 1];
}

bool operator<(const OviMorphism& a, const OviMorphism& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.n != b.n) return a.n < b.n;
    if (a.pivots != b.pivots) return a.pivots < b.pivots;
    return a.entries < b.entries;
}

OviMorphism compose_ovi(const Ring& r, const OviMorphism& g, const OviMorphism& f) {
    if (f.n != g.d) throw ValidationError("compose_ovi: target(f) != source(g)");
    OIMorphism f0 = compose(g.underlying(), f.underlying());
    std::vector<std::vector<int>> entries(f0.src);
    for (int j = 1; j <= f.d; ++j) {
        int piv = f0.image[j - 1];
        entries[j - 1].assign(piv - 1, r.zero_idx());
        for (int i = 1; i <= g.n; ++i) {
            int acc = r.zero_idx();
            for (int k = 1; k <= f.n; ++k)
                acc = r.add_idx(acc, r.mul_idx(g.entry(r, i, k), f.entry(r, k, j)));
            if (i < piv) {
                entries[j - 1][i - 1] = acc;
            } else if (i == piv) {
                if (acc != r.one_idx()) throw IntegrityError("compose_ovi: pivot entry is not 1");
            } else if (acc != r.zero_idx()) {
                throw IntegrityError("compose_ovi: nonzero entry below pivot");
            }
        }
    }
    return OviMorphism(r, f.d, g.n, f0.image, std::move(entries));
}

std::uint64_t lambda_cell_count(const Ring& r, const std::vector<int>& pivots) {
    std::uint64_t total = 1;
    std::uint64_t N = static_cast<std::uint64_t>(r.size());
    for (int p : pivots)
        for (int t = 1; t < p; ++t) {
            if (total > UINT64_MAX / N) throw ResourceError("lambda_cell_count: overflow");
            total *= N;
        }
    return total;
}

std::uint64_t count_hom_ovi(const Ring& r, int d, int n) {
    if (d < 0 || n < 0) throw ValidationError("count_hom_ovi: negative size");
    std::uint64_t total = 0;
    for (const auto& piv : increasing_tuples(d, n)) {
        std::uint64_t c = lambda_cell_count(r, piv);
        if (total > UINT64_MAX - c) throw ResourceError("count_hom_ovi: overflow");
        total += c;
    }
    return total;
}

std::vector<OviMorphism> enumerate_hom_ovi(const Ring& r, int d, int n) {
    if (r.kind() == RingKind::FreeAdditive)
        throw UnsupportedError("enumerate_hom_ovi: hom-sets over a free-additive ring are infinite");
    std::vector<OviMorphism> out;
    const int N = r.size();
    const auto order = r.enumerate();
    for (const auto& piv : increasing_tuples(d, n)) {
        int total_cells = 0;
        for (int j = 0; j < d; ++j) total_cells += piv[j] - 1;
        std::vector<int> odo(total_cells, 0);
        for (;;) {
            std::vector<std::vector<int>> entries(d);
            int t = 0;
            for (int j = 0; j < d; ++j) {
                entries[j].resize(piv[j] - 1);
                for (int i = 0; i < piv[j] - 1; ++i)
                    entries[j][i] = static_cast<int>(order[odo[t++]].c[0]);
            }
            out.push_back(OviMorphism(r, d, n, piv, std::move(entries)));
            int k = total_cells - 1;
            while (k >= 0 && odo[k] == N - 1) odo[k--] = 0;
            if (k < 0) break;
            ++odo[k];
        }
    }
    return out;
}

OviFactorization factor_unique(const Ring& r, const OviMorphism& phi) {
    OviFactorization out;
    out.f = OviMorphism::standard(r, phi.underlying());
    MatN psi = MatN::identity(r, phi.n);
    for (int j = 1; j <= phi.d; ++j) {
        int piv = phi.pivots[j - 1];
        for (int i = 1; i < piv; ++i) psi.put(i - 1, piv - 1, phi.entries[j - 1][i - 1]);
    }
    // psi is unitriangular by construction; the non-image columns stay standard
    if (!psi.is_upper_unitriangular(r))
        throw IntegrityError("factor_unique: completed matrix is not unitriangular");
    out.psi = std::move(psi);

    for (int j = 1; j <= phi.d; ++j)
        for (int i = 1; i <= phi.n; ++i) {
            int acc = r.zero_idx();
            for (int k = 1; k <= phi.n; ++k)
                acc = r.add_idx(acc, r.mul_idx(out.psi.at(i - 1, k - 1), out.f.entry(r, k, j)));
            if (acc != phi.entry(r, i, j)) throw IntegrityError("factor_unique: psi . f != phi");
        }
    return out;
}

// --- groups -------------------------------------------------------------------

namespace {

std::vector<int> unit_indices(const Ring& r) {
    std::vector<int> units;
    for (int i = 0; i < r.size(); ++i)
        if (r.is_unit_idx(i)) units.push_back(i);
    return units;
}

void check_group_caps(const Ring& r, int n) {
    if (n > kGroupRankCap)
        throw ResourceError("build_group: n = " + std::to_string(n) + " exceeds the cap n <= " +
                            std::to_string(kGroupRankCap));
    if (r.size() > kGroupRingCap)
        throw ResourceError("build_group: |R| = " + std::to_string(r.size()) +
                            " exceeds the cap |R| <= " + std::to_string(kGroupRingCap));
}

// Odometer over free cells (values from cell_values) and diagonal cells
// (values from diag_values).
std::vector<MatN> enumerate_matrices(const Ring& r, int n,
                                     const std::vector<std::pair<int, int>>& free_cells,
                                     const std::vector<int>& cell_values,
                                     const std::vector<std::pair<int, int>>& diag_cells,
                                     const std::vector<int>& diag_values) {
    long expected = 1;
    for (std::size_t t = 0; t < diag_cells.size(); ++t) {
        expected *= static_cast<long>(diag_values.size());
        if (expected > kGroupElementCap)
            throw ResourceError("build_group: group order exceeds the element cap " +
                                std::to_string(kGroupElementCap));
    }
    for (std::size_t t = 0; t < free_cells.size(); ++t) {
        expected *= static_cast<long>(cell_values.size());
        if (expected > kGroupElementCap)
            throw ResourceError("build_group: group order exceeds the element cap " +
                                std::to_string(kGroupElementCap));
    }

    std::vector<MatN> out;
    out.reserve(expected);
    std::vector<std::size_t> odo(diag_cells.size() + free_cells.size(), 0);
    for (;;) {
        MatN m = MatN::identity(r, n);
        std::size_t t = 0;
        for (const auto& [i, j] : diag_cells) m.put(i, j, diag_values[odo[t++]]);
        for (const auto& [i, j] : free_cells) m.put(i, j, cell_values[odo[t++]]);
        out.push_back(std::move(m));
        std::size_t k = odo.size();
        for (;;) {
            if (k == 0) return out;
            --k;
            std::size_t limit = k < diag_cells.size() ? diag_values.size() : cell_values.size();
            if (odo[k] + 1 < limit) {
                ++odo[k];
                break;
            }
            odo[k] = 0;
        }
    }
}

} // namespace

int FiniteMatrixGroup::index_of(const MatN& m) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), m);
    if (it == elements.end() || !(*it == m))
        throw IntegrityError("group: product left the element set (closure violation)");
    return static_cast<int>(it - elements.begin());
}

int FiniteMatrixGroup::mul(int a, int b) const {
    return index_of(mat_mul(ring, elements.at(a), elements.at(b)));
}

int FiniteMatrixGroup::inv(int a) const {
    for (int b = 0; b < size(); ++b)
        if (mul(a, b) == identity_index && mul(b, a) == identity_index) return b;
    throw IntegrityError("group: element has no inverse in the set");
}

std::vector<std::vector<int>> FiniteMatrixGroup::mult_table() const {
    if (size() > kMultTableCap)
        throw ResourceError("group: multiplication table capped at |G| <= " +
                            std::to_string(kMultTableCap));
    std::vector<std::vector<int>> t(size(), std::vector<int>(size()));
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b) t[a][b] = mul(a, b);
    return t;
}

std::string FiniteMatrixGroup::to_json() const {
    json j;
    j["ring"] = json::parse(ring.to_json());
    j["family"] = family_name;
    j["n"] = n;
    j["identity"] = identity_index;
    json elems = json::array();
    for (const auto& m : elements) {
        json rows = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int c = 0; c < n; ++c) row.push_back(m.at(i, c));
            rows.push_back(row);
        }
        elems.push_back(rows);
    }
    j["elements"] = elems;
    j["mult_table"] = mult_table();
    return j.dump();
}

FiniteMatrixGroup build_group(const Ring& r, GroupFamily family, int n,
                              const std::vector<int>& marks,
                              const std::vector<int>& units_subset) {
    if (r.kind() == RingKind::FreeAdditive)
        throw UnsupportedError("build_group: finite rings only");
    if (n < 1) throw ValidationError("build_group: n must be >= 1");
    check_group_caps(r, n);

    std::vector<int> all_vals(r.size());
    for (int i = 0; i < r.size(); ++i) all_vals[i] = i;

    std::vector<std::pair<int, int>> upper_cells; // 0-based (row, col), row < col
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) upper_cells.push_back({i, j});

    FiniteMatrixGroup g(r);
    g.n = n;

    switch (family) {
    case GroupFamily::U: {
        g.family_name = "U";
        g.elements = enumerate_matrices(r, n, upper_cells, all_vals, {}, {});
        break;
    }
    case GroupFamily::UMarked: {
        g.family_name = "Umarked";
        OIdObject check(n, marks); // validates marks
        std::vector<std::pair<int, int>> cells;
        for (const auto& [i, j] : upper_cells) {
            bool marked_col = std::find(marks.begin(), marks.end(), j + 1) != marks.end();
            if (!marked_col) cells.push_back({i, j});
        }
        g.elements = enumerate_matrices(r, n, cells, all_vals, {}, {});
        break;
    }
    case GroupFamily::B:
    case GroupFamily::BC: {
        std::vector<int> units = unit_indices(r);
        std::vector<std::pair<int, int>> diag;
        for (int i = 0; i < n; ++i) diag.push_back({i, i});
        auto elems = enumerate_matrices(r, n, upper_cells, all_vals, diag, units);
        if (family == GroupFamily::B) {
            g.family_name = "B";
            g.elements = std::move(elems);
        } else {
            g.family_name = "BC";
            if (!r.commutative())
                throw UnsupportedError("build_group: B^C needs a commutative ring");
            if (units_subset.empty())
                throw ValidationError("build_group: B^C needs an explicit subset C of units");
            for (int c : units_subset)
                if (!r.is_unit_idx(c)) throw ValidationError("build_group: C contains a non-unit");
            for (int a : units_subset)
                for (int b : units_subset) {
                    int ab = r.mul_idx(a, b);
                    if (std::find(units_subset.begin(), units_subset.end(), ab) ==
                        units_subset.end())
                        throw ValidationError("build_group: C is not closed under product");
                }
            for (auto& m : elems) {
                int det = r.one_idx();
                for (int i = 0; i < n; ++i) det = r.mul_idx(det, m.at(i, i));
                if (std::find(units_subset.begin(), units_subset.end(), det) !=
                    units_subset.end())
                    g.elements.push_back(std::move(m));
            }
        }
        break;
    }
    }

    std::sort(g.elements.begin(), g.elements.end());
    g.elements.erase(std::unique(g.elements.begin(), g.elements.end(),
                                 [](const MatN& a, const MatN& b) { return a == b; }),
                     g.elements.end());
    g.identity_index = g.index_of(MatN::identity(r, n));

    // construction-time verification: closure (exhaustive at these sizes),
    // inverses, and the order formula for the U family
    const long sz = g.size();
    if (sz * sz <= 4000000) {
        for (int a = 0; a < sz; ++a)
            for (int b = 0; b < sz; ++b) g.mul(a, b);
    }
    for (int a = 0; a < sz; ++a) g.inv(a);

    if (family == GroupFamily::U) {
        std::uint64_t expect = 1;
        for (int t = 0; t < n * (n - 1) / 2; ++t) expect *= static_cast<std::uint64_t>(r.size());
        if (static_cast<std::uint64_t>(sz) != expect)
            throw IntegrityError("build_group: |U_n| != |R|^(n(n-1)/2)");
    }
    return g;
}

std::uint64_t marked_index(const Ring& r, int n, const std::vector<int>& marks) {
    OIdObject check(n, marks);
    std::uint64_t idx = 1;
    std::uint64_t N = static_cast<std::uint64_t>(r.size());
    for (int m : marks)
        for (int t = 1; t < m; ++t) {
            if (idx > UINT64_MAX / N) throw ResourceError("marked_index: overflow");
            idx *= N;
        }
    return idx;
}

std::uint64_t induction_dims(const Ring& r, int d, int n,
                             const std::map<std::vector<int>, long>& dims_per_marks) {
    std::uint64_t total = 0;
    for (const auto& marks : increasing_tuples(d, n)) {
        auto it = dims_per_marks.find(marks);
        if (it == dims_per_marks.end())
            throw ValidationError("induction_dims: missing dimension for a marking");
        if (it->second < 0) throw ValidationError("induction_dims: negative dimension");
        total += marked_index(r, n, marks) * static_cast<std::uint64_t>(it->second);
    }
    return total;
}

} // namespace unistab
