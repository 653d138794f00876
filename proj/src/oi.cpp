#include "unistab/oi.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace unistab {

using nlohmann::json;

OIMorphism::OIMorphism(int n, int m, std::vector<int> img)
    : src(n), dst(m), image(std::move(img)) {
    if (n < 0 || m < 0 || static_cast<int>(image.size()) != n)
        throw ValidationError("OIMorphism: image length must equal source size");
    int prev = 0;
    for (int v : image) {
        if (v <= prev || v > m) throw ValidationError("OIMorphism: image must strictly increase within [1..m]");
        prev = v;
    }
}

OIMorphism OIMorphism::identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    return OIMorphism(n, n, std::move(img));
}

OIMorphism compose(const OIMorphism& g, const OIMorphism& f) {
    if (f.dst != g.src) throw ValidationError("compose: target(f) != source(g)");
    std::vector<int> img(f.src);
    for (int i = 1; i <= f.src; ++i) img[i - 1] = g(f(i));
    return OIMorphism(f.src, g.dst, std::move(img));
}

std::vector<std::vector<int>> increasing_tuples(int d, int n) {
    std::vector<std::vector<int>> out;
    if (d < 0 || n < 0) throw ValidationError("increasing_tuples: negative bound");
    if (d > n) return out;
    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = i + 1;
    if (d == 0) {
        out.push_back({});
        return out;
    }
    for (;;) {
        out.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[i] == n - (d - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<OIMorphism> enumerate_hom(int n, int m) {
    std::vector<OIMorphism> out;
    for (auto& img : increasing_tuples(n, m)) out.push_back(OIMorphism(n, m, std::move(img)));
    return out;
}

std::uint64_t count_hom(int n, int m) {
    if (n < 0 || m < 0) throw ValidationError("count_hom: negative size");
    if (n > m) return 0;
    // C(m, n), overflow-checked
    std::uint64_t r = 1;
    int k = std::min(n, m - n);
    for (int i = 1; i <= k; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(m - k + i);
        if (r > UINT64_MAX / num) throw ResourceError("count_hom: binomial overflows 64 bits");
        r = r * num / i;
    }
    return r;
}

OIdObject::OIdObject(int n_, std::vector<int> marks_) : n(n_), marks(std::move(marks_)) {
    if (n < 0) throw ValidationError("OIdObject: negative size");
    int prev = 0;
    for (int v : marks) {
        if (v <= prev || v > n) throw ValidationError("OIdObject: marks must strictly increase within [1..n]");
        prev = v;
    }
}

std::vector<int> split_oid(const OIdObject& obj) {
    const int d = obj.d();
    std::vector<int> sizes(d + 1);
    for (int i = 1; i <= d; ++i) {
        int lo = (i == 1) ? 0 : obj.marks[i - 2];
        sizes[i - 1] = obj.marks[i - 1] - lo - 1;
    }
    sizes[d] = obj.n - (d == 0 ? 0 : obj.marks[d - 1]);
    return sizes;
}

OIdObject merge_oid(const std::vector<int>& sizes) {
    if (sizes.empty()) throw ValidationError("merge_oid: need d+1 >= 1 sizes");
    for (int s : sizes)
        if (s < 0) throw ValidationError("merge_oid: negative block size");
    const int d = static_cast<int>(sizes.size()) - 1;
    std::vector<int> marks(d);
    int acc = 0;
    for (int i = 0; i < d; ++i) {
        acc += sizes[i] + 1;
        marks[i] = acc;
    }
    int n = acc + sizes[d];
    return OIdObject(n, std::move(marks));
}

std::vector<OIMorphism> enumerate_hom_oid(const OIdObject& a, const OIdObject& b) {
    if (a.d() != b.d()) throw ValidationError("enumerate_hom_oid: mark counts differ");
    // Filter the plain OI morphisms; window sizes keep this cheap and the
    // order inherited from enumerate_hom is lexicographic.
    std::vector<OIMorphism> out;
    for (auto& f : enumerate_hom(a.n, b.n)) {
        bool ok = true;
        for (int t = 0; t < a.d(); ++t)
            if (f(a.marks[t]) != b.marks[t]) {
                ok = false;
                break;
            }
        if (ok) out.push_back(std::move(f));
    }
    return out;
}

std::uint64_t count_hom_oid(const OIdObject& a, const OIdObject& b) {
    if (a.d() != b.d()) throw ValidationError("count_hom_oid: mark counts differ");
    auto sa = split_oid(a);
    auto sb = split_oid(b);
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        std::uint64_t c = count_hom(sa[i], sb[i]);
        if (c != 0 && r > UINT64_MAX / c) throw ResourceError("count_hom_oid: overflow");
        r *= c;
    }
    return r;
}

long OidDimTable::at(const OIdObject& o) const {
    auto it = dims.find(o);
    if (it == dims.end())
        throw ValidationError("dimension table: missing entry at n=" + std::to_string(o.n));
    return it->second;
}

void OidDimTable::validate_coverage() const {
    for (int n = n0; n <= n_max; ++n)
        for (const auto& marks : increasing_tuples(d, n))
            at(OIdObject(n, marks));
}

std::vector<long> kan_dims(const OidDimTable& t) {
    t.validate_coverage();
    std::vector<long> out;
    for (int n = t.n0; n <= t.n_max; ++n) {
        long acc = 0;
        for (const auto& marks : increasing_tuples(t.d, n)) acc += t.at(OIdObject(n, marks));
        out.push_back(acc);
    }
    return out;
}

OidDimTable shift_dims(const OidDimTable& t) {
    if (t.n_max < t.n0) throw ValidationError("shift_dims: empty window");
    OidDimTable s;
    s.d = t.d;
    s.n0 = t.n0;
    s.n_max = t.n_max - 1;
    for (int n = s.n0; n <= s.n_max; ++n)
        for (const auto& marks : increasing_tuples(t.d, n))
            s.dims[OIdObject(n, marks)] = t.at(OIdObject(n + 1, marks));
    return s;
}

OidDimTable delta_dims(const OidDimTable& t) {
    OidDimTable s;
    s.d = t.d - 1;
    s.n0 = t.n0;
    s.n_max = t.n_max - 1;
    if (t.d == 0) {
        // Delta of an OI(0)-module is zero by convention.
        s.d = 0;
        for (int n = s.n0; n <= s.n_max; ++n) s.dims[OIdObject(n, {})] = 0;
        return s;
    }
    for (int n = s.n0; n <= s.n_max; ++n)
        for (const auto& marks : increasing_tuples(s.d, n)) {
            std::vector<int> full = marks;
            full.push_back(n + 1);
            s.dims[OIdObject(n, marks)] = t.at(OIdObject(n + 1, full));
        }
    return s;
}

bool check_shift_decomposition(const OidDimTable& t) {
    // Both sides count markings of [n+1], split by whether the last mark is
    // n+1; a false return means the implementation is broken, not the input.
    OidDimTable sh = shift_dims(t);
    OidDimTable de = delta_dims(t);

    // Sigma(Phi_! M)_n = sum over markings of [n+1] of M_{n+1,marks}
    for (int n = t.n0; n <= t.n_max - 1; ++n) {
        long lhs = 0;
        for (const auto& marks : increasing_tuples(t.d, n + 1)) lhs += t.at(OIdObject(n + 1, marks));
        long rhs = 0;
        for (const auto& marks : increasing_tuples(sh.d, n)) rhs += sh.at(OIdObject(n, marks));
        for (const auto& marks : increasing_tuples(de.d, n)) rhs += de.at(OIdObject(n, marks));
        if (lhs != rhs) return false;
    }
    return true;
}

const SparseMat<Rational>& TabulatedOIModule::map_of(const OIMorphism& f) const {
    auto it = maps.find(f);
    if (it == maps.end()) throw ValidationError("TabulatedOIModule: morphism not tabulated");
    return it->second;
}

void TabulatedOIModule::validate_shapes() const {
    if (static_cast<int>(dims.size()) != n_max + 1)
        throw ValidationError("TabulatedOIModule: dims length mismatch");
    for (const auto& [f, m] : maps) {
        if (f.dst > n_max) throw ValidationError("TabulatedOIModule: morphism outside window");
        if (m.rows() != dims[f.dst] || m.cols() != dims[f.src])
            throw ValidationError("TabulatedOIModule: matrix shape mismatch");
    }
}

void TabulatedOIModule::check_functoriality(int samples) const {
    validate_shapes();
    for (int n = 0; n <= n_max; ++n) {
        auto it = maps.find(OIMorphism::identity(n));
        if (it == maps.end()) continue;
        if (!(it->second == SparseMat<Rational>::identity(static_cast<int>(dims[n]), Rational(1))))
            throw IntegrityError("TabulatedOIModule: identity morphism is not the identity matrix at n=" +
                                 std::to_string(n));
    }
    // deterministic sample: walk composable pairs in map order
    int used = 0;
    for (const auto& [f, mf] : maps) {
        for (const auto& [g, mg] : maps) {
            if (g.src != f.dst) continue;
            if (used >= samples) return;
            OIMorphism gf = compose(g, f);
            auto it = maps.find(gf);
            if (it == maps.end()) continue;
            if (!(mg.multiplied_by(mf) == it->second))
                throw IntegrityError("TabulatedOIModule: functoriality fails on a composite");
            ++used;
        }
    }
}

void TabulatedOIModule::save(const std::string& dir) const {
    validate_shapes();
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["n_max"] = n_max;
    manifest["dims"] = dims;
    manifest["coeff"] = "q";
    json morphs = json::array();
    int idx = 0;
    for (const auto& [f, m] : maps) {
        std::string fname = "map_" + std::to_string(idx++) + ".mtx";
        json jf;
        jf["src"] = f.src;
        jf["dst"] = f.dst;
        jf["image"] = f.image;
        jf["matrix"] = fname;
        morphs.push_back(jf);
        std::ofstream out(dir + "/" + fname);
        write_triplets(out, m, QDomain{});
    }
    manifest["morphisms"] = morphs;
    std::ofstream mo(dir + "/manifest.json");
    mo << manifest.dump(2) << "\n";
}

TabulatedOIModule TabulatedOIModule::load(const std::string& dir) {
    std::ifstream mi(dir + "/manifest.json");
    if (!mi) throw ValidationError("TabulatedOIModule: cannot open manifest in " + dir);
    json manifest = json::parse(mi);
    TabulatedOIModule t;
    t.n_max = manifest.at("n_max").get<int>();
    t.dims = manifest.at("dims").get<std::vector<long>>();
    for (const auto& jf : manifest.at("morphisms")) {
        OIMorphism f(jf.at("src").get<int>(), jf.at("dst").get<int>(),
                     jf.at("image").get<std::vector<int>>());
        std::ifstream in(dir + "/" + jf.at("matrix").get<std::string>());
        if (!in) throw ValidationError("TabulatedOIModule: missing matrix file");
        t.maps.emplace(std::move(f), read_triplets(in, QDomain{}));
    }
    t.validate_shapes();
    return t;
}

std::vector<bool> fg_witness(const TabulatedOIModule& m, int D, int N) {
    m.validate_shapes();
    if (N > m.n_max) throw ValidationError("fg_witness: N exceeds tabulated window");
    std::vector<bool> out(N + 1, false);
    for (int n = 0; n <= N; ++n) {
        RationalSpan span(static_cast<int>(m.dims[n]));
        for (int k = 0; k <= std::min(D, n); ++k) {
            for (const auto& f : enumerate_hom(k, n)) {
                auto it = m.maps.find(f);
                if (it == m.maps.end())
                    throw ValidationError("fg_witness: morphism missing from tabulation");
                const auto& mat = it->second;
                for (int c = 0; c < mat.cols(); ++c) {
                    std::vector<Rational> col(mat.rows(), Rational(0));
                    for (int r = 0; r < mat.rows(); ++r) col[r] = mat.get(r, c, Rational(0));
                    span.insert(col);
                }
            }
        }
        out[n] = (span.dim() == m.dims[n]);
    }
    return out;
}

} // namespace unistab
