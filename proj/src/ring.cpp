#include "unistab/ring.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unistab {

using nlohmann::json;

bool ValidationReport::all_ok() const {
    if (!structural_errors.empty()) return false;
    for (const auto& a : axioms)
        if (!a.ok) return false;
    return true;
}

Ring Ring::free_additive(int rank, std::vector<std::int64_t> unit,
                         std::vector<std::vector<std::vector<std::int64_t>>> structure,
                         std::string name) {
    if (rank <= 0) throw ValidationError("free_additive: rank must be positive");
    Ring r;
    r.kind_ = RingKind::FreeAdditive;
    r.rank_ = rank;
    r.unit_ = std::move(unit);
    r.gamma_ = std::move(structure);
    r.name_ = std::move(name);
    if (static_cast<int>(r.unit_.size()) != rank)
        throw ValidationError("free_additive: unit length != rank");
    if (static_cast<int>(r.gamma_.size()) != rank)
        throw ValidationError("free_additive: structure must be rank^3");
    for (const auto& plane : r.gamma_) {
        if (static_cast<int>(plane.size()) != rank)
            throw ValidationError("free_additive: structure must be rank^3");
        for (const auto& row : plane)
            if (static_cast<int>(row.size()) != rank)
                throw ValidationError("free_additive: structure must be rank^3");
    }
    return r;
}

Ring Ring::finite_prime(std::uint32_t p) {
    if (p < 2) throw ValidationError("finite_prime: p must be >= 2");
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw ValidationError("finite_prime: p is not prime");
    Ring r;
    r.kind_ = RingKind::FinitePrime;
    r.p_ = p;
    r.name_ = "F" + std::to_string(p);
    return r;
}

Ring Ring::finite_tables(int n, std::vector<std::vector<int>> add,
                         std::vector<std::vector<int>> mul, int zero, int one,
                         std::string name) {
    Ring r;
    r.kind_ = RingKind::FiniteTables;
    r.n_ = n;
    r.add_ = std::move(add);
    r.mul_ = std::move(mul);
    r.zero_i_ = zero;
    r.one_i_ = one;
    r.name_ = std::move(name);
    return r;
}

Ring Ring::integers() {
    return free_additive(1, {1}, {{{1}}}, "Z");
}

Ring Ring::gaussian_integers() {
    // basis (1, i); i*i = -1
    std::vector<std::vector<std::vector<std::int64_t>>> g(2,
        std::vector<std::vector<std::int64_t>>(2, std::vector<std::int64_t>(2, 0)));
    g[0][0] = {1, 0};
    g[0][1] = {0, 1};
    g[1][0] = {0, 1};
    g[1][1] = {-1, 0};
    return free_additive(2, {1, 0}, g, "Zi");
}

Ring Ring::mat2_integers() {
    // basis E11, E12, E21, E22; E_ab * E_cd = delta_bc E_ad
    auto idx = [](int a, int b) { return 2 * a + b; };
    std::vector<std::vector<std::vector<std::int64_t>>> g(4,
        std::vector<std::vector<std::int64_t>>(4, std::vector<std::int64_t>(4, 0)));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c) g[idx(a, b)][idx(c, d)][idx(a, d)] = 1;
    return free_additive(4, {1, 0, 0, 1}, g, "M2Z");
}

Ring Ring::zmod(int n) {
    if (n < 2) throw ValidationError("zmod: n must be >= 2");
    std::vector<std::vector<int>> add(n, std::vector<int>(n));
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            add[a][b] = (a + b) % n;
            mul[a][b] = (a * b) % n;
        }
    return finite_tables(n, std::move(add), std::move(mul), 0, 1, "Z/" + std::to_string(n));
}

Ring Ring::f4() {
    // elements 0, 1, a, a+1 encoded as 0..3 with addition = xor and
    // a^2 = a+1
    std::vector<std::vector<int>> add(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) add[i][j] = i ^ j;
    std::vector<std::vector<int>> mul(4, std::vector<int>(4, 0));
    auto set = [&](int a, int b, int c) { mul[a][b] = c; mul[b][a] = c; };
    for (int i = 0; i < 4; ++i) { mul[0][i] = 0; mul[i][0] = 0; set(1, i, i); }
    set(2, 2, 3);
    set(2, 3, 1);
    set(3, 3, 2);
    return finite_tables(4, std::move(add), std::move(mul), 0, 1, "F4");
}

Ring Ring::builtin(const std::string& name) {
    if (name == "Z") return integers();
    if (name == "Zi") return gaussian_integers();
    if (name == "M2Z") return mat2_integers();
    if (name == "F4") return f4();
    if (name.size() > 1 && name[0] == 'F') {
        long p = std::stol(name.substr(1));
        return finite_prime(static_cast<std::uint32_t>(p));
    }
    if (name.size() > 2 && name.rfind("Z/", 0) == 0) {
        return zmod(static_cast<int>(std::stol(name.substr(2))));
    }
    throw ValidationError("unknown builtin ring: " + name);
}

int Ring::rank() const {
    check_free();
    return rank_;
}

int Ring::size() const {
    check_finite();
    return kind_ == RingKind::FinitePrime ? static_cast<int>(p_) : n_;
}

void Ring::check_free() const {
    if (kind_ != RingKind::FreeAdditive)
        throw UnsupportedError("operation requires a free-additive ring");
}

void Ring::check_finite() const {
    if (kind_ == RingKind::FreeAdditive)
        throw UnsupportedError("operation requires a finite ring");
}

void Ring::check_elem(const RingElem& e) const {
    if (kind_ == RingKind::FreeAdditive) {
        if (static_cast<int>(e.c.size()) != rank_)
            throw ValidationError("ring element has wrong coordinate length");
    } else {
        if (e.c.size() != 1 || e.c[0] < 0 || e.c[0] >= size())
            throw ValidationError("ring element index out of range");
    }
}

RingElem Ring::zero() const {
    if (kind_ == RingKind::FreeAdditive)
        return RingElem{std::vector<std::int64_t>(rank_, 0)};
    return RingElem{{zero_idx()}};
}

RingElem Ring::one() const {
    if (kind_ == RingKind::FreeAdditive) {
        RingElem e;
        e.c = unit_;
        return e;
    }
    return RingElem{{one_idx()}};
}

RingElem Ring::add(const RingElem& a, const RingElem& b) const {
    check_elem(a);
    check_elem(b);
    if (kind_ == RingKind::FreeAdditive) {
        RingElem r = a;
        for (int i = 0; i < rank_; ++i) r.c[i] += b.c[i];
        return r;
    }
    return RingElem{{add_idx(static_cast<int>(a.c[0]), static_cast<int>(b.c[0]))}};
}

RingElem Ring::neg(const RingElem& a) const {
    check_elem(a);
    if (kind_ == RingKind::FreeAdditive) {
        RingElem r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    return RingElem{{neg_idx(static_cast<int>(a.c[0]))}};
}

RingElem Ring::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem Ring::mul(const RingElem& a, const RingElem& b) const {
    check_elem(a);
    check_elem(b);
    if (kind_ == RingKind::FreeAdditive) {
        RingElem r = zero();
        for (int i = 0; i < rank_; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < rank_; ++j) {
                if (b.c[j] == 0) continue;
                for (int k = 0; k < rank_; ++k)
                    r.c[k] += a.c[i] * b.c[j] * gamma_[i][j][k];
            }
        }
        return r;
    }
    return RingElem{{mul_idx(static_cast<int>(a.c[0]), static_cast<int>(b.c[0]))}};
}

bool Ring::is_zero(const RingElem& a) const { return a == zero(); }

RingElem Ring::from_int(std::int64_t v) const {
    if (kind_ == RingKind::FreeAdditive) {
        RingElem r;
        r.c.resize(rank_);
        for (int i = 0; i < rank_; ++i) r.c[i] = v * unit_[i];
        return r;
    }
    int n = size();
    std::int64_t m = v % n;
    int acc = zero_idx();
    if (m < 0) m += n;
    for (std::int64_t t = 0; t < m; ++t) acc = add_idx(acc, one_idx());
    return RingElem{{acc}};
}

int Ring::add_idx(int a, int b) const {
    check_finite();
    if (kind_ == RingKind::FinitePrime) return static_cast<int>((a + b) % static_cast<int>(p_));
    return add_[a][b];
}

int Ring::mul_idx(int a, int b) const {
    check_finite();
    if (kind_ == RingKind::FinitePrime)
        return static_cast<int>((static_cast<long long>(a) * b) % p_);
    return mul_[a][b];
}

int Ring::neg_idx(int a) const {
    check_finite();
    if (kind_ == RingKind::FinitePrime) return a == 0 ? 0 : static_cast<int>(p_) - a;
    for (int b = 0; b < n_; ++b)
        if (add_[a][b] == zero_i_) return b;
    throw ValidationError("finite ring: element has no additive inverse");
}

int Ring::zero_idx() const {
    check_finite();
    return kind_ == RingKind::FinitePrime ? 0 : zero_i_;
}

int Ring::one_idx() const {
    check_finite();
    return kind_ == RingKind::FinitePrime ? 1 : one_i_;
}

std::optional<int> Ring::inv_idx(int a) const {
    check_finite();
    int n = size();
    for (int b = 0; b < n; ++b)
        if (mul_idx(a, b) == one_idx() && mul_idx(b, a) == one_idx()) return b;
    return std::nullopt;
}

bool Ring::commutative() const {
    if (kind_ == RingKind::FreeAdditive) {
        for (int a = 0; a < rank_; ++a)
            for (int b = 0; b < rank_; ++b)
                if (gamma_[a][b] != gamma_[b][a]) return false;
        return true;
    }
    int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul_idx(a, b) != mul_idx(b, a)) return false;
    return true;
}

bool Ring::in_positive_cone(const RingElem& r) const {
    check_free();
    check_elem(r);
    for (auto x : r.c)
        if (x < 0) return false;
    return true;
}

std::vector<RingElem> Ring::enumerate() const {
    check_finite();
    int n = size();
    std::vector<RingElem> out;
    out.reserve(n);
    out.push_back(RingElem{{zero_idx()}});
    if (one_idx() != zero_idx()) out.push_back(RingElem{{one_idx()}});
    for (int i = 0; i < n; ++i)
        if (i != zero_idx() && i != one_idx()) out.push_back(RingElem{{i}});
    return out;
}

int Ring::elem_index(const RingElem& e) const {
    check_finite();
    check_elem(e);
    return static_cast<int>(e.c[0]);
}

ValidationReport Ring::validate() const {
    ValidationReport rep;
    auto push = [&](const std::string& axiom, bool ok, const std::string& detail) {
        rep.axioms.push_back({axiom, ok, ok ? "" : detail});
    };

    if (kind_ == RingKind::FinitePrime) {
        push("additive group", true, "");
        push("associativity", true, "");
        push("distributivity", true, "");
        push("unit laws", true, "");
        push("1 != 0", p_ >= 2, "");
        return rep;
    }

    if (kind_ == RingKind::FiniteTables) {
        // structural checks first; axiom checks are meaningless on malformed
        // tables
        if (n_ <= 0) rep.structural_errors.push_back("element count must be positive");
        auto check_table = [&](const std::vector<std::vector<int>>& t, const char* which) {
            if (static_cast<int>(t.size()) != n_) {
                rep.structural_errors.push_back(std::string(which) + " table is not n x n");
                return;
            }
            for (const auto& row : t) {
                if (static_cast<int>(row.size()) != n_) {
                    rep.structural_errors.push_back(std::string(which) + " table is not n x n");
                    return;
                }
                for (int v : row)
                    if (v < 0 || v >= n_) {
                        rep.structural_errors.push_back(std::string(which) +
                                                        " table entry out of range");
                        return;
                    }
            }
        };
        check_table(add_, "addition");
        check_table(mul_, "multiplication");
        if (zero_i_ < 0 || zero_i_ >= n_) rep.structural_errors.push_back("zero index out of range");
        if (one_i_ < 0 || one_i_ >= n_) rep.structural_errors.push_back("one index out of range");
        if (!rep.structurally_ok()) return rep;

        auto nm = [&](int a) { return std::to_string(a); };
        bool ok = true;
        std::string detail;
        // abelian group under +
        for (int a = 0; a < n_ && ok; ++a) {
            if (add_[a][zero_i_] != a || add_[zero_i_][a] != a) {
                ok = false;
                detail = "0 + " + nm(a);
            }
            bool has_inv = false;
            for (int b = 0; b < n_; ++b)
                if (add_[a][b] == zero_i_) has_inv = true;
            if (!has_inv) { ok = false; detail = "no -" + nm(a); }
            for (int b = 0; b < n_ && ok; ++b) {
                if (add_[a][b] != add_[b][a]) { ok = false; detail = nm(a) + "+" + nm(b); }
                for (int c = 0; c < n_ && ok; ++c)
                    if (add_[add_[a][b]][c] != add_[a][add_[b][c]]) {
                        ok = false;
                        detail = "(" + nm(a) + "+" + nm(b) + ")+" + nm(c);
                    }
            }
        }
        push("additive group", ok, detail);

        ok = true; detail.clear();
        for (int a = 0; a < n_ && ok; ++a)
            for (int b = 0; b < n_ && ok; ++b)
                for (int c = 0; c < n_ && ok; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) {
                        ok = false;
                        detail = "(" + nm(a) + "*" + nm(b) + ")*" + nm(c);
                    }
        push("associativity", ok, detail);

        ok = true; detail.clear();
        for (int a = 0; a < n_ && ok; ++a)
            for (int b = 0; b < n_ && ok; ++b)
                for (int c = 0; c < n_ && ok; ++c) {
                    if (mul_[a][add_[b][c]] != add_[mul_[a][b]][mul_[a][c]]) {
                        ok = false;
                        detail = nm(a) + "*(" + nm(b) + "+" + nm(c) + ")";
                        break;
                    }
                    if (mul_[add_[a][b]][c] != add_[mul_[a][c]][mul_[b][c]]) {
                        ok = false;
                        detail = "(" + nm(a) + "+" + nm(b) + ")*" + nm(c);
                        break;
                    }
                }
        push("distributivity", ok, detail);

        ok = true; detail.clear();
        for (int a = 0; a < n_; ++a)
            if (mul_[one_i_][a] != a || mul_[a][one_i_] != a) {
                ok = false;
                detail = "1*" + nm(a);
                break;
            }
        push("unit laws", ok, detail);
        push("1 != 0", one_i_ != zero_i_, "one index equals zero index");
        return rep;
    }

    // FreeAdditive: addition is Z^lambda by construction; multiplication is
    // bilinear by construction, so distributivity is automatic.  Check
    // associativity and the unit laws on basis elements (bilinearity extends
    // them to all elements) and the basis-positivity of the unit.
    push("additive group", true, "");

    auto basis = [&](int i) {
        RingElem e = zero();
        e.c[i] = 1;
        return e;
    };
    bool ok = true;
    std::string detail;
    for (int a = 0; a < rank_ && ok; ++a)
        for (int b = 0; b < rank_ && ok; ++b)
            for (int c = 0; c < rank_ && ok; ++c) {
                RingElem lhs = mul(mul(basis(a), basis(b)), basis(c));
                RingElem rhs = mul(basis(a), mul(basis(b), basis(c)));
                if (lhs != rhs) {
                    ok = false;
                    detail = "basis triple (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")";
                }
            }
    push("associativity", ok, detail);
    push("distributivity", true, ""); // bilinear by construction

    ok = true; detail.clear();
    RingElem u = one();
    for (int a = 0; a < rank_ && ok; ++a) {
        if (mul(u, basis(a)) != basis(a)) { ok = false; detail = "1*b_" + std::to_string(a); }
        if (ok && mul(basis(a), u) != basis(a)) { ok = false; detail = "b_" + std::to_string(a) + "*1"; }
    }
    if (ok && mul(u, u) != u) { ok = false; detail = "1*1 != 1"; }
    push("unit laws", ok, detail);
    push("1 != 0", !is_zero(u), "unit is the zero vector");
    push("unit in positive cone", in_positive_cone(u), "unit has a negative coordinate");
    return rep;
}

std::string Ring::to_json() const {
    json j;
    switch (kind_) {
    case RingKind::FreeAdditive:
        j["kind"] = "free_additive";
        j["rank"] = rank_;
        j["unit"] = unit_;
        j["structure"] = gamma_;
        break;
    case RingKind::FinitePrime:
        j["kind"] = "finite_prime";
        j["p"] = p_;
        break;
    case RingKind::FiniteTables:
        j["kind"] = "finite_tables";
        j["n"] = n_;
        j["add"] = add_;
        j["mul"] = mul_;
        j["zero"] = zero_i_;
        j["one"] = one_i_;
        break;
    }
    return j.dump();
}

Ring Ring::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("ring spec: bad JSON: ") + e.what());
    }
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "free_additive") {
            return free_additive(j.at("rank").get<int>(),
                                 j.at("unit").get<std::vector<std::int64_t>>(),
                                 j.at("structure")
                                     .get<std::vector<std::vector<std::vector<std::int64_t>>>>());
        }
        if (kind == "finite_prime") {
            return finite_prime(j.at("p").get<std::uint32_t>());
        }
        if (kind == "finite_tables") {
            return finite_tables(j.at("n").get<int>(),
                                 j.at("add").get<std::vector<std::vector<int>>>(),
                                 j.at("mul").get<std::vector<std::vector<int>>>(),
                                 j.at("zero").get<int>(), j.at("one").get<int>());
        }
        throw ValidationError("ring spec: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ValidationError(std::string("ring spec: missing or mistyped field: ") + e.what());
    }
}

Ring Ring::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open ring spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str());
}

} // namespace unistab
