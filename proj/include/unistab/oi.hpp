#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unistab/errors.hpp"
#include "unistab/linalg.hpp"

namespace unistab {

// Order-preserving injection [n] -> [m], stored as its strictly increasing
// image list (1-based values).
struct OIMorphism {
    int src = 0;
    int dst = 0;
    std::vector<int> image;

    OIMorphism() = default;
    OIMorphism(int n, int m, std::vector<int> img);
    static OIMorphism identity(int n);

    int operator()(int i) const { return image.at(i - 1); } // 1-based

    friend bool operator==(const OIMorphism& a, const OIMorphism& b) {
        return a.src == b.src && a.dst == b.dst && a.image == b.image;
    }
    friend bool operator<(const OIMorphism& a, const OIMorphism& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.dst != b.dst) return a.dst < b.dst;
        return a.image < b.image;
    }
};

// g after f
OIMorphism compose(const OIMorphism& g, const OIMorphism& f);

// All morphisms [n] -> [m] in lexicographic order of image lists; the order
// is part of the cache contract and must not change.
std::vector<OIMorphism> enumerate_hom(int n, int m);
std::uint64_t count_hom(int n, int m); // C(m, n)

// Object of OI(d): [n] with a marked increasing d-tuple.
struct OIdObject {
    int n = 0;
    std::vector<int> marks; // strictly increasing, values in [1..n]

    OIdObject() = default;
    OIdObject(int n_, std::vector<int> marks_);
    int d() const { return static_cast<int>(marks.size()); }

    friend bool operator==(const OIdObject& a, const OIdObject& b) {
        return a.n == b.n && a.marks == b.marks;
    }
    friend bool operator<(const OIdObject& a, const OIdObject& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.marks < b.marks;
    }
};

// Gap-block sizes realizing the equivalence OI(d) = OI^{d+1}; merge_oid is
// the two-sided inverse.
std::vector<int> split_oid(const OIdObject& obj);
OIdObject merge_oid(const std::vector<int>& sizes);

// Morphisms (n,marks) -> (m,marks') in OI(d): order-preserving injections
// carrying marks to marks.
std::vector<OIMorphism> enumerate_hom_oid(const OIdObject& a, const OIdObject& b);
std::uint64_t count_hom_oid(const OIdObject& a, const OIdObject& b);

// All increasing d-tuples in [n], lexicographic.
std::vector<std::vector<int>> increasing_tuples(int d, int n);

// Dimension table for an OI(d)-module window: every (n, marks) with
// n0 <= n <= n_max must be present.
struct OidDimTable {
    int d = 0;
    int n0 = 0;
    int n_max = 0;
    std::map<OIdObject, long> dims;

    long at(const OIdObject& o) const;
    void validate_coverage() const;
};

// Phi_!(M)_n = sum over markings of M_{n,marks}  (left Kan extension to OI
// at the dimension level).
std::vector<long> kan_dims(const OidDimTable& t);

// Sigma(M)_{n,l} = M_{n+1,l}; Delta(M)_{n,l} = M_{n+1, l + (n+1)}, an
// OI(d-1)-table (identically zero for d = 0).
OidDimTable shift_dims(const OidDimTable& t);
OidDimTable delta_dims(const OidDimTable& t);

// dim Sigma(Phi_! M)_n == dim Phi_!(Sigma M)_n + dim Phi_!(Delta M)_n for
// all n in window; returns false only on an implementation bug.
bool check_shift_decomposition(const OidDimTable& t);

// Finitely many degrees of an OI-module: per-degree dimensions and a matrix
// for every morphism in the window.  Matrices act on column vectors, so the
// matrix of f: [k] -> [m] has shape dim_m x dim_k.
struct TabulatedOIModule {
    int n_max = 0;
    std::vector<long> dims; // size n_max+1
    std::map<OIMorphism, SparseMat<Rational>> maps;

    const SparseMat<Rational>& map_of(const OIMorphism& f) const;
    void validate_shapes() const;
    // identity |-> identity, composite |-> product, on up to `samples`
    // deterministic composable pairs; throws IntegrityError on failure.
    void check_functoriality(int samples = 200) const;

    // JSON manifest plus one triplet file per morphism.
    void save(const std::string& dir) const;
    static TabulatedOIModule load(const std::string& dir);
};

// True per degree n <= N iff the images of degrees <= D under all morphism
// matrices span degree n.
std::vector<bool> fg_witness(const TabulatedOIModule& m, int D, int N);

} // namespace unistab
