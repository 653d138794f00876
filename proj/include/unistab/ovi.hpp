#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unistab/errors.hpp"
#include "unistab/oi.hpp"
#include "unistab/ring.hpp"

namespace unistab {

// Square matrix over a finite ring, entries stored as element indices,
// row-major.
struct MatN {
    int n = 0;
    std::vector<int> e;

    static MatN identity(const Ring& r, int n);
    int at(int i, int j) const { return e[i * n + j]; }       // 0-based
    void put(int i, int j, int v) { e[i * n + j] = v; }
    bool is_upper_unitriangular(const Ring& r) const;

    friend bool operator==(const MatN& a, const MatN& b) { return a.n == b.n && a.e == b.e; }
    friend bool operator<(const MatN& a, const MatN& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.e < b.e;
    }
};

MatN mat_mul(const Ring& r, const MatN& a, const MatN& b);

// Morphism R^d -> R^n of OVI(R): underlying order-preserving injection
// (the pivot rows) plus the above-pivot entries.  Column j has a 1 in row
// pivots[j], arbitrary entries strictly above it, zeros elsewhere.
struct OviMorphism {
    int d = 0;
    int n = 0;
    std::vector<int> pivots;                // strictly increasing, in [1..n]
    std::vector<std::vector<int>> entries;  // entries[j][i] = entry in row i+1, size pivots[j]-1

    OviMorphism() = default;
    OviMorphism(const Ring& r, int d, int n, std::vector<int> pivots,
                std::vector<std::vector<int>> entries);
    static OviMorphism standard(const Ring& r, const OIMorphism& f0); // zero above pivots

    OIMorphism underlying() const;
    int entry(const Ring& r, int i, int j) const; // full matrix entry, 1-based row i, col j

    friend bool operator==(const OviMorphism& a, const OviMorphism& b) {
        return a.d == b.d && a.n == b.n && a.pivots == b.pivots && a.entries == b.entries;
    }
    friend bool operator<(const OviMorphism& a, const OviMorphism& b);
};

// g after f; checks that the pivot/zero pattern survives composition.
OviMorphism compose_ovi(const Ring& r, const OviMorphism& g, const OviMorphism& f);

// All morphisms R^d -> R^n over a finite ring, grouped by pivot sequence in
// lexicographic order; within a pivot sequence the above-pivot cells run
// column-major with ring elements in enumeration order, so the standard
// morphism comes first.
std::vector<OviMorphism> enumerate_hom_ovi(const Ring& r, int d, int n);

// |Hom(R^d, R^n)| = sum over pivot sequences of |R|^(sum_j (a_j - 1)).
std::uint64_t count_hom_ovi(const Ring& r, int d, int n);
std::uint64_t lambda_cell_count(const Ring& r, const std::vector<int>& pivots);

// Factor phi = psi . f with f the standard morphism of phi's pivots and
// psi in U_n(R) fixing every basis vector outside the image of f.  That
// normalization pins psi: its image columns are phi's columns and its other
// columns are standard basis vectors.  Existence and uniqueness of this form
// are checked exhaustively in the tests.
struct OviFactorization {
    MatN psi;
    OviMorphism f;
};
OviFactorization factor_unique(const Ring& r, const OviMorphism& phi);

// --- finite matrix groups ----------------------------------------------------

enum class GroupFamily { U, UMarked, B, BC };

struct FiniteMatrixGroup {
    explicit FiniteMatrixGroup(Ring r) : ring(std::move(r)) {}

    Ring ring;
    std::string family_name;
    int n = 0;
    std::vector<MatN> elements; // enumeration order, deterministic
    int identity_index = -1;

    int index_of(const MatN& m) const; // throws IntegrityError if absent (closure violation)
    int mul(int a, int b) const;
    int inv(int a) const;
    int size() const { return static_cast<int>(elements.size()); }

    // |G| x |G| multiplication table; refuses beyond the export cap.
    std::vector<std::vector<int>> mult_table() const;

    std::string to_json() const; // elements + multiplication table
};

// family U: all upper unitriangular matrices
// family UMarked: those fixing e_m for each mark m (columns of marks standard)
// family B: upper triangular with unit diagonal entries (non-units filtered)
// family BC: B with det (= ordered diagonal product) in C; commutative R only
FiniteMatrixGroup build_group(const Ring& r, GroupFamily family, int n,
                              const std::vector<int>& marks = {},
                              const std::vector<int>& units_subset = {});

// [U_n : U_{n,marks}] = |R|^(sum_j (marks_j - 1)): the marked columns lose
// their above-diagonal freedom.
std::uint64_t marked_index(const Ring& r, int n, const std::vector<int>& marks);

// sum over all increasing d-tuples of [U_n : U_{n,marks}] * dim(marks).
std::uint64_t induction_dims(const Ring& r, int d, int n,
                             const std::map<std::vector<int>, long>& dims_per_marks);

} // namespace unistab
