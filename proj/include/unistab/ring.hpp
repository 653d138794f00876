#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unistab/errors.hpp"

namespace unistab {

// A coefficient ring R in one of the two regimes the library supports:
//
//   FreeAdditive  -- (R,+) identified with Z^lambda; multiplication given by
//                    integer structure constants gamma[a][b][c], meaning
//                    b_a * b_b = sum_c gamma[a][b][c] b_c.  The unit must sit
//                    in (Z_{>=0})^lambda in the supplied basis; the basis is
//                    never changed behind the caller's back.
//   FinitePrime   -- F_p, elements are residues 0..p-1.
//   FiniteTables  -- an arbitrary finite ring given by full addition and
//                    multiplication tables plus the indices of 0 and 1.
//
// Elements are uniform: a RingElem is a vector of int64 coordinates, of
// length lambda for FreeAdditive rings and length 1 (the element index) for
// finite rings.
enum class RingKind { FreeAdditive, FinitePrime, FiniteTables };

struct RingElem {
    std::vector<std::int64_t> c;

    friend bool operator==(const RingElem& a, const RingElem& b) { return a.c == b.c; }
    friend bool operator!=(const RingElem& a, const RingElem& b) { return a.c != b.c; }
    friend bool operator<(const RingElem& a, const RingElem& b) { return a.c < b.c; }
};

struct AxiomResult {
    std::string axiom;
    bool ok = false;
    std::string detail; // first counterexample, empty when ok
};

struct ValidationReport {
    std::vector<std::string> structural_errors; // malformed shapes, bad indices
    std::vector<AxiomResult> axioms;

    bool structurally_ok() const { return structural_errors.empty(); }
    bool all_ok() const;
};

class Ring {
public:
    static Ring free_additive(int rank, std::vector<std::int64_t> unit,
                              std::vector<std::vector<std::vector<std::int64_t>>> structure,
                              std::string name = "free_additive");
    static Ring finite_prime(std::uint32_t p);
    static Ring finite_tables(int n, std::vector<std::vector<int>> add,
                              std::vector<std::vector<int>> mul, int zero, int one,
                              std::string name = "finite_tables");

    // built-ins
    static Ring integers();            // Z
    static Ring gaussian_integers();   // Z[i], lambda = 2
    static Ring mat2_integers();       // 2x2 integer matrices, lambda = 4, noncommutative
    static Ring zmod(int n);           // Z/n via tables
    static Ring f4();                  // F_4 via explicit tables
    static Ring builtin(const std::string& name); // "Z", "Zi", "M2Z", "F2", "Z/4", "F4", ...

    RingKind kind() const { return kind_; }
    bool is_finite() const { return kind_ != RingKind::FreeAdditive; }
    int rank() const;                // FreeAdditive only
    int size() const;                // finite only
    const std::string& name() const { return name_; }

    RingElem zero() const;
    RingElem one() const;
    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    bool is_zero(const RingElem& a) const;
    RingElem from_int(std::int64_t v) const; // v * 1

    // F_p / tables index arithmetic, used by matrix groups.
    int add_idx(int a, int b) const;
    int mul_idx(int a, int b) const;
    int neg_idx(int a) const;
    int zero_idx() const;
    int one_idx() const;
    std::optional<int> inv_idx(int a) const; // two-sided inverse, if any
    bool is_unit_idx(int a) const { return inv_idx(a).has_value(); }
    bool commutative() const; // finite: exhaustive; free: all basis pairs

    // R_{>=0}: the coordinatewise-nonnegative cone of the chosen basis.
    bool in_positive_cone(const RingElem& r) const;

    // All elements of a finite ring, 0 first and 1 second.
    std::vector<RingElem> enumerate() const;
    int elem_index(const RingElem& e) const; // finite only

    ValidationReport validate() const;

    // JSON round-trip; the canonical string doubles as the cache-key basis
    // record.
    std::string to_json() const;
    static Ring from_json_string(const std::string& text);
    static Ring from_json_file(const std::string& path);
    std::string canonical_description() const { return to_json(); }

private:
    Ring() = default;
    void check_free() const;
    void check_finite() const;
    void check_elem(const RingElem& e) const;

    RingKind kind_ = RingKind::FinitePrime;
    std::string name_;
    // FreeAdditive
    int rank_ = 0;
    std::vector<std::int64_t> unit_;
    std::vector<std::vector<std::vector<std::int64_t>>> gamma_;
    // FinitePrime
    std::uint32_t p_ = 0;
    // FiniteTables
    int n_ = 0;
    std::vector<std::vector<int>> add_, mul_;
    int zero_i_ = 0, one_i_ = 0;
};

} // namespace unistab
