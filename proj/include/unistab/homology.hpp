#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unistab/errors.hpp"
#include "unistab/linalg.hpp"
#include "unistab/oi.hpp"
#include "unistab/ovi.hpp"
#include "unistab/ring.hpp"

namespace unistab {

// caps keep exact elimination at desk scale; beyond them the engine refuses
// with a ResourceError rather than grinding
inline constexpr long kExteriorDimCap = 200000;
inline constexpr long kBarDimCap = 500000;

// --- Lie algebra side -----------------------------------------------------------

// Strictly upper-triangular matrices u_n(R) for a free-additive R: basis
// E_{ij} (x) b_a indexed by (i < j, ring basis a), brackets derived from
// [E_ij (x) x, E_kl (x) y] = d_{jk} E_il (x) xy - d_{li} E_kj (x) yx.
// Antisymmetry and Jacobi are verified on all basis triples at construction.
class LieAlgebraPresentation {
public:
    struct BasisLabel {
        int i, j, a; // matrix position i < j (1-based), ring basis index a (0-based)
        friend bool operator<(const BasisLabel& x, const BasisLabel& y) {
            if (x.i != y.i) return x.i < y.i;
            if (x.j != y.j) return x.j < y.j;
            return x.a < y.a;
        }
        friend bool operator==(const BasisLabel& x, const BasisLabel& y) {
            return x.i == y.i && x.j == y.j && x.a == y.a;
        }
    };

    LieAlgebraPresentation(const Ring& r, int n);

    int dim() const { return static_cast<int>(basis_.size()); }
    int n() const { return n_; }
    const std::vector<BasisLabel>& basis() const { return basis_; }
    int index_of(const BasisLabel& b) const;

    // [basis u, basis v] as a sparse integer combination of basis elements
    const std::vector<std::pair<int, std::int64_t>>& bracket(int u, int v) const;

private:
    void verify_antisymmetry_and_jacobi() const;

    int n_ = 0;
    std::vector<BasisLabel> basis_;
    std::vector<std::vector<std::vector<std::pair<int, std::int64_t>>>> bracket_;
};

// Chevalley-Eilenberg complex of u_n(R) (x) field, degrees 0..top_degree.
template <class Domain>
ChainComplex<typename Domain::Scalar> koszul_complex(const LieAlgebraPresentation& lie,
                                                     int top_degree, const Domain& dom);

// Lie algebra homology dims over the domain field up to i_max (builds the
// complex one degree higher so every reported degree is complete).
template <class Domain>
std::vector<long> lie_homology_dims(const Ring& r, int n, int i_max, const Domain& dom);

// --- inversion-number oracle -----------------------------------------------------

// I(i, n) for 0 <= i <= i_max, 0 <= n <= n_max, computed independently from
// the generating-function product and from the recurrence, cross-asserted.
// result[i][n] = I(i, n).
std::vector<std::vector<long long>> inversion_numbers(int i_max, int n_max);

// --- finite group side ------------------------------------------------------------

struct GroupTable {
    int size = 0;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;
    int id = 0;

    static GroupTable cyclic(int m);
    static GroupTable from_matrix_group(const FiniteMatrixGroup& g);
    static GroupTable from_raw(std::vector<std::vector<int>> mul_table);
    void validate() const; // identity, inverses, associativity (exhaustive)
};

struct GroupPresentation {
    GroupTable table;
    // optional coefficient module: one dim x dim integer matrix per element,
    // a homomorphism rho(g) rho(h) = rho(gh); empty means the trivial module
    int module_dim = 1;
    std::vector<std::vector<std::vector<std::int64_t>>> module_action;

    bool trivial_module() const { return module_action.empty(); }
    void validate_module(int samples = 500) const;
};

// Normalized bar complex with coefficients in the module, degrees
// 0..top_degree; d*d = 0 is asserted by the homology consumers.
template <class Domain>
ChainComplex<typename Domain::Scalar> bar_complex(const GroupPresentation& g, int top_degree,
                                                  const Domain& dom);

enum class HomologyBackend { Bar, MinimalResolution };

// dim H_i(G, field) for i <= i_max.  The minimal-resolution backend applies
// to p-groups over F_p only and is cross-validated against the bar engine in
// the tests.
template <class Domain>
std::vector<long> group_homology_dims(const GroupPresentation& g, int i_max, const Domain& dom,
                                      HomologyBackend backend = HomologyBackend::Bar);

// integral H_i(G, Z) for i <= i_max via Smith normal form
std::vector<IntegralHomology> group_homology_integral(const GroupPresentation& g, int i_max);

// Betti numbers b_i = dim H_i(G, F_p) of a p-group from a minimal free
// resolution over F_p[G]; linear algebra stays at |G| * b_i scale.
std::vector<long> pgroup_betti_numbers(const GroupTable& g, std::uint32_t p, int i_max);

// --- OI-structure on Lie homology --------------------------------------------------

// The tabulated OI-module [n] |-> H_i(u_n(R) (x) Q): for f: [k] -> [m] the
// chain map E_{ij} |-> E_{f(i)f(j)} on exterior powers, projected to
// homology in the deterministic pivot-cycle bases.
TabulatedOIModule induced_oi_maps(const Ring& r, int i, int n_max);

} // namespace unistab
