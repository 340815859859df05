#pragma once

// E_2 page of the Serre spectral sequence of
//
//     M_{0,1+p}-bar -> EZ/p x_{Z/p} M_{0,1+p}-bar -> BZ/p
//
// with F_p coefficients, E_2^{i,j} = H^i(BZ/p; H^j(M_{0,1+p}-bar)).
//
// The page is stored as labeled generators per cell plus the matrices of
// multiplication by u (i -> i+2) and by e (i -> i+1). Only the relations the
// assembly can justify are modeled: orbit classes at i = 0 are killed by u and
// e, and e*e = 0. Nothing else about the ring structure is inferred.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dmeq/dm_basis.hpp"
#include "dmeq/fp_linalg.hpp"

namespace dmeq {

enum class GeneratorKind {
    /// 1 (x) m at i = 0 for a sigma-fixed basis monomial m.
    Fixed,
    /// Orbit sum of a size-p cycle at i = 0.
    Orbit,
    /// e^eps u^l (x) m at i = 2l + eps >= 1.
    Tower,
};

struct E2Generator {
    std::string label;
    GeneratorKind kind;
};

struct E2Page {
    int p = 0;
    /// Largest column index i stored.
    int max_i = 0;
    /// Largest nonzero row, 2(p-2).
    int top = 0;
    /// (i, j) -> generators; absent cells are zero.
    std::map<std::pair<int, int>, std::vector<E2Generator>> cells;
    /// (i, j) -> matrix of u: E^{i,j} -> E^{i+2,j}; present whenever i + 2 <= max_i.
    std::map<std::pair<int, int>, FpMatrix> u_action;
    /// (i, j) -> matrix of e: E^{i,j} -> E^{i+1,j}; present whenever i + 1 <= max_i.
    std::map<std::pair<int, int>, FpMatrix> e_action;
    /// Even j -> number of size-p cycles among degree-j basis monomials.
    std::map<int, std::size_t> cycle_counts;
    /// Even j -> number of sigma-fixed degree-j basis monomials.
    std::map<int, std::size_t> fixed_counts;

    /// Dimension of E^{i,j}. Columns beyond max_i are read off by 2-periodicity
    /// from the last stored column of the same parity.
    std::size_t dim(int i, int j) const;
    const std::vector<E2Generator>& generators(int i, int j) const;

    /// Zero matrix of the right shape when the cell pair is stored but empty.
    const FpMatrix* u_map(int i, int j) const;
    const FpMatrix* e_map(int i, int j) const;

    /// Generator labels of u (x) 1, e (x) 1 and 1 (x) alpha (empty when the cell is zero).
    std::string u_label() const;
    std::string e_label() const;
    std::string alpha_label() const;

    /// Per generator at (0, j): killed by both u and e.
    std::vector<bool> torsion_flags(int j) const;
};

inline constexpr int default_display_columns(int p)
{
    return 2 * p + 4;
}

/// Builds the page from the orbit decomposition of the monomial basis,
/// passing each degree's sigma-permutation through decompose_permutation_rep
/// and the trivial/regular group-cohomology answers.
E2Page assemble_e2(int p, int max_i);
E2Page assemble_e2(int p);

/// Empty when every page invariant holds; otherwise one message per violation.
std::vector<std::string> e2_invariant_violations(const E2Page& page);

/// sum_{i+j=m} dim E^{i,j} for m = m_lo..m_hi.
std::vector<std::size_t> total_dims(const E2Page& page, int m_lo, int m_hi);

/// Filtration F^m_0 ⊇ F^m_1 ⊇ ... of total degree m as read off the collapsed
/// page: levels[k] = dim F^m_k = sum_{i >= k} dim E^{i, m-i}, k = 0..m+1.
struct FiltrationModel {
    int m = 0;
    std::vector<std::size_t> levels;

    std::size_t quotient(int k) const { return levels[k] - levels[k + 1]; }
};

FiltrationModel filtration(const E2Page& page, int m);

struct CertificateItem {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct CertificateReport {
    int p = 0;
    std::vector<CertificateItem> items;
    bool pass = false;
    /// Free text on what the items establish; not part of the JSON schema.
    std::string summary;

    const CertificateItem* find(const std::string& id) const;
};

/// Collapse inputs C1..C5 for an explicit page. `fixed_point_count` is the
/// number of points of the fixed locus; C4 uses it to compute the Borel
/// cohomology of the fixed locus.
CertificateReport collapse_certificate(const E2Page& page, int window, std::size_t fixed_point_count);

/// Assembles the page (wide enough for the window) and counts the fixed
/// points geometrically before running the checks.
CertificateReport collapse_certificate(int p, int window);

/// Dimension of the sigma-invariants of each H^j, computed as dim ker(sigma - 1)
/// on the permutation representation of the degree-j basis.
std::map<int, std::size_t> invariant_dims(const GradedBasis& basis);

/// Injectivity inputs I1..I3 for an explicit page.
CertificateReport injectivity_certificate(const E2Page& page, int window,
                                          const std::map<int, std::size_t>& invariants,
                                          std::size_t fixed_point_count);

CertificateReport injectivity_certificate(int p, int window);

/// Page wide enough for every check of both certificates at this window.
int certificate_columns(int p, int window);

} // namespace dmeq
