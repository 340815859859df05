#pragma once

// Monomial basis of H*(M_{0,1+n}-bar) built from the classes Pi_S, S a subset
// of the first n marked points with |S| >= 3, together with the Z/n action
// that cyclically relabels x_1 -> x_2 -> ... -> x_n -> x_1.
//
// A monomial prod Pi_S^{d_S} belongs to the basis when its support is laminar
// (any two sets are nested or disjoint) and, for every S in the support whose
// maximal proper support-subsets are S_1..S_k,
//
//     d_S < k - 1 + |S| - sum_i |S_i|.
//
// Each Pi_S sits in cohomological degree 2.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmeq/errors.hpp"

namespace dmeq {

/// Largest number of marked points (excluding the last) that MarkedSet can hold.
inline constexpr int kMaxMarkedPoints = 31;

/// A subset of {1, ..., n}, stored as a bitmask (bit i-1 for label i).
class MarkedSet {
public:
    MarkedSet() = default;
    explicit MarkedSet(std::vector<int> labels);
    static MarkedSet from_mask(std::uint32_t mask) { return MarkedSet(mask, 0); }

    std::uint32_t mask() const { return mask_; }
    int size() const;
    std::vector<int> members() const;
    int max_label() const;

    bool contains(const MarkedSet& other) const { return (mask_ & other.mask_) == other.mask_; }
    bool disjoint(const MarkedSet& other) const { return (mask_ & other.mask_) == 0; }

    /// Lexicographic order on the sorted member lists.
    friend bool operator<(const MarkedSet& a, const MarkedSet& b);
    friend bool operator==(const MarkedSet& a, const MarkedSet& b) { return a.mask_ == b.mask_; }

private:
    MarkedSet(std::uint32_t mask, int) : mask_(mask) {}
    std::uint32_t mask_ = 0;
};

std::string to_string(const MarkedSet& s);

class Monomial {
public:
    using Exponents = std::map<MarkedSet, int>;

    Monomial() = default;
    /// `n` is the size of X = {1..n}. Keys and exponents are validated lazily by is_admissible.
    Monomial(int n, Exponents exponents) : n_(n), exponents_(std::move(exponents)) {}

    int n() const { return n_; }
    const Exponents& exponents() const { return exponents_; }
    bool is_identity() const { return exponents_.empty(); }

    /// Cohomological degree, 2 * sum of exponents.
    int degree() const;

    /// Canonical order: support as a list of sets first, then the exponent vector.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.n_ == b.n_ && a.exponents_ == b.exponents_;
    }

private:
    int n_ = 0;
    Exponents exponents_;
};

/// "1" for the identity, else e.g. "P{1,2,3}^2*P{1,2,3,4,5}".
std::string to_string(const Monomial& m);

/// Pi_X^k where X = {1..n}.
Monomial pi_x_power(int n, int k);

/// True iff the support is laminar and every exponent respects its bound.
/// Throws MalformedMonomial for keys with fewer than 3 members, keys outside
/// {1..n}, or nonpositive exponents.
bool is_admissible(const Monomial& m);

/// Upper bound (exclusive) on d_S given the rest of the support; the second
/// admissibility condition reads d_S < exponent_bound(m, S).
int exponent_bound(const Monomial& m, const MarkedSet& s);

struct GradedBasis {
    int n = 0;
    /// Even degree -> monomials in canonical order.
    std::map<int, std::vector<Monomial>> by_degree;

    std::size_t total_size() const;
    std::size_t dim(int degree) const;
    /// Highest degree with a nonzero piece.
    int top_degree() const;
};

/// Basis of H*(M_{0,1+n}-bar) for any n >= 1, graded, truncated at
/// `max_degree` when given. Built by recursion over laminar families.
GradedBasis enumerate_monomial_basis(int n, std::optional<int> max_degree = std::nullopt);

/// As above for a prime p; throws InvalidPrime otherwise.
GradedBasis enumerate_basis(int p, std::optional<int> max_degree = std::nullopt);

/// Relabels every set in the support by i -> i+1 (n -> 1).
Monomial sigma(const Monomial& m);

struct OrbitDecomposition {
    int p = 0;
    std::vector<Monomial> fixed;
    /// Each cycle lists m, sigma(m), ..., sigma^{p-1}(m) starting at its canonical minimum.
    std::vector<std::vector<Monomial>> cycles;

    std::size_t total_size() const { return fixed.size() + cycles.size() * static_cast<std::size_t>(p); }
    /// Fixed elements and cycles by cohomological degree.
    std::map<int, std::size_t> fixed_by_degree() const;
    std::map<int, std::size_t> cycles_by_degree() const;
};

/// Splits the basis into sigma-fixed monomials and size-p orbits. Any other
/// orbit size, or an image leaving the basis, raises InternalInconsistency.
OrbitDecomposition orbit_decomposition(const GradedBasis& b);

/// Permutation of basis indices induced by sigma on the degree-`degree`
/// piece: entry j is the index of sigma(b[j]).
std::vector<std::size_t> sigma_permutation(const GradedBasis& b, int degree);

} // namespace dmeq
