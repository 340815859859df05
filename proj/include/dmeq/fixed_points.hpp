#pragma once

// Fixed points of the Z/p action on M_{0,1+p}-bar that rotates the first p
// marked points and fixes the last one.

#include <cstdint>
#include <string>
#include <vector>

#include "dmeq/cyclotomic.hpp"

namespace dmeq {

/// Points x_1, ..., x_{n} on one sphere, pairwise distinct.
class MarkedConfig {
public:
    /// Throws DegenerateInput for fewer than 3 points or a repeated point.
    explicit MarkedConfig(std::vector<ProjectivePoint> points);

    std::size_t size() const { return points_.size(); }
    int field_prime() const { return points_.front().z().p(); }
    /// 1-based label.
    const ProjectivePoint& point(std::size_t label) const { return points_.at(label - 1); }
    const std::vector<ProjectivePoint>& points() const { return points_; }

private:
    std::vector<ProjectivePoint> points_;
};

/// The configuration relabeled by the generator: label k carries the point
/// that label k+1 carried (label p wraps to 1; the last label is fixed).
/// A map z -> f(z) with f(x_k) = x_{k+1} is then an isomorphism C -> sigma C.
MarkedConfig relabel_by_sigma(const MarkedConfig& c);

/// True iff the Moebius map fixed by labels 1, 2 and the last label sends every
/// point of c1 to the point of c2 with the same label.
bool is_isomorphic(const MarkedConfig& c1, const MarkedConfig& c2);

/// C_s: x_{p+1} = 0, x_k = eta^{s(k-1)} for 1 <= k <= p.
MarkedConfig rotation_config(int p, int s);

/// The p-1 configurations C_1..C_{p-1}, each verified sigma-fixed and pairwise
/// non-isomorphic (CertificateError otherwise). Requires p >= 3.
std::vector<MarkedConfig> enumerate_fixed(int p);

/// A stable tree with labels 1..n. Vertex 0 carries label n; every other
/// vertex v corresponds to the cluster clusters[v-1]: the labels (all < n)
/// separated from label n by the edge above v.
struct StableTree {
    int n = 0;
    /// Bitmask over labels 1..n-1 (bit l-1), in canonical (ascending mask) order.
    std::vector<std::uint32_t> clusters;
    /// parent[v] for v >= 1; parent[0] = -1.
    std::vector<int> parent;
    /// label_vertex[l-1] = vertex carrying label l.
    std::vector<int> label_vertex;

    std::size_t vertex_count() const { return clusters.size() + 1; }
    std::vector<std::pair<int, int>> edges() const;
    /// Every vertex has at least 3 special points (incident edges + labels).
    bool is_stable() const;

    /// Builds the tree of a laminar family of clusters; each cluster must have
    /// 2 <= size <= n-2 and lie in {1..n-1}.
    static StableTree from_clusters(int n, std::vector<std::uint32_t> clusters);
};

std::string to_string(const StableTree& t);

inline constexpr int kMaxTreePrime = 7;

/// All stable labeled trees with p+1 marked points, single vertex first.
/// Throws ResourceGuard for p > 7.
std::vector<StableTree> enumerate_stable_trees(int p);

struct NodalSearchReport {
    std::size_t trees_examined = 0;
    /// Multi-vertex trees admitting an automorphism that realises sigma on labels.
    std::size_t sigma_compatible = 0;
    bool no_nodal_fixed_points = false;
};

/// Exhaustive search over multi-vertex stable trees for one carrying an
/// automorphism compatible with the label rotation 1 -> 2 -> ... -> p -> 1.
NodalSearchReport nodal_fixed_point_search(int p);
bool no_nodal_fixed_points(int p);

/// Polynomial in an indeterminate c, coefficients in Q(eta); index = degree.
using CycloPoly = std::vector<CyclotomicNumber>;

int degree(const CycloPoly& f);

struct MoebiusPowerReport {
    int p = 0;
    /// Entries of phi^{p-1} = [[a, b], [c, d]] as polynomials in c.
    CycloPoly a, b, c, d;
    bool numerator_c_free = false;
    /// Degree in c of the denominator c(c) z + d(c).
    int denominator_degree = -1;
    /// phi^{p-1}(eta) = 1 rewritten as a(c) eta - c(c) eta - d(c) = 0, sign flipped.
    CycloPoly fixed_point_polynomial;
    bool c_zero_is_rotation = false;
    bool pass = false;
};

/// Composes phi(z) = eta z / (c z + 1 - c) with itself p-1 times over Q(eta)[c].
MoebiusPowerReport moebius_power_degree(int p);

std::string to_string(const CycloPoly& f);

} // namespace dmeq
