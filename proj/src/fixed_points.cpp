#include "dmeq/fixed_points.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace dmeq {

MarkedConfig::MarkedConfig(std::vector<ProjectivePoint> points) : points_(std::move(points))
{
    if (points_.size() < 3)
        throw DegenerateInput("a marked configuration needs at least 3 points");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j])
                throw DegenerateInput("marked points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                      " coincide");
}

MarkedConfig relabel_by_sigma(const MarkedConfig& c)
{
    const auto n = c.size();
    std::vector<ProjectivePoint> out;
    out.reserve(n);
    for (std::size_t k = 1; k < n; ++k)
        out.push_back(c.point(k % (n - 1) + 1));
    out.push_back(c.point(n));
    return MarkedConfig(std::move(out));
}

bool is_isomorphic(const MarkedConfig& c1, const MarkedConfig& c2)
{
    if (c1.size() != c2.size() || c1.field_prime() != c2.field_prime())
        return false;
    const auto n = c1.size();
    const auto f = moebius_from_three({c1.point(1), c1.point(2), c1.point(n)}, {c2.point(1), c2.point(2), c2.point(n)});
    for (std::size_t k = 3; k < n; ++k)
        if (!(f(c1.point(k)) == c2.point(k)))
            return false;
    return true;
}

MarkedConfig rotation_config(int p, int s)
{
    require_prime(p);
    std::vector<ProjectivePoint> pts;
    for (int k = 1; k <= p; ++k)
        pts.push_back(ProjectivePoint::finite(CyclotomicNumber::eta_power(p, static_cast<long long>(s) * (k - 1))));
    pts.push_back(ProjectivePoint::finite(CyclotomicNumber(p)));
    return MarkedConfig(std::move(pts));
}

std::vector<MarkedConfig> enumerate_fixed(int p)
{
    require_prime(p);
    if (p < 3)
        throw InvalidPrime("fixed-point enumeration needs p >= 3 (M_{0,3}-bar is a single point)");
    std::vector<MarkedConfig> out;
    for (int s = 1; s <= p - 1; ++s) {
        auto c = rotation_config(p, s);
        if (!is_isomorphic(c, relabel_by_sigma(c)))
            throw CertificateError("C_" + std::to_string(s) + " is not fixed by the rotation");
        out.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (is_isomorphic(out[i], out[j]))
                throw CertificateError("C_" + std::to_string(i + 1) + " and C_" + std::to_string(j + 1) +
                                       " are isomorphic");
    return out;
}

std::vector<std::pair<int, int>> StableTree::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t v = 1; v < parent.size(); ++v)
        out.emplace_back(parent[v], static_cast<int>(v));
    return out;
}

bool StableTree::is_stable() const
{
    std::vector<int> special(vertex_count(), 0);
    for (const auto& [a, b] : edges()) {
        ++special[a];
        ++special[b];
    }
    for (int v : label_vertex)
        ++special[v];
    return std::all_of(special.begin(), special.end(), [](int s) { return s >= 3; });
}

StableTree StableTree::from_clusters(int n, std::vector<std::uint32_t> clusters)
{
    if (n < 3 || n > 32)
        throw Error("stable trees need 3 to 32 marked points");
    const std::uint32_t allowed = (n - 1 >= 32) ? 0xffffffffu : ((1u << (n - 1)) - 1u);
    std::sort(clusters.begin(), clusters.end());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto s = clusters[i];
        const int size = std::popcount(s);
        if ((s & ~allowed) || size < 2 || size > n - 2)
            throw Error("cluster out of range");
        if (i > 0 && clusters[i - 1] == s)
            throw Error("repeated cluster");
        for (std::size_t j = 0; j < i; ++j) {
            const auto t = clusters[j];
            if ((s & t) && (s & t) != s && (s & t) != t)
                throw Error("clusters do not form a laminar family");
        }
    }

    StableTree tree;
    tree.n = n;
    tree.clusters = clusters;
    tree.parent.assign(clusters.size() + 1, 0);
    tree.parent[0] = -1;
    auto smallest_containing = [&](std::uint32_t s, std::size_t skip) {
        int best = 0;
        int best_size = n;
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (j == skip)
                continue;
            const auto t = clusters[j];
            if ((t & s) == s && std::popcount(t) < best_size) {
                best = static_cast<int>(j) + 1;
                best_size = std::popcount(t);
            }
        }
        return best;
    };
    for (std::size_t v = 0; v < clusters.size(); ++v)
        tree.parent[v + 1] = smallest_containing(clusters[v], v);
    for (int l = 1; l < n; ++l)
        tree.label_vertex.push_back(smallest_containing(1u << (l - 1), clusters.size()));
    tree.label_vertex.push_back(0);
    return tree;
}

std::string to_string(const StableTree& t)
{
    std::string out = "[";
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        out += v ? " | " : "";
        bool first = true;
        for (std::size_t l = 0; l < t.label_vertex.size(); ++l)
            if (t.label_vertex[l] == static_cast<int>(v)) {
                out += (first ? "" : ",") + std::to_string(l + 1);
                first = false;
            }
        if (v)
            out += "^" + std::to_string(t.parent[v]);
    }
    return out + "]";
}

std::vector<StableTree> enumerate_stable_trees(int p)
{
    require_prime(p);
    if (p > kMaxTreePrime)
        throw ResourceGuard("stable-tree enumeration is limited to p <= " + std::to_string(kMaxTreePrime));
    const int n = p + 1;
    const int m = n - 1;

    std::vector<std::uint32_t> candidates;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
        const int size = std::popcount(s);
        if (size >= 2 && size <= n - 2)
            candidates.push_back(s);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });

    std::vector<std::vector<std::uint32_t>> families;
    std::vector<std::uint32_t> chosen;
    auto recurse = [&](auto&& self, std::size_t idx) -> void {
        if (idx == candidates.size()) {
            families.push_back(chosen);
            return;
        }
        self(self, idx + 1);
        const auto t = candidates[idx];
        for (auto s : chosen)
            if ((s & t) && (s & t) != t)
                return;
        chosen.push_back(t);
        self(self, idx + 1);
        chosen.pop_back();
    };
    recurse(recurse, 0);

    std::vector<StableTree> trees;
    trees.reserve(families.size());
    for (auto& f : families)
        trees.push_back(StableTree::from_clusters(n, std::move(f)));
    std::sort(trees.begin(), trees.end(), [](const StableTree& a, const StableTree& b) {
        if (a.clusters.size() != b.clusters.size())
            return a.clusters.size() < b.clusters.size();
        return a.clusters < b.clusters;
    });
    return trees;
}

NodalSearchReport nodal_fixed_point_search(int p)
{
    const auto trees = enumerate_stable_trees(p);
    const int n = p + 1;
    const std::uint32_t full = (1u << p) - 1u;
    auto rotate = [&](std::uint32_t s) { return ((s << 1) | (s >> (p - 1))) & full; };

    NodalSearchReport rep;
    for (const auto& t : trees) {
        if (t.clusters.empty())
            continue;
        ++rep.trees_examined;
        if (!t.is_stable())
            continue;
        // A label-compatible automorphism is forced on every vertex: the vertex
        // of cluster S must go to the vertex of sigma(S), the root to the root.
        std::map<std::uint32_t, int> vertex_of;
        for (std::size_t v = 0; v < t.clusters.size(); ++v)
            vertex_of[t.clusters[v]] = static_cast<int>(v) + 1;
        std::vector<int> image(t.vertex_count(), 0);
        bool defined = true;
        for (std::size_t v = 0; v < t.clusters.size() && defined; ++v) {
            auto it = vertex_of.find(rotate(t.clusters[v]));
            if (it == vertex_of.end())
                defined = false;
            else
                image[v + 1] = it->second;
        }
        if (!defined)
            continue;
        bool automorphism = true;
        for (std::size_t v = 1; v < t.vertex_count(); ++v)
            if (image[t.parent[v]] != t.parent[image[v]])
                automorphism = false;
        for (int l = 1; l <= n; ++l) {
            const int sl = l == n ? n : l % p + 1;
            if (image[t.label_vertex[l - 1]] != t.label_vertex[sl - 1])
                automorphism = false;
        }
        if (automorphism)
            ++rep.sigma_compatible;
    }
    rep.no_nodal_fixed_points = rep.sigma_compatible == 0;
    return rep;
}

bool no_nodal_fixed_points(int p)
{
    return nodal_fixed_point_search(p).no_nodal_fixed_points;
}

int degree(const CycloPoly& f)
{
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k)
        if (!f[k].is_zero())
            return k;
    return -1;
}

namespace {

CycloPoly poly_add(const CycloPoly& f, const CycloPoly& g, int p)
{
    CycloPoly out(std::max(f.size(), g.size()), CyclotomicNumber(p));
    for (std::size_t k = 0; k < f.size(); ++k)
        out[k] = out[k] + f[k];
    for (std::size_t k = 0; k < g.size(); ++k)
        out[k] = out[k] + g[k];
    return out;
}

CycloPoly poly_mul(const CycloPoly& f, const CycloPoly& g, int p)
{
    if (f.empty() || g.empty())
        return {};
    CycloPoly out(f.size() + g.size() - 1, CyclotomicNumber(p));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero())
            continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] = out[i + j] + f[i] * g[j];
    }
    return out;
}

CycloPoly scale(const CycloPoly& f, const CyclotomicNumber& x)
{
    CycloPoly out = f;
    for (auto& c : out)
        c = c * x;
    return out;
}

} // namespace

std::string to_string(const CycloPoly& f)
{
    std::string out;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k].is_zero())
            continue;
        std::string term = "(" + to_string(f[k]) + ")";
        if (k == 1)
            term += "*c";
        else if (k > 1)
            term += "*c^" + std::to_string(k);
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

MoebiusPowerReport moebius_power_degree(int p)
{
    require_prime(p);
    if (p < 3)
        throw InvalidPrime("the Moebius power check needs p >= 3");
    const CyclotomicNumber zero(p);
    const CyclotomicNumber one(p, Rational(1));
    const auto eta = CyclotomicNumber::eta_power(p, 1);

    // phi = [[eta, 0], [c, 1 - c]].
    const CycloPoly pa{eta}, pb{}, pc{zero, one}, pd{one, -one};

    CycloPoly a = pa, b = pb, c = pc, d = pd;
    for (int k = 2; k <= p - 1; ++k) {
        // [[a, b], [c, d]] * phi
        CycloPoly na = poly_add(poly_mul(a, pa, p), poly_mul(b, pc, p), p);
        CycloPoly nb = poly_add(poly_mul(a, pb, p), poly_mul(b, pd, p), p);
        CycloPoly nc = poly_add(poly_mul(c, pa, p), poly_mul(d, pc, p), p);
        CycloPoly nd = poly_add(poly_mul(c, pb, p), poly_mul(d, pd, p), p);
        a = std::move(na);
        b = std::move(nb);
        c = std::move(nc);
        d = std::move(nd);
    }

    MoebiusPowerReport rep;
    rep.p = p;
    rep.numerator_c_free = degree(a) <= 0 && degree(b) <= 0;
    rep.denominator_degree = std::max(degree(c), degree(d));
    rep.fixed_point_polynomial = poly_add(poly_add(scale(c, eta), d, p), scale(a, -eta), p);

    auto at_zero = [&](const CycloPoly& f) { return f.empty() ? zero : f.front(); };
    rep.c_zero_is_rotation =
        MoebiusMap(at_zero(a), at_zero(b), at_zero(c), at_zero(d)).same_map(MoebiusMap(eta.pow(p - 1), zero, zero, one));

    rep.a = std::move(a);
    rep.b = std::move(b);
    rep.c = std::move(c);
    rep.d = std::move(d);
    rep.pass = rep.numerator_c_free && rep.denominator_degree == p - 1 && degree(rep.fixed_point_polynomial) == p - 1 &&
               rep.c_zero_is_rotation;
    return rep;
}

} // namespace dmeq
