#include "dmeq/equivariant_cochains.hpp"

#include <algorithm>

#include <fmt/core.h>

namespace dmeq {

namespace {

FpMatrix norm_of(const FpMatrix& g, std::uint32_t p)
{
    FpMatrix sum(g.rows(), g.cols(), p);
    FpMatrix power = FpMatrix::identity(g.rows(), p);
    for (std::uint32_t k = 0; k < p; ++k) {
        sum = sum + power;
        power = power * g;
    }
    return sum;
}

FpMatrix negate(const FpMatrix& m)
{
    return FpMatrix(m.rows(), m.cols(), m.modulus()) - m;
}

} // namespace

void FiniteGComplex::validate() const
{
    require_prime(p);
    if (dims.empty())
        throw InvalidComplex("complex needs at least one degree");
    if (action.size() != dims.size())
        throw InvalidComplex(fmt::format("{} action matrices for {} degrees", action.size(), dims.size()));
    if (differential.size() + 1 != dims.size())
        throw InvalidComplex(fmt::format("{} differentials for {} degrees", differential.size(), dims.size()));
    for (std::size_t q = 0; q < dims.size(); ++q) {
        const auto& g = action[q];
        if (g.modulus() != p)
            throw InvalidComplex(fmt::format("action in degree {} is over the wrong field", q));
        g.check_moduli();
        if (g.rows() != dims[q] || g.cols() != dims[q])
            throw InvalidComplex(fmt::format("action in degree {} has shape {}x{}, expected {}x{}", q, g.rows(),
                                             g.cols(), dims[q], dims[q]));
        if (!(g.power(p) == FpMatrix::identity(dims[q], p)))
            throw InvalidComplex(fmt::format("g^p != 1 in degree {}", q));
    }
    for (std::size_t q = 0; q < differential.size(); ++q) {
        const auto& d = differential[q];
        if (d.modulus() != p)
            throw InvalidComplex(fmt::format("differential in degree {} is over the wrong field", q));
        d.check_moduli();
        if (d.rows() != dims[q + 1] || d.cols() != dims[q])
            throw InvalidComplex(fmt::format("differential in degree {} has shape {}x{}, expected {}x{}", q,
                                             d.rows(), d.cols(), dims[q + 1], dims[q]));
        if (!(action[q + 1] * d == d * action[q]))
            throw InvalidComplex(fmt::format("differential in degree {} is not equivariant", q));
        if (q + 1 < differential.size() && !(differential[q + 1] * d).is_zero())
            throw InvalidComplex(fmt::format("d∘d != 0 starting in degree {}", q));
    }
}

FiniteGComplex FiniteGComplex::degree_zero(const FpMatrix& action)
{
    FiniteGComplex c;
    c.p = action.modulus();
    c.dims = {action.rows()};
    c.action = {action};
    return c;
}

FiniteGComplex FiniteGComplex::fixed_points(std::uint32_t p, std::size_t k)
{
    return degree_zero(FpMatrix::identity(k, p));
}

FiniteGComplex FiniteGComplex::free_orbit(std::uint32_t p)
{
    std::vector<std::size_t> shift(p);
    for (std::size_t i = 0; i < p; ++i)
        shift[i] = (i + 1) % p;
    return degree_zero(FpMatrix::permutation(shift, p));
}

FiniteGComplex FiniteGComplex::empty(std::uint32_t p)
{
    return degree_zero(FpMatrix(0, 0, p));
}

FiniteGComplex FiniteGComplex::disjoint_union(const FiniteGComplex& a, const FiniteGComplex& b)
{
    if (a.p != b.p)
        throw ModulusMismatch("disjoint union of complexes over different primes");
    const auto p = a.p;
    const std::size_t top = std::max(a.dims.size(), b.dims.size());
    auto dim_at = [](const FiniteGComplex& c, std::size_t q) { return q < c.dims.size() ? c.dims[q] : 0; };
    auto action_at = [&](const FiniteGComplex& c, std::size_t q) {
        return q < c.dims.size() ? c.action[q] : FpMatrix(0, 0, p);
    };
    auto diff_at = [&](const FiniteGComplex& c, std::size_t q) {
        return q < c.differential.size() ? c.differential[q] : FpMatrix(dim_at(c, q + 1), dim_at(c, q), p);
    };

    FiniteGComplex out;
    out.p = p;
    for (std::size_t q = 0; q < top; ++q) {
        out.dims.push_back(dim_at(a, q) + dim_at(b, q));
        const std::vector<FpMatrix> gs{action_at(a, q), action_at(b, q)};
        out.action.push_back(FpMatrix::direct_sum(gs, p));
        if (q + 1 < top) {
            const std::vector<FpMatrix> ds{diff_at(a, q), diff_at(b, q)};
            out.differential.push_back(FpMatrix::direct_sum(ds, p));
        }
    }
    return out;
}

FiniteGComplex complex_from_json(const nlohmann::json& j)
{
    FiniteGComplex c;
    const long long p = j.at("p").get<long long>();
    require_prime(p);
    c.p = static_cast<std::uint32_t>(p);
    const auto& degrees = j.at("degrees");
    if (!degrees.is_array() || degrees.empty())
        throw InvalidComplex("\"degrees\" must be a nonempty array");
    for (const auto& deg : degrees)
        c.dims.push_back(deg.at("dim").get<std::size_t>());

    auto read_matrix = [&](const nlohmann::json& rows, std::size_t r, std::size_t cols, const char* what,
                           std::size_t q) {
        auto data = rows.get<std::vector<std::vector<long long>>>();
        if (data.size() != r)
            throw InvalidComplex(fmt::format("\"{}\" in degree {} has {} rows, expected {}", what, q, data.size(), r));
        return FpMatrix::from_rows(data, cols, c.p);
    };
    for (std::size_t q = 0; q < degrees.size(); ++q) {
        const auto& deg = degrees[q];
        c.action.push_back(deg.contains("g") ? read_matrix(deg.at("g"), c.dims[q], c.dims[q], "g", q)
                                             : FpMatrix::identity(c.dims[q], c.p));
        const bool top = q + 1 == degrees.size();
        if (top) {
            if (deg.contains("d"))
                throw InvalidComplex("\"d\" must be absent in the top degree");
        } else {
            c.differential.push_back(read_matrix(deg.at("d"), c.dims[q + 1], c.dims[q], "d", q));
        }
    }
    c.validate();
    return c;
}

nlohmann::json complex_to_json(const FiniteGComplex& c)
{
    auto rows_of = [](const FpMatrix& m) {
        std::vector<std::vector<long long>> rows(m.rows(), std::vector<long long>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k)
                rows[i][k] = m.at(i, k).value();
        return rows;
    };
    nlohmann::json degrees = nlohmann::json::array();
    for (std::size_t q = 0; q < c.dims.size(); ++q) {
        nlohmann::json deg;
        deg["dim"] = c.dims[q];
        if (q < c.differential.size())
            deg["d"] = rows_of(c.differential[q]);
        deg["g"] = rows_of(c.action[q]);
        degrees.push_back(std::move(deg));
    }
    return {{"p", c.p}, {"degrees", degrees}};
}

BorelComplex build_borel(const FiniteGComplex& c, int d_total)
{
    c.validate();
    if (d_total < 2)
        throw InvalidComplex("Borel truncation needs d_total >= 2");
    const auto p = c.p;
    const int top = c.top_degree();

    std::vector<FpMatrix> norms;
    for (const auto& g : c.action)
        norms.push_back(norm_of(g, p));

    // Basis of total degree n: blocks (k, eps, q) with 2k + eps + q = n,
    // ordered by k then eps; each block is a copy of the basis of C^q.
    struct Block {
        int k, eps, q;
        std::size_t offset;
    };
    std::vector<std::vector<Block>> blocks(static_cast<std::size_t>(d_total) + 1);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(d_total) + 1, 0);

    BorelComplex b;
    b.p = p;
    b.d_total = d_total;
    b.labels.resize(static_cast<std::size_t>(d_total) + 1);
    for (int n = 0; n <= d_total; ++n)
        for (int k = 0; 2 * k <= n; ++k)
            for (int eps = 0; eps <= 1; ++eps) {
                const int q = n - 2 * k - eps;
                if (q < 0 || q > top)
                    continue;
                blocks[n].push_back({k, eps, q, sizes[n]});
                for (std::size_t i = 0; i < c.dims[q]; ++i) {
                    std::string prefix = k == 0 ? "" : (k == 1 ? "u" : fmt::format("u^{}", k));
                    if (eps)
                        prefix += prefix.empty() ? "e" : " e";
                    b.labels[n].push_back(fmt::format("{}{}c{}[{}]", prefix, prefix.empty() ? "" : " ⊗ ", q, i));
                }
                sizes[n] += c.dims[q];
            }

    auto find_block = [&](int n, int k, int eps, int q) -> const Block* {
        if (n < 0 || n > d_total)
            return nullptr;
        for (const auto& bl : blocks[n])
            if (bl.k == k && bl.eps == eps && bl.q == q)
                return &bl;
        return nullptr;
    };
    auto place = [&](FpMatrix& m, const Block& row, const Block& col, const FpMatrix& blockm) {
        for (std::size_t i = 0; i < blockm.rows(); ++i)
            for (std::size_t j = 0; j < blockm.cols(); ++j)
                m.at(row.offset + i, col.offset + j) = blockm.at(i, j);
    };

    for (int n = 0; n < d_total; ++n) {
        FpMatrix d(sizes[n + 1], sizes[n], p);
        for (const auto& src : blocks[n]) {
            const int k = src.k, q = src.q;
            if (src.eps == 0) {
                if (const auto* t = find_block(n + 1, k, 1, q))
                    place(d, *t, src, c.action[q] - FpMatrix::identity(c.dims[q], p));
                if (q < top)
                    if (const auto* t = find_block(n + 1, k, 0, q + 1))
                        place(d, *t, src, c.differential[q]);
            } else {
                if (const auto* t = find_block(n + 1, k + 1, 0, q))
                    place(d, *t, src, norms[q]);
                if (q < top)
                    if (const auto* t = find_block(n + 1, k, 1, q + 1))
                        place(d, *t, src, negate(c.differential[q]));
            }
        }
        b.differential.push_back(std::move(d));
    }

    for (int n = 0; n + 1 < d_total; ++n)
        if (!(b.differential[n + 1] * b.differential[n]).is_zero())
            throw InternalInconsistency(fmt::format("Borel differential does not square to zero in degree {}", n));
    return b;
}

std::vector<std::size_t> borel_cohomology_dims(const BorelComplex& b)
{
    std::vector<std::size_t> out;
    for (int n = 0; n <= b.d_total - 2; ++n) {
        const auto& d_out = b.differential[n];
        const FpMatrix d_in = n == 0 ? FpMatrix(d_out.cols(), 0, b.p) : b.differential[n - 1];
        out.push_back(cohomology_dim(d_in, d_out));
    }
    return out;
}

void validate_restriction(const FiniteGComplex& c, const FiniteGComplex& fixed_sub,
                          const std::vector<FpMatrix>& restriction)
{
    c.validate();
    fixed_sub.validate();
    if (c.p != fixed_sub.p)
        throw InvalidMap("complexes over different primes");
    for (std::size_t q = 0; q < fixed_sub.dims.size(); ++q)
        if (!(fixed_sub.action[q] == FpMatrix::identity(fixed_sub.dims[q], fixed_sub.p)))
            throw InvalidComplex(fmt::format("fixed subcomplex has nontrivial action in degree {}", q));
    const std::size_t degrees = std::max(c.dims.size(), fixed_sub.dims.size());
    if (restriction.size() != degrees)
        throw InvalidMap(fmt::format("{} restriction matrices for {} degrees", restriction.size(), degrees));
    auto dim_at = [](const FiniteGComplex& x, std::size_t q) { return q < x.dims.size() ? x.dims[q] : 0; };
    for (std::size_t q = 0; q < degrees; ++q) {
        const auto& r = restriction[q];
        if (r.rows() != dim_at(fixed_sub, q) || r.cols() != dim_at(c, q))
            throw InvalidMap(fmt::format("restriction in degree {} has the wrong shape", q));
        if (q < c.dims.size() && q < fixed_sub.dims.size() && !(r * c.action[q] == fixed_sub.action[q] * r))
            throw InvalidMap(fmt::format("restriction does not commute with g in degree {}", q));
        if (q + 1 < degrees) {
            const FpMatrix dc = q < c.differential.size() ? c.differential[q]
                                                          : FpMatrix(dim_at(c, q + 1), dim_at(c, q), c.p);
            const FpMatrix df = q < fixed_sub.differential.size()
                                    ? fixed_sub.differential[q]
                                    : FpMatrix(dim_at(fixed_sub, q + 1), dim_at(fixed_sub, q), c.p);
            if (!(restriction[q + 1] * dc == df * r))
                throw InvalidMap(fmt::format("restriction does not commute with d in degree {}", q));
        }
    }
}

std::vector<std::size_t> stabilized_dims(const FiniteGComplex& c, int from_degree, int window)
{
    const auto dims = borel_cohomology_dims(build_borel(c, from_degree + window + 1));
    return {dims.begin() + from_degree, dims.begin() + from_degree + window};
}

bool localization_check(const FiniteGComplex& c, const FiniteGComplex& fixed_sub,
                        const std::vector<FpMatrix>& restriction, int window)
{
    validate_restriction(c, fixed_sub, restriction);
    if (window < 2)
        throw Error("localization window must be at least 2");
    const int from = std::max(c.top_degree(), fixed_sub.top_degree()) + 1;
    return stabilized_dims(c, from, window) == stabilized_dims(fixed_sub, from, window);
}

} // namespace dmeq
