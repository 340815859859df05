#include "dmeq/cyclic_cohomology.hpp"

#include <cctype>
#include <numeric>
#include <string>

namespace dmeq {

PermRepresentation::PermRepresentation(FpMatrix action, std::uint32_t p) : action_(std::move(action)), p_(p)
{
    require_prime(p);
    if (action_.modulus() != p)
        throw ModulusMismatch("representation over F_" + std::to_string(p) + " given a matrix over F_" +
                              std::to_string(action_.modulus()));
    action_.check_moduli();
    if (action_.rows() != action_.cols())
        throw InvalidRepresentation("action matrix must be square");
    if (!(action_.power(p) == FpMatrix::identity(action_.rows(), p)))
        throw InvalidRepresentation("action^p is not the identity");
}

PermRepresentation PermRepresentation::trivial(std::uint32_t p, std::size_t dimension)
{
    return PermRepresentation(FpMatrix::identity(dimension, p), p);
}

PermRepresentation PermRepresentation::regular(std::uint32_t p)
{
    std::vector<std::size_t> shift(p);
    for (std::size_t i = 0; i < p; ++i)
        shift[i] = (i + 1) % p;
    return from_permutation(shift, p);
}

PermRepresentation PermRepresentation::from_permutation(std::span<const std::size_t> perm, std::uint32_t p)
{
    return PermRepresentation(FpMatrix::permutation(perm, p), p);
}

PermRepresentation PermRepresentation::direct_sum(std::span<const PermRepresentation> parts)
{
    if (parts.empty())
        throw InvalidRepresentation("direct sum of no representations");
    const auto p = parts.front().p();
    std::vector<FpMatrix> blocks;
    for (const auto& r : parts) {
        if (r.p() != p)
            throw ModulusMismatch("direct sum mixes primes");
        blocks.push_back(r.action());
    }
    return PermRepresentation(FpMatrix::direct_sum(blocks, p), p);
}

PeriodicResolutionDifferential resolution_differentials(const PermRepresentation& rep)
{
    const auto p = rep.p();
    const auto n = rep.dimension();
    const auto id = FpMatrix::identity(n, p);
    FpMatrix norm(n, n, p);
    FpMatrix power = id;
    for (std::uint32_t k = 0; k < p; ++k) {
        norm = norm + power;
        power = power * rep.action();
    }
    return {rep.action() - id, norm};
}

std::vector<std::size_t> group_cohomology_dims(const PermRepresentation& rep, int max_i)
{
    if (max_i < 0)
        return {};
    const auto d = resolution_differentials(rep);
    const auto n = rep.dimension();

    std::vector<std::size_t> dims(static_cast<std::size_t>(max_i) + 1);
    dims[0] = n - rank(d.even);
    for (int i = 1; i <= max_i; ++i) {
        const auto& d_in = (i - 1) % 2 == 0 ? d.even : d.odd;
        const auto& d_out = i % 2 == 0 ? d.even : d.odd;
        dims[i] = cohomology_dim(d_in, d_out);
    }
    return dims;
}

PermutationCycles decompose_permutation_rep(std::span<const std::size_t> perm, std::uint32_t p)
{
    require_prime(p);
    std::vector<bool> seen(perm.size(), false);
    PermutationCycles out;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start])
            continue;
        std::size_t len = 0;
        std::size_t i = start;
        while (!seen[i]) {
            seen[i] = true;
            if (perm[i] >= perm.size())
                throw InvalidRepresentation("permutation image out of range");
            i = perm[i];
            ++len;
        }
        if (i != start)
            throw InvalidRepresentation("not a permutation (two elements share an image)");
        if (len == 1)
            ++out.fixed_count;
        else if (len == p)
            ++out.cycle_count;
        else
            throw InvalidRepresentation("cycle of length " + std::to_string(len) + " is neither 1 nor p = " +
                                        std::to_string(p));
    }
    return out;
}

std::vector<std::size_t> parse_cycle_notation(std::string_view text)
{
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t max_label = 0;
    bool open = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == '(') {
            if (open)
                throw InvalidRepresentation("nested '(' in cycle notation");
            open = true;
            cycles.emplace_back();
            ++pos;
        } else if (c == ')') {
            if (!open)
                throw InvalidRepresentation("unmatched ')' in cycle notation");
            open = false;
            ++pos;
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (!open)
                throw InvalidRepresentation("label outside parentheses in cycle notation");
            std::size_t end = pos;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
                ++end;
            if (end - pos > 6)
                throw InvalidRepresentation("cycle label too large");
            auto label = std::stoul(std::string(text.substr(pos, end - pos)));
            if (label == 0)
                throw InvalidRepresentation("cycle labels start at 1");
            cycles.back().push_back(label - 1);
            max_label = std::max<std::size_t>(max_label, label);
            pos = end;
        } else {
            throw InvalidRepresentation(std::string("unexpected character '") + c + "' in cycle notation");
        }
    }
    if (open)
        throw InvalidRepresentation("unterminated cycle");

    std::vector<std::size_t> perm(max_label);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<bool> used(max_label, false);
    for (const auto& cyc : cycles)
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (used[cyc[k]])
                throw InvalidRepresentation("label " + std::to_string(cyc[k] + 1) + " appears twice");
            used[cyc[k]] = true;
            perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
    return perm;
}

} // namespace dmeq
