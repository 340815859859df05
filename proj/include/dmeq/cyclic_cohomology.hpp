#pragma once

// H^i(BZ/p; A) for a finite F_p[Z/p]-module A, computed from the 2-periodic
// cochain complex of EZ/p:
//
//     A --(s-1)--> A --N--> A --(s-1)--> A --N--> ...
//
// where s is the generator and N = 1 + s + ... + s^{p-1}.

#include <span>
#include <string_view>
#include <vector>

#include "dmeq/fp_linalg.hpp"

namespace dmeq {

/// A Z/p-module given by the matrix of the generator. The action need not be
/// a permutation; any matrix with action^p = 1 is accepted.
class PermRepresentation {
public:
    /// Throws InvalidRepresentation unless action is square with action^p = 1.
    PermRepresentation(FpMatrix action, std::uint32_t p);

    static PermRepresentation trivial(std::uint32_t p, std::size_t dimension = 1);
    /// Cyclic shift on p coordinates.
    static PermRepresentation regular(std::uint32_t p);
    static PermRepresentation from_permutation(std::span<const std::size_t> perm, std::uint32_t p);
    static PermRepresentation direct_sum(std::span<const PermRepresentation> parts);

    std::size_t dimension() const { return action_.rows(); }
    const FpMatrix& action() const { return action_; }
    std::uint32_t p() const { return p_; }

private:
    FpMatrix action_;
    std::uint32_t p_;
};

struct PeriodicResolutionDifferential {
    /// Leaves even degrees.
    FpMatrix even;
    /// Leaves odd degrees.
    FpMatrix odd;
};

/// (s - 1) and N for the given representation.
PeriodicResolutionDifferential resolution_differentials(const PermRepresentation& rep);

inline constexpr int default_max_i(std::uint32_t p)
{
    return 2 * static_cast<int>(p) + 2;
}

/// dim H^i(BZ/p; rep) for i = 0..max_i.
std::vector<std::size_t> group_cohomology_dims(const PermRepresentation& rep, int max_i);

struct PermutationCycles {
    std::size_t fixed_count = 0;
    std::size_t cycle_count = 0;
};

/// Counts 1-cycles and p-cycles. Throws InvalidRepresentation if any cycle has
/// another length.
PermutationCycles decompose_permutation_rep(std::span<const std::size_t> perm, std::uint32_t p);

/// Parses cycle notation such as "(1 2 3)(4)" or "(1,2,3)" into a 0-based
/// permutation. Labels are 1-based; the dimension is the largest label seen.
std::vector<std::size_t> parse_cycle_notation(std::string_view text);

} // namespace dmeq
