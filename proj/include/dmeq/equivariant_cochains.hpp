#pragma once

// Borel cochains F_p[u] ⊗ Λ[e] ⊗ C*(X; F_p) of a finite cochain complex with a
// Z/p action g, with differential
//
//     d(u^k ⊗ c)   = e u^k ⊗ (g c - c) + u^k ⊗ dc
//     d(u^k e ⊗ c) = u^{k+1} ⊗ (c + g c + ... + g^{p-1} c) - u^k e ⊗ dc
//
// and |u| = 2, |e| = 1.

#include <string>
#include <vector>

#include <json.hpp>

#include "dmeq/fp_linalg.hpp"

namespace dmeq {

struct FiniteGComplex {
    std::uint32_t p = 2;
    /// dims[q] = dim C^q, q = 0..D.
    std::vector<std::size_t> dims;
    /// differential[q]: C^q -> C^{q+1}, q = 0..D-1.
    std::vector<FpMatrix> differential;
    /// action[q]: C^q -> C^q.
    std::vector<FpMatrix> action;

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }

    /// Throws InvalidComplex if shapes disagree, d∘d != 0, g^p != 1, or gd != dg.
    void validate() const;

    /// Complex concentrated in degree 0 with the given action.
    static FiniteGComplex degree_zero(const FpMatrix& action);
    /// k points with trivial action.
    static FiniteGComplex fixed_points(std::uint32_t p, std::size_t k);
    /// p points permuted cyclically.
    static FiniteGComplex free_orbit(std::uint32_t p);
    static FiniteGComplex empty(std::uint32_t p);
    /// Degreewise direct sum (disjoint union); tops are padded with zero pieces.
    static FiniteGComplex disjoint_union(const FiniteGComplex& a, const FiniteGComplex& b);
};

/// JSON form: {"p": int, "degrees": [{"dim": int, "d": [[int]], "g": [[int]]}, ...]}
/// where "d" (rows = next dim, cols = this dim) is absent in the top degree.
FiniteGComplex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const FiniteGComplex& c);

struct BorelComplex {
    std::uint32_t p = 2;
    int d_total = 0;
    /// labels[n] lists the basis of total degree n, e.g. "u^2 e ⊗ c1[0]".
    std::vector<std::vector<std::string>> labels;
    /// differential[n]: total degree n -> n+1, n = 0..d_total-1.
    std::vector<FpMatrix> differential;
};

/// Throws InvalidComplex on invalid input or d_total < 2; verifies d² = 0 on
/// every assembled degree.
BorelComplex build_borel(const FiniteGComplex& c, int d_total);

/// dim H^n of the Borel complex for n = 0..d_total-2.
std::vector<std::size_t> borel_cohomology_dims(const BorelComplex& b);

inline constexpr int kDefaultLocalizationWindow = 6;

/// Restriction to the fixed subcomplex, one matrix per degree
/// (C^q(fixed) <- C^q(X)). Throws InvalidMap unless it commutes with d and g,
/// and InvalidComplex unless `fixed_sub` has trivial action.
void validate_restriction(const FiniteGComplex& c, const FiniteGComplex& fixed_sub,
                          const std::vector<FpMatrix>& restriction);

/// Borel dimensions in degrees top+1 .. top+window, where the action is
/// stabilized, with top the larger of the two complexes' top degrees.
std::vector<std::size_t> stabilized_dims(const FiniteGComplex& c, int from_degree, int window);

/// True iff the Borel dims of c and fixed_sub agree on `window` consecutive
/// degrees above both complexes' top degree.
bool localization_check(const FiniteGComplex& c, const FiniteGComplex& fixed_sub,
                        const std::vector<FpMatrix>& restriction, int window = kDefaultLocalizationWindow);

} // namespace dmeq
