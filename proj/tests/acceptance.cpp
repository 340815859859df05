// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dmeq/cli.hpp"
#include "dmeq/cyclic_cohomology.hpp"
#include "dmeq/dm_basis.hpp"
#include "dmeq/equivariant_cochains.hpp"
#include "dmeq/fixed_points.hpp"
#include "dmeq/keel.hpp"
#include "dmeq/serre_e2.hpp"
#include "generators.hpp"

using namespace dmeq;
using namespace dmeq::testing;

namespace {

using Clock = std::chrono::steady_clock;

class Criterion {
public:
    explicit Criterion(std::string id) : id_(std::move(id)), start_(Clock::now()) {}

    void check(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        failed_ += !ok;
    }

    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool report(const std::string& summary) const
    {
        const bool ok = failed_ == 0;
        std::cout << fmt::format("{} {}: {} ({} checks, {:.2f}s)\n", id_, ok ? "PASS" : "FAIL", summary, checks_,
                                 seconds());
        for (const auto& f : failures_)
            std::cout << "    failed: " << f << "\n";
        return ok;
    }

private:
    std::string id_;
    Clock::time_point start_;
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

template <typename F>
void guarded(Criterion& c, const std::string& what, F&& body)
{
    try {
        body();
    } catch (const std::exception& e) {
        c.check(false, what + " threw: " + e.what());
    }
}

std::string cli_stdout(std::vector<std::string> args)
{
    args.insert(args.begin(), "dmeq");
    std::ostringstream out, err;
    if (run_cli(args, out, err) != kExitOk)
        return "exit failure: " + err.str();
    return out.str();
}

std::vector<std::size_t> even_dims(const GradedBasis& b)
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= b.top_degree(); d += 2)
        out.push_back(b.dim(d));
    return out;
}

bool basis_dimensions()
{
    Criterion c("AC1");
    guarded(c, "betti", [&] {
        c.check(cli_stdout({"betti", "--p", "3", "--format", "csv"}) == "degree,dim\n0,1\n2,1\n", "betti --p 3");
        c.check(cli_stdout({"betti", "--p", "5", "--format", "csv"}) == "degree,dim\n0,1\n2,16\n4,16\n6,1\n",
                "betti --p 5");
        const auto start = Clock::now();
        const auto dims = even_dims(enumerate_basis(7));
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        const auto keel = keel_point_count(8);
        c.check(dims.size() == keel.size(), "p=7 number of degrees");
        for (std::size_t k = 0; k < std::min(dims.size(), keel.size()); ++k)
            c.check(dims[k] == static_cast<std::size_t>(keel[k]), fmt::format("p=7 degree {}", 2 * k));
        c.check(elapsed < 60.0, fmt::format("p=7 took {:.2f}s", elapsed));
    });
    return c.report("betti p=3 (1,1), p=5 (1,16,16,1), p=7 equals the Keel count degree by degree");
}

bool fixed_generators()
{
    Criterion c("AC2");
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto o = orbit_decomposition(enumerate_basis(p));
            c.check(o.fixed.size() == static_cast<std::size_t>(p - 1), fmt::format("p={} fixed count", p));
            for (const auto& cyc : o.cycles)
                c.check(cyc.size() == static_cast<std::size_t>(p), fmt::format("p={} cycle size", p));
        });
    return c.report("exactly p-1 fixed monomials and only size-p cycles for p in {3,5,7}");
}

bool group_cohomology()
{
    Criterion c("AC3");
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        guarded(c, fmt::format("p={}", p), [&] {
            const int max_i = static_cast<int>(2 * p + 2);
            const auto trivial = group_cohomology_dims(PermRepresentation::trivial(p), max_i);
            const auto regular = group_cohomology_dims(PermRepresentation::regular(p), max_i);
            std::vector<std::size_t> ones(max_i + 1, 1), delta(max_i + 1, 0);
            delta[0] = 1;
            c.check(trivial == ones, fmt::format("p={} trivial", p));
            c.check(regular == delta, fmt::format("p={} regular", p));
            const auto borel_trivial = borel_cohomology_dims(build_borel(FiniteGComplex::fixed_points(p, 1), max_i + 2));
            const auto borel_regular = borel_cohomology_dims(build_borel(FiniteGComplex::free_orbit(p), max_i + 2));
            c.check(borel_trivial == trivial, fmt::format("p={} Borel trivial", p));
            c.check(borel_regular == regular, fmt::format("p={} Borel regular", p));
        });
    return c.report("trivial gives 1 in degrees 0..2p+2, regular gives (1,0,...); resolution and Borel agree");
}

bool e2_page()
{
    Criterion c("AC4");
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto page = assemble_e2(p);
            const auto violations = e2_invariant_violations(page);
            c.check(violations.empty(), fmt::format("p={} {}", p, violations.empty() ? "" : violations.front()));
            const auto cycles = orbit_decomposition(enumerate_basis(p)).cycles_by_degree();
            const int top = 2 * (p - 2);
            for (int j = 0; j <= top + 2; ++j)
                for (int i = 0; i <= page.max_i; ++i) {
                    std::size_t expected = 0;
                    if (j % 2 == 0 && j <= top) {
                        const auto it = cycles.find(j);
                        expected = i == 0 ? 1 + (it == cycles.end() ? 0 : it->second) : 1;
                    }
                    c.check(page.dim(i, j) == expected, fmt::format("p={} E2^({},{})", p, i, j));
                }
        });
    return c.report("E2 table matches cycles+1 at i=0, 1 for i>=1 on even rows, 0 elsewhere, p in {3,5,7}");
}

bool collapse()
{
    Criterion c("AC5");
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto rep = collapse_certificate(p, 4);
            for (const auto& it : rep.items)
                c.check(it.pass, fmt::format("p={} {}: {}", p, it.id, it.detail));
            c.check(rep.pass, fmt::format("p={} overall", p));
            const int top = 2 * (p - 2);
            const auto page = assemble_e2(p, certificate_columns(p, 8));
            const auto fixed_locus = stabilized_dims(FiniteGComplex::fixed_points(p, p - 1), 1, 16);
            const auto totals = total_dims(page, top + 1, top + 16);
            for (std::size_t k = 0; k < totals.size(); ++k) {
                c.check(totals[k] == static_cast<std::size_t>(p - 1), fmt::format("p={} total degree {}", p, top + 1 + k));
                c.check(totals[k] == fixed_locus[k], fmt::format("p={} fixed locus degree {}", p, top + 1 + k));
            }
        });

    guarded(c, "negative controls", [&] {
        auto orbit = assemble_e2(5, certificate_columns(5, 4));
        fabricate_surviving_orbit_class(orbit, 4);
        c.check(!collapse_certificate(orbit, 4, 4).find("C2")->pass, "surviving orbit class fails C2");

        const auto honest = assemble_e2(5, certificate_columns(5, 4));
        c.check(!collapse_certificate(honest, 4, 3).find("C4")->pass, "wrong fixed count fails C4");

        auto extra = assemble_e2(3, certificate_columns(3, 4));
        extra.cells[{9, 0}].push_back({"extra", GeneratorKind::Tower});
        c.check(!collapse_certificate(extra, 4, 2).find("C3")->pass, "extra stable class fails C3");

        auto odd = assemble_e2(3, certificate_columns(3, 4));
        odd.cells[{4, 1}].push_back({"odd", GeneratorKind::Tower});
        c.check(!collapse_certificate(odd, 4, 2).find("C5")->pass, "odd row fails C5");

        auto dead_u = assemble_e2(5, certificate_columns(5, 4));
        auto& u = dead_u.u_action.at({3, 0});
        u = FpMatrix(u.rows(), u.cols(), 5);
        c.check(!collapse_certificate(dead_u, 4, 4).find("C1")->pass, "zero u fails C1");
    });
    return c.report("C1-C5 pass for p in {3,5,7}, stable totals equal p-1 and the fixed locus; fabricated pages fail");
}

bool injectivity()
{
    Criterion c("AC6");
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto rep = injectivity_certificate(p, 4);
            for (const auto& it : rep.items)
                c.check(it.pass, fmt::format("p={} {}: {}", p, it.id, it.detail));
            c.check(rep.items.size() == 3 && rep.pass, fmt::format("p={} overall", p));
        });
    return c.report("I1-I3 pass for p in {3,5,7}");
}

bool fixed_points()
{
    Criterion c("AC7");
    for (int p : {3, 5, 7, 11})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto fixed = enumerate_fixed(p);
            c.check(fixed.size() == static_cast<std::size_t>(p - 1), fmt::format("p={} count", p));
            for (std::size_t a = 0; a < fixed.size(); ++a) {
                c.check(is_isomorphic(fixed[a], relabel_by_sigma(fixed[a])), fmt::format("p={} #{} invariant", p, a));
                for (std::size_t b = a + 1; b < fixed.size(); ++b)
                    c.check(!is_isomorphic(fixed[a], fixed[b]), fmt::format("p={} #{} ~ #{}", p, a, b));
            }
        });
    for (int p : {3, 5})
        guarded(c, fmt::format("nodal p={}", p), [&] { c.check(no_nodal_fixed_points(p), fmt::format("nodal p={}", p)); });
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("moebius p={}", p), [&] {
            const auto r = moebius_power_degree(p);
            c.check(r.denominator_degree == p - 1 && r.pass, fmt::format("moebius p={} degree {}", p, r.denominator_degree));
        });
    c.check(c.seconds() < 120.0, "fixed-point suite exceeded 120s");
    return c.report("p-1 distinct invariant configurations for p in {3,5,7,11}, no nodal fixed points, degree p-1");
}

bool cross_count()
{
    Criterion c("AC8");
    for (int p : {3, 5, 7})
        guarded(c, fmt::format("p={}", p), [&] {
            const auto expected = static_cast<std::size_t>(p - 1);
            const auto monomials = orbit_decomposition(enumerate_basis(p)).fixed.size();
            const auto configurations = enumerate_fixed(p).size();
            const auto borel = stabilized_dims(FiniteGComplex::fixed_points(p, p - 1), 1, 8);
            c.check(monomials == expected, fmt::format("p={} monomials {}", p, monomials));
            c.check(configurations == expected, fmt::format("p={} configurations {}", p, configurations));
            for (auto d : borel)
                c.check(d == expected, fmt::format("p={} Borel {}", p, d));
            c.check(verify_all(p, 4).cross_count == p - 1, fmt::format("p={} verify-all cross count", p));
        });
    return c.report("fixed monomials, fixed configurations and stabilized Borel dims all equal p-1 for p in {3,5,7}");
}

bool property_suites()
{
    Criterion c("AC9");
    guarded(c, "d squared", [&] {
        std::mt19937 rng(424242);
        const std::vector<std::uint32_t> primes{2, 3, 5};
        for (int trial = 0; trial < 200; ++trial) {
            const auto p = primes[rng() % primes.size()];
            const auto cx = random_complex(rng, p);
            const auto b = build_borel(cx, 6 + static_cast<int>(rng() % 4));
            bool ok = true;
            for (std::size_t n = 0; n + 1 < b.differential.size(); ++n)
                ok = ok && (b.differential[n + 1] * b.differential[n]).is_zero();
            c.check(ok, fmt::format("d^2 trial {}", trial));
        }
    });
    guarded(c, "additivity", [&] {
        std::mt19937 rng(2024);
        const std::vector<std::uint32_t> primes{2, 3, 5, 7};
        auto random_rep = [&](std::uint32_t p) {
            const auto perm = random_perm(rng, rng() % 3, rng() % 3, p);
            return perm.empty() ? PermRepresentation::trivial(p) : PermRepresentation::from_permutation(perm, p);
        };
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = primes[rng() % primes.size()];
            const std::vector<PermRepresentation> parts{random_rep(p), random_rep(p)};
            const int max_i = default_max_i(p);
            const auto a = group_cohomology_dims(parts[0], max_i);
            const auto b = group_cohomology_dims(parts[1], max_i);
            const auto sum = group_cohomology_dims(PermRepresentation::direct_sum(parts), max_i);
            bool ok = true;
            for (int i = 0; i <= max_i; ++i)
                ok = ok && sum[i] == a[i] + b[i];
            c.check(ok, fmt::format("additivity trial {}", trial));
        }
    });
    guarded(c, "filter oracle", [&] {
        for (int n = 2; n <= 5; ++n) {
            std::map<int, std::size_t> got;
            for (const auto& [d, v] : enumerate_monomial_basis(n).by_degree)
                got[d] = v.size();
            c.check(got == filter_oracle(n), fmt::format("filter oracle n={}", n));
        }
    });
    guarded(c, "isomorphism laws", [&] {
        std::mt19937 rng(1234);
        for (int trial = 0; trial < 100; ++trial) {
            const int p = trial % 2 ? 3 : 5;
            const std::size_t n = 4 + rng() % 3;
            const auto a = random_config(rng, p, n);
            const auto b = rng() % 2 ? apply(random_moebius(rng, p), a) : random_config(rng, p, n);
            const auto d = rng() % 2 ? apply(random_moebius(rng, p), b) : random_config(rng, p, n);
            bool ok = is_isomorphic(a, a) && is_isomorphic(a, b) == is_isomorphic(b, a) &&
                      is_isomorphic(b, d) == is_isomorphic(d, b);
            if (is_isomorphic(a, b) && is_isomorphic(b, d))
                ok = ok && is_isomorphic(a, d);
            ok = ok && is_isomorphic(a, apply(random_moebius(rng, p), a));
            c.check(ok, fmt::format("isomorphism trial {}", trial));
        }
    });
    return c.report("d^2=0 x200, additivity x100, filter oracle n<=5, isomorphism laws x100");
}

} // namespace

int main()
{
    bool ok = true;
    for (auto* criterion : {basis_dimensions, fixed_generators, group_cohomology, e2_page, collapse, injectivity,
                            fixed_points, cross_count, property_suites})
        ok = criterion() && ok;
    std::cout << (ok ? "ALL PASS" : "SOME FAILED") << "\n";
    return ok ? 0 : 1;
}
