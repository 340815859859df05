#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "dmeq/dm_basis.hpp"
#include "dmeq/keel.hpp"
#include "generators.hpp"

using namespace dmeq;
using dmeq::testing::filter_oracle;

namespace {

Monomial mono(int n, std::initializer_list<std::pair<std::vector<int>, int>> parts)
{
    Monomial::Exponents e;
    for (const auto& [set, d] : parts)
        e[MarkedSet(set)] = d;
    return Monomial(n, e);
}

std::vector<std::size_t> dims(const GradedBasis& b)
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= b.top_degree(); d += 2)
        out.push_back(b.dim(d));
    return out;
}

} // namespace

TEST(MarkedSet, MembersAndOrder)
{
    const MarkedSet s({3, 1, 2});
    EXPECT_EQ(s.members(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(s.size(), 3);
    EXPECT_EQ(s.max_label(), 3);
    EXPECT_TRUE(MarkedSet({1, 2, 3}) < MarkedSet({1, 2, 4}));
    EXPECT_TRUE(MarkedSet({1, 2, 3}) < MarkedSet({1, 2, 3, 4}));
    EXPECT_TRUE(MarkedSet({1, 2, 5}) < MarkedSet({1, 3, 4}));
    EXPECT_EQ(to_string(MarkedSet({2, 4, 5})), "{2,4,5}");
}

TEST(IsAdmissible, EmptyMonomial)
{
    EXPECT_TRUE(is_admissible(Monomial(3, {})));
    EXPECT_EQ(Monomial(3, {}).degree(), 0);
    EXPECT_EQ(to_string(Monomial(3, {})), "1");
}

TEST(IsAdmissible, TopExponentBoundAtP3)
{
    EXPECT_TRUE(is_admissible(mono(3, {{{1, 2, 3}, 1}})));
    EXPECT_FALSE(is_admissible(mono(3, {{{1, 2, 3}, 2}})));
    EXPECT_EQ(exponent_bound(mono(3, {{{1, 2, 3}, 1}}), MarkedSet({1, 2, 3})), 2);
}

TEST(IsAdmissible, CrossingSupportRejected)
{
    EXPECT_FALSE(is_admissible(mono(5, {{{1, 2, 3}, 1}, {{2, 3, 4}, 1}})));
}

TEST(IsAdmissible, NestedBoundUsesChildren)
{
    // X = {1..5} over {1,2,3}: k = 1, bound = 1 - 1 + 5 - 3 = 2.
    EXPECT_EQ(exponent_bound(mono(5, {{{1, 2, 3}, 1}, {{1, 2, 3, 4, 5}, 1}}), MarkedSet({1, 2, 3, 4, 5})), 2);
    EXPECT_TRUE(is_admissible(mono(5, {{{1, 2, 3}, 1}, {{1, 2, 3, 4, 5}, 1}})));
    EXPECT_FALSE(is_admissible(mono(5, {{{1, 2, 3}, 1}, {{1, 2, 3, 4, 5}, 2}})));
}

TEST(IsAdmissible, MalformedKeysThrow)
{
    EXPECT_THROW(is_admissible(mono(5, {{{1, 2}, 1}})), MalformedMonomial);
    EXPECT_THROW(is_admissible(mono(3, {{{1, 2, 4}, 1}})), MalformedMonomial);
    EXPECT_THROW(is_admissible(mono(3, {{{1, 2, 3}, 0}})), MalformedMonomial);
    EXPECT_THROW(MarkedSet({0, 1, 2}), MalformedMonomial);
}

TEST(EnumerateBasis, P2IsAPoint)
{
    const auto b = enumerate_basis(2);
    EXPECT_EQ(b.total_size(), 1u);
    EXPECT_EQ(dims(b), (std::vector<std::size_t>{1}));
}

TEST(EnumerateBasis, P3)
{
    const auto b = enumerate_basis(3);
    EXPECT_EQ(dims(b), (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(b.by_degree.at(2).front(), pi_x_power(3, 1));
}

TEST(EnumerateBasis, P5)
{
    EXPECT_EQ(dims(enumerate_basis(5)), (std::vector<std::size_t>{1, 16, 16, 1}));
}

TEST(EnumerateBasis, P7)
{
    EXPECT_EQ(dims(enumerate_basis(7)), (std::vector<std::size_t>{1, 99, 715, 715, 99, 1}));
}

TEST(EnumerateBasis, NonPrimeRejected)
{
    EXPECT_THROW(enumerate_basis(4), InvalidPrime);
    EXPECT_THROW(enumerate_basis(1), InvalidPrime);
}

TEST(EnumerateBasis, CompositeCountsThroughGeneralEntryPoint)
{
    EXPECT_EQ(dims(enumerate_monomial_basis(4)), (std::vector<std::size_t>{1, 5, 1}));
    EXPECT_EQ(dims(enumerate_monomial_basis(6)), (std::vector<std::size_t>{1, 42, 127, 42, 1}));
}

TEST(EnumerateBasis, Truncation)
{
    const auto b = enumerate_basis(7, 4);
    EXPECT_EQ(dims(b), (std::vector<std::size_t>{1, 99, 715}));
    EXPECT_EQ(b.top_degree(), 4);
    EXPECT_EQ(enumerate_basis(5, 3).top_degree(), 2);
    EXPECT_THROW(enumerate_basis(5, -2), Error);
}

TEST(KeelOracle, FrozenValues)
{
    EXPECT_EQ(keel_point_count(3), (std::vector<long long>{1}));
    EXPECT_EQ(keel_point_count(4), (std::vector<long long>{1, 1}));
    EXPECT_EQ(keel_point_count(5), (std::vector<long long>{1, 5, 1}));
    EXPECT_EQ(keel_point_count(6), (std::vector<long long>{1, 16, 16, 1}));
    EXPECT_EQ(keel_point_count(7), (std::vector<long long>{1, 42, 127, 42, 1}));
    EXPECT_EQ(keel_point_count(8), (std::vector<long long>{1, 99, 715, 715, 99, 1}));
}

TEST(KeelOracle, MatchesEnumerationDegreeByDegree)
{
    for (int n = 1; n <= 9; ++n) {
        const auto oracle = keel_point_count(n + 1 < 3 ? 3 : n + 1);
        const auto b = enumerate_monomial_basis(n);
        if (n + 1 < 3) {
            EXPECT_EQ(b.total_size(), 1u);
            continue;
        }
        ASSERT_EQ(dims(b).size(), oracle.size()) << "n=" << n;
        for (std::size_t k = 0; k < oracle.size(); ++k)
            EXPECT_EQ(dims(b)[k], static_cast<std::size_t>(oracle[k])) << "n=" << n << " degree " << 2 * k;
    }
}

TEST(EnumerateBasis, MatchesFilterOracle)
{
    for (int n = 2; n <= 5; ++n) {
        const auto b = enumerate_monomial_basis(n);
        const auto oracle = filter_oracle(n);
        std::map<int, std::size_t> got;
        for (const auto& [d, v] : b.by_degree)
            got[d] = v.size();
        EXPECT_EQ(got, oracle) << "n=" << n;
    }
}

TEST(EnumerateBasis, EveryElementAdmissibleSortedAndDistinct)
{
    for (int p : {2, 3, 5, 7}) {
        const auto b = enumerate_basis(p);
        for (const auto& [d, v] : b.by_degree) {
            EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
            EXPECT_EQ(std::set<Monomial>(v.begin(), v.end()).size(), v.size());
            for (const auto& m : v) {
                EXPECT_TRUE(is_admissible(m));
                EXPECT_EQ(m.degree(), d);
            }
        }
    }
}

TEST(EnumerateBasis, PoincareSymmetry)
{
    for (int n = 3; n <= 8; ++n) {
        const auto b = enumerate_monomial_basis(n);
        const int top = 2 * (n - 2);
        EXPECT_EQ(b.top_degree(), top);
        for (int k = 0; 2 * k <= top; ++k)
            EXPECT_EQ(b.dim(2 * k), b.dim(top - 2 * k)) << "n=" << n << " k=" << k;
    }
}

TEST(EnumerateBasis, Deterministic)
{
    const auto a = enumerate_basis(5);
    const auto b = enumerate_basis(5);
    EXPECT_EQ(a.by_degree, b.by_degree);
}

TEST(Sigma, FixesPowersOfPiX)
{
    for (int p : {3, 5, 7})
        for (int k = 0; k <= p - 2; ++k)
            EXPECT_EQ(sigma(pi_x_power(p, k)), pi_x_power(p, k));
}

TEST(Sigma, ShiftsLabels)
{
    EXPECT_EQ(sigma(mono(5, {{{1, 2, 3}, 1}})), mono(5, {{{2, 3, 4}, 1}}));
    EXPECT_EQ(sigma(mono(5, {{{1, 4, 5}, 1}})), mono(5, {{{1, 2, 5}, 1}}));
}

TEST(Sigma, OrderPAndBijectiveOnEachDegree)
{
    for (int p : {3, 5, 7}) {
        const auto b = enumerate_basis(p);
        for (const auto& [d, v] : b.by_degree) {
            std::set<Monomial> image;
            for (const auto& m : v) {
                auto x = m;
                for (int k = 0; k < p; ++k)
                    x = sigma(x);
                EXPECT_EQ(x, m);
                const auto s = sigma(m);
                EXPECT_EQ(s.degree(), d);
                EXPECT_TRUE(is_admissible(s));
                image.insert(s);
            }
            EXPECT_EQ(image, std::set<Monomial>(v.begin(), v.end()));
            const auto perm = sigma_permutation(b, d);
            EXPECT_EQ(std::set<std::size_t>(perm.begin(), perm.end()).size(), v.size());
        }
    }
}

TEST(OrbitDecomposition, P3)
{
    const auto o = orbit_decomposition(enumerate_basis(3));
    EXPECT_EQ(o.fixed, (std::vector<Monomial>{pi_x_power(3, 0), pi_x_power(3, 1)}));
    EXPECT_TRUE(o.cycles.empty());
}

TEST(OrbitDecomposition, P5)
{
    const auto b = enumerate_basis(5);
    const auto o = orbit_decomposition(b);
    EXPECT_EQ(b.total_size(), 34u);
    EXPECT_EQ(o.fixed.size(), 4u);
    EXPECT_EQ(o.cycles.size(), 6u);
    EXPECT_EQ(o.total_size(), b.total_size());
}

TEST(OrbitDecomposition, FixedAreExactlyPowersOfPiX)
{
    for (int p : {2, 3, 5, 7}) {
        const auto o = orbit_decomposition(enumerate_basis(p));
        ASSERT_EQ(o.fixed.size(), static_cast<std::size_t>(p - 1)) << "p=" << p;
        for (int k = 0; k <= p - 2; ++k)
            EXPECT_EQ(o.fixed[k], pi_x_power(p, k));
        for (const auto& [d, count] : o.fixed_by_degree())
            EXPECT_EQ(count, 1u) << "p=" << p << " degree " << d;
        for (const auto& c : o.cycles) {
            ASSERT_EQ(c.size(), static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k)
                EXPECT_EQ(sigma(c[k]), c[(k + 1) % p]);
        }
    }
}

TEST(OrbitDecomposition, ImageOutsideBasisIsInconsistent)
{
    GradedBasis b = enumerate_basis(5);
    b.by_degree[2].erase(b.by_degree[2].begin() + 1);
    EXPECT_THROW(orbit_decomposition(b), InternalInconsistency);
}

TEST(OrbitDecomposition, ShortOrbitIsInconsistent)
{
    // The rotation of six labels sends P{1,3,5} to P{2,4,6} and back.
    EXPECT_NO_THROW(orbit_decomposition(enumerate_monomial_basis(4)));
    EXPECT_THROW(orbit_decomposition(enumerate_monomial_basis(6)), InternalInconsistency);
}
