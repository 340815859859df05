#include "dmeq/keel.hpp"

#include <map>
#include <string>

#include "dmeq/errors.hpp"

namespace dmeq {

namespace {

using Poly = std::vector<long long>;

Poly mul(const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

void add_into(Poly& acc, const Poly& x, long long scale, std::size_t shift)
{
    if (acc.size() < x.size() + shift)
        acc.resize(x.size() + shift, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        acc[i + shift] += scale * x[i];
}

long long binomial(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::vector<long long> keel_point_count(int n)
{
    if (n < 3 || n > 30)
        throw Error("point-count recursion supports 3 <= n <= 30, got " + std::to_string(n));
    std::map<int, Poly> P;
    P[3] = {1};
    for (int m = 3; m < n; ++m) {
        Poly next;
        add_into(next, P[m], 1, 0);
        add_into(next, P[m], 1, 1);
        Poly sum;
        for (int j = 2; j <= m - 2; ++j)
            add_into(sum, mul(P[j + 1], P[m - j + 1]), binomial(m, j), 0);
        for (auto& c : sum) {
            if (c % 2 != 0)
                throw InternalInconsistency("odd coefficient in the boundary sum");
            c /= 2;
        }
        add_into(next, sum, 1, 1);
        P[m + 1] = next;
    }
    return P[n];
}

} // namespace dmeq
