#pragma once

#include <vector>

namespace dmeq {

/// Coefficients of the point-count polynomial |M_{0,n}-bar(F_q)| in q, from
/// Keel's recursion
///
///     P_{n+1} = (1 + q) P_n + (q/2) sum_{j=2}^{n-2} C(n, j) P_{j+1} P_{n-j+1},  P_3 = 1.
///
/// Since the space is paved by affine cells, coefficient k is the Betti
/// number in degree 2k. Valid for 3 <= n <= 30.
std::vector<long long> keel_point_count(int n);

} // namespace dmeq
