#pragma once

// Exact arithmetic in Q(eta), eta a primitive p-th root of unity, and
// projective geometry over it.
//
// An element is stored as its remainder modulo Phi_p(eta) = 1 + eta + ... +
// eta^{p-1}, i.e. as p-1 rational coefficients on 1, eta, ..., eta^{p-2}.
// That remainder is unique, so equality is coefficientwise.

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dmeq/errors.hpp"

namespace dmeq {

using Rational = boost::multiprecision::cpp_rational;

class CyclotomicNumber {
public:
    /// Zero of Q(eta_p).
    explicit CyclotomicNumber(int p);
    CyclotomicNumber(int p, const Rational& value);
    /// Coefficients on 1, eta, eta^2, ...; any length, reduced on construction.
    CyclotomicNumber(int p, const std::vector<Rational>& coefficients);

    static CyclotomicNumber eta_power(int p, long long k);

    int p() const { return p_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const;

    CyclotomicNumber pow(unsigned k) const;

    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a);
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

private:
    void reduce(std::vector<Rational> raw);

    int p_;
    std::vector<Rational> coeffs_;
};

std::string to_string(const CyclotomicNumber& x);

/// Homogeneous coordinates (z : w); infinity is (1 : 0).
class ProjectivePoint {
public:
    /// Throws DegenerateInput when both coordinates vanish.
    ProjectivePoint(CyclotomicNumber z, CyclotomicNumber w);

    static ProjectivePoint finite(const CyclotomicNumber& value);
    static ProjectivePoint infinity(int p);

    const CyclotomicNumber& z() const { return z_; }
    const CyclotomicNumber& w() const { return w_; }
    bool is_infinity() const { return w_.is_zero(); }

    /// z w' == z' w.
    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b);

private:
    CyclotomicNumber z_;
    CyclotomicNumber w_;
};

std::string to_string(const ProjectivePoint& pt);

/// z -> (a z + b) / (c z + d), acting on homogeneous pairs as a matrix.
class MoebiusMap {
public:
    /// Throws DegenerateInput when ad - bc = 0.
    MoebiusMap(CyclotomicNumber a, CyclotomicNumber b, CyclotomicNumber c, CyclotomicNumber d);

    static MoebiusMap identity(int p);

    const CyclotomicNumber& a() const { return a_; }
    const CyclotomicNumber& b() const { return b_; }
    const CyclotomicNumber& c() const { return c_; }
    const CyclotomicNumber& d() const { return d_; }

    ProjectivePoint operator()(const ProjectivePoint& pt) const;
    /// (f * g)(z) = f(g(z)).
    friend MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g);
    /// Adjugate; inverse up to scalar.
    MoebiusMap inverse() const;

    /// Equality in PGL_2: all 2x2 cross products of entries agree.
    bool same_map(const MoebiusMap& other) const;

private:
    CyclotomicNumber a_, b_, c_, d_;
};

/// The map sending src[k] to dst[k], k = 0, 1, 2. Throws DegenerateInput if
/// either triple has a repeated point.
MoebiusMap moebius_from_three(const std::array<ProjectivePoint, 3>& src, const std::array<ProjectivePoint, 3>& dst);

} // namespace dmeq
