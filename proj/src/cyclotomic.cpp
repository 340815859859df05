#include "dmeq/cyclotomic.hpp"

#include <sstream>

namespace dmeq {

namespace {

void check_same_field(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    if (a.p() != b.p())
        throw ModulusMismatch("Q(eta_" + std::to_string(a.p()) + ") and Q(eta_" + std::to_string(b.p()) +
                              ") operands");
}

std::string rational_string(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace

CyclotomicNumber::CyclotomicNumber(int p) : p_(p), coeffs_(p >= 2 ? p - 1 : 0)
{
    require_prime(p);
}

CyclotomicNumber::CyclotomicNumber(int p, const Rational& value) : CyclotomicNumber(p)
{
    coeffs_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(int p, const std::vector<Rational>& coefficients) : CyclotomicNumber(p)
{
    reduce(coefficients);
}

void CyclotomicNumber::reduce(std::vector<Rational> raw)
{
    // eta^p = 1 folds everything below degree p; then eta^{p-1} = -(1 + ... + eta^{p-2}).
    std::vector<Rational> folded(p_);
    for (std::size_t k = 0; k < raw.size(); ++k)
        folded[k % p_] += raw[k];
    const Rational top = folded[p_ - 1];
    for (int k = 0; k < p_ - 1; ++k)
        coeffs_[k] = folded[k] - top;
}

CyclotomicNumber CyclotomicNumber::eta_power(int p, long long k)
{
    CyclotomicNumber x(p);
    long long e = k % p;
    if (e < 0)
        e += p;
    std::vector<Rational> raw(static_cast<std::size_t>(e) + 1);
    raw[e] = 1;
    x.reduce(raw);
    return x;
}

bool CyclotomicNumber::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

CyclotomicNumber CyclotomicNumber::pow(unsigned k) const
{
    CyclotomicNumber result(p_, Rational(1));
    CyclotomicNumber base = *this;
    while (k) {
        if (k & 1)
            result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    check_same_field(a, b);
    CyclotomicNumber out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        out.coeffs_[k] += b.coeffs_[k];
    return out;
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    check_same_field(a, b);
    CyclotomicNumber out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        out.coeffs_[k] -= b.coeffs_[k];
    return out;
}

CyclotomicNumber operator-(const CyclotomicNumber& a)
{
    CyclotomicNumber out = a;
    for (auto& c : out.coeffs_)
        c = -c;
    return out;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    check_same_field(a, b);
    const auto n = a.coeffs_.size();
    std::vector<Rational> raw(n ? 2 * n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            raw[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    CyclotomicNumber out(a.p_);
    out.reduce(std::move(raw));
    return out;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b)
{
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
}

std::string to_string(const CyclotomicNumber& x)
{
    std::string out;
    const auto& c = x.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0)
            continue;
        std::string coef = rational_string(abs(c[k]));
        std::string term;
        if (k == 0)
            term = coef;
        else
            term = (coef == "1" ? "" : coef + "*") + (k == 1 ? std::string("η") : "η^" + std::to_string(k));
        if (out.empty())
            out = (c[k] < 0 ? "-" : "") + term;
        else
            out += (c[k] < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

ProjectivePoint::ProjectivePoint(CyclotomicNumber z, CyclotomicNumber w) : z_(std::move(z)), w_(std::move(w))
{
    check_same_field(z_, w_);
    if (z_.is_zero() && w_.is_zero())
        throw DegenerateInput("(0 : 0) is not a point of the projective line");
}

ProjectivePoint ProjectivePoint::finite(const CyclotomicNumber& value)
{
    return ProjectivePoint(value, CyclotomicNumber(value.p(), Rational(1)));
}

ProjectivePoint ProjectivePoint::infinity(int p)
{
    return ProjectivePoint(CyclotomicNumber(p, Rational(1)), CyclotomicNumber(p));
}

bool operator==(const ProjectivePoint& a, const ProjectivePoint& b)
{
    return a.z_ * b.w_ == b.z_ * a.w_;
}

std::string to_string(const ProjectivePoint& pt)
{
    if (pt.is_infinity())
        return "∞";
    if (pt.w() == CyclotomicNumber(pt.w().p(), Rational(1)))
        return to_string(pt.z());
    return "(" + to_string(pt.z()) + " : " + to_string(pt.w()) + ")";
}

MoebiusMap::MoebiusMap(CyclotomicNumber a, CyclotomicNumber b, CyclotomicNumber c, CyclotomicNumber d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
{
    check_same_field(a_, b_);
    check_same_field(a_, c_);
    check_same_field(a_, d_);
    if ((a_ * d_ - b_ * c_).is_zero())
        throw DegenerateInput("Moebius map with ad - bc = 0");
}

MoebiusMap MoebiusMap::identity(int p)
{
    return MoebiusMap(CyclotomicNumber(p, Rational(1)), CyclotomicNumber(p), CyclotomicNumber(p),
                      CyclotomicNumber(p, Rational(1)));
}

ProjectivePoint MoebiusMap::operator()(const ProjectivePoint& pt) const
{
    return ProjectivePoint(a_ * pt.z() + b_ * pt.w(), c_ * pt.z() + d_ * pt.w());
}

MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g)
{
    return MoebiusMap(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_, f.c_ * g.a_ + f.d_ * g.c_,
                      f.c_ * g.b_ + f.d_ * g.d_);
}

MoebiusMap MoebiusMap::inverse() const
{
    return MoebiusMap(d_, -b_, -c_, a_);
}

bool MoebiusMap::same_map(const MoebiusMap& other) const
{
    const std::array<const CyclotomicNumber*, 4> x{&a_, &b_, &c_, &d_};
    const std::array<const CyclotomicNumber*, 4> y{&other.a_, &other.b_, &other.c_, &other.d_};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (!(*x[i] * *y[j] == *x[j] * *y[i]))
                return false;
    return true;
}

namespace {

CyclotomicNumber det2(const ProjectivePoint& u, const ProjectivePoint& v)
{
    return u.z() * v.w() - v.z() * u.w();
}

// Sends 0 -> t[0], 1 -> t[1], infinity -> t[2]. Columns are multiples of
// the images of infinity and 0 chosen so that (1 : 1) lands on t[1].
MoebiusMap from_standard(const std::array<ProjectivePoint, 3>& t)
{
    const auto lam = det2(t[0], t[1]);
    const auto mu = det2(t[1], t[2]);
    if (lam.is_zero() || mu.is_zero() || det2(t[0], t[2]).is_zero())
        throw DegenerateInput("three points of a Moebius frame must be pairwise distinct");
    return MoebiusMap(lam * t[2].z(), mu * t[0].z(), lam * t[2].w(), mu * t[0].w());
}

} // namespace

MoebiusMap moebius_from_three(const std::array<ProjectivePoint, 3>& src, const std::array<ProjectivePoint, 3>& dst)
{
    return from_standard(dst) * from_standard(src).inverse();
}

} // namespace dmeq
