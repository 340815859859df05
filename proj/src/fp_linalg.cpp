#include "dmeq/fp_linalg.hpp"

#include <ostream>
#include <string>

namespace dmeq {

bool is_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

void require_prime(long long p)
{
    if (!is_prime(p))
        throw InvalidPrime("p must be prime (got " + std::to_string(p) + ")");
}

namespace {

std::uint32_t reduce(long long v, std::uint32_t p)
{
    long long r = v % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t common_modulus(std::uint32_t a, std::uint32_t b)
{
    if (a != b)
        throw ModulusMismatch("F_p operands with moduli " + std::to_string(a) + " and " + std::to_string(b));
    return a;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    // Fermat; p is small.
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// Row reduction on a plain residue grid. Returns pivot columns; `a` is left in
// reduced row echelon form.
std::vector<std::size_t> rref(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols, std::uint32_t p)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t k = 0; k < cols; ++k)
                std::swap(a[piv * cols + k], a[r * cols + k]);
        std::uint64_t inv = inv_mod(a[r * cols + c], p);
        for (std::size_t k = c; k < cols; ++k)
            a[r * cols + k] = static_cast<std::uint32_t>(a[r * cols + k] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            std::uint64_t f = a[i * cols + c];
            if (f == 0)
                continue;
            std::uint64_t neg = p - f;
            for (std::size_t k = c; k < cols; ++k)
                a[i * cols + k] = static_cast<std::uint32_t>((a[i * cols + k] + neg * a[r * cols + k]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::uint32_t> residues(const FpMatrix& m)
{
    m.check_moduli();
    std::vector<std::uint32_t> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i * m.cols() + j] = m.at(i, j).value();
    return a;
}

} // namespace

FpScalar::FpScalar(long long value, std::uint32_t p) : modulus_(p)
{
    require_prime(p);
    value_ = reduce(value, p);
}

FpScalar FpScalar::inverse() const
{
    if (value_ == 0)
        throw Error("inverse of zero in F_" + std::to_string(modulus_));
    FpScalar s;
    s.value_ = inv_mod(value_, modulus_);
    s.modulus_ = modulus_;
    return s;
}

FpScalar operator+(FpScalar a, FpScalar b)
{
    auto p = common_modulus(a.modulus_, b.modulus_);
    return FpScalar(static_cast<long long>(a.value_) + b.value_, p);
}

FpScalar operator-(FpScalar a, FpScalar b)
{
    auto p = common_modulus(a.modulus_, b.modulus_);
    return FpScalar(static_cast<long long>(a.value_) - b.value_, p);
}

FpScalar operator*(FpScalar a, FpScalar b)
{
    auto p = common_modulus(a.modulus_, b.modulus_);
    return FpScalar(static_cast<long long>(a.value_) * b.value_, p);
}

FpScalar operator-(FpScalar a)
{
    return FpScalar(-static_cast<long long>(a.value_), a.modulus_);
}

bool operator==(FpScalar a, FpScalar b)
{
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
}

std::ostream& operator<<(std::ostream& os, FpScalar s)
{
    return os << s.value();
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), modulus_(p), entries_(rows * cols, FpScalar(0, p))
{
    require_prime(p);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p, std::span<const long long> entries)
    : FpMatrix(rows, cols, p)
{
    if (entries.size() != rows * cols)
        throw ShapeMismatch("entry count does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    for (std::size_t k = 0; k < entries.size(); ++k)
        entries_[k] = FpScalar(entries[k], p);
}

FpMatrix::FpMatrix(std::initializer_list<std::initializer_list<long long>> rows, std::uint32_t p)
    : FpMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0, p)
{
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw ShapeMismatch("ragged matrix literal");
        std::size_t j = 0;
        for (long long v : row)
            set(i, j++, v);
        ++i;
    }
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p)
{
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::permutation(std::span<const std::size_t> perm, std::uint32_t p)
{
    FpMatrix m(perm.size(), perm.size(), p);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] >= perm.size())
            throw ShapeMismatch("permutation image out of range");
        m.set(perm[j], j, 1);
    }
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols, std::uint32_t p)
{
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw ShapeMismatch("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

bool FpMatrix::is_zero() const
{
    for (const auto& e : entries_)
        if (!e.is_zero())
            return false;
    return true;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(cols_, rows_, modulus_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

FpVector FpMatrix::apply(const FpVector& v) const
{
    if (v.size() != cols_)
        throw ShapeMismatch("vector length does not match matrix columns");
    FpVector out(rows_, FpScalar(0, modulus_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] = out[i] + at(i, j) * v[j];
    return out;
}

FpMatrix FpMatrix::direct_sum(std::span<const FpMatrix> blocks, std::uint32_t p)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        common_modulus(b.modulus(), p);
        r += b.rows();
        c += b.cols();
    }
    FpMatrix m(r, c, p);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m.at(r0 + i, c0 + j) = b.at(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    auto p = common_modulus(a.modulus_, b.modulus_);
    if (a.cols_ != b.rows_)
        throw ShapeMismatch("cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                            std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    auto ra = residues(a), rb = residues(b);
    std::vector<std::uint64_t> acc(a.rows_ * b.cols_, 0);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t x = ra[i * a.cols_ + k];
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                acc[i * b.cols_ + j] = (acc[i * b.cols_ + j] + x * rb[k * b.cols_ + j]) % p;
        }
    FpMatrix out(a.rows_, b.cols_, p);
    for (std::size_t k = 0; k < acc.size(); ++k)
        out.entries_[k] = FpScalar(static_cast<long long>(acc[k]), p);
    return out;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b)
{
    common_modulus(a.modulus_, b.modulus_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw ShapeMismatch("cannot add matrices of different shapes");
    FpMatrix out = a;
    for (std::size_t k = 0; k < out.entries_.size(); ++k)
        out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b)
{
    common_modulus(a.modulus_, b.modulus_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw ShapeMismatch("cannot subtract matrices of different shapes");
    FpMatrix out = a;
    for (std::size_t k = 0; k < out.entries_.size(); ++k)
        out.entries_[k] = a.entries_[k] - b.entries_[k];
    return out;
}

bool operator==(const FpMatrix& a, const FpMatrix& b)
{
    return a.modulus_ == b.modulus_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

FpMatrix FpMatrix::power(unsigned k) const
{
    if (rows_ != cols_)
        throw ShapeMismatch("power of a non-square matrix");
    FpMatrix result = identity(rows_, modulus_);
    FpMatrix base = *this;
    while (k) {
        if (k & 1)
            result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

void FpMatrix::check_moduli() const
{
    for (const auto& e : entries_)
        if (e.modulus() != modulus_)
            throw ModulusMismatch("matrix over F_" + std::to_string(modulus_) + " holds an entry with modulus " +
                                  std::to_string(e.modulus()));
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m.at(i, j);
    }
    return os << "] mod " << m.modulus();
}

std::size_t rank(const FpMatrix& m)
{
    auto a = residues(m);
    return rref(a, m.rows(), m.cols(), m.modulus()).size();
}

std::vector<FpVector> kernel_basis(const FpMatrix& m)
{
    const auto p = m.modulus();
    const auto cols = m.cols();
    auto a = residues(m);
    auto pivots = rref(a, m.rows(), cols, p);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;

    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        FpVector v(cols, FpScalar(0, p));
        v[free] = FpScalar(1, p);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = FpScalar(-static_cast<long long>(a[r * cols + free]), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t cohomology_dim(const FpMatrix& d_in, const FpMatrix& d_out)
{
    common_modulus(d_in.modulus(), d_out.modulus());
    if (d_out.cols() != d_in.rows())
        throw ShapeMismatch("d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                            std::to_string(d_out.cols()) + " columns");
    if (!(d_out * d_in).is_zero())
        throw NotAComplex("d_out * d_in is nonzero");
    return (d_out.cols() - rank(d_out)) - rank(d_in);
}

} // namespace dmeq
