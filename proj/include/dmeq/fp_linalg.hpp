#pragma once

// Dense linear algebra over a prime field F_p.
//
// Every scalar carries its modulus. Operations that combine scalars or
// matrices check that the moduli agree and throw ModulusMismatch otherwise,
// so sweeps over several primes cannot silently mix fields.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "dmeq/errors.hpp"

namespace dmeq {

class FpScalar {
public:
    FpScalar() = default;
    /// Reduces `value` into [0, p). `p` must be prime.
    FpScalar(long long value, std::uint32_t p);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return modulus_; }

    bool is_zero() const { return value_ == 0; }
    FpScalar inverse() const;

    friend FpScalar operator+(FpScalar a, FpScalar b);
    friend FpScalar operator-(FpScalar a, FpScalar b);
    friend FpScalar operator*(FpScalar a, FpScalar b);
    friend FpScalar operator-(FpScalar a);
    friend bool operator==(FpScalar a, FpScalar b);

private:
    // modulus 0 marks a default-constructed scalar; it compares unequal to every field.
    std::uint32_t value_ = 0;
    std::uint32_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, FpScalar s);

using FpVector = std::vector<FpScalar>;

class FpMatrix {
public:
    FpMatrix() = default;
    /// Zero matrix.
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);
    /// Row-major integer entries, reduced mod p.
    FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p, std::span<const long long> entries);
    /// Nested rows; every row must have the same length.
    FpMatrix(std::initializer_list<std::initializer_list<long long>> rows, std::uint32_t p);

    static FpMatrix identity(std::size_t n, std::uint32_t p);
    /// Matrix of the permutation sending basis vector j to basis vector perm[j].
    static FpMatrix permutation(std::span<const std::size_t> perm, std::uint32_t p);
    static FpMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols, std::uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return modulus_; }

    const FpScalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    /// Raw access; lets callers (and tests) build deliberately inconsistent matrices.
    FpScalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { at(r, c) = FpScalar(v, modulus_); }

    bool is_zero() const;

    FpMatrix transpose() const;
    FpVector apply(const FpVector& v) const;

    /// Stacks `blocks` along the diagonal.
    static FpMatrix direct_sum(std::span<const FpMatrix> blocks, std::uint32_t p);

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix& a, const FpMatrix& b);

    FpMatrix power(unsigned k) const;

    /// Throws ModulusMismatch if any entry carries a modulus other than modulus().
    void check_moduli() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint32_t modulus_ = 2;
    std::vector<FpScalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

std::size_t rank(const FpMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column of the reduced row
/// echelon form, in increasing free-column order. Each vector has a 1 in its
/// free column.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

/// dim ker(d_out) / im(d_in) for C^{k-1} --d_in--> C^k --d_out--> C^{k+1}.
/// Throws ShapeMismatch when the maps do not compose and NotAComplex when
/// d_out * d_in != 0.
std::size_t cohomology_dim(const FpMatrix& d_in, const FpMatrix& d_out);

} // namespace dmeq
