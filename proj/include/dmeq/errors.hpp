#pragma once

#include <stdexcept>
#include <string>

namespace dmeq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands carry different primes.
class ModulusMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix shapes do not compose.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// A pair of maps handed in as consecutive differentials does not square to zero.
class NotAComplex : public Error {
public:
    using Error::Error;
};

/// A value that must be prime (or otherwise in range) is not.
class InvalidPrime : public Error {
public:
    using Error::Error;
};

class MalformedMonomial : public Error {
public:
    using Error::Error;
};

/// A structural guarantee was violated; indicates a bug rather than bad input.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class InvalidRepresentation : public Error {
public:
    using Error::Error;
};

class InvalidComplex : public Error {
public:
    using Error::Error;
};

class InvalidMap : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Input exceeds the size the exhaustive searches are allowed to attempt.
class ResourceGuard : public Error {
public:
    using Error::Error;
};

/// A self-check performed while producing a certified result failed.
class CertificateError : public Error {
public:
    using Error::Error;
};

bool is_prime(long long n);

/// Throws InvalidPrime with a message naming the constraint.
void require_prime(long long p);

} // namespace dmeq
