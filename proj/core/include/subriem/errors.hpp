#pragma once

#include <stdexcept>
#include <string>

namespace subriem {

/// Base class of every error raised by the library. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not describe a well-formed object (bad dimensions, bad JSON shape).
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Valid input that the implementation deliberately does not handle.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// A size cap was exceeded.
class SizeError : public Error {
public:
    using Error::Error;
};

/// An internal self-check failed (e.g. an assembled operator is not Hermitian).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A spectrum table is not complete enough for the requested evaluation.
class CutoffError : public Error {
public:
    using Error::Error;
};

} // namespace subriem
