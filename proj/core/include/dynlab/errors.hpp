#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A distance matrix that is not a metric. `a`, `b`, `c` name the offending
/// points; for triangle violations d(a,b) > d(a,c) + d(c,b).
class MetricViolation : public Error {
public:
    MetricViolation(std::string what, std::size_t a, std::size_t b, std::size_t c)
        : Error(std::move(what)), a(a), b(b), c(c) {}
    std::size_t a, b, c;
};

class NotABijection : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class EmptyShift : public Error {
public:
    using Error::Error;
};

class HorizonExceeded : public Error {
public:
    using Error::Error;
};

/// The candidate-subset exploration hit its state cap.
class StateExplosion : public Error {
public:
    StateExplosion(std::string what, std::size_t explored, std::size_t frontier)
        : Error(std::move(what)), explored(explored), frontier(frontier) {}
    std::size_t explored;
    std::size_t frontier;
};

class NotDecaying : public Error {
public:
    using Error::Error;
};

/// A blocked chain whose continuity or telescoping bound does not stay below delta.
class ModulusViolation : public Error {
public:
    ModulusViolation(std::string what, std::size_t block)
        : Error(std::move(what)), block(block) {}
    std::size_t block;
};

class NotCoprime : public Error {
public:
    using Error::Error;
};

class NotEnoughOrbits : public Error {
public:
    using Error::Error;
};

}  // namespace dynlab
