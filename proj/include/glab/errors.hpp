#pragma once

#include <stdexcept>
#include <string>

namespace glab {

/// Parameter outside the admissible range of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure (root solve, quadrature, extrapolation) failed to
/// reach its target accuracy or found no solution where one was expected.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a data file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace glab
