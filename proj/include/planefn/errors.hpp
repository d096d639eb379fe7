#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace planefn {

/// A point or argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
    DomainError(const std::string& what, std::complex<double> where)
        : std::domain_error(what), point_(where), has_point_(true) {}

    bool has_point() const { return has_point_; }
    std::complex<double> point() const { return point_; }

private:
    std::complex<double> point_{};
    bool has_point_ = false;
};

/// Invalid construction parameters (sequence rules, depths, shapes).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A hypothesis required by a test-function construction does not hold.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two query points are not joined by any path inside the set.
class UnreachableError : public std::runtime_error {
public:
    explicit UnreachableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace planefn
