#pragma once

#include <stdexcept>
#include <string>

namespace bellvol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (bad index, correlation outside [-1, 1], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnboundedPolytope : public Error {
public:
    using Error::Error;
};

class DegeneratePolytope : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class TargetUnreachable : public Error {
public:
    using Error::Error;
};

}  // namespace bellvol
