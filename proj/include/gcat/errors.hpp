#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gcat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input to a constructor or an op precondition on raw numbers.
struct DomainError : Error {
    using Error::Error;
};

struct UnknownFamily : Error {
    using Error::Error;
};

struct LightlikePoint : Error {
    using Error::Error;
};

struct ResidualViolation : Error {
    double residual;
    ResidualViolation(const std::string& what, double r) : Error(what), residual(r) {}
};

struct EmptyLimitSet : Error {
    using Error::Error;
};

struct NewtonFailure : Error {
    int iterations;
    double residual;
    NewtonFailure(const std::string& what, int it, double r) : Error(what), iterations(it), residual(r) {}
};

struct InsufficientSamples : Error {
    using Error::Error;
};

struct PreconditionViolation : Error {
    using Error::Error;
};

struct MultipleAccumulationPoints : Error {
    std::vector<double> clusters;
    MultipleAccumulationPoints(const std::string& what, std::vector<double> c)
        : Error(what), clusters(std::move(c)) {}
};

struct UnrecoverableWitness : Error {
    using Error::Error;
};

struct ConfigError : Error {
    std::string field;
    ConfigError(std::string f, const std::string& what) : Error(f + ": " + what), field(std::move(f)) {}
};

}  // namespace gcat
