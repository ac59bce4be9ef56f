#pragma once

#include <stdexcept>
#include <string>

namespace thrifty {

/* Input violates a documented precondition (bad dimensions, asymmetric
 * matrix, non-identity decomposition sum, ...). */
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/* Caller asked for something outside the supported parameter range. */
class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

/* An iterative solver hit its step cap before reaching tolerance. */
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/* A finite algorithm finished but its certified output check failed. */
class AlgorithmFailure : public std::runtime_error {
public:
    AlgorithmFailure(const std::string& what, double achieved)
        : std::runtime_error(what), achieved(achieved) {}
    double achieved;
};

/* Problem size exceeds a configured cap. */
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/* A verification step could not certify its claim (e.g. gauge LP
 * infeasible because the origin is not interior). */
class CertificationError : public std::runtime_error {
public:
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace thrifty
