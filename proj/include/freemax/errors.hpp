#pragma once

#include <stdexcept>
#include <string>

namespace freemax {

/// Parameter outside the admissible range of an operation.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the domain where a quantity is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root bracketing or iteration did not converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace freemax
