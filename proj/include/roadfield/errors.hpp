#pragma once

#include <stdexcept>
#include <string>

namespace roadfield {

/// Invalid construction input: bad kernel table, mass mismatch, schema violation.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Query outside the mathematical domain (c <= c_KPP, P(lambda) <= 0, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical failure: non-convergence, bracket blow-up, singular solve.
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace roadfield
