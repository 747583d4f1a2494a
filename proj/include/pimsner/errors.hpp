#pragma once

#include <stdexcept>
#include <string>

namespace pimsner {

// Malformed or inconsistent input data: bad block dimensions, row-fit
// violations, ownership mismatches, violated operation preconditions.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A hard resource guard was hit (ideal enumeration, Fock dimension caps).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An always-on mathematical cross-check failed.  This signals a modeling
// bug, never bad user data.
class verification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical breakdown (e.g. a Gram matrix with a genuinely negative
// eigenvalue) that invalidates the computation.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pimsner
