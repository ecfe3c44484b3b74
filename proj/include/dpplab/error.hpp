#pragma once

#include <stdexcept>
#include <string>

namespace dpplab {

// Bad input: out-of-range parameters, malformed configs, violated preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that was set up correctly but failed numerically
// (non-finite entries, eigensolver non-convergence, lost branch).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

}  // namespace dpplab
