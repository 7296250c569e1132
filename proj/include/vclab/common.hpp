#pragma once

#include <stdexcept>
#include <string>

namespace vclab {

// Bad user-supplied parameters (CLI exit code 2).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative method failed to reach its tolerance (CLI exit code 3).
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem / output trouble (CLI exit code 4).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw validation_error(msg);
}

} // namespace vclab
