#pragma once

#include <stdexcept>
#include <string>

namespace ldpcstab {

// Bad parameters or malformed input. Maps to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computational cap was hit (enumeration size, cycle-space dimension...). Exit code 3.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

}  // namespace ldpcstab
