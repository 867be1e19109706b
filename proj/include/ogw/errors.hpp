#pragma once

// Exception taxonomy shared by the whole engine.  The command-line driver
// maps these onto distinct process exit codes, so every throw site has to
// pick the category deliberately:
//
//   ConfigError       -> exit 2: malformed scenario input, inconsistent model
//                        data, bad literals, unknown identifiers.
//   TruncationError   -> exit 3: a coefficient beyond a series' trusted
//                        cutoff was requested; the value is not computable
//                        from the stored data.
//   VerificationError -> exit 1: a mathematical check failed (verifier
//                        violation, obstructed solve, failed certificate).
//   InternalFault     -> exit 1: a proven invariant failed at runtime;
//                        indicates a corrupt store or a bug, never bad user
//                        input.

#include <stdexcept>
#include <string>

namespace ogw {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalFault : std::logic_error {
    using std::logic_error::logic_error;
};

// Internal-consistency assertion used where a mathematical lemma guarantees
// a condition; failure means the data violates its certified properties.
inline void internal_check(bool condition, const std::string& what) {
    if (!condition) throw InternalFault(what);
}

}  // namespace ogw
