#pragma once

#include <stdexcept>

namespace dcpso {

/// Invalid configuration or arguments supplied by the caller.
/// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem or serialization failure. The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant — always a bug, never user input.
/// The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dcpso
