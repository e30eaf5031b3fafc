#pragma once

#include <stdexcept>
#include <string>

namespace nowcast {

/// Base class for every failure raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input: files, periods, configuration.
/// The command line maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace nowcast
