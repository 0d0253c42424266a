#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace volterra {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (length mismatch, missing indices, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Invalid distribution / generator / catalogue parameter.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A recursion produced a non-finite value.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, std::ptrdiff_t index)
        : Error(what + " (first non-finite value at index " + std::to_string(index) + ")"),
          index_(index) {}

    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// The nonlinearity returned a non-finite value for a finite input.
class NonlinearityError : public Error {
public:
    NonlinearityError(const std::string& what, double input)
        : Error(what + " (input " + std::to_string(input) + ")"), input_(input) {}

    double input() const noexcept { return input_; }

private:
    double input_;
};

/// Root finding failed to converge.
class SpectralError : public Error {
public:
    using Error::Error;
};

/// 1 - sum k(l) lambda^(l+1) vanished.
class SingularMultiplierError : public Error {
public:
    using Error::Error;
};

/// Experiment configuration failed validation; carries the offending field path.
class ConfigError : public Error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace volterra
