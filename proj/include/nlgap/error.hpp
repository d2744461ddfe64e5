#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlgap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (parity, range, overlap, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Rejection sampling gave up before producing a simple graph.
class SamplingExhausted : public Error {
public:
    explicit SamplingExhausted(std::size_t attempts)
        : Error("no simple graph after " + std::to_string(attempts) + " attempts"),
          attempts_(attempts) {}

    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t attempts_;
};

/// An edge switch that would break simplicity or does not apply.
class SwitchRejected : public Error {
public:
    using Error::Error;
};

/// The operation needs a connected graph or a finite metric.
class Disconnected : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nlgap
