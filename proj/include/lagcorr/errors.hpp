#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lagcorr {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- input errors (CLI exit code 2) ---------------------------------------

class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : InputError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

class OrderingError : public InputError {
public:
    using InputError::InputError;
};

// ---- statistical errors (CLI exit code 3) ---------------------------------

class StatisticalError : public Error {
public:
    using Error::Error;
};

class EmptyPanelError : public StatisticalError {
public:
    using StatisticalError::StatisticalError;
};

class DegenerateSeriesError : public StatisticalError {
public:
    using StatisticalError::StatisticalError;
};

class InsufficientDataError : public StatisticalError {
public:
    using StatisticalError::StatisticalError;
};

class UnderdeterminedFitError : public StatisticalError {
public:
    using StatisticalError::StatisticalError;
};

}  // namespace lagcorr
