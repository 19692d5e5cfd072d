#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line), detail_(what) {}

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

/// Well-formed input that violates a declared invariant (typing, duplicates, totality of maps ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two values built over different signatures were combined.
class SignatureMismatch : public Error {
public:
    using Error::Error;
};

/// An element that does not belong to the structure it was handed to.
class ForeignElement : public Error {
public:
    using Error::Error;
};

/// Refusal to build something larger than the configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::uint64_t count, bool saturated = false)
        : Error(what), count_(count), saturated_(saturated) {}

    /// Computed size; meaningless when `saturated()`.
    [[nodiscard]] std::uint64_t count() const { return count_; }
    /// True when the size did not fit in 64 bits.
    [[nodiscard]] bool saturated() const { return saturated_; }

private:
    std::uint64_t count_;
    bool saturated_;
};

/// A post-condition the library verifies at construction failed. Indicates a bug or
/// inconsistent inputs; the message carries the witness.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace lot
