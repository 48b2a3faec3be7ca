#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ucf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed family text. Carries the 1-based line that triggered it (0 when
/// the problem is not tied to a line, e.g. an empty input).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A SetFamily was constructed with out-of-range or duplicate members.
class InvalidFamily : public Error {
public:
    using Error::Error;
};

/// T(F) requested for a family with no nonempty member.
class NoNonemptyMember : public Error {
public:
    using Error::Error;
};

/// Conjecture predicate applied to F = {} or F = {{}}.
class DegenerateFamily : public Error {
public:
    using Error::Error;
};

/// S-Frankl evaluated where it is not stated (T(F) = 1).
class NotApplicable : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// Shape classification requested outside n = 6, T(F) = 3, {}, M_6 in F.
class NotInScope : public Error {
public:
    using Error::Error;
};

class WitnessUnavailable : public Error {
public:
    using Error::Error;
};

/// A search or oracle configuration outside the supported envelope.
class InfeasibleScale : public Error {
public:
    using Error::Error;
};

} // namespace ucf
