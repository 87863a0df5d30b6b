#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ncomp {

struct SourceSpan {
    std::string file;
    int line   = 1;
    int column = 1;
};

inline std::string to_string(const SourceSpan& s) {
    return (s.file.empty() ? std::string("<input>") : s.file) + ":" + std::to_string(s.line) + ":" +
           std::to_string(s.column);
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, const std::string& msg)
        : Error(to_string(span) + ": " + msg), span_(std::move(span)), message_(msg) {}
    const SourceSpan&  span() const noexcept { return span_; }
    const std::string& message() const noexcept { return message_; }

private:
    SourceSpan  span_;
    std::string message_;
};

// Recognized clingo construct outside the regular fragment (pools, intervals in heads, ...).
class NonRegularError : public ParseError {
public:
    NonRegularError(SourceSpan span, const std::string& msg) : ParseError(std::move(span), "non-regular construct: " + msg) {}
};

class SortError : public Error {
public:
    explicit SortError(std::string location)
        : Error("ill-sorted formula at " + location), location_(std::move(location)) {}
    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

class UnknownPredicate : public Error {
public:
    using Error::Error;
};
class RenamingDomainMismatch : public Error {
public:
    using Error::Error;
};
class VariableCapture : public Error {
public:
    using Error::Error;
};
class MethodInapplicable : public Error {
public:
    using Error::Error;
};
class AtomOutsideUniverse : public Error {
public:
    using Error::Error;
};
class FreeVariableError : public Error {
public:
    using Error::Error;
};
class NotADefinition : public Error {
public:
    using Error::Error;
};
class UnsupportedShape : public Error {
public:
    using Error::Error;
};
class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};
class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

} // namespace ncomp
