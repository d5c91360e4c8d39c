#pragma once

#include <stdexcept>
#include <string>

namespace berge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed text in one of the file formats; `line` is 1-based (0 if unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// DK_n has no Hamilton decomposition for n in {4, 6}.
class ImpossibleByTillson : public Error {
public:
    explicit ImpossibleByTillson(int n)
        : Error("DK_" + std::to_string(n) + " has no Hamilton decomposition (n = 4 or 6)"), n_(n) {}
    int n() const noexcept { return n_; }

private:
    int n_;
};

/// The randomized DK_n search ran out of restarts.
class SearchExhausted : public Error {
public:
    using Error::Error;
};

/// Internal invariant broken; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace berge
