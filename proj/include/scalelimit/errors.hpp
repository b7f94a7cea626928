#pragma once

#include <stdexcept>
#include <string>

namespace scalelimit {

// Malformed input: bad syntax, wrong arity, violated preconditions on user data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure with a byte offset into the source text (0-based).
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// A computation that is well posed but cannot be carried out
// (divergent limit, irrational root, insufficient truncation order, ...).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A verification suite produced a mismatch.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace scalelimit
