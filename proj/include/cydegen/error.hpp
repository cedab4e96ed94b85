#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cydegen {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed text, out-of-range arguments, schema violations.
class InputError : public Error {
public:
    using Error::Error;
};

class RingMismatch : public Error {
public:
    RingMismatch() : Error("operands live in different rings") {}
};

class NotDivisible : public Error {
public:
    using Error::Error;
};

/// Parse failure with the byte offset into the input text.
class SyntaxError : public InputError {
public:
    SyntaxError(std::string what, std::size_t offset)
        : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// The Nakayama stabilization did not occur below the degree cap.
class CapExceeded : public Error {
public:
    CapExceeded(int cap)
        : Error("Jacobian quotient did not stabilize below degree " + std::to_string(cap) +
                " (singularity is probably not isolated)"),
          cap_(cap) {}

    int cap() const noexcept { return cap_; }

private:
    int cap_;
};

class InvalidModel : public InputError {
public:
    explicit InvalidModel(std::vector<std::string> violations)
        : InputError(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid NCD model:";
        for (const auto& s : v) out += " [" + s + "]";
        return out;
    }
    std::vector<std::string> violations_;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class DegenerateDesign : public Error {
public:
    using Error::Error;
};

}  // namespace cydegen
