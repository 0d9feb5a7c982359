#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace byteaxis {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed address, prefix, or record text.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, std::string token)
        : Error(what), token_(std::move(token))
    {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

/// An address that does not belong to the OUI or prefix it was placed in.
class ContainmentError : public Error
{
public:
    using Error::Error;
};

/// Unsupported parameters (prefix lengths, render settings, color modes).
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// A dataset line that failed to parse. `line()` is 1-based.
class LineError : public Error
{
public:
    LineError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what)
    {}

    std::size_t line() const noexcept { return line_; }
    /// The message without the line prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

} // namespace byteaxis
