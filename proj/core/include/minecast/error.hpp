#pragma once

#include <fmt/format.h>

#include <stdexcept>
#include <string>

namespace minecast {

/// Base class for every failure raised by the library. The exit code is what
/// the command-line tool returns when the error escapes to the top level.
class Error : public std::runtime_error
{
public:
    Error(int exitCode, const std::string& message)
    : std::runtime_error(message)
    , _exitCode(exitCode)
    {
    }

    int exit_code() const noexcept
    {
        return _exitCode;
    }

private:
    int _exitCode;
};

/// Invalid parameter values or a malformed configuration file.
class ConfigError : public Error
{
public:
    template <typename... Args>
    ConfigError(fmt::format_string<Args...> f, Args&&... args)
    : Error(1, fmt::format(f, std::forward<Args>(args)...))
    {
    }
};

/// Unreadable or inconsistent input data (CSV tables, unknown regions, ...).
class DatasetError : public Error
{
public:
    template <typename... Args>
    DatasetError(fmt::format_string<Args...> f, Args&&... args)
    : Error(2, fmt::format(f, std::forward<Args>(args)...))
    {
    }
};

/// A computation that has no defined result for the given inputs.
class NumericError : public Error
{
public:
    template <typename... Args>
    NumericError(fmt::format_string<Args...> f, Args&&... args)
    : Error(3, fmt::format(f, std::forward<Args>(args)...))
    {
    }
};

}
