#pragma once

#include <stdexcept>
#include <string>

namespace microrib {

/// Broad class of a failure, mapped to process exit codes by the CLI.
enum class ErrorKind { Input, Solver };

/// Library error carrying a stable machine-readable code such as "singular_mu".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& detail = {})
        : std::runtime_error(detail.empty() ? code : code + ": " + detail),
          kind_(kind), code_(std::move(code))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

inline Error input_error(std::string code, const std::string& detail = {})
{
    return Error(ErrorKind::Input, std::move(code), detail);
}

inline Error solver_error(std::string code, const std::string& detail = {})
{
    return Error(ErrorKind::Solver, std::move(code), detail);
}

} // namespace microrib
