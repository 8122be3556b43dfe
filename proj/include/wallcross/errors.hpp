#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wallcross {

enum class ErrorKind { config, consistency, internal };

class Error : public std::runtime_error {
public:
    Error(std::string code, ErrorKind kind, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)), kind_(kind) {}

    const std::string& code() const { return code_; }
    ErrorKind kind() const { return kind_; }

private:
    std::string code_;
    ErrorKind kind_;
};

inline ErrorKind kind_of(std::string_view code) {
    constexpr std::string_view config_codes[] = {
        "IncompleteFan", "NonSmoothCone", "NonPrimitiveRay", "AmbientTooLarge", "Unbalanced",
        "NoMatchingCone", "ConfigError", "ParseError", "NotInSingleCone", "ZeroVector"};
    constexpr std::string_view consistency_codes[] = {"ParallelResidue", "NonPerpendicularLog"};
    for (auto c : config_codes)
        if (c == code) return ErrorKind::config;
    for (auto c : consistency_codes)
        if (c == code) return ErrorKind::consistency;
    return ErrorKind::internal;
}

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, kind_of(code), message);
}

}  // namespace wallcross
