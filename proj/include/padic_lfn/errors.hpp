#pragma once

#include <stdexcept>
#include <string>

namespace padic_lfn {

enum class error_kind {
    invalid_argument,
    nonconvergent,
    pole,
    capacity,
    out_of_range,
    degenerate_twist,
    locality,
};

inline const char* to_string(error_kind k) {
    switch (k) {
        case error_kind::invalid_argument: return "invalid_argument";
        case error_kind::nonconvergent: return "nonconvergent";
        case error_kind::pole: return "pole";
        case error_kind::capacity: return "capacity";
        case error_kind::out_of_range: return "out_of_range";
        case error_kind::degenerate_twist: return "degenerate_twist";
        case error_kind::locality: return "locality";
    }
    return "unknown";
}

/// A violated mathematical precondition. Carries the name of the offending
/// parameter so front ends can report it.
class math_error : public std::runtime_error {
public:
    math_error(error_kind kind, std::string parameter, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " [" + parameter + "]: " + what),
          kind_(kind),
          parameter_(std::move(parameter)) {}

    error_kind kind() const noexcept { return kind_; }
    const std::string& parameter() const noexcept { return parameter_; }

private:
    error_kind kind_;
    std::string parameter_;
};

}  // namespace padic_lfn
