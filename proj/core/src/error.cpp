#include <multiroot/error.hpp>

namespace multiroot
{

const char *to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_input:
        return "invalid_input";
    case ErrorKind::invalid_configuration:
        return "invalid_configuration";
    case ErrorKind::overflow:
        return "overflow";
    case ErrorKind::collision:
        return "collision";
    case ErrorKind::degenerate_denominator:
        return "degenerate_denominator";
    case ErrorKind::degenerate_derivative:
        return "degenerate_derivative";
    case ErrorKind::nonfinite:
        return "nonfinite";
    case ErrorKind::insufficient_data:
        return "insufficient_data";
    }
    return "unknown";
}

} // namespace multiroot
