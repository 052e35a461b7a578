#ifndef MULTIROOT_ERROR_HPP
#define MULTIROOT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multiroot
{

enum class ErrorKind {
    invalid_input,
    invalid_configuration,
    overflow,
    collision,
    degenerate_denominator,
    degenerate_derivative,
    nonfinite,
    insufficient_data,
};

[[nodiscard]] const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Two approximations closer than the collision threshold.
class CollisionError : public Error
{
public:
    CollisionError(std::size_t i, std::size_t j, const std::string &message)
        : Error(ErrorKind::collision, message), i_(i), j_(j)
    {
    }

    [[nodiscard]] std::size_t first() const noexcept { return i_; }
    [[nodiscard]] std::size_t second() const noexcept { return j_; }

private:
    std::size_t i_;
    std::size_t j_;
};

// The iteration denominator for one root vanished relative to f'.
class DegenerateDenominatorError : public Error
{
public:
    DegenerateDenominatorError(std::size_t root, const std::string &message)
        : Error(ErrorKind::degenerate_denominator, message), root_(root)
    {
    }

    [[nodiscard]] std::size_t root() const noexcept { return root_; }

private:
    std::size_t root_;
};

} // namespace multiroot

#endif
