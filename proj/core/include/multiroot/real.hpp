#ifndef MULTIROOT_REAL_HPP
#define MULTIROOT_REAL_HPP

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace multiroot
{

// Binary precision used for every newly produced Real on the calling thread.
// Defaults to 53 bits (IEEE double significand).
[[nodiscard]] long working_precision() noexcept;

// Sets the working precision of the current thread for the lifetime of the
// scope and restores the previous one on exit. Precision must be >= 53.
class PrecisionScope
{
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    long previous_;
};

// Real number at configurable binary precision, backed by MPFR.
//
// Results of arithmetic are rounded to nearest at the working precision of
// the calling thread. Copies keep the precision of their source.
class Real
{
public:
    Real();
    Real(int value);
    Real(long value);
    Real(unsigned long value);
    explicit Real(double value);
    // Parses a decimal (or "inf"/"nan") literal; throws Error on malformed input.
    explicit Real(std::string_view literal);

    Real(const Real &other);
    Real(Real &&other) noexcept;
    Real &operator=(const Real &other);
    Real &operator=(Real &&other) noexcept;
    ~Real();

    [[nodiscard]] long precision() const noexcept;
    [[nodiscard]] double to_double() const noexcept;
    [[nodiscard]] long to_long() const noexcept;

    // Scientific notation with the given number of significant digits.
    [[nodiscard]] std::string to_string(std::size_t significant_digits) const;
    // Enough digits to round-trip at this value's precision.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    [[nodiscard]] bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
    [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] int sign() const noexcept { return mpfr_sgn(value_); }
    // Binary exponent e such that the value lies in [2^(e-1), 2^e).
    [[nodiscard]] long exponent() const noexcept;

    Real &operator+=(const Real &rhs);
    Real &operator-=(const Real &rhs);
    Real &operator*=(const Real &rhs);
    Real &operator/=(const Real &rhs);

    friend Real operator-(const Real &x);
    friend Real operator+(const Real &a, const Real &b);
    friend Real operator-(const Real &a, const Real &b);
    friend Real operator*(const Real &a, const Real &b);
    friend Real operator/(const Real &a, const Real &b);

    friend bool operator==(const Real &a, const Real &b) noexcept;
    friend std::partial_ordering operator<=>(const Real &a, const Real &b) noexcept;

    [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }
    [[nodiscard]] mpfr_ptr get() noexcept { return value_; }

private:
    mpfr_t value_;
};

std::ostream &operator<<(std::ostream &os, const Real &x);

[[nodiscard]] Real abs(const Real &x);
[[nodiscard]] Real sqrt(const Real &x);
[[nodiscard]] Real exp(const Real &x);
[[nodiscard]] Real log(const Real &x);
[[nodiscard]] Real sin(const Real &x);
[[nodiscard]] Real cos(const Real &x);
[[nodiscard]] Real cot(const Real &x);
[[nodiscard]] Real sinh(const Real &x);
[[nodiscard]] Real cosh(const Real &x);
[[nodiscard]] Real coth(const Real &x);
[[nodiscard]] Real pow(const Real &x, long n);
[[nodiscard]] Real pow(const Real &x, const Real &y);
// x * 2^e, exact.
[[nodiscard]] Real ldexp(const Real &x, long e);
[[nodiscard]] Real min(const Real &a, const Real &b);
[[nodiscard]] Real max(const Real &a, const Real &b);
[[nodiscard]] Real pi();

// x rounded to nearest at the working precision.
[[nodiscard]] Real rounded(const Real &x);
// 2^e at the working precision.
[[nodiscard]] Real pow2(long e);
// Unit roundoff 2^-p of the working precision.
[[nodiscard]] Real unit_roundoff();
// Spacing of precision-p numbers at the magnitude of x; 2^-p for x = 0.
[[nodiscard]] Real ulp(const Real &x);

// Significant decimal digits that round-trip a precision-p binary value.
[[nodiscard]] std::size_t decimal_digits_for(long precision_bits) noexcept;

} // namespace multiroot

#endif
