#include <multiroot/real.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <string>

#include <multiroot/error.hpp>

namespace multiroot
{

namespace
{

thread_local long tls_precision = 53;

constexpr long min_precision = 53;

mpfr_prec_t current() noexcept
{
    return static_cast<mpfr_prec_t>(tls_precision);
}

template <typename Fn>
Real unary(const Real &x, Fn fn)
{
    Real r;
    fn(r.get(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace

long working_precision() noexcept
{
    return tls_precision;
}

PrecisionScope::PrecisionScope(long bits) : previous_(tls_precision)
{
    if (bits < min_precision || bits > static_cast<long>(MPFR_PREC_MAX)) {
        throw Error(ErrorKind::invalid_input,
                    "precision_bits must be at least " + std::to_string(min_precision) + ", got "
                        + std::to_string(bits));
    }
    tls_precision = bits;
}

PrecisionScope::~PrecisionScope()
{
    tls_precision = previous_;
}

Real::Real()
{
    mpfr_init2(value_, current());
    mpfr_set_zero(value_, 1);
}

Real::Real(int value) : Real(static_cast<long>(value)) {}

Real::Real(long value)
{
    mpfr_init2(value_, current());
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(unsigned long value)
{
    mpfr_init2(value_, current());
    mpfr_set_ui(value_, value, MPFR_RNDN);
}

Real::Real(double value)
{
    mpfr_init2(value_, current());
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(std::string_view literal)
{
    mpfr_init2(value_, current());
    const std::string text(literal);
    if (text.empty() || mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(value_);
        throw Error(ErrorKind::invalid_input, "malformed real literal '" + text + "'");
    }
}

Real::Real(const Real &other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real &&other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real &Real::operator=(const Real &other)
{
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real()
{
    mpfr_clear(value_);
}

long Real::precision() const noexcept
{
    return static_cast<long>(mpfr_get_prec(value_));
}

double Real::to_double() const noexcept
{
    return mpfr_get_d(value_, MPFR_RNDN);
}

long Real::to_long() const noexcept
{
    return mpfr_get_si(value_, MPFR_RNDN);
}

long Real::exponent() const noexcept
{
    if (!mpfr_regular_p(value_)) {
        return 0;
    }
    return static_cast<long>(mpfr_get_exp(value_));
}

std::string Real::to_string(std::size_t significant_digits) const
{
    if (is_nan()) {
        return "nan";
    }
    if (mpfr_inf_p(value_) != 0) {
        return sign() < 0 ? "-inf" : "inf";
    }
    const int decimals = significant_digits > 1 ? static_cast<int>(significant_digits - 1) : 0;
    char *raw = nullptr;
    if (mpfr_asprintf(&raw, "%.*Re", decimals, value_) < 0 || raw == nullptr) {
        throw Error(ErrorKind::nonfinite, "failed to format real value");
    }
    std::unique_ptr<char, void (*)(char *)> owned(raw, [](char *p) { mpfr_free_str(p); });
    return std::string(owned.get());
}

std::string Real::to_string() const
{
    return to_string(decimal_digits_for(precision()));
}

Real &Real::operator+=(const Real &rhs)
{
    *this = *this + rhs;
    return *this;
}

Real &Real::operator-=(const Real &rhs)
{
    *this = *this - rhs;
    return *this;
}

Real &Real::operator*=(const Real &rhs)
{
    *this = *this * rhs;
    return *this;
}

Real &Real::operator/=(const Real &rhs)
{
    *this = *this / rhs;
    return *this;
}

Real operator-(const Real &x)
{
    return unary(x, mpfr_neg);
}

Real operator+(const Real &a, const Real &b)
{
    Real r;
    mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

Real operator-(const Real &a, const Real &b)
{
    Real r;
    mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

Real operator*(const Real &a, const Real &b)
{
    Real r;
    mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

Real operator/(const Real &a, const Real &b)
{
    Real r;
    mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

bool operator==(const Real &a, const Real &b) noexcept
{
    return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const Real &a, const Real &b) noexcept
{
    if (mpfr_unordered_p(a.value_, b.value_) != 0) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) {
        return std::partial_ordering::less;
    }
    return c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::ostream &operator<<(std::ostream &os, const Real &x)
{
    const auto digits = os.precision() > 0 ? static_cast<std::size_t>(os.precision()) : 6;
    return os << x.to_string(digits);
}

Real rounded(const Real &x)
{
    Real r;
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real abs(const Real &x)
{
    return unary(x, mpfr_abs);
}

Real sqrt(const Real &x)
{
    return unary(x, mpfr_sqrt);
}

Real exp(const Real &x)
{
    return unary(x, mpfr_exp);
}

Real log(const Real &x)
{
    return unary(x, mpfr_log);
}

Real sin(const Real &x)
{
    return unary(x, mpfr_sin);
}

Real cos(const Real &x)
{
    return unary(x, mpfr_cos);
}

Real cot(const Real &x)
{
    return unary(x, mpfr_cot);
}

Real sinh(const Real &x)
{
    return unary(x, mpfr_sinh);
}

Real cosh(const Real &x)
{
    return unary(x, mpfr_cosh);
}

Real coth(const Real &x)
{
    return unary(x, mpfr_coth);
}

Real pow(const Real &x, long n)
{
    Real r;
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real pow(const Real &x, const Real &y)
{
    Real r;
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real &x, long e)
{
    Real r;
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Real min(const Real &a, const Real &b)
{
    return b < a ? b : a;
}

Real max(const Real &a, const Real &b)
{
    return a < b ? b : a;
}

Real pi()
{
    Real r;
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real pow2(long e)
{
    Real r(1);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real unit_roundoff()
{
    return pow2(-working_precision());
}

Real ulp(const Real &x)
{
    if (!mpfr_regular_p(x.get())) {
        return unit_roundoff();
    }
    return pow2(x.exponent() - working_precision());
}

std::size_t decimal_digits_for(long precision_bits) noexcept
{
    return static_cast<std::size_t>(std::ceil(static_cast<double>(precision_bits) * 0.302)) + 3;
}

} // namespace multiroot
