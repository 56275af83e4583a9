#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nulo {

/// Arbitrary-precision signed integer.
using Integer = mpz_class;

/**
 * Exact fraction of arbitrary-precision integers.
 *
 * Always held in canonical form: positive denominator, numerator and
 * denominator coprime, zero stored as 0/1. Equality is therefore structural.
 * The class wraps GMP's mpq_t but never hands out expression templates, so it
 * can be used as a plain Eigen scalar.
 */
class Rational {
public:
    Rational() = default;

    template <std::integral T>
    Rational(T value) : q_(to_integer(value)) {}  // NOLINT(google-explicit-constructor)

    Rational(const Integer& value) : q_(value) {}  // NOLINT(google-explicit-constructor)

    /// Throws std::domain_error when `den` is zero.
    Rational(const Integer& num, const Integer& den);

    /// Parses "p/q" or "p" (base 10, optional leading minus on p).
    /// Throws std::invalid_argument on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

    [[nodiscard]] Integer numerator() const { return q_.get_num(); }
    [[nodiscard]] Integer denominator() const { return q_.get_den(); }

    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }

    /// Canonical "p/q", or "p" when q = 1.
    [[nodiscard]] std::string str() const { return q_.get_str(10); }

    /// Nearest double; only for display and float-mode paths.
    [[nodiscard]] double to_double() const { return q_.get_d(); }

    [[nodiscard]] Integer floor() const;
    [[nodiscard]] Integer ceil() const;

    [[nodiscard]] const mpq_class& gmp() const { return q_; }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& value);

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return cmp(lhs.q_, rhs.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        const int c = cmp(lhs.q_, rhs.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    template <std::integral T>
    static Integer to_integer(T value)
    {
        if constexpr (std::is_signed_v<T>) {
            return Integer(static_cast<long>(value));
        } else {
            return Integer(static_cast<unsigned long>(value));
        }
    }

    explicit Rational(mpq_class q) : q_(std::move(q)) {}

    mpq_class q_;
};

[[nodiscard]] Rational abs(const Rational& value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
[[nodiscard]] std::string to_decimal(const Rational& value, unsigned digits);

[[nodiscard]] std::size_t hash_value(const Integer& value);

/// Largest t >= 0 with t*t <= value; value must be nonnegative.
[[nodiscard]] Integer floor_sqrt(const Integer& value);

/// 2^exponent as an exact rational (exponent may be negative).
[[nodiscard]] Rational power_of_two(long exponent);

}  // namespace nulo

namespace Eigen {

template <>
struct NumTraits<nulo::Rational> : GenericNumTraits<nulo::Rational> {
    using Real = nulo::Rational;
    using NonInteger = nulo::Rational;
    using Nested = nulo::Rational;
    using Literal = nulo::Rational;

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace nulo {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = VectorX<Rational>;
using RMatrix = MatrixX<Rational>;

/// Lexicographic three-way comparison of equal-length vectors.
template <typename Derived>
std::strong_ordering lex_compare(const Eigen::MatrixBase<Derived>& lhs, const Eigen::MatrixBase<Derived>& rhs)
{
    for (Eigen::Index i = 0; i < lhs.size() && i < rhs.size(); ++i) {
        if (auto c = lhs(i) <=> rhs(i); c != 0) {
            return c;
        }
    }
    return lhs.size() <=> rhs.size();
}

[[nodiscard]] inline bool is_zero_vector(const RVector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!v(i).is_zero()) {
            return false;
        }
    }
    return true;
}

/// Builds an RVector from a brace list, e.g. `rvec({1, Rational(1, 2)})`.
RVector rvec(std::initializer_list<Rational> coords);

/// "(a, b, ...)" with canonical rational coordinates.
std::string format_vector(const RVector& v);

}  // namespace nulo

template <>
struct std::hash<nulo::Rational> {
    std::size_t operator()(const nulo::Rational& value) const noexcept;
};
