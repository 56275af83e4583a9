#include "nulo/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nulo {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    std::string_view magnitude = num;
    if (!magnitude.empty() && magnitude.front() == '-') {
        magnitude.remove_prefix(1);
    }
    if (!all_digits(magnitude) || !all_digits(den)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    Integer p(std::string(num), 10);
    Integer q(std::string(den), 10);
    if (q == 0) {
        throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    }
    return Rational(p, q);
}

Integer Rational::floor() const
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

Integer Rational::ceil() const
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), rhs.q_.get_mpq_t());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), rhs.q_.get_mpq_t());
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    mpq_mul(q_.get_mpq_t(), q_.get_mpq_t(), rhs.q_.get_mpq_t());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero()) {
        throw std::domain_error("rational division by zero");
    }
    mpq_div(q_.get_mpq_t(), q_.get_mpq_t(), rhs.q_.get_mpq_t());
    return *this;
}

Rational operator-(const Rational& value)
{
    mpq_class out;
    mpq_neg(out.get_mpq_t(), value.q_.get_mpq_t());
    return Rational(std::move(out));
}

Rational abs(const Rational& value)
{
    return value.sign() < 0 ? -value : value;
}

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
    return os << value.str();
}

std::string to_decimal(const Rational& value, unsigned digits)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    // round(|p| * 10^digits / q), half away from zero
    Integer num = abs(value.numerator()) * scale * 2 + value.denominator();
    Integer den = value.denominator() * 2;
    Integer scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    std::string body = scaled.get_str(10);
    if (body.size() <= digits) {
        body.insert(0, digits + 1 - body.size(), '0');
    }
    std::string out = value.sign() < 0 && scaled != 0 ? "-" : "";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) {
        out += '.';
        out += body.substr(body.size() - digits);
    }
    return out;
}

std::size_t hash_value(const Integer& value)
{
    const mpz_srcptr z = value.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(z->_mp_size);
    const int limbs = z->_mp_size < 0 ? -z->_mp_size : z->_mp_size;
    for (int i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(z->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Integer floor_sqrt(const Integer& value)
{
    if (value < 0) {
        throw std::domain_error("square root of a negative integer");
    }
    Integer out;
    mpz_sqrt(out.get_mpz_t(), value.get_mpz_t());
    return out;
}

Rational power_of_two(long exponent)
{
    Integer p = 1;
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
    return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
}

RVector rvec(std::initializer_list<Rational> coords)
{
    RVector v(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (const auto& c : coords) {
        v(i++) = c;
    }
    return v;
}

std::string format_vector(const RVector& v)
{
    std::ostringstream os;
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << v(i);
    }
    os << ')';
    return os.str();
}

}  // namespace nulo

std::size_t std::hash<nulo::Rational>::operator()(const nulo::Rational& value) const noexcept
{
    const std::size_t h = nulo::hash_value(value.gmp().get_num());
    return h ^ (nulo::hash_value(value.gmp().get_den()) * 0x100000001b3ULL);
}
