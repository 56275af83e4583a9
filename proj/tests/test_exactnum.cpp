#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"
#include "oracle.hpp"

#include <doctest.h>

using nulo::Integer;
using nulo::Rational;

TEST_CASE("binomial examples")
{
    CHECK(nulo::binomial(4, 2) == 6);
    CHECK(nulo::binomial(5, -1) == 0);
    CHECK(nulo::binomial(5, 6) == 0);
    // frozen from oracle::pascal_row(30)[15]
    CHECK(nulo::binomial(30, 15) == 155117520);
    CHECK(oracle::pascal_row(30)[15] == 155117520);
}

TEST_CASE("binomial matches the Pascal recurrence up to n = 100")
{
    for (unsigned n = 0; n <= 100; ++n) {
        const auto row = oracle::pascal_row(n);
        for (unsigned m = 0; m <= n; ++m) {
            REQUIRE(nulo::binomial(n, m) == row[m]);
        }
    }
}

TEST_CASE("delta is the parity offset")
{
    CHECK(nulo::delta(3, 1).value() == 0);
    CHECK(nulo::delta(3, 2).value() == 1);
    CHECK(nulo::delta(4, 0).value() == 0);
    for (std::uint64_t n = 1; n <= 20; ++n) {
        for (long k = 0; k <= 25; ++k) {
            const int d = nulo::delta(n, k).value();
            CHECK((n + static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(d)) % 2 == 0);
        }
    }
}

TEST_CASE("rademacher_atom examples")
{
    CHECK(nulo::rademacher_atom(2, 0) == Rational(1, 2));
    CHECK(nulo::rademacher_atom(3, 1) == Rational(3, 8));
    CHECK(nulo::rademacher_atom(2, 1) == 0);
    CHECK(nulo::rademacher_atom(3, -3) == Rational(1, 8));
    CHECK(nulo::rademacher_atom(3, 5) == 0);
}

TEST_CASE("rademacher_atom matches sign-pattern enumeration for n <= 20")
{
    for (unsigned n = 1; n <= 20; ++n) {
        for (long m = -static_cast<long>(n) - 2; m <= static_cast<long>(n) + 2; ++m) {
            REQUIRE(nulo::rademacher_atom(n, m) == oracle::over_two_pow(oracle::rademacher_count(n, m), n));
        }
    }
}

TEST_CASE("rademacher_atom matches the Pascal row for 20 < n <= 100 and is normalized")
{
    for (unsigned n = 1; n <= 100; ++n) {
        const auto row = oracle::pascal_row(n);
        Rational total = 0;
        for (long m = -static_cast<long>(n); m <= static_cast<long>(n); ++m) {
            const Rational p = nulo::rademacher_atom(n, m);
            if ((m + static_cast<long>(n)) % 2 == 0) {
                const auto plus = static_cast<std::size_t>((m + static_cast<long>(n)) / 2);
                REQUIRE(p == Rational(row[plus]) * nulo::power_of_two(-static_cast<long>(n)));
            } else {
                REQUIRE(p == 0);
            }
            total += p;
        }
        REQUIRE(total == 1);
    }
}

TEST_CASE("lo_bound examples")
{
    CHECK(nulo::lo_bound(4, 0) == Rational(3, 8));
    CHECK(nulo::lo_bound(3, 1) == Rational(3, 8));
    CHECK(nulo::lo_bound(5, 5) == Rational(1, 32));
    CHECK(nulo::lo_bound(5, 6) == 0);
    CHECK(nulo::lo_bound(2, 2) == Rational(1, 4));
    CHECK(nulo::lo_bound(4, 2) == Rational(1, 4));
    CHECK_THROWS_AS((void)nulo::lo_bound(4, -1), nulo::InvalidInput);
}

TEST_CASE("lo_bound identities")
{
    for (std::uint64_t n = 1; n <= 100; ++n) {
        CHECK(nulo::lo_bound(n, 0) == nulo::erdos_bound(n));
        Rational previous = 2;
        for (long k = 0; k <= static_cast<long>(n) + 1; ++k) {
            const Rational b = nulo::lo_bound(n, k);
            REQUIRE(b == nulo::rademacher_atom(n, k + nulo::delta(n, k).value()));
            if (k <= static_cast<long>(n)) {
                REQUIRE(b > 0);
                REQUIRE(b <= previous);
                previous = b;
            } else {
                REQUIRE(b == 0);
            }
        }
    }
}

TEST_CASE("ceil_sqrt and floor_sqrt")
{
    CHECK(nulo::ceil_sqrt(2) == 2);
    CHECK(nulo::ceil_sqrt(Rational(9, 4)) == 2);
    CHECK(nulo::ceil_sqrt(25) == 5);
    CHECK(nulo::ceil_sqrt(0) == 0);
    CHECK(nulo::ceil_sqrt(Rational(1, 100)) == 1);
    CHECK(nulo::floor_sqrt(Rational(9, 4)) == 1);
    CHECK_THROWS_AS((void)nulo::ceil_sqrt(-1), nulo::InvalidInput);

    // defining property t^2 * den >= num > (t - 1)^2 * den
    for (long num = 0; num <= 400; ++num) {
        for (long den = 1; den <= 12; ++den) {
            const Rational q{Integer(num), Integer(den)};
            const Integer t = nulo::ceil_sqrt(q);
            CHECK(t * t * q.denominator() >= q.numerator());
            if (t > 0) {
                CHECK((t - 1) * (t - 1) * q.denominator() < q.numerator());
            }
        }
    }
}
