#include "nulo/campaign.hpp"
#include "nulo/concentration.hpp"
#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"
#include "oracle.hpp"

#include <doctest.h>

using nulo::EnumerationMethod;
using nulo::EnumerationOptions;
using nulo::Integer;
using nulo::Rational;
using nulo::RVector;
using nulo::rvec;

namespace {

const EnumerationOptions kNaive{EnumerationMethod::Naive};
const EnumerationOptions kMitm{EnumerationMethod::MeetInTheMiddle};

Rational grid_value(nulo::SplitMix64& rng, std::int64_t g)
{
    return Rational(Integer(rng.uniform(-g, g)), Integer(g));
}

std::vector<RVector> random_family(nulo::SplitMix64& rng, std::size_t n, Eigen::Index d, std::int64_t g)
{
    std::vector<RVector> v;
    while (v.size() < n) {
        RVector u(d);
        for (Eigen::Index c = 0; c < d; ++c) {
            u(c) = grid_value(rng, g);
        }
        v.push_back(u);
    }
    return v;
}

RVector random_sign_sum(nulo::SplitMix64& rng, const std::vector<RVector>& v)
{
    RVector x = RVector::Zero(v.front().size());
    for (const auto& vi : v) {
        x += rng.coin() ? RVector(vi) : RVector(-vi);
    }
    return x;
}

}  // namespace

TEST_CASE("atom_1d examples")
{
    const std::vector<Rational> ones2{1, 1};
    const std::vector<Rational> ones3{1, 1, 1};
    const std::vector<Rational> mixed{Rational(1, 2), Rational(1, 2), 1};
    CHECK(nulo::atom_1d(ones2, 0) == Rational(1, 2));
    CHECK(nulo::atom_1d(ones3, 3) == Rational(1, 8));
    CHECK(nulo::atom_1d(ones3, 2) == 0);
    CHECK(nulo::atom_1d(mixed, 0) == Rational(1, 4));
    // zero coefficients are allowed
    const std::vector<Rational> with_zero{0, 1};
    CHECK(nulo::atom_1d(with_zero, 1) == Rational(1, 2));
    CHECK_THROWS_AS((void)nulo::atom_1d(std::vector<Rational>{}, 0), nulo::InvalidInput);
}

TEST_CASE("atom_nd examples")
{
    const std::vector<RVector> axes{rvec({1, 0}), rvec({0, 1})};
    CHECK(nulo::atom_nd(axes, rvec({1, 1})) == Rational(1, 4));
    CHECK(nulo::atom_nd(axes, rvec({0, 0})) == 0);
    const std::vector<RVector> twice{rvec({1, 0}), rvec({1, 0})};
    CHECK(nulo::atom_nd(twice, rvec({0, 0})) == Rational(1, 2));
    CHECK_THROWS_AS((void)nulo::atom_nd(axes, rvec({1, 1, 1})), nulo::DimensionMismatch);
    const std::vector<RVector> ragged{rvec({1, 0}), rvec({1})};
    CHECK_THROWS_AS((void)nulo::atom_nd(ragged, rvec({1, 1})), nulo::DimensionMismatch);
}

TEST_CASE("max_atom examples")
{
    {
        const std::vector<RVector> v{rvec({1, 0}), rvec({0, 1})};
        const auto m = nulo::max_atom(v);
        CHECK(m.target == rvec({-1, -1}));
        CHECK(m.probability == Rational(1, 4));
    }
    {
        const std::vector<RVector> v{rvec({1, 0}), rvec({1, 0})};
        const auto m = nulo::max_atom(v);
        CHECK(m.target == rvec({0, 0}));
        CHECK(m.probability == Rational(1, 2));
    }
    {
        const std::vector<RVector> v{rvec({1})};
        const auto m = nulo::max_atom(v);
        CHECK(m.target == rvec({-1}));
        CHECK(m.probability == Rational(1, 2));
    }
    const std::vector<Rational> powers{1, 2, 4};
    CHECK(nulo::rho_max_1d(powers) == Rational(1, 8));
}

TEST_CASE("atoms agree with direct summation on both enumeration paths")
{
    nulo::SplitMix64 rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 12));
        const auto d = static_cast<Eigen::Index>(rng.uniform(1, 3));
        const auto v = random_family(rng, n, d, 3);
        const RVector x = rng.coin() ? random_sign_sum(rng, v) : random_family(rng, 1, d, 2).front();
        const Rational expected = oracle::atom(v, x);
        CAPTURE(trial);
        REQUIRE(nulo::atom_nd(v, x, kNaive) == expected);
        REQUIRE(nulo::atom_nd(v, x, kMitm) == expected);
    }
}

TEST_CASE("atom_1d agrees with direct summation")
{
    nulo::SplitMix64 rng(202);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 12));
        std::vector<Rational> a;
        Rational reach = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a.push_back(Rational(Integer(rng.uniform(-6, 6)), Integer(rng.uniform(1, 4))));
            reach += (rng.coin() ? a.back() : -a.back());
        }
        const Rational t = rng.coin() ? reach : Rational(Integer(rng.uniform(-8, 8)), Integer(rng.uniform(1, 4)));
        REQUIRE(nulo::atom_1d(a, t) == oracle::atom_1d(a, t));
        REQUIRE(nulo::atom_1d(a, t, kMitm) == oracle::atom_1d(a, t));
    }
}

TEST_CASE("sum tables match the oracle and are normalised")
{
    nulo::SplitMix64 rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 10));
        const auto d = static_cast<Eigen::Index>(rng.uniform(1, 3));
        const auto v = random_family(rng, n, d, 4);
        const auto table = nulo::sum_table(v);
        const auto expected = oracle::sum_counts(v);
        REQUIRE(table.size() == expected.size());
        REQUIRE(table.total() == Integer(1) << static_cast<unsigned>(n));
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& e = table.entries()[i];
            REQUIRE(expected.at(nulo::format_vector(e.sum)) == e.count);
            if (i > 0) {
                REQUIRE(nulo::lex_compare(table.entries()[i - 1].sum, e.sum) < 0);
            }
        }
    }
}

TEST_CASE("worker count does not change results")
{
    nulo::SplitMix64 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(8, 20));
        const auto v = random_family(rng, n, 2, 3);
        const RVector x = random_sign_sum(rng, v);
        for (auto method : {EnumerationMethod::Naive, EnumerationMethod::MeetInTheMiddle}) {
            const Rational one = nulo::atom_nd(v, x, {method, 1});
            CHECK(nulo::atom_nd(v, x, {method, 4}) == one);
            CHECK(nulo::atom_nd(v, x, {method, 7}) == one);
        }
        const auto a = nulo::sum_table(v, {EnumerationMethod::Automatic, 1});
        const auto b = nulo::sum_table(v, {EnumerationMethod::Automatic, 4});
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.entries()[i].sum == b.entries()[i].sum);
            CHECK(a.entries()[i].count == b.entries()[i].count);
        }
    }
}

TEST_CASE("huge denominators take the arbitrary-precision path")
{
    const Integer big = Integer(1) << 70;
    const Rational tiny(Integer(1), big);
    const Rational other(Integer(3), big + 1);
    const std::vector<RVector> v{rvec({tiny}), rvec({other}), rvec({tiny}), rvec({1})};
    for (const RVector& x : {rvec({1}), rvec({other + 1}), rvec({-1 - other}), rvec({tiny})}) {
        CHECK(nulo::atom_nd(v, x, kNaive) == oracle::atom(v, x));
        CHECK(nulo::atom_nd(v, x, kMitm) == oracle::atom(v, x));
    }
    const auto table = nulo::sum_table(v);
    CHECK(table.total() == 16);
    CHECK(nulo::max_atom(v).probability == Rational(1, 8));
}

TEST_CASE("atoms are symmetric under x -> -x")
{
    nulo::SplitMix64 rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 10));
        const auto v = random_family(rng, n, 2, 3);
        const RVector x = random_sign_sum(rng, v);
        CHECK(nulo::atom_nd(v, x) == nulo::atom_nd(v, RVector(-x)));
    }
}

TEST_CASE("uniform bounds hold on small families")
{
    nulo::SplitMix64 rng(606);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 12));
        const auto d = static_cast<Eigen::Index>(rng.uniform(1, 3));
        auto v = random_family(rng, n, d, 2);
        for (auto& vi : v) {
            if (nulo::is_zero_vector(vi)) {
                vi(0) = 1;
            }
        }
        // nonzero vectors of any norm: the Erdos-Kleitman bound
        CHECK(nulo::max_atom(v).probability <= nulo::erdos_bound(n));
    }
}

TEST_CASE("meet-in-the-middle reaches n = 30")
{
    std::vector<RVector> v;
    for (int i = 0; i < 30; ++i) {
        v.push_back(rvec({1, Rational(i % 3, 2)}));
    }
    // sum of first coordinates is 30 - 2 m for m minus signs; second coordinates
    // only involve the 20 vectors with nonzero entries
    RVector x = rvec({0, 0});
    const Rational p = nulo::atom_nd(v, x, {EnumerationMethod::Automatic, 4});
    CHECK(p > 0);
    CHECK(p <= nulo::erdos_bound(30));

    // one-dimensional case has a closed form
    std::vector<Rational> ones(30, Rational(1));
    CHECK(nulo::atom_1d(ones, 0) == nulo::rademacher_atom(30, 0));
    CHECK(nulo::atom_1d(ones, 4, kMitm) == nulo::rademacher_atom(30, 4));
}

TEST_CASE("capacity limits are enforced")
{
    std::vector<Rational> many(63, Rational(1));
    CHECK_THROWS_AS((void)nulo::atom_1d(many, 1), nulo::CapacityError);
    std::vector<Rational> forty(45, Rational(1));
    CHECK_THROWS_AS((void)nulo::atom_1d(forty, 1), nulo::CapacityError);
    std::vector<Rational> thirty(30, Rational(1));
    CHECK_THROWS_AS((void)nulo::atom_1d(thirty, 0, kNaive), nulo::CapacityError);
    CHECK_THROWS_AS((void)nulo::rho_max_1d(thirty), nulo::CapacityError);
    EnumerationOptions wide;
    wide.mitm_limit = 62;
    CHECK_THROWS_AS((void)nulo::atom_1d(many, 1, wide), nulo::CapacityError);
}
