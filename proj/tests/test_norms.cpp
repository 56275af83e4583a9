#include "nulo/campaign.hpp"
#include "nulo/errors.hpp"
#include "nulo/norms.hpp"

#include <doctest.h>

#include <cmath>

using nulo::NormSpec;
using nulo::NormValue;
using nulo::Rational;
using nulo::RVector;
using nulo::rvec;

namespace {

NormSpec hexagon() { return NormSpec::parse("poly:[1,0;1,1]"); }

RVector random_vector(nulo::SplitMix64& rng, Eigen::Index d, std::int64_t span, std::int64_t max_den)
{
    RVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i) = Rational(nulo::Integer(rng.uniform(-span, span)), nulo::Integer(rng.uniform(1, max_den)));
    }
    return v;
}

}  // namespace

TEST_CASE("NormSpec text form")
{
    for (const char* text : {"l1", "l2", "linf", "lp:3", "lp:3/2", "poly:[1,0;0,1;1,1]", "poly:[1/2,-1;0,2]"}) {
        CAPTURE(text);
        CHECK(NormSpec::parse(text).str() == text);
    }
    CHECK(NormSpec::parse(" poly:[ 1, 0 ; 0 , 1 ] ").str() == "poly:[1,0;0,1]");
    CHECK(NormSpec::parse("poly:[1,0;0,1]").dimension() == 2);
    CHECK_FALSE(NormSpec::parse("l2").dimension().has_value());
    CHECK_FALSE(NormSpec::parse("lp:2").is_exact());
    for (const char* bad : {"l3", "lp:1", "lp:1/2", "lp:x", "poly:", "poly:[1,0;0]", "poly:[]", "poly:[1,x]"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(NormSpec::parse(bad), nulo::InvalidInput);
    }
}

TEST_CASE("facet-form norms must span the space")
{
    CHECK_THROWS_AS(NormSpec::parse("poly:[1,1;2,2]"), nulo::InvalidInput);
    CHECK_THROWS_AS(NormSpec::parse("poly:[1,0,0;0,1,0;1,1,0]"), nulo::InvalidInput);
    CHECK_NOTHROW(NormSpec::parse("poly:[1,1,0;0,1,1;1,0,1]"));

    nulo::RMatrix m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(nulo::exact_rank(m) == 2);
    m(1, 2) = 7;
    CHECK(nulo::exact_rank(m) == 3);
}

TEST_CASE("norm_eval examples")
{
    CHECK(nulo::norm_eval(NormSpec::l1(), rvec({3, -4})) == NormValue::exact(7));
    CHECK(nulo::norm_eval(NormSpec::l2(), rvec({3, 4})) == NormValue::squared(25));
    CHECK(nulo::norm_eval(NormSpec::linf(), rvec({3, -4})) == NormValue::exact(4));
    // max(|<(1,0),x>|, |<(1,1),x>|) = max(2, 1)
    CHECK(nulo::norm_eval(hexagon(), rvec({2, -3})) == NormValue::exact(2));
    CHECK(nulo::norm_eval(NormSpec::lp(3), rvec({1, 1})).to_double() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)nulo::norm_eval(hexagon(), rvec({1, 2, 3})), nulo::DimensionMismatch);
}

TEST_CASE("lp evaluation is accurate to 1e-12 relative")
{
    nulo::SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const RVector x = random_vector(rng, 3, 1000, 7);
        const double p = 2.5;
        double acc = 0;
        for (Eigen::Index c = 0; c < 3; ++c) {
            acc += std::pow(std::fabs(x(c).to_double()), p);
        }
        const double expected = std::pow(acc, 1.0 / p);
        CHECK(nulo::norm_eval(NormSpec::lp(Rational(5, 2)), x).to_double() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("ceil_norm examples and bracketing")
{
    CHECK(nulo::ceil_norm(NormSpec::l2(), rvec({1, 1})) == 2);
    CHECK(nulo::ceil_norm(NormSpec::l1(), rvec({Rational(1, 2), Rational(1, 2)})) == 1);
    CHECK(nulo::ceil_norm(NormSpec::linf(), rvec({0, 0})) == 0);
    CHECK_THROWS_AS((void)nulo::ceil_norm(NormSpec::lp(3), rvec({1, 1})), nulo::UnsupportedOperation);

    nulo::SplitMix64 rng(11);
    for (const auto& spec : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), hexagon()}) {
        for (int i = 0; i < 500; ++i) {
            const RVector x = random_vector(rng, 2, 30, 6);
            const nulo::Integer k = nulo::ceil_norm(spec, x);
            const NormValue v = nulo::norm_eval(spec, x);
            if (nulo::is_zero_vector(x)) {
                CHECK(k == 0);
                continue;
            }
            CHECK(k >= 1);
            CHECK(v.compare(Rational(k)) <= 0);
            CHECK(v.compare(Rational(nulo::Integer(k - 1))) > 0);
        }
    }
}

TEST_CASE("dual_eval examples")
{
    CHECK(nulo::dual_eval(NormSpec::l1(), rvec({3, -4})) == NormValue::exact(4));
    CHECK(nulo::dual_eval(NormSpec::l2(), rvec({3, 4})) == NormValue::squared(25));
    CHECK(nulo::dual_eval(NormSpec::linf(), rvec({3, -4})) == NormValue::exact(7));
    CHECK(nulo::dual_spec(NormSpec::lp(3)) == NormSpec::lp(Rational(3, 2)));
    CHECK_THROWS_AS((void)nulo::dual_eval(hexagon(), rvec({1, 1})), nulo::UnsupportedOperation);
}

TEST_CASE("dual_witness examples")
{
    {
        const auto w = nulo::dual_witness(NormSpec::l2(), rvec({3, 4}));
        CHECK(w.direction == rvec({3, 4}));
        CHECK(w.scale == nulo::WitnessScale::rational(5));
    }
    {
        const auto w = nulo::dual_witness(NormSpec::l2(), rvec({1, 1}));
        CHECK_FALSE(w.scale.is_rational());
        CHECK(w.scale.str() == "sqrt(2)");
    }
    {
        const auto w = nulo::dual_witness(NormSpec::l1(), rvec({3, -4}));
        CHECK(w.direction == rvec({1, -1}));
        CHECK(w.scale == nulo::WitnessScale::rational(1));
    }
    CHECK(nulo::dual_witness(NormSpec::l1(), rvec({0, -4})).direction == rvec({1, -1}));
    CHECK(nulo::dual_witness(NormSpec::linf(), rvec({-5, 5})).direction == rvec({-1, 0}));
    CHECK(nulo::dual_witness(hexagon(), rvec({2, -3})).direction == rvec({1, 0}));
    CHECK(nulo::dual_witness(hexagon(), rvec({-1, -3})).direction == rvec({-1, -1}));
    CHECK_THROWS_AS((void)nulo::dual_witness(NormSpec::l2(), rvec({0, 0})), nulo::InvalidInput);
    CHECK_THROWS_AS((void)nulo::dual_witness(NormSpec::lp(3), rvec({1, 0})), nulo::UnsupportedOperation);
}

TEST_CASE("dual witnesses attain the norm and lie in the dual ball")
{
    nulo::SplitMix64 rng(5);
    const NormSpec tri = NormSpec::parse("poly:[1,0,0;0,1,0;0,0,1;1,1,1;1,-1,1/2]");
    for (const auto& spec : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), tri}) {
        for (int i = 0; i < 400; ++i) {
            const RVector x = random_vector(rng, 3, 20, 5);
            if (nulo::is_zero_vector(x)) {
                continue;
            }
            const auto w = nulo::dual_witness(spec, x);
            CHECK(nulo::certify_witness(spec, x, w));
            // attained value through squares: <x, w>^2 = ||x||^2 s^2
            const Rational ip = x.dot(w.direction);
            const NormValue v = nulo::norm_eval(spec, x);
            const Rational norm_sq = v.form() == NormValue::Form::Squared ? v.payload() : v.payload() * v.payload();
            CHECK(ip.sign() > 0);
            CHECK(ip * ip == norm_sq * w.scale.squared());
        }
    }
    // a direction that is not optimal fails certification
    const nulo::Witness wrong{rvec({1, 0}), nulo::WitnessScale::rational(1)};
    CHECK_FALSE(nulo::certify_witness(NormSpec::l1(), rvec({1, 1}), wrong));
    const nulo::Witness too_long{rvec({2, 2}), nulo::WitnessScale::rational(1)};
    CHECK_FALSE(nulo::certify_witness(NormSpec::l1(), rvec({1, 1}), too_long));
}

TEST_CASE("holder_check examples and sampled pairs")
{
    CHECK(nulo::holder_check(NormSpec::l2(), rvec({1, 0}), rvec({0, 1})));
    CHECK(nulo::holder_check(NormSpec::l1(), rvec({3, -4}), rvec({1, -1})));
    CHECK(nulo::holder_check(NormSpec::l2(), rvec({1, 2}), rvec({2, 1})));
    CHECK_THROWS_AS((void)nulo::holder_check(hexagon(), rvec({1, 2}), rvec({2, 1})), nulo::UnsupportedOperation);
    CHECK_THROWS_AS((void)nulo::holder_check(NormSpec::lp(3), rvec({1, 2}), rvec({2, 1})),
                    nulo::UnsupportedOperation);

    nulo::SplitMix64 rng(19);
    for (const auto& spec : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        for (int i = 0; i < 1000; ++i) {
            const auto d = static_cast<Eigen::Index>(rng.uniform(1, 4));
            CHECK(nulo::holder_check(spec, random_vector(rng, d, 50, 9), random_vector(rng, d, 50, 9)));
        }
    }
}

TEST_CASE("double_dual_check examples and sampled vectors")
{
    CHECK(nulo::double_dual_check(NormSpec::l1(), rvec({3, -4})));
    CHECK(nulo::double_dual_check(NormSpec::l2(), rvec({3, 4})));
    CHECK(nulo::double_dual_check(NormSpec::linf(), rvec({5, 0, -5})));
    CHECK(nulo::double_dual_check(NormSpec::l2(), rvec({0, 0})));
    CHECK_THROWS_AS((void)nulo::double_dual_check(hexagon(), rvec({1, 0})), nulo::UnsupportedOperation);

    nulo::SplitMix64 rng(23);
    for (const auto& spec : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        for (int i = 0; i < 1000; ++i) {
            CHECK(nulo::double_dual_check(spec, random_vector(rng, 3, 50, 9)));
        }
    }
}

TEST_CASE("unit ball membership is exact")
{
    CHECK(nulo::in_unit_ball(NormSpec::l2(), rvec({Rational(3, 5), Rational(4, 5)})));
    CHECK_FALSE(nulo::in_unit_ball(NormSpec::l2(), rvec({Rational(3, 5), Rational(4, 5) + Rational(1, 1000000)})));
    CHECK(nulo::in_unit_ball(NormSpec::l1(), rvec({Rational(1, 2), Rational(-1, 2)})));
    CHECK_FALSE(nulo::in_unit_ball(NormSpec::l1(), rvec({Rational(1, 2), Rational(-3, 5)})));
    CHECK(nulo::in_unit_ball(hexagon(), rvec({1, -1})));
    CHECK_FALSE(nulo::in_unit_ball(hexagon(), rvec({1, Rational(1, 2)})));
}
