#include "nulo/exactnum.hpp"

#include "nulo/errors.hpp"

namespace nulo {

Integer binomial(std::uint64_t n, const Integer& m)
{
    if (m < 0 || m > n) {
        return 0;
    }
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, m.get_ui());
    return out;
}

ParityOffset delta(std::uint64_t n, const Integer& k)
{
    const bool k_odd = mpz_odd_p(k.get_mpz_t()) != 0;
    const bool n_odd = (n & 1U) != 0;
    return ParityOffset(k_odd == n_odd ? 0 : 1);
}

Rational rademacher_atom(std::uint64_t n, const Integer& m)
{
    const Integer magnitude = abs(m);
    if (magnitude > n) {
        return 0;
    }
    const Integer shifted = m + n;
    if (mpz_odd_p(shifted.get_mpz_t())) {
        return 0;
    }
    const Integer plus_count = shifted / 2;
    return binomial(n, plus_count) * power_of_two(-static_cast<long>(n));
}

Rational lo_bound(std::uint64_t n, const Integer& k)
{
    if (k < 0) {
        throw InvalidInput("lo_bound: k must be nonnegative");
    }
    // ceil((n + k) / 2)
    Integer top = n + k + 1;
    top /= 2;
    return binomial(n, top) * power_of_two(-static_cast<long>(n));
}

Rational erdos_bound(std::uint64_t n)
{
    return binomial(n, Integer(static_cast<unsigned long>(n / 2))) * power_of_two(-static_cast<long>(n));
}

Integer ceil_sqrt(const Rational& q)
{
    if (q.sign() < 0) {
        throw InvalidInput("ceil_sqrt of a negative value " + q.str());
    }
    // t^2 is an integer, so t^2 >= q iff t^2 >= ceil(q)
    const Integer c = q.ceil();
    Integer t = nulo::floor_sqrt(c);
    if (t * t < c) {
        t += 1;
    }
    return t;
}

Integer floor_sqrt(const Rational& q)
{
    if (q.sign() < 0) {
        throw InvalidInput("floor_sqrt of a negative value " + q.str());
    }
    return nulo::floor_sqrt(q.floor());
}

}  // namespace nulo
