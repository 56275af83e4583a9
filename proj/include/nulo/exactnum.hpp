#pragma once

#include "nulo/rational.hpp"

#include <cstdint>

namespace nulo {

/// Parity offset added to k so that k + offset has the parity of n.
class ParityOffset {
public:
    constexpr explicit ParityOffset(int value) : value_(value) {}
    [[nodiscard]] constexpr int value() const { return value_; }
    friend constexpr bool operator==(ParityOffset, ParityOffset) = default;

private:
    int value_;
};

/// C(n, m); zero when m < 0 or m > n.
[[nodiscard]] Integer binomial(std::uint64_t n, const Integer& m);

/// 0 when n + k is even, 1 otherwise.
[[nodiscard]] ParityOffset delta(std::uint64_t n, const Integer& k);

/// P(R_n = m) for the sum R_n of n independent Rademacher signs.
[[nodiscard]] Rational rademacher_atom(std::uint64_t n, const Integer& m);

/**
 * Non-uniform Littlewood-Offord bound C(n, ceil((n+k)/2)) / 2^n.
 *
 * Equals P(R_n = k + delta(n, k)); for k = 0 it is the Erdos bound and for
 * k > n it is zero.
 */
[[nodiscard]] Rational lo_bound(std::uint64_t n, const Integer& k);

/// Uniform bound C(n, floor(n/2)) / 2^n.
[[nodiscard]] Rational erdos_bound(std::uint64_t n);

/// Smallest t >= 0 with t^2 >= q. Throws InvalidInput for q < 0.
[[nodiscard]] Integer ceil_sqrt(const Rational& q);

/// Largest t >= 0 with t^2 <= q. Throws InvalidInput for q < 0.
[[nodiscard]] Integer floor_sqrt(const Rational& q);

}  // namespace nulo
