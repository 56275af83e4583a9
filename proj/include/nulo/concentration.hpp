#pragma once

#include "nulo/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nulo {

enum class EnumerationMethod { Automatic, Naive, MeetInTheMiddle };

struct EnumerationOptions {
    EnumerationMethod method = EnumerationMethod::Automatic;
    /// Threads used to split the sign-pattern space by prefix.
    unsigned workers = 1;
    /// Largest n handled by full enumeration (and by sum tables).
    std::size_t naive_limit = 24;
    /// Largest n handled by meet-in-the-middle.
    std::size_t mitm_limit = 44;
};

struct SumEntry {
    RVector sum;
    std::uint64_t count = 0;
};

/// Every reachable sum of sign_i v_i with its number of sign patterns.
class SumTable {
public:
    SumTable(std::size_t variables, std::vector<SumEntry> entries);

    [[nodiscard]] std::size_t variables() const { return variables_; }
    /// Sorted by lexicographic order of the sum.
    [[nodiscard]] const std::vector<SumEntry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    /// Sum of all counts; 2^variables for a complete table.
    [[nodiscard]] Integer total() const;
    /// count / 2^variables.
    [[nodiscard]] Rational probability(const SumEntry& entry) const;

private:
    std::size_t variables_;
    std::vector<SumEntry> entries_;
};

/// Exact P(sum eps_i a_i = t). Zero coefficients are allowed here.
[[nodiscard]] Rational atom_1d(std::span<const Rational> a, const Rational& t, const EnumerationOptions& options = {});

/// Exact P(sum eps_i v_i = x).
[[nodiscard]] Rational atom_nd(std::span<const RVector> v, const RVector& x, const EnumerationOptions& options = {});

/// Full table over all 2^n patterns. Throws CapacityError above naive_limit.
[[nodiscard]] SumTable sum_table(std::span<const RVector> v, const EnumerationOptions& options = {});

struct AtomMaximum {
    RVector target;
    Rational probability;
};

/// sup_x P(sum eps_i v_i = x) with the lexicographically smallest maximiser.
[[nodiscard]] AtomMaximum max_atom(std::span<const RVector> v, const EnumerationOptions& options = {});

/// max_t P(sum eps_i a_i = t).
[[nodiscard]] Rational rho_max_1d(std::span<const Rational> a, const EnumerationOptions& options = {});

/// Embeds scalars as vectors of dimension one.
[[nodiscard]] std::vector<RVector> as_vectors(std::span<const Rational> a);

}  // namespace nulo
