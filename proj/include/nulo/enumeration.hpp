#pragma once

// Sign-pattern enumeration kernels over integer lattices.
//
// Every rational problem is rescaled by a common denominator before it gets
// here, so sums are exact integers and equal sums compare equal bit for bit.
// The kernels are templated on the integer scalar: std::int64_t when the
// magnitudes provably fit, nulo::Integer otherwise.

#include "nulo/rational.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <unordered_map>
#include <vector>

namespace nulo::enumeration {

template <typename Int>
struct KeyHash {
    std::size_t operator()(const std::vector<Int>& key) const noexcept
    {
        std::size_t h = key.size();
        for (const Int& c : key) {
            std::size_t v;
            if constexpr (std::is_integral_v<Int>) {
                v = static_cast<std::size_t>(c) * 0x9e3779b97f4a7c15ULL;
                v ^= v >> 29;
            } else {
                v = hash_value(c);
            }
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Exact sum vector -> number of sign patterns producing it.
template <typename Int>
using CountTable = std::unordered_map<std::vector<Int>, std::uint64_t, KeyHash<Int>>;

/// n vectors of dimension d stored row-major, plus a target.
template <typename Int>
struct Lattice {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<Int> rows;
    std::vector<Int> target;

    [[nodiscard]] std::span<const Int> row(std::size_t i) const { return {rows.data() + i * dim, dim}; }
};

/**
 * Calls visit(sum) for sum = offset + sum_{i in [first, last)} eps_i v_i over
 * all sign patterns of the rows in [first, last), in Gray-code order.
 */
template <typename Int, typename Visit>
void for_each_signed_sum(const Lattice<Int>& lat, std::size_t first, std::size_t last, std::vector<Int> sum,
                         Visit&& visit)
{
    const std::size_t d = lat.dim;
    const std::size_t m = last - first;
    std::vector<Int> twice(m * d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = lat.row(first + i);
        for (std::size_t c = 0; c < d; ++c) {
            sum[c] -= v[c];
            twice[i * d + c] = v[c] + v[c];
        }
    }
    visit(std::as_const(sum));
    std::uint64_t gray = 0;
    const std::uint64_t patterns = std::uint64_t{1} << m;
    for (std::uint64_t g = 1; g < patterns; ++g) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(g));
        gray ^= std::uint64_t{1} << bit;
        const Int* step = twice.data() + bit * d;
        if ((gray >> bit) & 1U) {
            for (std::size_t c = 0; c < d; ++c) {
                sum[c] += step[c];
            }
        } else {
            for (std::size_t c = 0; c < d; ++c) {
                sum[c] -= step[c];
            }
        }
        visit(std::as_const(sum));
    }
}

/// Offset sum_{i in [first, first+bits)} eps_i v_i for the prefix pattern `prefix`
/// (bit i set means eps = +1).
template <typename Int>
std::vector<Int> prefix_offset(const Lattice<Int>& lat, std::size_t first, std::size_t bits, std::uint64_t prefix)
{
    std::vector<Int> out(lat.dim, Int(0));
    for (std::size_t i = 0; i < bits; ++i) {
        const auto v = lat.row(first + i);
        const bool plus = (prefix >> i) & 1U;
        for (std::size_t c = 0; c < lat.dim; ++c) {
            if (plus) {
                out[c] += v[c];
            } else {
                out[c] -= v[c];
            }
        }
    }
    return out;
}

/**
 * Runs task(prefix) for every prefix pattern of `bits` signs on `workers`
 * threads. Each task result is stored at its prefix index, so the caller can
 * combine them in a fixed order regardless of scheduling.
 */
template <typename Result, typename Task>
std::vector<Result> run_partitioned(std::size_t bits, unsigned workers, Task&& task)
{
    const std::uint64_t parts = std::uint64_t{1} << bits;
    std::vector<Result> results(parts);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t p = next++; p < parts; p = next++) {
            results[p] = task(p);
        }
    };
    if (workers <= 1 || parts == 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(workers, parts));
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

/// Prefix length used to split `m` sign choices across `workers` threads.
inline std::size_t partition_bits(std::size_t m, unsigned workers)
{
    if (workers <= 1) {
        return 0;
    }
    const auto wanted = static_cast<std::size_t>(std::bit_width(static_cast<unsigned>(workers) * 4U - 1U));
    return std::min(m, wanted);
}

/// Number of sign patterns (over all rows) whose sum equals the target, by full enumeration.
template <typename Int>
std::uint64_t count_naive(const Lattice<Int>& lat, unsigned workers = 1)
{
    const std::size_t bits = partition_bits(lat.count, workers);
    auto parts = run_partitioned<std::uint64_t>(bits, workers, [&](std::uint64_t prefix) {
        std::uint64_t hits = 0;
        for_each_signed_sum(lat, bits, lat.count, prefix_offset(lat, 0, bits, prefix), [&](const std::vector<Int>& s) {
            if (std::equal(s.begin(), s.end(), lat.target.begin())) {
                ++hits;
            }
        });
        return hits;
    });
    std::uint64_t total = 0;
    for (auto p : parts) {
        total += p;
    }
    return total;
}

/// Count table of all sums of the rows in [first, last); per-worker tables are merged by addition.
template <typename Int>
CountTable<Int> build_table(const Lattice<Int>& lat, std::size_t first, std::size_t last, unsigned workers = 1)
{
    const std::size_t bits = partition_bits(last - first, workers);
    auto parts = run_partitioned<CountTable<Int>>(bits, workers, [&](std::uint64_t prefix) {
        CountTable<Int> table;
        for_each_signed_sum(lat, first + bits, last, prefix_offset(lat, first, bits, prefix),
                            [&](const std::vector<Int>& s) {
                                if (auto it = table.find(s); it != table.end()) {
                                    ++it->second;
                                } else {
                                    table.emplace(s, 1);
                                }
                            });
        return table;
    });
    CountTable<Int> merged = std::move(parts.front());
    for (std::size_t p = 1; p < parts.size(); ++p) {
        for (auto& [key, count] : parts[p]) {
            merged[key] += count;
        }
    }
    return merged;
}

/**
 * Meet-in-the-middle count: tabulate the first half, then probe with
 * target - s for every sum s of the second half.
 */
template <typename Int>
std::uint64_t count_meet_in_middle(const Lattice<Int>& lat, unsigned workers = 1)
{
    const std::size_t half = lat.count / 2;
    const CountTable<Int> left = build_table(lat, 0, half, workers);
    const std::size_t bits = partition_bits(lat.count - half, workers);
    auto parts = run_partitioned<std::uint64_t>(bits, workers, [&](std::uint64_t prefix) {
        std::uint64_t hits = 0;
        std::vector<Int> probe(lat.dim);
        for_each_signed_sum(lat, half + bits, lat.count, prefix_offset(lat, half, bits, prefix),
                            [&](const std::vector<Int>& s) {
                                for (std::size_t c = 0; c < lat.dim; ++c) {
                                    probe[c] = lat.target[c] - s[c];
                                }
                                if (auto it = left.find(probe); it != left.end()) {
                                    hits += it->second;
                                }
                            });
        return hits;
    });
    std::uint64_t total = 0;
    for (auto p : parts) {
        total += p;
    }
    return total;
}

}  // namespace nulo::enumeration
