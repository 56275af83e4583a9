#include "nulo/concentration.hpp"

#include "nulo/enumeration.hpp"
#include "nulo/errors.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace nulo {

namespace {

using enumeration::Lattice;

/// The problem multiplied through by the lcm of all denominators.
struct ScaledProblem {
    Integer denominator = 1;
    Lattice<Integer> lattice;
};

void validate(std::span<const RVector> v, const RVector* x)
{
    if (v.empty()) {
        throw InvalidInput("at least one vector is required");
    }
    const auto d = v.front().size();
    if (d < 1) {
        throw DimensionMismatch("vectors of dimension 0");
    }
    for (const auto& vi : v) {
        if (vi.size() != d) {
            throw DimensionMismatch("vectors of different dimensions " + std::to_string(d) + " and " +
                                    std::to_string(vi.size()));
        }
    }
    if (x != nullptr && x->size() != d) {
        throw DimensionMismatch("target of dimension " + std::to_string(x->size()) + " for vectors of dimension " +
                                std::to_string(d));
    }
}

ScaledProblem scale(std::span<const RVector> v, const RVector* x)
{
    ScaledProblem out;
    auto absorb = [&](const RVector& u) {
        for (Eigen::Index c = 0; c < u.size(); ++c) {
            const Integer den = u(c).denominator();
            mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(), den.get_mpz_t());
        }
    };
    for (const auto& vi : v) {
        absorb(vi);
    }
    if (x != nullptr) {
        absorb(*x);
    }

    auto& lat = out.lattice;
    lat.count = v.size();
    lat.dim = static_cast<std::size_t>(v.front().size());
    auto scaled = [&](const Rational& q) { return Integer(q.numerator() * (out.denominator / q.denominator())); };
    lat.rows.reserve(lat.count * lat.dim);
    for (const auto& vi : v) {
        for (Eigen::Index c = 0; c < vi.size(); ++c) {
            lat.rows.push_back(scaled(vi(c)));
        }
    }
    lat.target.assign(lat.dim, Integer(0));
    if (x != nullptr) {
        for (std::size_t c = 0; c < lat.dim; ++c) {
            lat.target[c] = scaled((*x)(static_cast<Eigen::Index>(c)));
        }
    }
    return out;
}

/// Narrows to 64-bit when every partial sum and probe is bounded by 2^61.
std::optional<Lattice<std::int64_t>> narrow(const Lattice<Integer>& lat)
{
    const Integer limit = Integer(1) << 61;
    Integer reach = 0;
    for (std::size_t i = 0; i < lat.count; ++i) {
        Integer widest = 0;
        for (const auto& c : lat.row(i)) {
            widest = std::max<Integer>(widest, abs(c));
        }
        reach += widest;
    }
    if (reach >= limit) {
        return std::nullopt;
    }
    for (const auto& c : lat.target) {
        if (abs(c) >= limit) {
            return std::nullopt;
        }
    }
    Lattice<std::int64_t> out;
    out.count = lat.count;
    out.dim = lat.dim;
    out.rows.reserve(lat.rows.size());
    for (const auto& c : lat.rows) {
        out.rows.push_back(c.get_si());
    }
    for (const auto& c : lat.target) {
        out.target.push_back(c.get_si());
    }
    return out;
}

template <typename Fn>
auto with_lattice(const Lattice<Integer>& lat, Fn&& fn)
{
    if (auto narrow_lat = narrow(lat)) {
        return fn(*narrow_lat);
    }
    return fn(lat);
}

EnumerationMethod choose(std::size_t n, const EnumerationOptions& options)
{
    const std::size_t hard_limit = 62;
    auto refuse = [&](std::size_t limit, const char* what) {
        throw CapacityError(std::string(what) + " supports at most " + std::to_string(limit) + " vectors, got " +
                            std::to_string(n));
    };
    switch (options.method) {
    case EnumerationMethod::Naive:
        if (n > std::min(options.naive_limit, hard_limit)) {
            refuse(std::min(options.naive_limit, hard_limit), "full enumeration");
        }
        return EnumerationMethod::Naive;
    case EnumerationMethod::MeetInTheMiddle:
        if (n > std::min(options.mitm_limit, hard_limit)) {
            refuse(std::min(options.mitm_limit, hard_limit), "meet-in-the-middle enumeration");
        }
        return EnumerationMethod::MeetInTheMiddle;
    case EnumerationMethod::Automatic:
        break;
    }
    if (n <= options.naive_limit) {
        return EnumerationMethod::Naive;
    }
    if (n > std::min(options.mitm_limit, hard_limit)) {
        refuse(std::min(options.mitm_limit, hard_limit), "exact enumeration");
    }
    return EnumerationMethod::MeetInTheMiddle;
}

Rational pattern_probability(std::uint64_t count, std::size_t n)
{
    return Rational(Integer(static_cast<unsigned long>(count))) * power_of_two(-static_cast<long>(n));
}

}  // namespace

SumTable::SumTable(std::size_t variables, std::vector<SumEntry> entries)
    : variables_(variables), entries_(std::move(entries))
{
}

Integer SumTable::total() const
{
    Integer t = 0;
    for (const auto& e : entries_) {
        t += static_cast<unsigned long>(e.count);
    }
    return t;
}

Rational SumTable::probability(const SumEntry& entry) const
{
    return pattern_probability(entry.count, variables_);
}

Rational atom_nd(std::span<const RVector> v, const RVector& x, const EnumerationOptions& options)
{
    validate(v, &x);
    const EnumerationMethod method = choose(v.size(), options);
    const ScaledProblem problem = scale(v, &x);
    const std::uint64_t hits = with_lattice(problem.lattice, [&](const auto& lat) {
        return method == EnumerationMethod::Naive ? enumeration::count_naive(lat, options.workers)
                                                  : enumeration::count_meet_in_middle(lat, options.workers);
    });
    return pattern_probability(hits, v.size());
}

std::vector<RVector> as_vectors(std::span<const Rational> a)
{
    std::vector<RVector> out;
    out.reserve(a.size());
    for (const auto& ai : a) {
        out.push_back(rvec({ai}));
    }
    return out;
}

Rational atom_1d(std::span<const Rational> a, const Rational& t, const EnumerationOptions& options)
{
    if (a.empty()) {
        throw InvalidInput("at least one coefficient is required");
    }
    const auto v = as_vectors(a);
    return atom_nd(v, rvec({t}), options);
}

SumTable sum_table(std::span<const RVector> v, const EnumerationOptions& options)
{
    validate(v, nullptr);
    if (v.size() > options.naive_limit) {
        throw CapacityError("sum tables support at most " + std::to_string(options.naive_limit) + " vectors, got " +
                            std::to_string(v.size()));
    }
    const ScaledProblem problem = scale(v, nullptr);
    const Rational unit(Integer(1), problem.denominator);

    std::vector<SumEntry> entries = with_lattice(problem.lattice, [&](const auto& lat) {
        using Int = typename std::decay_t<decltype(lat.rows)>::value_type;
        auto table = enumeration::build_table(lat, 0, lat.count, options.workers);
        std::vector<std::pair<std::vector<Int>, std::uint64_t>> sorted(table.begin(), table.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<SumEntry> out;
        out.reserve(sorted.size());
        for (const auto& [key, count] : sorted) {
            RVector sum(static_cast<Eigen::Index>(key.size()));
            for (std::size_t c = 0; c < key.size(); ++c) {
                sum(static_cast<Eigen::Index>(c)) = Rational(Integer(key[c])) * unit;
            }
            out.push_back({std::move(sum), count});
        }
        return out;
    });
    return SumTable(v.size(), std::move(entries));
}

AtomMaximum max_atom(std::span<const RVector> v, const EnumerationOptions& options)
{
    const SumTable table = sum_table(v, options);
    const SumEntry* best = &table.entries().front();
    for (const auto& e : table.entries()) {
        if (e.count > best->count) {
            best = &e;
        }
    }
    return {best->sum, table.probability(*best)};
}

Rational rho_max_1d(std::span<const Rational> a, const EnumerationOptions& options)
{
    if (a.empty()) {
        throw InvalidInput("at least one coefficient is required");
    }
    const auto v = as_vectors(a);
    return max_atom(v, options).probability;
}

}  // namespace nulo
