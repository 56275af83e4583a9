#include "nulo/campaign.hpp"

#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace nulo {

namespace {

using textio::Json;

struct Outcome {
    std::uint64_t index = 0;
    bool tight = false;
    bool perturbed = false;
    std::optional<Rational> ratio;
    std::optional<CampaignViolation> violation;
    std::optional<CampaignError> error;
};

/// A unit of work producing the outcomes of consecutive instance indices.
using Job = std::function<std::vector<Outcome>()>;

enum class Expectation { Chain, Tight };

template <typename Fn>
Outcome guarded(std::uint64_t index, Fn&& fn)
{
    Outcome out;
    out.index = index;
    try {
        fn(out);
    } catch (const CapacityError& e) {
        out.error = CampaignError{index, "capacity", e.what()};
    } catch (const PerturbationFailure& e) {
        out.error = CampaignError{index, "perturbation", e.what()};
    } catch (const std::exception& e) {
        out.error = CampaignError{index, "invalid", e.what()};
    }
    return out;
}

void record(Outcome& out, const Instance& instance, VerificationReport report, Expectation expect)
{
    out.tight = report.tight;
    out.perturbed = report.perturbed;
    if (!report.tight && report.bound.sign() > 0) {
        out.ratio = report.p_exact / report.bound;
    }
    if (!report.chain_holds || (expect == Expectation::Tight && !report.tight)) {
        out.violation = CampaignViolation{out.index, instance, std::move(report)};
    }
}

Outcome check_instance(std::uint64_t index, const Instance& instance, Expectation expect)
{
    return guarded(index, [&](Outcome& out) { record(out, instance, verify_instance(instance), expect); });
}

Outcome check_uniform(std::uint64_t index, const Instance& instance)
{
    return guarded(index, [&](Outcome& out) {
        const std::uint64_t n = instance.size();
        AtomMaximum best = max_atom(instance.vectors());
        VerificationReport report;
        report.p_exact = best.probability;
        report.bound = erdos_bound(n);
        report.k = 0;
        report.delta = delta(n, 0).value();
        report.chain_holds = report.p_exact <= report.bound;
        report.tight = report.p_exact == report.bound;
        record(out, Instance(instance.vectors(), std::move(best.target), instance.norm()), std::move(report),
               Expectation::Chain);
    });
}

class Budget {
public:
    explicit Budget(std::optional<std::uint64_t> limit) : limit_(limit) {}

    /// Claims up to `wanted` indices; returns how many were granted.
    std::uint64_t claim(std::uint64_t wanted)
    {
        const std::uint64_t granted = limit_ ? std::min(wanted, *limit_ - used_) : wanted;
        used_ += granted;
        return granted;
    }
    [[nodiscard]] bool exhausted() const { return limit_ && used_ >= *limit_; }
    [[nodiscard]] std::uint64_t used() const { return used_; }

private:
    std::optional<std::uint64_t> limit_;
    std::uint64_t used_ = 0;
};

Eigen::Index dimension_for(const NormSpec& norm, std::size_t d)
{
    return norm.dimension().value_or(static_cast<Eigen::Index>(d));
}

/// Nonzero grid points in the unit ball, one per {p, -p} pair, in lexicographic order.
std::vector<RVector> grid_points(const std::vector<Rational>& grid, Eigen::Index d, const NormSpec& norm)
{
    std::vector<Rational> values = grid;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<RVector> points;
    std::vector<std::size_t> digits(static_cast<std::size_t>(d), 0);
    while (true) {
        RVector p(d);
        for (Eigen::Index c = 0; c < d; ++c) {
            p(c) = values[digits[static_cast<std::size_t>(c)]];
        }
        if (!is_zero_vector(p) && in_unit_ball(norm, p)) {
            Eigen::Index lead = 0;
            while (p(lead).is_zero()) {
                ++lead;
            }
            if (p(lead).sign() < 0) {
                p = -p;
            }
            points.push_back(std::move(p));
        }
        std::size_t c = 0;
        while (c < digits.size() && ++digits[c] == values.size()) {
            digits[c++] = 0;
        }
        if (c == digits.size()) {
            break;
        }
    }
    std::sort(points.begin(), points.end(), [](const RVector& a, const RVector& b) { return lex_compare(a, b) < 0; });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const RVector& a, const RVector& b) { return lex_compare(a, b) == 0; }),
                 points.end());
    return points;
}

std::vector<Job> plan_exhaustive(const CampaignConfig& config, Budget& budget)
{
    std::vector<Job> jobs;
    for (std::size_t d = config.d_min; d <= config.d_max; ++d) {
        for (const auto& norm : config.norms) {
            if (norm.dimension() && *norm.dimension() != static_cast<Eigen::Index>(d)) {
                continue;
            }
            const auto points = grid_points(config.grid, static_cast<Eigen::Index>(d), norm);
            if (points.empty()) {
                continue;
            }
            for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
                // multisets as nondecreasing index sequences
                std::vector<std::size_t> pick(n, 0);
                while (true) {
                    if (budget.exhausted()) {
                        return jobs;
                    }
                    std::vector<RVector> vectors;
                    for (auto i : pick) {
                        vectors.push_back(points[i]);
                    }
                    const SumTable table = sum_table(vectors);
                    const std::uint64_t granted = budget.claim(table.size());
                    const std::uint64_t first = budget.used() - granted;
                    std::vector<RVector> targets;
                    for (std::uint64_t t = 0; t < granted; ++t) {
                        targets.push_back(table.entries()[t].sum);
                    }
                    jobs.emplace_back([vectors = std::move(vectors), targets = std::move(targets), norm, first] {
                        std::vector<Outcome> outcomes;
                        for (std::size_t t = 0; t < targets.size(); ++t) {
                            const std::uint64_t index = first + t;
                            outcomes.push_back(guarded(index, [&](Outcome& out) {
                                const Instance instance(vectors, targets[t], norm);
                                record(out, instance, verify_instance(instance), Expectation::Chain);
                            }));
                        }
                        return outcomes;
                    });

                    std::size_t pos = n;
                    while (pos > 0 && pick[pos - 1] + 1 == points.size()) {
                        --pos;
                    }
                    if (pos == 0) {
                        break;
                    }
                    const std::size_t next = pick[pos - 1] + 1;
                    std::fill(pick.begin() + static_cast<std::ptrdiff_t>(pos - 1), pick.end(), next);
                }
            }
        }
    }
    return jobs;
}

std::vector<Job> plan_extremal(const CampaignConfig& config, Budget& budget)
{
    std::vector<Job> jobs;
    for (const auto& norm : config.norms) {
        const Eigen::Index d = dimension_for(norm, config.d_min);
        for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
            for (std::size_t k = 1; k <= n; ++k) {
                for (const auto& offset : config.extremal_offsets) {
                    const Rational value = Rational(static_cast<long>(k)) - offset;
                    if (value.sign() <= 0) {
                        continue;
                    }
                    if (budget.claim(1) == 0) {
                        return jobs;
                    }
                    const std::uint64_t index = budget.used() - 1;
                    jobs.emplace_back([index, n, norm, value, d] {
                        return std::vector<Outcome>{guarded(index, [&](Outcome& out) {
                            const Instance instance = gen_extremal(n, norm, value, d);
                            record(out, instance, verify_instance(instance), Expectation::Tight);
                        })};
                    });
                }
            }
        }
    }
    return jobs;
}

std::vector<Job> plan_random(const CampaignConfig& config, Budget& budget, bool uniform)
{
    std::vector<Job> jobs;
    while (budget.claim(1) == 1) {
        const std::uint64_t index = budget.used() - 1;
        jobs.emplace_back([index, &config, uniform] {
            return std::vector<Outcome>{guarded(index, [&](Outcome& out) {
                SplitMix64 rng(derive_seed(config.seed, index));
                const auto n = static_cast<std::uint64_t>(
                    rng.uniform(static_cast<std::int64_t>(config.n_min), static_cast<std::int64_t>(config.n_max)));
                const auto d = static_cast<std::size_t>(
                    rng.uniform(static_cast<std::int64_t>(config.d_min), static_cast<std::int64_t>(config.d_max)));
                const NormSpec norm =
                    uniform ? NormSpec::l2()
                            : config.norms[static_cast<std::size_t>(
                                  rng.uniform(0, static_cast<std::int64_t>(config.norms.size()) - 1))];
                const Instance instance =
                    gen_random(rng.next(), n, dimension_for(norm, d), norm, config.grid_denominator);
                if (uniform) {
                    out = check_uniform(index, instance);
                } else {
                    out = check_instance(index, instance, Expectation::Chain);
                }
            })};
        });
    }
    return jobs;
}

std::vector<std::vector<Outcome>> execute(const std::vector<Job>& jobs, unsigned workers)
{
    std::vector<std::vector<Outcome>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            results[j] = jobs[j]();
        }
    };
    if (workers <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

void validate(const CampaignConfig& config)
{
    if (config.n_min < 1 || config.n_min > config.n_max || config.n_max > 62) {
        throw InvalidInput("n range must satisfy 1 <= n_min <= n_max <= 62");
    }
    if (config.d_min < 1 || config.d_min > config.d_max) {
        throw InvalidInput("d range must satisfy 1 <= d_min <= d_max");
    }
    if (config.norms.empty()) {
        throw InvalidInput("at least one norm is required");
    }
    if (config.grid_denominator < 1 || config.grid_denominator > (std::uint64_t{1} << 40)) {
        throw InvalidInput("grid_denominator must be in [1, 2^40]");
    }
    for (const auto& offset : config.extremal_offsets) {
        if (offset.sign() < 0 || offset >= Rational(1)) {
            throw InvalidInput("extremal offsets must lie in [0, 1)");
        }
    }
    if (config.workers < 1) {
        throw InvalidInput("workers must be >= 1");
    }
    if (config.mode == CampaignMode::ExhaustiveGrid && config.grid.empty()) {
        throw InvalidInput("exhaustive-grid mode needs a coordinate grid");
    }
    if ((config.mode == CampaignMode::Random || config.mode == CampaignMode::UniformKleitman) && !config.budget) {
        throw InvalidInput("random campaigns need a budget");
    }
}

}  // namespace

std::string to_string(CampaignMode mode)
{
    switch (mode) {
    case CampaignMode::ExhaustiveGrid:
        return "exhaustive-grid";
    case CampaignMode::Random:
        return "random";
    case CampaignMode::Extremal:
        return "extremal";
    case CampaignMode::UniformKleitman:
        return "uniform-kleitman";
    }
    return "unknown";
}

CampaignMode parse_campaign_mode(std::string_view text)
{
    for (auto mode : {CampaignMode::ExhaustiveGrid, CampaignMode::Random, CampaignMode::Extremal,
                      CampaignMode::UniformKleitman}) {
        if (text == to_string(mode)) {
            return mode;
        }
    }
    throw InvalidInput("unknown campaign mode '" + std::string(text) + "'");
}

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi)
{
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) {
        return static_cast<std::int64_t>(next());
    }
    const std::uint64_t threshold = (0 - range) % range;
    while (true) {
        const std::uint64_t x = next();
        if (x >= threshold) {
            return lo + static_cast<std::int64_t>(x % range);
        }
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 mix(seed ^ (index * 0xd1342543de82ef95ULL));
    mix.next();
    return mix.next();
}

Instance gen_extremal(std::uint64_t n, const NormSpec& norm, const Rational& norm_value, Eigen::Index dimension)
{
    if (n < 1) {
        throw InvalidInput("extremal instances need n >= 1");
    }
    if (norm_value.sign() <= 0 || norm_value > Rational(static_cast<long>(n))) {
        throw InvalidInput("extremal norm value must satisfy 0 < value <= n, got " + norm_value.str());
    }
    if (dimension < 1) {
        throw InvalidInput("extremal dimension must be >= 1");
    }
    if (auto d = norm.dimension(); d && *d != dimension) {
        dimension = *d;
    }
    const Integer k = norm_value.ceil();
    const Integer step = k + delta(n, k).value();
    if (step > n) {
        throw InvalidInput("extremal instance needs k + delta <= n");
    }

    RVector axis = RVector::Zero(dimension);
    axis(0) = 1;
    const NormValue axis_norm = norm_eval(norm, axis);
    if (axis_norm.form() == NormValue::Form::Exact) {
        axis /= axis_norm.payload();
    }

    const Rational c = norm_value / Rational(step);
    return Instance(std::vector<RVector>(n, RVector(c * axis)), RVector(norm_value * axis), norm);
}

Instance gen_random(std::uint64_t seed, std::uint64_t n, Eigen::Index d, const NormSpec& norm,
                    std::uint64_t grid_denominator)
{
    if (n < 1 || d < 1) {
        throw InvalidInput("random instances need n >= 1 and d >= 1");
    }
    if (grid_denominator < 1) {
        throw InvalidInput("grid_denominator must be >= 1");
    }
    if (auto nd = norm.dimension(); nd && *nd != d) {
        throw DimensionMismatch("norm " + norm.str() + " acts on dimension " + std::to_string(*nd));
    }
    SplitMix64 rng(seed);
    const auto g = static_cast<std::int64_t>(grid_denominator);
    const Rational unit(Integer(1), Integer(static_cast<unsigned long>(grid_denominator)));

    auto draw_nonzero = [&] {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            RVector v(d);
            for (Eigen::Index c = 0; c < d; ++c) {
                v(c) = Rational(rng.uniform(-g, g)) * unit;
            }
            if (!is_zero_vector(v)) {
                return v;
            }
        }
        throw InvalidInput("could not draw a nonzero grid vector");
    };

    auto draw_in_ball = [&] {
        RVector v = draw_nonzero();
        const bool rejection = std::holds_alternative<L2Norm>(norm.variant());
        for (int attempt = 0; rejection && attempt < 64 && !in_unit_ball(norm, v); ++attempt) {
            v = draw_nonzero();
        }
        if (in_unit_ball(norm, v)) {
            return v;
        }
        const NormValue value = norm_eval(norm, v);
        switch (value.form()) {
        case NormValue::Form::Exact:
            return RVector(v / value.payload());
        case NormValue::Form::Squared:
            return RVector(v / Rational(ceil_sqrt(value.payload())));
        case NormValue::Form::Approximate:
            break;
        }
        return RVector(v / Rational(Integer(std::ceil(value.to_double() * (1.0 + 1e-9)))));
    };

    std::vector<RVector> vectors;
    vectors.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        vectors.push_back(draw_in_ball());
    }

    RVector target = RVector::Zero(d);
    if (rng.coin()) {
        for (const auto& v : vectors) {
            target += rng.coin() ? v : RVector(-v);
        }
    } else {
        const auto reach = static_cast<std::int64_t>(n) * g;
        for (Eigen::Index c = 0; c < d; ++c) {
            target(c) = Rational(rng.uniform(-reach, reach)) * unit;
        }
    }
    return Instance(std::move(vectors), std::move(target), norm);
}

CampaignReport run_campaign(const CampaignConfig& config)
{
    validate(config);
    const auto started = std::chrono::steady_clock::now();

    Budget budget(config.budget);
    std::vector<Job> jobs;
    switch (config.mode) {
    case CampaignMode::ExhaustiveGrid:
        jobs = plan_exhaustive(config, budget);
        break;
    case CampaignMode::Extremal:
        jobs = plan_extremal(config, budget);
        break;
    case CampaignMode::Random:
        jobs = plan_random(config, budget, false);
        break;
    case CampaignMode::UniformKleitman:
        jobs = plan_random(config, budget, true);
        break;
    }

    CampaignReport report;
    report.mode = config.mode;
    for (auto& outcomes : execute(jobs, config.workers)) {
        for (auto& o : outcomes) {
            ++report.instances_run;
            report.tight_count += o.tight ? 1 : 0;
            report.perturbed_count += o.perturbed ? 1 : 0;
            if (o.ratio && (!report.max_nontight_ratio || *o.ratio > *report.max_nontight_ratio)) {
                report.max_nontight_ratio = o.ratio;
            }
            if (o.violation) {
                report.violations.push_back(std::move(*o.violation));
            }
            if (o.error) {
                report.errors.push_back(std::move(*o.error));
            }
        }
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

CampaignConfig config_from_json(const Json& j)
{
    try {
        if (!j.is_object()) {
            throw InvalidInput("campaign config must be a JSON object");
        }
        if (j.value("schema", std::string{}) != kCampaignConfigSchema) {
            throw InvalidInput(std::string("campaign config schema must be \"") + kCampaignConfigSchema + "\"");
        }
        CampaignConfig c;
        if (!j.contains("mode")) {
            throw InvalidInput("campaign config is missing \"mode\"");
        }
        c.mode = parse_campaign_mode(j.at("mode").get<std::string>());
        c.n_min = j.value("n_min", c.n_min);
        c.n_max = j.value("n_max", c.n_max);
        c.d_min = j.value("d_min", c.d_min);
        c.d_max = j.value("d_max", c.d_max);
        if (j.contains("norms")) {
            c.norms.clear();
            for (const auto& s : j.at("norms")) {
                c.norms.push_back(NormSpec::parse(s.get<std::string>()));
            }
        }
        if (j.contains("grid")) {
            for (const auto& q : j.at("grid")) {
                c.grid.push_back(textio::rational_from_json(q));
            }
        }
        c.grid_denominator = j.value("grid_denominator", c.grid_denominator);
        c.seed = j.value("seed", c.seed);
        if (j.contains("budget") && !j.at("budget").is_null()) {
            c.budget = j.at("budget").get<std::uint64_t>();
        }
        if (j.contains("extremal_offsets")) {
            c.extremal_offsets.clear();
            for (const auto& q : j.at("extremal_offsets")) {
                c.extremal_offsets.push_back(textio::rational_from_json(q));
            }
        }
        c.workers = j.value("workers", c.workers);
        validate(c);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("campaign config: ") + e.what());
    }
}

Json config_to_json(const CampaignConfig& config)
{
    Json j;
    j["schema"] = kCampaignConfigSchema;
    j["mode"] = to_string(config.mode);
    j["n_min"] = config.n_min;
    j["n_max"] = config.n_max;
    j["d_min"] = config.d_min;
    j["d_max"] = config.d_max;
    Json norms = Json::array();
    for (const auto& n : config.norms) {
        norms.push_back(n.str());
    }
    j["norms"] = std::move(norms);
    Json grid = Json::array();
    for (const auto& q : config.grid) {
        grid.push_back(textio::rational_to_json(q));
    }
    j["grid"] = std::move(grid);
    j["grid_denominator"] = config.grid_denominator;
    j["seed"] = config.seed;
    j["budget"] = config.budget ? Json(*config.budget) : Json(nullptr);
    Json offsets = Json::array();
    for (const auto& q : config.extremal_offsets) {
        offsets.push_back(textio::rational_to_json(q));
    }
    j["extremal_offsets"] = std::move(offsets);
    return j;
}

Json campaign_report_to_json(const CampaignConfig& config, const CampaignReport& report)
{
    Json j;
    j["schema"] = kCampaignReportSchema;
    j["config"] = config_to_json(config);
    j["status"] = !report.violations.empty() ? "violation" : (report.errors.empty() ? "verified" : "error");
    j["instances_run"] = report.instances_run;
    j["tight_count"] = report.tight_count;
    j["perturbed_count"] = report.perturbed_count;
    j["max_nontight_ratio"] =
        report.max_nontight_ratio ? textio::rational_to_json(*report.max_nontight_ratio) : Json(nullptr);
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json entry;
        entry["index"] = v.index;
        entry["instance"] = textio::instance_to_json(v.instance);
        entry["report"] = textio::report_to_json(v.report);
        violations.push_back(std::move(entry));
    }
    j["violations"] = std::move(violations);
    Json errors = Json::array();
    for (const auto& e : report.errors) {
        Json entry;
        entry["index"] = e.index;
        entry["kind"] = e.kind;
        entry["message"] = e.message;
        errors.push_back(std::move(entry));
    }
    j["errors"] = std::move(errors);
    return j;
}

}  // namespace nulo
