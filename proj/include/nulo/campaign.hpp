#pragma once

#include "nulo/reduction.hpp"
#include "nulo/textio.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

namespace nulo {

enum class CampaignMode { ExhaustiveGrid, Random, Extremal, UniformKleitman };

[[nodiscard]] std::string to_string(CampaignMode mode);
[[nodiscard]] CampaignMode parse_campaign_mode(std::string_view text);

struct CampaignConfig {
    CampaignMode mode = CampaignMode::Random;
    std::size_t n_min = 1;
    std::size_t n_max = 6;
    std::size_t d_min = 1;
    std::size_t d_max = 2;
    std::vector<NormSpec> norms{NormSpec::l2()};
    /// Coordinate values for exhaustive-grid mode.
    std::vector<Rational> grid;
    /// Coordinates are drawn from {-g, ..., g} / g in random and uniform modes.
    std::uint64_t grid_denominator = 2;
    std::uint64_t seed = 0;
    /// Maximum number of instances; unlimited when absent.
    std::optional<std::uint64_t> budget;
    /// Extremal mode uses norm values k - offset for every offset in [0, 1).
    std::vector<Rational> extremal_offsets{Rational(0), Rational(1, 2)};
    /// Thread count. Never affects the report.
    unsigned workers = 1;
};

struct CampaignViolation {
    std::uint64_t index;
    Instance instance;
    VerificationReport report;
};

struct CampaignError {
    std::uint64_t index;
    /// "capacity", "perturbation" or "invalid"
    std::string kind;
    std::string message;
};

struct CampaignReport {
    CampaignMode mode = CampaignMode::Random;
    std::uint64_t instances_run = 0;
    std::uint64_t tight_count = 0;
    std::uint64_t perturbed_count = 0;
    /// max p_exact / bound over non-tight instances with a positive bound.
    std::optional<Rational> max_nontight_ratio;
    std::vector<CampaignViolation> violations;
    std::vector<CampaignError> errors;
    /// Measured, never serialized.
    double wall_seconds = 0.0;

    [[nodiscard]] bool verified() const { return violations.empty() && errors.empty(); }
};

/**
 * Counter-based 64-bit generator. Uses only fixed-width integer operations
 * so a seed yields the same stream on every platform.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform integer in [lo, hi] by rejection.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    bool coin() { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

/// Seed of the index-th instance of a campaign stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/**
 * v_i = c u and x = norm_value u, where u is the first axis direction scaled
 * to unit norm, k = ceil(norm_value) and c = norm_value / (k + delta(n, k)).
 * The inequality is an equality for these instances.
 */
[[nodiscard]] Instance gen_extremal(std::uint64_t n, const NormSpec& norm, const Rational& norm_value,
                                    Eigen::Index dimension = 2);

/**
 * Deterministic pseudorandom instance with coordinates on the grid
 * {-g, ..., g} / g, brought into the unit ball exactly. The target is a
 * reachable sum (random sign pattern) with probability 1/2, otherwise a random
 * point of the grid (1/g) Z^d inside [-n, n]^d.
 */
[[nodiscard]] Instance gen_random(std::uint64_t seed, std::uint64_t n, Eigen::Index d, const NormSpec& norm,
                                  std::uint64_t grid_denominator);

[[nodiscard]] CampaignReport run_campaign(const CampaignConfig& config);

inline constexpr const char* kCampaignConfigSchema = "nulo-campaign-config/1";
inline constexpr const char* kCampaignReportSchema = "nulo-campaign-report/1";

/// Throws InvalidInput.
[[nodiscard]] CampaignConfig config_from_json(const textio::Json& j);
/// Every field except `workers`.
[[nodiscard]] textio::Json config_to_json(const CampaignConfig& config);
[[nodiscard]] textio::Json campaign_report_to_json(const CampaignConfig& config, const CampaignReport& report);

}  // namespace nulo
