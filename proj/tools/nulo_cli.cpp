// nulo: exact non-uniform Littlewood-Offord bounds and verification campaigns.
//
// Exit codes: 0 verified (or tight as expected), 1 violation found,
// 2 invalid input, 3 capacity exceeded.

#include "nulo/campaign.hpp"
#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"
#include "nulo/textio.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kVerified = 0;
constexpr int kViolation = 1;
constexpr int kInvalidInput = 2;
constexpr int kCapacity = 3;

using nulo::textio::Json;

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
    } else {
        nulo::textio::write_text(out_path, text);
    }
}

int cmd_bound(const std::string& n_text, const std::string& k_text)
{
    const nulo::Rational n = nulo::Rational::parse(n_text);
    const nulo::Rational k = nulo::Rational::parse(k_text);
    if (!n.is_integer() || n.sign() <= 0 || !n.numerator().fits_ulong_p()) {
        throw nulo::InvalidInput("n must be a positive integer");
    }
    if (!k.is_integer() || k.sign() < 0) {
        throw nulo::InvalidInput("k must be a nonnegative integer");
    }
    const nulo::Rational bound = nulo::lo_bound(n.numerator().get_ui(), k.numerator());
    std::cout << bound << '\n' << nulo::to_decimal(bound, 20) << '\n';
    return kVerified;
}

int cmd_atom(const std::string& path)
{
    const nulo::Instance instance = nulo::textio::instance_from_json(nulo::textio::read_json(path));
    std::cout << nulo::atom_nd(instance.vectors(), instance.target()) << '\n';
    return kVerified;
}

int cmd_verify(const std::string& path)
{
    const nulo::Instance instance = nulo::textio::instance_from_json(nulo::textio::read_json(path));
    const nulo::VerificationReport report = nulo::verify_instance(instance);
    std::cout << nulo::textio::dump(nulo::textio::report_to_json(report));
    return report.chain_holds ? kVerified : kViolation;
}

int cmd_extremal(const std::string& n_text, const std::string& norm_text, const std::string& value_text,
                 long dimension, const std::string& out_path)
{
    const nulo::Rational n = nulo::Rational::parse(n_text);
    if (!n.is_integer() || n.sign() <= 0 || !n.numerator().fits_ulong_p()) {
        throw nulo::InvalidInput("n must be a positive integer");
    }
    const nulo::Instance instance = nulo::gen_extremal(n.numerator().get_ui(), nulo::NormSpec::parse(norm_text),
                                                       nulo::Rational::parse(value_text), dimension);
    emit(nulo::textio::dump(nulo::textio::instance_to_json(instance)), out_path);
    return kVerified;
}

int cmd_campaign(const std::string& path, std::optional<unsigned> workers, const std::string& out_path)
{
    nulo::CampaignConfig config = nulo::config_from_json(nulo::textio::read_json(path));
    if (workers) {
        if (*workers < 1) {
            throw nulo::InvalidInput("--workers must be >= 1");
        }
        config.workers = *workers;
    }
    const nulo::CampaignReport report = nulo::run_campaign(config);
    emit(nulo::textio::dump(nulo::campaign_report_to_json(config, report)), out_path);

    if (!out_path.empty()) {
        for (const auto& v : report.violations) {
            const auto replay = out_path + ".violation-" + std::to_string(v.index) + ".json";
            nulo::textio::write_text(replay, nulo::textio::dump(nulo::textio::instance_to_json(v.instance)));
        }
    }
    std::cerr << to_string(config.mode) << ": " << report.instances_run << " instances, "
              << report.violations.size() << " violations, " << report.errors.size() << " errors, "
              << report.tight_count << " tight, " << report.wall_seconds << " s\n";

    if (!report.violations.empty()) {
        return kViolation;
    }
    for (const auto& e : report.errors) {
        if (e.kind == "capacity") {
            return kCapacity;
        }
    }
    return report.errors.empty() ? kVerified : kViolation;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact non-uniform Littlewood-Offord bounds, atom probabilities and verification campaigns"};
    app.require_subcommand(1);

    std::string n_text, k_text, path, norm_text, value_text, out_path;
    long dimension = 2;
    std::optional<unsigned> workers;

    auto* bound = app.add_subcommand("bound", "Print C(n, ceil((n+k)/2)) / 2^n exactly and as a decimal");
    bound->add_option("n", n_text, "number of signs")->required();
    bound->add_option("k", k_text, "ceiling of the target norm")->required();

    auto* atom = app.add_subcommand("atom", "Print the exact atom probability of an instance file");
    atom->add_option("instance", path, "instance file")->required();

    auto* verify = app.add_subcommand("verify", "Verify the inequality chain on an instance file");
    verify->add_option("instance", path, "instance file")->required();

    auto* extremal = app.add_subcommand("extremal", "Emit an instance attaining the bound");
    extremal->add_option("n", n_text, "number of vectors")->required();
    extremal->add_option("norm", norm_text, "l1 | l2 | linf | lp:<p> | poly:[f1;f2;...]")->required();
    extremal->add_option("value", value_text, "target norm, 0 < value <= n")->required();
    extremal->add_option("--dimension", dimension, "ambient dimension")->capture_default_str();
    extremal->add_option("--out", out_path, "write the instance here instead of stdout");

    auto* campaign = app.add_subcommand("campaign", "Run a verification campaign");
    campaign->add_option("config", path, "campaign config file")->required();
    campaign->add_option("--workers", workers, "worker threads (does not change the report)");
    campaign->add_option("--out", out_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalidInput;
    }

    try {
        if (*bound) {
            return cmd_bound(n_text, k_text);
        }
        if (*atom) {
            return cmd_atom(path);
        }
        if (*verify) {
            return cmd_verify(path);
        }
        if (*extremal) {
            return cmd_extremal(n_text, norm_text, value_text, dimension, out_path);
        }
        if (*campaign) {
            return cmd_campaign(path, workers, out_path);
        }
    } catch (const nulo::CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << '\n';
        return kCapacity;
    } catch (const nulo::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kViolation;
    }
    return kInvalidInput;
}
