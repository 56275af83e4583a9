#include "nulo/reduction.hpp"

#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"

#include <cmath>
#include <string>

namespace nulo {

namespace {

constexpr double kFloatModeTolerance = 1e-9;

std::vector<Rational> projections(const Instance& instance, const RVector& w)
{
    std::vector<Rational> out;
    out.reserve(instance.size());
    for (const auto& v : instance.vectors()) {
        out.push_back(v.dot(w));
    }
    return out;
}

bool any_zero(const std::vector<Rational>& values)
{
    for (const auto& a : values) {
        if (a.is_zero()) {
            return true;
        }
    }
    return false;
}

/// (a) nonzero, (b) |a_i| <= s, (c) ceil(t'/s) = k
bool admissible(const Instance& instance, const Witness& w, const Integer& k)
{
    for (const auto& a : projections(instance, w.direction)) {
        if (a.is_zero() || !w.scale.bounds(a)) {
            return false;
        }
    }
    return w.scale.ceil_ratio(instance.target().dot(w.direction)) == k;
}

Witness target_witness(const Instance& instance)
{
    if (is_zero_vector(instance.target())) {
        RVector e1 = RVector::Zero(instance.dimension());
        e1(0) = 1;
        return dual_witness(instance.norm(), e1);
    }
    return dual_witness(instance.norm(), instance.target());
}

}  // namespace

Instance::Instance(std::vector<RVector> vectors, RVector target, NormSpec norm)
    : vectors_(std::move(vectors)), target_(std::move(target)), norm_(std::move(norm))
{
    if (vectors_.empty()) {
        throw InvalidInput("an instance needs at least one vector");
    }
    if (target_.size() < 1) {
        throw DimensionMismatch("target of dimension 0");
    }
    if (auto d = norm_.dimension(); d && *d != target_.size()) {
        throw DimensionMismatch("norm " + norm_.str() + " acts on dimension " + std::to_string(*d) +
                                ", target has dimension " + std::to_string(target_.size()));
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        const auto& v = vectors_[i];
        if (v.size() != target_.size()) {
            throw DimensionMismatch("vector " + std::to_string(i) + " has dimension " + std::to_string(v.size()) +
                                    ", target has dimension " + std::to_string(target_.size()));
        }
        if (is_zero_vector(v)) {
            throw InvalidInput("vector " + std::to_string(i) + " is zero");
        }
        if (!in_unit_ball(norm_, v)) {
            throw InvalidInput("vector " + std::to_string(i) + " " + format_vector(v) + " has " + norm_.str() +
                               " norm " + norm_eval(norm_, v).str() + " > 1");
        }
    }
}

std::vector<Rational> perturbation_steps()
{
    std::vector<Rational> steps;
    for (long e = 3; e <= 30; e += 3) {
        steps.push_back(power_of_two(-e));
    }
    return steps;
}

Witness perturb_witness(const Instance& instance, const Witness& witness)
{
    if (!any_zero(projections(instance, witness.direction))) {
        return witness;
    }
    const Integer k = ceil_norm(instance.norm(), instance.target());
    const auto d = instance.dimension();

    std::vector<RVector> directions;
    for (Eigen::Index j = 0; j < d; ++j) {
        RVector e = RVector::Zero(d);
        e(j) = 1;
        directions.push_back(e);
        directions.push_back(-e);
    }
    for (const auto& v : instance.vectors()) {
        directions.push_back(v);
    }

    for (const auto& eta : perturbation_steps()) {
        const Rational keep = Rational(1) - eta;
        for (const auto& z : directions) {
            Witness candidate{keep * witness.direction + eta * z, witness.scale};
            if (admissible(instance, candidate, k)) {
                return candidate;
            }
        }
    }
    throw PerturbationFailure("no admissible perturbation of witness " + format_vector(witness.direction) + "/" +
                              witness.scale.str() + " for target " + format_vector(instance.target()) + " under " +
                              instance.norm().str() + " down to step 2^-30");
}

ProjectedInstance project(const Instance& instance)
{
    if (!instance.norm().is_exact()) {
        throw UnsupportedOperation("projection needs an exact-mode norm, got " + instance.norm().str());
    }
    ProjectedInstance out{.coefficients = {},
                          .target_value = 0,
                          .witness = target_witness(instance),
                          .k = ceil_norm(instance.norm(), instance.target())};
    out.coefficients = projections(instance, out.witness.direction);
    if (any_zero(out.coefficients)) {
        out.witness = perturb_witness(instance, out.witness);
        out.coefficients = projections(instance, out.witness.direction);
        out.perturbed = true;
    }
    out.target_value = instance.target().dot(out.witness.direction);

    // Holder's inequality and the witness equality make these hold; failure is a defect, not bad input.
    if (!admissible(instance, out.witness, out.k)) {
        throw Error("projection invariant broken for target " + format_vector(instance.target()) + " under " +
                    instance.norm().str());
    }
    return out;
}

VerificationReport verify_instance(const Instance& instance, const EnumerationOptions& options)
{
    VerificationReport report;
    const std::uint64_t n = instance.size();
    report.p_exact = atom_nd(instance.vectors(), instance.target(), options);

    if (instance.norm().is_exact()) {
        ProjectedInstance projected = project(instance);
        report.p_projected = atom_1d(projected.coefficients, projected.target_value, options);
        report.k = projected.k;
        report.perturbed = projected.perturbed;
        report.witness = std::move(projected.witness);
    } else {
        // float mode: round a norm within tolerance of an integer down, which can only raise the bound
        const double value = norm_eval(instance.norm(), instance.target()).to_double();
        report.k = Integer(std::max(0.0, std::ceil(value - kFloatModeTolerance)));
        report.float_mode = true;
    }

    report.bound = lo_bound(n, report.k);
    report.delta = delta(n, report.k).value();
    report.chain_holds = report.p_projected ? report.p_exact <= *report.p_projected && *report.p_projected <= report.bound
                                            : report.p_exact <= report.bound;
    report.tight = report.p_exact == report.bound;
    return report;
}

}  // namespace nulo
