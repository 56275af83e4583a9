#pragma once

#include "nulo/concentration.hpp"
#include "nulo/norms.hpp"
#include "nulo/rational.hpp"

#include <optional>
#include <vector>

namespace nulo {

/**
 * Vectors v_1..v_n, a target x and a norm, with the hypotheses of the
 * non-uniform inequality checked exactly at construction: every v_i is
 * nonzero, ||v_i|| <= 1, and all dimensions agree.
 */
class Instance {
public:
    /// Throws InvalidInput (or DimensionMismatch) when a hypothesis fails.
    Instance(std::vector<RVector> vectors, RVector target, NormSpec norm);

    [[nodiscard]] const std::vector<RVector>& vectors() const { return vectors_; }
    [[nodiscard]] const RVector& target() const { return target_; }
    [[nodiscard]] const NormSpec& norm() const { return norm_; }
    [[nodiscard]] std::size_t size() const { return vectors_.size(); }
    [[nodiscard]] Eigen::Index dimension() const { return target_.size(); }

private:
    std::vector<RVector> vectors_;
    RVector target_;
    NormSpec norm_;
};

/// Coefficients a_i' = <v_i, w> and target t' = <x, w>, carried unscaled next to s.
struct ProjectedInstance {
    std::vector<Rational> coefficients;
    Rational target_value;
    Witness witness;
    Integer k;
    bool perturbed = false;
};

struct VerificationReport {
    Rational p_exact;
    /// Absent in float mode (Lp norms), where no exact witness exists.
    std::optional<Rational> p_projected;
    Rational bound;
    Integer k;
    int delta = 0;
    bool chain_holds = false;
    bool tight = false;
    bool perturbed = false;
    bool float_mode = false;
    /// Projection direction actually used (absent in float mode).
    std::optional<Witness> witness;
};

/// Geometric step sizes 2^-3, 2^-6, ..., 2^-30 tried by perturb_witness.
[[nodiscard]] std::vector<Rational> perturbation_steps();

/**
 * Moves w to (1 - eta) w + eta z, trying eta from perturbation_steps() and
 * z from (+e_1, -e_1, ..., +e_d, -e_d, v_1, ..., v_n) in that order, and
 * returns the first candidate for which every <v_i, w'> is nonzero,
 * |<v_i, w'>| <= s and ceil(<x, w'> / s) = ceil(||x||).
 *
 * Throws PerturbationFailure when the schedule is exhausted.
 */
[[nodiscard]] Witness perturb_witness(const Instance& instance, const Witness& witness);

/// One-dimensional projection along the dual witness of the target.
[[nodiscard]] ProjectedInstance project(const Instance& instance);

/// p_exact <= p_projected <= bound, all evaluated exactly.
[[nodiscard]] VerificationReport verify_instance(const Instance& instance, const EnumerationOptions& options = {});

}  // namespace nulo
