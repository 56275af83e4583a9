#pragma once

#include "nulo/rational.hpp"

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace nulo {

struct L1Norm {
    friend bool operator==(const L1Norm&, const L1Norm&) = default;
};
struct L2Norm {
    friend bool operator==(const L2Norm&, const L2Norm&) = default;
};
struct LinfNorm {
    friend bool operator==(const LinfNorm&, const LinfNorm&) = default;
};

/**
 * Facet-form polyhedral norm ||x|| = max_j |<f_j, x>|.
 *
 * The functionals are the rows of a matrix and must span R^d; a rank
 * deficient family only defines a seminorm and is rejected.
 */
class MaxFunctionalNorm {
public:
    explicit MaxFunctionalNorm(RMatrix functionals);

    [[nodiscard]] const RMatrix& functionals() const { return functionals_; }
    [[nodiscard]] Eigen::Index dimension() const { return functionals_.cols(); }

    friend bool operator==(const MaxFunctionalNorm& a, const MaxFunctionalNorm& b)
    {
        return a.functionals_.rows() == b.functionals_.rows() && a.functionals_.cols() == b.functionals_.cols() &&
               a.functionals_ == b.functionals_;
    }

private:
    RMatrix functionals_;
};

/// l_p norm for rational p > 1. Float-mode only.
class LpNorm {
public:
    explicit LpNorm(Rational p);

    [[nodiscard]] const Rational& p() const { return p_; }
    /// Conjugate exponent q with 1/p + 1/q = 1.
    [[nodiscard]] Rational conjugate() const { return p_ / (p_ - 1); }

    friend bool operator==(const LpNorm&, const LpNorm&) = default;

private:
    Rational p_;
};

/// Tagged description of a norm on R^d.
class NormSpec {
public:
    using Variant = std::variant<L1Norm, L2Norm, LinfNorm, MaxFunctionalNorm, LpNorm>;

    template <typename Family>
        requires std::constructible_from<Variant, Family>
    NormSpec(Family family) : v_(std::move(family))  // NOLINT(google-explicit-constructor)
    {
    }

    static NormSpec l1() { return L1Norm{}; }
    static NormSpec l2() { return L2Norm{}; }
    static NormSpec linf() { return LinfNorm{}; }
    static NormSpec max_functional(RMatrix functionals) { return MaxFunctionalNorm(std::move(functionals)); }
    static NormSpec lp(Rational p) { return LpNorm(std::move(p)); }

    /// Parses "l1" | "l2" | "linf" | "lp:<p>" | "poly:[f1;f2;...]".
    static NormSpec parse(std::string_view text);
    /// Canonical textual form accepted by parse().
    [[nodiscard]] std::string str() const;

    /// Every family except Lp supports exact certification.
    [[nodiscard]] bool is_exact() const { return !std::holds_alternative<LpNorm>(v_); }
    /// Dimension fixed by the norm itself (facet-form only).
    [[nodiscard]] std::optional<Eigen::Index> dimension() const;

    [[nodiscard]] const Variant& variant() const { return v_; }

    friend bool operator==(const NormSpec&, const NormSpec&) = default;

private:
    Variant v_;
};

/**
 * Exact (or float-mode) value of a norm.
 *
 * Exact carries the value itself, Squared carries ||x||^2 (l2 family) and
 * Approximate carries a double for Lp.
 */
class NormValue {
public:
    enum class Form { Exact, Squared, Approximate };

    static NormValue exact(Rational v) { return NormValue(Form::Exact, std::move(v), 0.0); }
    static NormValue squared(Rational v) { return NormValue(Form::Squared, std::move(v), 0.0); }
    static NormValue approximate(double v) { return NormValue(Form::Approximate, Rational(0), v); }

    [[nodiscard]] Form form() const { return form_; }
    /// The exact payload (the value, or its square). Zero for Approximate.
    [[nodiscard]] const Rational& payload() const { return payload_; }
    [[nodiscard]] double to_double() const;

    /// Exact three-way comparison with r >= 0. Throws for Approximate.
    [[nodiscard]] int compare(const Rational& r) const;

    /// "7", "sqrt(2)" or a decimal approximation.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const NormValue&, const NormValue&) = default;

private:
    NormValue(Form f, Rational v, double approx) : form_(f), payload_(std::move(v)), approx_(approx) {}

    Form form_;
    Rational payload_;
    double approx_;
};

/**
 * Exact normaliser s of a witness: y = w / s.
 *
 * Stored as s itself when rational, or as s^2 when s is an irrational
 * square root (l2 witnesses of non-square <x, x>).
 */
class WitnessScale {
public:
    static WitnessScale rational(Rational s);
    static WitnessScale sqrt_of(Rational s_squared);

    [[nodiscard]] bool is_rational() const { return rational_; }
    /// s when rational, s^2 otherwise.
    [[nodiscard]] const Rational& stored() const { return value_; }
    [[nodiscard]] Rational squared() const { return rational_ ? value_ * value_ : value_; }
    [[nodiscard]] std::string str() const;

    /// Exact test of |a| <= s.
    [[nodiscard]] bool bounds(const Rational& a) const;
    /// Exact ceil(t / s).
    [[nodiscard]] Integer ceil_ratio(const Rational& t) const;

    friend bool operator==(const WitnessScale&, const WitnessScale&) = default;

private:
    WitnessScale(bool rational, Rational v) : rational_(rational), value_(std::move(v)) {}

    bool rational_;
    Rational value_;
};

/// Dual-optimal direction y = direction / scale with <x, y> = ||x||, ||y||_* <= 1.
struct Witness {
    RVector direction;
    WitnessScale scale;
};

[[nodiscard]] NormValue norm_eval(const NormSpec& spec, const RVector& x);

/// ceil(||x||), exact. Throws UnsupportedOperation for Lp.
[[nodiscard]] Integer ceil_norm(const NormSpec& spec, const RVector& x);

/// Exact ||x|| <= 1 (Lp: within 1e-9).
[[nodiscard]] bool in_unit_ball(const NormSpec& spec, const RVector& x);

/// Closed-form dual pair (l1 <-> linf, l2 <-> l2, lp <-> lq).
/// Throws UnsupportedOperation for facet-form norms.
[[nodiscard]] NormSpec dual_spec(const NormSpec& spec);

/// ||u||_* in closed form. Throws UnsupportedOperation for facet-form norms.
[[nodiscard]] NormValue dual_eval(const NormSpec& spec, const RVector& u);

/**
 * Dual-optimal witness for x != 0 under an exact-mode norm.
 *
 * - l2: w = x, s = sqrt(<x, x>) (kept rational when <x, x> is a square)
 * - l1: w = sign(x) coordinatewise with sign(0) = +1, s = 1
 * - linf: w = sign(x_i) e_i at the first max-magnitude coordinate, s = 1
 * - facet-form: w = sigma f_j at the first maximising functional, s = 1
 */
[[nodiscard]] Witness dual_witness(const NormSpec& spec, const RVector& x);

/// True iff <x, w> / s = ||x|| exactly and w / s lies in the dual unit ball.
[[nodiscard]] bool certify_witness(const NormSpec& spec, const RVector& x, const Witness& witness);

/// Executable check of |<x, u>| <= ||x|| ||u||_*. l1, l2 and linf only.
[[nodiscard]] bool holder_check(const NormSpec& spec, const RVector& x, const RVector& u);

/// Executable check of ||x|| = ||x||_**. l1, l2 and linf only.
[[nodiscard]] bool double_dual_check(const NormSpec& spec, const RVector& x);

/// Exact rank over the rationals.
[[nodiscard]] Eigen::Index exact_rank(RMatrix m);

}  // namespace nulo
