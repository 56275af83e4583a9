#include "nulo/norms.hpp"

#include "nulo/errors.hpp"
#include "nulo/exactnum.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace nulo {

namespace {

constexpr double kFloatModeTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dimension(const NormSpec& spec, const RVector& x)
{
    if (x.size() < 1) {
        throw DimensionMismatch("vector of dimension 0");
    }
    if (auto d = spec.dimension(); d && *d != x.size()) {
        throw DimensionMismatch("norm " + spec.str() + " acts on dimension " + std::to_string(*d) +
                                ", got a vector of dimension " + std::to_string(x.size()));
    }
}

Rational dot(const RVector& a, const RVector& b)
{
    if (a.size() != b.size()) {
        throw DimensionMismatch("inner product of vectors with dimensions " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
    return a.dot(b);
}

Rational l1(const RVector& x) { return x.cwiseAbs().sum(); }

Rational linf(const RVector& x)
{
    Rational best = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (auto a = abs(x(i)); a > best) {
            best = a;
        }
    }
    return best;
}

double lp_value(const RVector& x, double p)
{
    long double scale = 0;
    std::vector<long double> coords(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        coords[static_cast<std::size_t>(i)] = std::fabs(static_cast<long double>(x(i).to_double()));
        scale = std::max(scale, coords[static_cast<std::size_t>(i)]);
    }
    if (scale == 0) {
        return 0.0;
    }
    long double acc = 0;
    for (long double c : coords) {
        acc += std::pow(c / scale, static_cast<long double>(p));
    }
    return static_cast<double>(scale * std::pow(acc, 1.0L / static_cast<long double>(p)));
}

/// (index, signed value) of the first functional maximising |<f_j, x>|.
std::pair<Eigen::Index, Rational> max_functional(const MaxFunctionalNorm& norm, const RVector& x)
{
    const RMatrix& f = norm.functionals();
    Eigen::Index best = 0;
    Rational best_value = f.row(0).dot(x.transpose());
    for (Eigen::Index j = 1; j < f.rows(); ++j) {
        Rational v = f.row(j).dot(x.transpose());
        if (abs(v) > abs(best_value)) {
            best = j;
            best_value = std::move(v);
        }
    }
    return {best, best_value};
}

/// ||.||^2 as an exact rational. Throws for Approximate values.
Rational squared_value(const NormValue& v)
{
    switch (v.form()) {
    case NormValue::Form::Exact:
        return v.payload() * v.payload();
    case NormValue::Form::Squared:
        return v.payload();
    case NormValue::Form::Approximate:
        break;
    }
    throw UnsupportedOperation("exact comparison requested for a float-mode norm value");
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Eigen::Index exact_rank(RMatrix m)
{
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
        Eigen::Index pivot = rank;
        while (pivot < m.rows() && m(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        m.row(rank).swap(m.row(pivot));
        for (Eigen::Index r = rank + 1; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) {
                continue;
            }
            const Rational factor = m(r, col) / m(rank, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) {
                m(r, c) -= factor * m(rank, c);
            }
        }
        ++rank;
    }
    return rank;
}

MaxFunctionalNorm::MaxFunctionalNorm(RMatrix functionals) : functionals_(std::move(functionals))
{
    if (functionals_.rows() < 1 || functionals_.cols() < 1) {
        throw InvalidInput("facet-form norm needs at least one functional of dimension >= 1");
    }
    if (exact_rank(functionals_) < functionals_.cols()) {
        throw InvalidInput("facet-form functionals do not span R^" + std::to_string(functionals_.cols()) +
                           " (seminorm)");
    }
}

LpNorm::LpNorm(Rational p) : p_(std::move(p))
{
    if (p_ <= Rational(1)) {
        throw InvalidInput("lp norm needs p > 1, got " + p_.str());
    }
}

NormSpec NormSpec::parse(std::string_view text)
{
    text = trim(text);
    if (text == "l1") {
        return l1();
    }
    if (text == "l2") {
        return l2();
    }
    if (text == "linf") {
        return linf();
    }
    try {
        if (text.starts_with("lp:")) {
            return lp(Rational::parse(trim(text.substr(3))));
        }
        if (text.starts_with("poly:")) {
            auto body = trim(text.substr(5));
            if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
                throw InvalidInput("facet-form norm must look like poly:[f1;f2;...]");
            }
            const auto rows = split(body.substr(1, body.size() - 2), ';');
            std::vector<std::vector<Rational>> parsed;
            for (auto row : rows) {
                auto& out = parsed.emplace_back();
                for (auto c : split(row, ',')) {
                    out.push_back(Rational::parse(trim(c)));
                }
                if (out.size() != parsed.front().size()) {
                    throw InvalidInput("facet-form functionals have different lengths");
                }
            }
            RMatrix f(static_cast<Eigen::Index>(parsed.size()), static_cast<Eigen::Index>(parsed.front().size()));
            for (Eigen::Index r = 0; r < f.rows(); ++r) {
                for (Eigen::Index c = 0; c < f.cols(); ++c) {
                    f(r, c) = parsed[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                }
            }
            return max_functional(std::move(f));
        }
    } catch (const std::invalid_argument& e) {
        throw InvalidInput("bad norm '" + std::string(text) + "': " + e.what());
    }
    throw InvalidInput("unknown norm '" + std::string(text) + "'");
}

std::string NormSpec::str() const
{
    return std::visit(overloaded{
                          [](const L1Norm&) -> std::string { return "l1"; },
                          [](const L2Norm&) -> std::string { return "l2"; },
                          [](const LinfNorm&) -> std::string { return "linf"; },
                          [](const LpNorm& n) -> std::string { return "lp:" + n.p().str(); },
                          [](const MaxFunctionalNorm& n) -> std::string {
                              std::ostringstream os;
                              os << "poly:[";
                              const RMatrix& f = n.functionals();
                              for (Eigen::Index r = 0; r < f.rows(); ++r) {
                                  os << (r ? ";" : "");
                                  for (Eigen::Index c = 0; c < f.cols(); ++c) {
                                      os << (c ? "," : "") << f(r, c);
                                  }
                              }
                              os << ']';
                              return os.str();
                          },
                      },
                      v_);
}

std::optional<Eigen::Index> NormSpec::dimension() const
{
    if (const auto* poly = std::get_if<MaxFunctionalNorm>(&v_)) {
        return poly->dimension();
    }
    return std::nullopt;
}

double NormValue::to_double() const
{
    switch (form_) {
    case Form::Exact:
        return payload_.to_double();
    case Form::Squared:
        return std::sqrt(payload_.to_double());
    case Form::Approximate:
        break;
    }
    return approx_;
}

int NormValue::compare(const Rational& r) const
{
    if (r.sign() < 0) {
        throw InvalidInput("norm comparison against a negative value");
    }
    const Rational lhs = squared_value(*this);
    const Rational rhs = r * r;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::string NormValue::str() const
{
    switch (form_) {
    case Form::Exact:
        return payload_.str();
    case Form::Squared:
        return "sqrt(" + payload_.str() + ")";
    case Form::Approximate:
        break;
    }
    std::ostringstream os;
    os.precision(17);
    os << approx_;
    return os.str();
}

WitnessScale WitnessScale::rational(Rational s)
{
    if (s.sign() <= 0) {
        throw InvalidInput("witness scale must be positive");
    }
    return WitnessScale(true, std::move(s));
}

WitnessScale WitnessScale::sqrt_of(Rational s_squared)
{
    if (s_squared.sign() <= 0) {
        throw InvalidInput("witness scale must be positive");
    }
    const Integer num_root = floor_sqrt(s_squared.numerator());
    const Integer den_root = floor_sqrt(s_squared.denominator());
    if (num_root * num_root == s_squared.numerator() && den_root * den_root == s_squared.denominator()) {
        return WitnessScale(true, Rational(num_root, den_root));
    }
    return WitnessScale(false, std::move(s_squared));
}

std::string WitnessScale::str() const
{
    return rational_ ? value_.str() : "sqrt(" + value_.str() + ")";
}

bool WitnessScale::bounds(const Rational& a) const
{
    return rational_ ? abs(a) <= value_ : a * a <= value_;
}

Integer WitnessScale::ceil_ratio(const Rational& t) const
{
    if (rational_) {
        return (t / value_).ceil();
    }
    const Rational ratio_squared = t * t / value_;
    return t.sign() >= 0 ? ceil_sqrt(ratio_squared) : Integer(-floor_sqrt(ratio_squared));
}

NormValue norm_eval(const NormSpec& spec, const RVector& x)
{
    require_dimension(spec, x);
    return std::visit(overloaded{
                          [&](const L1Norm&) { return NormValue::exact(l1(x)); },
                          [&](const L2Norm&) { return NormValue::squared(x.squaredNorm()); },
                          [&](const LinfNorm&) { return NormValue::exact(linf(x)); },
                          [&](const MaxFunctionalNorm& n) { return NormValue::exact(abs(max_functional(n, x).second)); },
                          [&](const LpNorm& n) { return NormValue::approximate(lp_value(x, n.p().to_double())); },
                      },
                      spec.variant());
}

Integer ceil_norm(const NormSpec& spec, const RVector& x)
{
    if (!spec.is_exact()) {
        throw UnsupportedOperation("ceil_norm needs an exact-mode norm, got " + spec.str());
    }
    const NormValue v = norm_eval(spec, x);
    return v.form() == NormValue::Form::Squared ? ceil_sqrt(v.payload()) : v.payload().ceil();
}

bool in_unit_ball(const NormSpec& spec, const RVector& x)
{
    const NormValue v = norm_eval(spec, x);
    if (v.form() == NormValue::Form::Approximate) {
        return v.to_double() <= 1.0 + kFloatModeTolerance;
    }
    return v.compare(1) <= 0;
}

NormSpec dual_spec(const NormSpec& spec)
{
    return std::visit(overloaded{
                          [](const L1Norm&) { return NormSpec::linf(); },
                          [](const L2Norm&) { return NormSpec::l2(); },
                          [](const LinfNorm&) { return NormSpec::l1(); },
                          [](const LpNorm& n) { return NormSpec::lp(n.conjugate()); },
                          [](const MaxFunctionalNorm&) -> NormSpec {
                              throw UnsupportedOperation(
                                  "dual norm of a facet-form norm needs a gauge linear program (not provided)");
                          },
                      },
                      spec.variant());
}

NormValue dual_eval(const NormSpec& spec, const RVector& u)
{
    return norm_eval(dual_spec(spec), u);
}

Witness dual_witness(const NormSpec& spec, const RVector& x)
{
    require_dimension(spec, x);
    if (!spec.is_exact()) {
        throw UnsupportedOperation("dual witness needs an exact-mode norm, got " + spec.str());
    }
    if (is_zero_vector(x)) {
        throw InvalidInput("dual witness of the zero vector");
    }
    const auto n = x.size();
    return std::visit(overloaded{
                          [&](const L1Norm&) {
                              RVector w(n);
                              for (Eigen::Index i = 0; i < n; ++i) {
                                  w(i) = x(i).sign() < 0 ? -1 : 1;
                              }
                              return Witness{std::move(w), WitnessScale::rational(1)};
                          },
                          [&](const L2Norm&) { return Witness{x, WitnessScale::sqrt_of(x.squaredNorm())}; },
                          [&](const LinfNorm&) {
                              Eigen::Index best = 0;
                              for (Eigen::Index i = 1; i < n; ++i) {
                                  if (abs(x(i)) > abs(x(best))) {
                                      best = i;
                                  }
                              }
                              RVector w = RVector::Zero(n);
                              w(best) = x(best).sign() < 0 ? -1 : 1;
                              return Witness{std::move(w), WitnessScale::rational(1)};
                          },
                          [&](const MaxFunctionalNorm& norm) {
                              auto [j, value] = max_functional(norm, x);
                              RVector w = norm.functionals().row(j).transpose();
                              if (value.sign() < 0) {
                                  w = -w;
                              }
                              return Witness{std::move(w), WitnessScale::rational(1)};
                          },
                          [&](const LpNorm&) -> Witness { throw UnsupportedOperation("unreachable"); },
                      },
                      spec.variant());
}

bool certify_witness(const NormSpec& spec, const RVector& x, const Witness& witness)
{
    require_dimension(spec, witness.direction);
    const Rational s_squared = witness.scale.squared();

    // <x, w> / s = ||x||, compared through squares with <x, w> >= 0
    const Rational attained = dot(x, witness.direction);
    if (attained.sign() < 0 || attained * attained != squared_value(norm_eval(spec, x)) * s_squared) {
        return false;
    }

    if (const auto* poly = std::get_if<MaxFunctionalNorm>(&spec.variant())) {
        // f_j is in the dual ball because |<f_j, z>| <= ||z|| for every z
        if (!witness.scale.is_rational()) {
            return false;
        }
        const RVector y = witness.direction / witness.scale.stored();
        for (Eigen::Index j = 0; j < poly->functionals().rows(); ++j) {
            const RVector f = poly->functionals().row(j).transpose();
            if (y == f || y == RVector(-f)) {
                return true;
            }
        }
        return false;
    }
    return squared_value(dual_eval(spec, witness.direction)) <= s_squared;
}

bool holder_check(const NormSpec& spec, const RVector& x, const RVector& u)
{
    if (std::holds_alternative<MaxFunctionalNorm>(spec.variant()) || !spec.is_exact()) {
        throw UnsupportedOperation("holder_check supports l1, l2 and linf only, got " + spec.str());
    }
    require_dimension(spec, x);
    const Rational ip = dot(x, u);
    return ip * ip <= squared_value(norm_eval(spec, x)) * squared_value(dual_eval(spec, u));
}

bool double_dual_check(const NormSpec& spec, const RVector& x)
{
    if (std::holds_alternative<MaxFunctionalNorm>(spec.variant()) || !spec.is_exact()) {
        throw UnsupportedOperation("double_dual_check supports l1, l2 and linf only, got " + spec.str());
    }
    const NormValue primal = norm_eval(spec, x);
    const NormValue bidual = dual_eval(dual_spec(spec), x);
    if (!(primal == bidual)) {
        return false;
    }
    // the supremum defining the bidual is attained by the dual witness
    return is_zero_vector(x) ? primal.compare(0) == 0 : certify_witness(spec, x, dual_witness(spec, x));
}

}  // namespace nulo
