#include "nulo/textio.hpp"

#include "nulo/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace nulo::textio {

Json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j)
{
    try {
        if (j.is_string()) {
            return Rational::parse(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.get<std::int64_t>());
        }
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
    }
    throw InvalidInput("expected a rational \"p/q\", got " + j.dump());
}

Json vector_to_json(const RVector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(rational_to_json(v(i)));
    }
    return out;
}

RVector vector_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw InvalidInput("expected a non-empty array of rationals, got " + j.dump());
    }
    RVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
    }
    return v;
}

Json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p()) {
        return static_cast<std::int64_t>(z.get_si());
    }
    return z.get_str(10);
}

Json instance_to_json(const Instance& instance)
{
    Json j;
    j["schema"] = kInstanceSchema;
    j["dimension"] = static_cast<std::int64_t>(instance.dimension());
    j["norm"] = instance.norm().str();
    Json vectors = Json::array();
    for (const auto& v : instance.vectors()) {
        vectors.push_back(vector_to_json(v));
    }
    j["vectors"] = std::move(vectors);
    j["target"] = vector_to_json(instance.target());
    return j;
}

Instance instance_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw InvalidInput("instance must be a JSON object");
    }
    if (j.value("schema", std::string{}) != kInstanceSchema) {
        throw InvalidInput(std::string("instance schema must be \"") + kInstanceSchema + "\"");
    }
    for (const char* key : {"dimension", "norm", "vectors", "target"}) {
        if (!j.contains(key)) {
            throw InvalidInput(std::string("instance is missing \"") + key + "\"");
        }
    }
    if (!j["dimension"].is_number_integer() || j["dimension"].get<std::int64_t>() < 1) {
        throw InvalidInput("instance dimension must be a positive integer");
    }
    const auto dimension = j["dimension"].get<std::int64_t>();
    if (!j["norm"].is_string()) {
        throw InvalidInput("instance norm must be a string");
    }
    NormSpec norm = NormSpec::parse(j["norm"].get<std::string>());
    if (!j["vectors"].is_array()) {
        throw InvalidInput("instance vectors must be an array");
    }
    std::vector<RVector> vectors;
    for (const auto& v : j["vectors"]) {
        vectors.push_back(vector_from_json(v));
        if (vectors.back().size() != dimension) {
            throw DimensionMismatch("vector " + std::to_string(vectors.size() - 1) + " does not have dimension " +
                                    std::to_string(dimension));
        }
    }
    RVector target = vector_from_json(j["target"]);
    if (target.size() != dimension) {
        throw DimensionMismatch("target does not have dimension " + std::to_string(dimension));
    }
    return Instance(std::move(vectors), std::move(target), std::move(norm));
}

Json report_to_json(const VerificationReport& report)
{
    Json j;
    j["schema"] = kVerificationSchema;
    j["p_exact"] = rational_to_json(report.p_exact);
    j["p_projected"] = report.p_projected ? rational_to_json(*report.p_projected) : Json(nullptr);
    j["bound"] = rational_to_json(report.bound);
    j["k"] = integer_to_json(report.k);
    j["delta"] = report.delta;
    j["chain_holds"] = report.chain_holds;
    j["tight"] = report.tight;
    j["perturbed"] = report.perturbed;
    j["float_mode"] = report.float_mode;
    if (report.witness) {
        Json w;
        w["direction"] = vector_to_json(report.witness->direction);
        w["scale"] = report.witness->scale.str();
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInput("cannot write " + path.string());
    }
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nulo::textio
