#pragma once

// Structured text forms of instances and verification reports.
//
// Files are JSON objects whose first key is "schema" (name/version). Every
// rational is written as a canonical "p/q" string ("p" when q = 1). Keys are
// emitted in a fixed order so equal values serialize to identical bytes.

#include "nulo/reduction.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace nulo::textio {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "nulo-instance/1";
inline constexpr const char* kVerificationSchema = "nulo-verification/1";

[[nodiscard]] Json rational_to_json(const Rational& q);
/// Accepts "p/q" strings and JSON integers. Throws InvalidInput.
[[nodiscard]] Rational rational_from_json(const Json& j);

[[nodiscard]] Json vector_to_json(const RVector& v);
[[nodiscard]] RVector vector_from_json(const Json& j);

[[nodiscard]] Json integer_to_json(const Integer& z);

[[nodiscard]] Json instance_to_json(const Instance& instance);
/// Throws InvalidInput on schema, shape or hypothesis errors.
[[nodiscard]] Instance instance_from_json(const Json& j);

[[nodiscard]] Json report_to_json(const VerificationReport& report);

/// Reads and parses a whole JSON file. Throws InvalidInput.
[[nodiscard]] Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Two-space indented dump with a trailing newline.
[[nodiscard]] std::string dump(const Json& j);

}  // namespace nulo::textio
