#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "plurigreen/cases.hpp"
#include "plurigreen/exponents.hpp"
#include "plurigreen/extremal.hpp"
#include "plurigreen/polynomial.hpp"
#include "plurigreen/transforms.hpp"
#include "plurigreen/variety.hpp"

namespace plurigreen {

using Json = nlohmann::json;  // keys sorted, so dumps are stable

// Structural problems in input documents raise InvalidSpec.

Json to_json(Complex c);
Json to_json(const Point& z);
Point point_from_json(const Json& j);

/// {"num_vars": n, "laurent": b, "terms": [{"exp": [...], "re": r, "im": i}, ...]}
/// in graded-lex order. Doubles survive the round trip bit for bit.
Json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

Json to_json(const VarietySpec& v);
/// Accepts a bare variety document or one with a "variety" member.
VarietySpec variety_from_json(const Json& j);

Json to_json(const CompactSetSpec& k);
/// Accepts a bare compact document or one with a "compact" member.
CompactSetSpec compact_from_json(const Json& j);

/// Non-finite reals are written as the strings "inf", "-inf" and "nan".
Json real_to_json(double x);
double real_from_json(const Json& j);

Json to_json(const ExactExponents& e);
Json to_json(const ExponentEstimate& e);
Json to_json(const PropernessReport& r);
Json to_json(const ConeReport& r);
Json metadata_json(const GreenEstimate& est);
Json to_json(const TransformReport& r);
Json to_json(const BwReport& r);
Json to_json(const EqualityMode& m);

/// Variety, maps, compact sets, exact values and provenance of a case; the
/// oracles are code and are listed by name only.
Json to_json(const CaseRecord& c);

// CSV (RFC 4180, shortest round-trip numbers).

std::string format_real(double x);
/// 2N columns, real and imaginary parts interleaved.
std::string design_csv(const SampleDesign& design);
/// Coordinates followed by a value column.
std::string grid_csv(const std::vector<Point>& points, const std::vector<double>& values,
                     const std::string& value_name = "value");
std::string to_csv(const TransformReport& r);
std::string to_csv(const BwReport& r);

/// Throws SpecIO when the file cannot be read and Parse when it is not JSON.
Json read_json_file(const std::filesystem::path& path);
/// Throws SpecIO on failure. Creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace plurigreen
