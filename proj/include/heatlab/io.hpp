#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "heatlab/calculus.hpp"
#include "heatlab/heat_content.hpp"
#include "heatlab/theorems.hpp"

namespace heatlab {

struct DomainSpec {
  Domain domain;
  InitialDatum datum;
};

// Domain spec JSON:
//   {"space": {"euclidean": m} | {"circle": L},
//    "shape": {"ball": {"center": [..], "r": r}} | {"annulus": {"center": [..], "r1": a, "r2": b}}
//           | {"box": {"lo": [..], "hi": [..]}} | {"arc": {"start": s, "length": l}} | {"union": [shape, ..]},
//    "datum": {"one": {}} | {"indicator": shape} | {"radial_power": {"alpha": a}}}   (optional, default one)
// Unknown keys are rejected. Errors are ParseError with line:column for syntax and a JSON path
// for content problems.
DomainSpec parse_domain_spec(std::string_view text);
DomainSpec load_domain_spec(const std::filesystem::path& path);

// t,value,std_error,n,method with 17 significant digits
void write_curve_csv(const Curve& curve, std::ostream& out);
void write_curve_csv(const Curve& curve, const std::filesystem::path& path);
Curve read_curve_csv(std::istream& in);

std::string format_double(double v);

nlohmann::ordered_json to_json(const Estimate& e);
nlohmann::ordered_json to_json(const Curve& c);
nlohmann::ordered_json to_json(const ScanReport& s);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const CmThreshold& c);

VerificationReport report_from_json(const nlohmann::ordered_json& j);

std::string to_text(const VerificationReport& r);
std::string to_text(const ScanReport& s);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace heatlab
