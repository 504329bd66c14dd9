#pragma once

// Versioned JSON reports, run manifests and CSV export shared by the CLI and
// the acceptance battery.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "envsieve/numbers.hpp"

namespace envsieve::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "sr-1";
inline constexpr const char* kToolVersion = "0.3.0";

struct RunManifest {
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::string timestamp;  // caller supplied so identical manifests give identical bytes
};

/// Tool, library and cache identifiers recorded in every manifest.
json versions();
json manifest_json(const RunManifest& m);
/// {"schema", "manifest", "result"}
json wrap(const RunManifest& m, json result);

json to_json(cplx z);                // [re, im]
json to_json(const Rational& r);     // "num/den"

/// obj[key] = value and obj[key + "_rule"] = rule.
void put(json& obj, const std::string& key, json value, const std::string& rule);

/// One "path  value" line per leaf, for --pretty.
std::string pretty_table(const json& j);

using CsvRow = std::vector<std::string>;
void write_csv(std::ostream& os, const CsvRow& header, const std::vector<CsvRow>& rows);
/// Throws IoError when the file cannot be written.
void export_plotdata(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows);

/// Shortest round-trip text for a double, used for CSV cells.
std::string format_double(double x);

}  // namespace envsieve::report
