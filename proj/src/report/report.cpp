#include "envsieve/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fftw3.h>
#include <gmp.h>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/parallel.hpp"

namespace envsieve::report {

json versions() {
    json v = json::object();
    v["tool"] = kToolVersion;
    v["fftw"] = std::string(fftw_version);
    v["gmp"] = std::string(gmp_version);
    v["isa"] = std::string(kernels::isa_name(kernels::active_isa()));
    v["threads"] = thread_count();
    v["cache"] = "PRIMV1:" + arith::cache_directory().string();
    return v;
}

json manifest_json(const RunManifest& m) {
    json j = json::object();
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["versions"] = versions();
    j["timestamp"] = m.timestamp;
    return j;
}

json wrap(const RunManifest& m, json result) {
    json j = json::object();
    j["schema"] = kSchema;
    j["manifest"] = manifest_json(m);
    j["result"] = std::move(result);
    return j;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Rational& r) { return to_string(r); }

void put(json& obj, const std::string& key, json value, const std::string& rule) {
    obj[key] = std::move(value);
    obj[key + "_rule"] = rule;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !(j.size() == 2 && j[0].is_number() && j[1].is_number())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        if (j.empty()) out.emplace_back(prefix, "[]");
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

}  // namespace

std::string pretty_table(const json& j) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows) os << k << std::string(width + 2 - k.size(), ' ') << v << '\n';
    return os.str();
}

void write_csv(std::ostream& os, const CsvRow& header, const std::vector<CsvRow>& rows) {
    auto line = [&](const CsvRow& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            os << r[i];
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw ContractError("CSV row width differs from the header");
        line(r);
    }
}

void export_plotdata(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_csv(os, header, rows);
    if (!os) throw IoError("write to " + path.string() + " failed");
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace envsieve::report
