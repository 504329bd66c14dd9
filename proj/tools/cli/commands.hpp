#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "envsieve/forms.hpp"
#include "envsieve/numbers.hpp"
#include "envsieve/report.hpp"

namespace cli {

using envsieve::report::json;

struct Command {
    CLI::App* app;
    std::function<json()> run;
    int exit_code = 0;  // set by run() for commands whose outcome is a verdict
};

void add_forms_commands(CLI::App& root, std::vector<Command>& out);
void add_selberg_commands(CLI::App& root, std::vector<Command>& out);
void add_gy_commands(CLI::App& root, std::vector<Command>& out);
void add_spectra_commands(CLI::App& root, std::vector<Command>& out);
void add_transfer_commands(CLI::App& root, std::vector<Command>& out);
void add_chen_commands(CLI::App& root, std::vector<Command>& out);
void add_suite_commands(CLI::App& root, std::vector<Command>& out);

// Shared parsing helpers; all throw envsieve::ParseError.
envsieve::Rational parse_rational(const std::string& text);
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text);
std::vector<std::uint64_t> parse_list(const std::string& text);

}  // namespace cli
