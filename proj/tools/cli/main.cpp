#include <iostream>
#include <memory>

#include "commands.hpp"
#include "envsieve/errors.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/parallel.hpp"

namespace {

std::string strip_dashes(std::string name) {
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    return name;
}

// Every option of the leaf command, given or defaulted, in declaration order.
cli::json collect_parameters(const CLI::App& app) {
    cli::json p = cli::json::object();
    for (const CLI::Option* opt : app.get_options()) {
        std::string name = strip_dashes(opt->get_name());
        if (name.empty() || name == "help") continue;
        if (opt->count() > 0) {
            auto r = opt->reduced_results();
            p[name] = r.size() == 1 ? cli::json(r[0]) : cli::json(r);
        } else if (opt->get_expected_min() == 0) {
            p[name] = false;
        } else {
            p[name] = opt->get_default_str();
        }
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enveloping-sieve experiments: Selberg weights, Fourier coefficients, L^p norms, transference and Chen primes."};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    unsigned threads = 0;
    std::string isa = "auto";
    std::string timestamp;
    app.add_flag("--pretty", pretty, "Print a key/value table instead of JSON");
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--isa", isa, "Kernel variant: scalar, avx2 or auto")->check(CLI::IsMember({"scalar", "avx2", "auto"}));
    app.add_option("--timestamp", timestamp, "Timestamp recorded verbatim in the manifest");

    std::vector<cli::Command> commands;
    cli::add_forms_commands(app, commands);
    cli::add_selberg_commands(app, commands);
    cli::add_gy_commands(app, commands);
    cli::add_spectra_commands(app, commands);
    cli::add_transfer_commands(app, commands);
    cli::add_chen_commands(app, commands);
    cli::add_suite_commands(app, commands);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : envsieve::exit_code(envsieve::ErrorKind::usage);
    }

    try {
        if (threads) envsieve::set_thread_count(threads);
        if (isa != "auto") envsieve::kernels::set_isa(*envsieve::kernels::parse_isa(isa));
        for (auto& c : commands) {
            if (!c.app->parsed()) continue;
            envsieve::report::RunManifest m;
            std::string path;
            for (const CLI::App* a = c.app; a && a->get_parent(); a = a->get_parent())
                path = a->get_name() + (path.empty() ? "" : " " + path);
            m.command = path;
            m.parameters = collect_parameters(*c.app);
            if (m.parameters.contains("seed")) m.seed = std::stoull(m.parameters["seed"].get<std::string>());
            m.timestamp = timestamp;
            auto out = envsieve::report::wrap(m, c.run());
            if (pretty)
                std::cout << envsieve::report::pretty_table(out);
            else
                std::cout << out.dump(2) << '\n';
            return c.exit_code;
        }
    } catch (const envsieve::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return envsieve::exit_code(e.kind());
    } catch (const cli::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return envsieve::exit_code(envsieve::ErrorKind::usage);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return envsieve::exit_code(envsieve::ErrorKind::usage);
}
