#include "commands.hh"

#include <finlab/errors.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace finlab;

namespace
{
    auto write_out(const std::string & path, const std::string & text) -> void
    {
        std::ofstream out{path, std::ios::binary};
        if (! out || ! (out << text))
            throw std::runtime_error{path + ": cannot write report"};
    }

    auto finish(const Json & report, const std::string & out) -> int
    {
        auto verdict = report_verdict(report);
        if (out.empty())
            std::cout << emit(report);
        else {
            write_out(out, emit(report));
            std::cout << to_string(verdict) << " " << out << "\n";
        }
        if (report.contains("error"))
            std::cerr << "finlab: " << report["error"].at("kind").get<std::string>() << ": "
                      << report["error"].at("message").get<std::string>() << "\n";
        return exit_code(verdict);
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"finite combinatorics and permutation-model witnesses"};
    app.require_subcommand(1);

    unsigned workers = 1;
    bool timing = false;
    std::string out, config;
    app.add_option("--workers", workers, "worker threads for searches")->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "record wall time in the report");
    app.add_option("--out", out, "write the report here instead of stdout");
    app.add_option("--config", config, "flat key=value file; flags win")->check(CLI::ExistingFile);

    struct Bound
    {
        const cli::CommandSpec * spec;
        CLI::App * sub;
        std::string verb;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option *> options;
    };
    std::vector<std::unique_ptr<Bound>> bound;
    for (auto & spec : cli::command_specs()) {
        auto b = std::make_unique<Bound>();
        b->spec = &spec;
        b->sub = app.add_subcommand(spec.name, spec.summary);
        if (spec.has_verb)
            b->sub->add_option("verb", b->verb, "action")->required();
        for (auto & key : spec.keys) {
            auto names = cli::flag_name(key);
            if (key == "bound")
                names += ",--B";
            b->options[key] = b->sub->add_option(names, b->values[key]);
        }
        bound.push_back(std::move(b));
    }

    std::string reverify_path;
    auto reverify = app.add_subcommand("reverify", "re-run and re-check a saved report");
    reverify->add_option("report", reverify_path, "report file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (reverify->parsed()) {
            std::ifstream in{reverify_path};
            auto result = reverify_report(Json::parse(in));
            std::cout << to_string(result.verdict) << ": " << result.detail << "\n";
            return exit_code(result.verdict);
        }
        for (auto & b : bound) {
            if (! b->sub->parsed())
                continue;
            std::map<std::string, std::string> flags, file_values;
            for (auto & [key, opt] : b->options)
                if (opt->count())
                    flags[key] = b->values[key];
            if (! config.empty())
                file_values = cli::read_config(config, *b->spec);
            std::optional<std::string> verb;
            if (b->spec->has_verb)
                verb = b->verb;
            auto input = cli::assemble_input(*b->spec, verb, file_values, flags);
            return finish(run_report(input, RunOptions{workers, timing}), out);
        }
    }
    catch (const std::exception & e) {
        std::cerr << "finlab: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
