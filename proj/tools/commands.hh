#pragma once

#include <finlab/report.hh>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finlab::cli
{
    struct CommandSpec
    {
        std::string name;
        std::string summary;
        // verb is positional; every other key is a --flag and a config key
        bool has_verb = false;
        std::vector<std::string> keys;
    };

    auto command_specs() -> const std::vector<CommandSpec> &;

    // flat key=value lines, '#' starts a comment; InvalidInput names path:line on any problem
    auto read_config(const std::filesystem::path & path, const CommandSpec & spec) -> std::map<std::string, std::string>;

    // config first, flags on top
    auto assemble_input(const CommandSpec & spec, const std::optional<std::string> & verb,
            const std::map<std::string, std::string> & config, const std::map<std::string, std::string> & flags) -> Json;

    // --max-tabled for max_tabled
    auto flag_name(const std::string & key) -> std::string;
}
