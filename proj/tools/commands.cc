#include "commands.hh"

#include <finlab/errors.hh>

#include <boost/algorithm/string.hpp>

#include <algorithm>
#include <fstream>

using namespace finlab;

auto cli::command_specs() -> const std::vector<CommandSpec> &
{
    static const std::vector<CommandSpec> specs{
        { "ramsey", "Ramsey number with exactness flag and enumeration certificate", false,
          { "m", "max_tabled", "binomial_limit", "certify" } },
        { "f-bound", "the F(n,k) recursion", false,
          { "n", "k", "max_tabled", "binomial_limit" } },
        { "schur", "least monochromatic Schur triple among the evens", false,
          { "g", "bound" } },
        { "fu-search", "disjoint family with monochromatic finite unions", false,
          { "colouring", "ground", "s", "budget" } },
        { "colour", "evaluate one named colouring", false,
          { "colouring", "x", "ground", "support", "arity", "number", "g" } },
        { "hindman", "check-mono | check-card | check-bound | star | schur-fs3 | induction", true,
          { "family", "n", "k", "target", "max_tabled", "binomial_limit", "budget", "z_set", "z", "g", "bound", "size", "rows", "cols" } },
        { "fm", "permutation-model witness replays", false,
          { "model", "verify", "atoms", "block_size", "rows", "cols", "blocks", "structure", "arity", "vertices", "seed",
            "demand", "vertex_budget", "file", "n", "support", "colouring", "reps", "choice", "sweep", "seq", "x",
            "row_perm", "col_perm", "k" } },
        { "rado", "build | query | extend", true,
          { "structure", "arity", "vertices", "seed", "demand", "vertex_budget", "file", "over", "certify",
            "positive", "negative", "exclude", "above", "below", "map", "target" } },
    };
    return specs;
}

auto cli::flag_name(const std::string & key) -> std::string
{
    auto f = key;
    std::replace(f.begin(), f.end(), '_', '-');
    return "--" + f;
}

auto cli::read_config(const std::filesystem::path & path, const CommandSpec & spec) -> std::map<std::string, std::string>
{
    std::ifstream in{path};
    if (! in)
        throw InvalidInput{path.string() + ": cannot open config file"};
    std::map<std::string, std::string> values;
    std::string line;
    for (std::size_t number = 1 ; std::getline(in, line) ; ++number) {
        auto where = path.string() + ":" + std::to_string(number) + ": ";
        if (auto hash = line.find('#') ; hash != std::string::npos)
            line.erase(hash);
        boost::trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInput{where + "expected key=value"};
        auto key = boost::trim_copy(line.substr(0, eq));
        auto value = boost::trim_copy(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');
        bool known = std::find(spec.keys.begin(), spec.keys.end(), key) != spec.keys.end() || (spec.has_verb && key == "verb");
        if (! known)
            throw InvalidInput{where + "unknown key '" + key + "' for " + spec.name};
        if (value.empty())
            throw InvalidInput{where + "key '" + key + "' has no value"};
        if (! values.emplace(key, value).second)
            throw InvalidInput{where + "key '" + key + "' repeated"};
    }
    return values;
}

auto cli::assemble_input(const CommandSpec & spec, const std::optional<std::string> & verb,
        const std::map<std::string, std::string> & config, const std::map<std::string, std::string> & flags) -> Json
{
    Json input{ { "command", spec.name } };
    for (auto & [k, v] : config)
        input[k] = v;
    for (auto & [k, v] : flags)
        input[k] = v;
    if (verb)
        input["verb"] = *verb;
    return input;
}
