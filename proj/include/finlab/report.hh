#pragma once

#include <finlab/finset.hh>
#include <finlab/fm.hh>
#include <finlab/partial_aut.hh>
#include <finlab/rado.hh>
#include <finlab/ramsey.hh>
#include <finlab/verdict.hh>

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace finlab
{
    // std::map keys, so dumps come out key-sorted
    using Json = nlohmann::json;

    inline constexpr std::string_view schema_version = "1";

    auto to_json(const FinSet &) -> Json;
    auto to_json(const SetFamily &) -> Json;
    // {"map": [[a, b], ...], "theory": ..., "status": ..., "fixes_rest": ...}
    auto to_json(const PartialAut &) -> Json;
    auto to_json(const BigInt &) -> Json;
    auto to_json(const RadoStructure &) -> Json;

    // Accept either JSON arrays or the flag spellings "0,1,2", "0,1;2,3" and "0:1,2:3".
    auto finset_from(const Json &) -> FinSet;
    auto family_from(const Json &) -> SetFamily;
    auto atom_map_from(const Json &) -> std::map<Atom, Atom>;
    auto partial_aut_from(const Json &) -> PartialAut;
    auto structure_from(const Json &) -> RadoStructure;

    // parity-log2, mod4, const0, const1, mask:<bits> (bit i colours 2(i + 1))
    // JSON table file; InvalidInput names the path
    auto table_colouring(const std::filesystem::path & path) -> Colouring;

    auto number_colouring(std::string_view name) -> NumberColouring;

    // log2, mod4, const0, const1, meets-support, least-parity, paley (q = ground size),
    // partition:<blocks> ("0,1;2,3"), grid:<rows>x<cols>, table:<path>
    auto set_colouring(std::string_view name, std::size_t ground, std::optional<std::size_t> arity, const FinSet & support) -> Colouring;

    struct RunOptions
    {
        unsigned workers = 1;
        bool timing = false;
    };

    // Fills defaults into the input echo and dispatches on input["command"]; library errors propagate.
    auto run(const Json & input, const RunOptions & = {}) -> Json;

    // run, with library errors folded into an ERROR / INCONCLUSIVE / ABSENT report
    auto run_report(const Json & input, const RunOptions & = {}) -> Json;

    auto report_verdict(const Json & report) -> Verdict;
    auto parse_verdict(std::string_view) -> Verdict;

    // Re-runs the recorded input, demands an identical witness and re-checks it directly.
    struct ReverifyResult
    {
        Verdict verdict = Verdict::error;
        std::string detail;
    };
    auto reverify_report(const Json & report) -> ReverifyResult;

    // two-space indent, sorted keys, trailing newline
    auto emit(const Json & report) -> std::string;

    // PASS and ABSENT 0, FAIL 1, ERROR 2, INCONCLUSIVE 3
    auto exit_code(Verdict) -> int;
}
