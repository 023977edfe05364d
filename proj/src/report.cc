#include <finlab/report.hh>
#include <finlab/colourings.hh>
#include <finlab/errors.hh>

#include <boost/algorithm/string.hpp>

#include <charconv>
#include <fstream>

using namespace finlab;

namespace
{
    auto split(const std::string & s, const char * seps) -> std::vector<std::string>
    {
        std::vector<std::string> parts;
        boost::split(parts, s, boost::is_any_of(seps));
        for (auto & p : parts)
            boost::trim(p);
        std::erase_if(parts, [] (auto & p) { return p.empty(); });
        return parts;
    }

    auto parse_atom(const std::string & s) -> Atom
    {
        Atom v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw InvalidInput{"'" + s + "' is not an atom id"};
        return v;
    }

    auto is_atom_number(const Json & j) -> bool
    {
        return j.is_number_integer() && j.get<std::int64_t>() >= 0 && j.get<std::int64_t>() <= INT64_C(0xffffffff);
    }

    auto atom_from(const Json & j) -> Atom
    {
        if (is_atom_number(j))
            return j.get<Atom>();
        if (j.is_string())
            return parse_atom(j.get<std::string>());
        throw InvalidInput{"expected an atom id, got " + j.dump()};
    }
}

auto finlab::to_json(const FinSet & s) -> Json
{
    return Json(s.elements());
}

auto finlab::to_json(const SetFamily & f) -> Json
{
    auto j = Json::array();
    for (auto & m : f.members())
        j.push_back(to_json(m));
    return j;
}

auto finlab::to_json(const PartialAut & p) -> Json
{
    auto map = Json::array();
    for (auto & [a, b] : p.entries())
        map.push_back({ a, b });
    return {
        { "map", map },
        { "theory", p.theory() },
        { "status", p.status() == AutStatus::verified_extendable ? "verified-extendable" : "raw" },
        { "fixes_rest", p.fixes_rest() }
    };
}

auto finlab::to_json(const BigInt & v) -> Json
{
    return v.str();
}

auto finlab::to_json(const RadoStructure & s) -> Json
{
    Json j{
        { "kind", s.kind() == RadoStructure::Kind::bit ? "bit" : "hypergraph" },
        { "arity", s.arity() },
        { "vertex_count", s.vertex_count() },
        { "base_count", s.base_count() },
        { "seed", s.seed() },
        { "ordered", s.ordered() },
        { "certified_demand", s.certified_demand() },
        { "repair_passes", s.repair_passes() }
    };
    if (s.kind() == RadoStructure::Kind::hypergraph) {
        auto edges = Json::array();
        for (auto & e : s.edges())
            edges.push_back(to_json(e));
        j["edges"] = edges;
    }
    if (s.ordered()) {
        auto pos = Json::array();
        for (auto & p : s.positions())
            pos.push_back(p.str());
        j["positions"] = pos;
    }
    return j;
}

auto finlab::finset_from(const Json & j) -> FinSet
{
    std::vector<Atom> v;
    if (j.is_array())
        for (auto & e : j)
            v.push_back(atom_from(e));
    else if (j.is_string())
        for (auto & p : split(j.get<std::string>(), ", "))
            v.push_back(parse_atom(p));
    else if (is_atom_number(j))
        v.push_back(j.get<Atom>());
    else if (! j.is_null())
        throw InvalidInput{"expected a set of atoms, got " + j.dump()};
    return FinSet{std::move(v)};
}

auto finlab::family_from(const Json & j) -> SetFamily
{
    std::vector<FinSet> members;
    if (j.is_array())
        for (auto & m : j)
            members.push_back(finset_from(m));
    else if (j.is_string()) {
        // "{}" or a lone "-" spells the empty member
        for (auto & p : split(j.get<std::string>(), ";"))
            members.push_back(p == "-" || p == "{}" ? FinSet{} : finset_from(Json(p)));
    }
    else if (! j.is_null())
        throw InvalidInput{"expected a family of sets, got " + j.dump()};
    return SetFamily{std::move(members)};
}

auto finlab::atom_map_from(const Json & j) -> std::map<Atom, Atom>
{
    std::map<Atom, Atom> m;
    auto put = [&] (Atom a, Atom b) {
        if (! m.emplace(a, b).second)
            throw InvalidInput{"atom " + std::to_string(a) + " is mapped twice"};
    };
    if (j.is_array())
        for (auto & e : j) {
            if (! e.is_array() || e.size() != 2)
                throw InvalidInput{"map entries are [from, to] pairs"};
            put(atom_from(e[0]), atom_from(e[1]));
        }
    else if (j.is_string())
        for (auto & p : split(j.get<std::string>(), ", ")) {
            auto ab = split(p, ":");
            if (ab.size() != 2)
                throw InvalidInput{"map entry '" + p + "' is not from:to"};
            put(parse_atom(ab[0]), parse_atom(ab[1]));
        }
    else if (! j.is_null())
        throw InvalidInput{"expected an atom map, got " + j.dump()};
    return m;
}

auto finlab::partial_aut_from(const Json & j) -> PartialAut
{
    auto map = atom_map_from(j.is_object() ? j.at("map") : j);
    std::string theory = j.is_object() ? j.value("theory", "") : "";
    if (j.is_object() && j.value("fixes_rest", false))
        return PartialAut::finitary(map, theory);
    PartialAut p{map, theory};
    if (j.is_object() && j.value("status", "raw") == "verified-extendable")
        p.mark_verified(theory);
    return p;
}

auto finlab::structure_from(const Json & j) -> RadoStructure
{
    if (j.at("kind") == "bit")
        return RadoStructure::bit_graph(j.at("vertex_count").get<std::size_t>());
    std::vector<FinSet> edges;
    for (auto & e : j.at("edges"))
        edges.push_back(finset_from(e));
    std::vector<Rational> positions;
    if (j.value("ordered", false))
        for (auto & p : j.at("positions"))
            positions.emplace_back(p.get<std::string>());
    return RadoStructure::from_edges(j.at("arity").get<std::size_t>(), j.at("vertex_count").get<std::size_t>(),
            j.value("base_count", j.at("vertex_count").get<std::size_t>()), j.value("seed", std::uint64_t{0}),
            j.value("certified_demand", std::size_t{0}), edges, std::move(positions));
}

auto finlab::number_colouring(std::string_view name) -> NumberColouring
{
    if (name == "parity-log2")
        return [] (std::uint64_t m) {
            if (m == 0)
                throw DomainError{"parity-log2 is undefined at 0"};
            return colour_from((std::bit_width(m) - 1) % 2);
        };
    if (name == "mod4")
        return [] (std::uint64_t m) { return colour_from(m % 4 >= 2); };
    if (name == "const0" || name == "const1") {
        auto c = colour_from(name == "const1");
        return [c] (std::uint64_t) { return c; };
    }
    if (name.starts_with("mask:")) {
        std::string bits{name.substr(5)};
        if (bits.empty() || bits.find_first_not_of("01") != std::string::npos)
            throw InvalidInput{"mask colourings are written mask:<0/1 string>"};
        return [bits] (std::uint64_t m) {
            if (m < 2 || m % 2 || m / 2 > bits.size())
                throw DomainError{"mask colouring covers the evens 2.." + std::to_string(2 * bits.size())};
            return colour_from(bits[m / 2 - 1] == '1');
        };
    }
    throw InvalidInput{"unknown number colouring '" + std::string{name} + "'"};
}

// {"ground": N, "arity": n or null, "entries": [[set, colour], ...]}
auto finlab::table_colouring(const std::filesystem::path & path) -> Colouring
{
    std::ifstream in{path};
    if (! in)
        throw InvalidInput{path.string() + ": cannot open colouring table"};
    Json j;
    try {
        j = Json::parse(in);
    }
    catch (const Json::exception & e) {
        throw InvalidInput{path.string() + ": " + e.what()};
    }
    if (! j.contains("ground") || ! j.contains("entries"))
        throw InvalidInput{path.string() + ": a colouring table needs 'ground' and 'entries'"};
    std::optional<std::size_t> arity;
    if (j.contains("arity") && ! j["arity"].is_null())
        arity = j["arity"].get<std::size_t>();
    Colouring::Table table;
    for (auto & e : j["entries"]) {
        if (! e.is_array() || e.size() != 2 || ! e[1].is_number_integer() || e[1].get<int>() < 0 || e[1].get<int>() > 1)
            throw InvalidInput{path.string() + ": entry " + e.dump() + " is not [set, 0 or 1]"};
        if (! table.emplace(finset_from(e[0]), colour_from_int(e[1].get<int>())).second)
            throw InvalidInput{path.string() + ": entry " + e[0].dump() + " repeats"};
    }
    return Colouring::from_table("table:" + path.string(), j["ground"].get<std::size_t>(), arity, std::move(table));
}

auto finlab::set_colouring(std::string_view name, std::size_t ground, std::optional<std::size_t> arity, const FinSet & support) -> Colouring
{
    if (name == "log2")
        return log2_colouring_on(ground).with_arity(arity);
    if (name == "mod4")
        return mod4_colouring_on(ground).with_arity(arity);
    if (name == "const0" || name == "const1")
        return Colouring::constant(ground, arity, colour_from(name == "const1"));
    if (name == "meets-support")
        return Colouring{"meets-support", ground, arity, [support] (const FinSet & x) { return colour_from(x.intersects(support)); }};
    if (name == "least-parity")
        return Colouring{"least-parity", ground, arity, [] (const FinSet & x) { return colour_from(x.min() % 2); }};
    if (name == "paley")
        return paley_colouring(static_cast<unsigned>(ground));
    if (name.starts_with("partition:"))
        return partition_colouring_on(Partition{family_from(Json(std::string{name.substr(10)})).members()}).with_arity(arity);
    if (name.starts_with("grid:")) {
        // grid:<rows>x<cols>
        auto dims = std::string{name.substr(5)};
        auto x = dims.find('x');
        if (x == std::string::npos)
            throw InvalidInput{"grid colouring needs <rows>x<cols>, got '" + dims + "'"};
        GridShape g{ parse_atom(dims.substr(0, x)), parse_atom(dims.substr(x + 1)) };
        return grid_colouring_on(g).with_arity(arity);
    }
    if (name.starts_with("table:"))
        return table_colouring(std::string{name.substr(6)});
    throw InvalidInput{"unknown set colouring '" + std::string{name} + "'"};
}

auto finlab::parse_verdict(std::string_view s) -> Verdict
{
    for (auto v : { Verdict::pass, Verdict::fail, Verdict::absent, Verdict::inconclusive, Verdict::error })
        if (to_string(v) == s)
            return v;
    throw InvalidInput{"unknown verdict '" + std::string{s} + "'"};
}

auto finlab::report_verdict(const Json & report) -> Verdict
{
    return parse_verdict(report.at("verdict").get<std::string>());
}

auto finlab::emit(const Json & report) -> std::string
{
    return report.dump(2) + "\n";
}

auto finlab::exit_code(Verdict v) -> int
{
    switch (v) {
        case Verdict::pass:
        case Verdict::absent:       return 0;
        case Verdict::fail:         return 1;
        case Verdict::error:        return 2;
        case Verdict::inconclusive: return 3;
    }
    return 2;
}
