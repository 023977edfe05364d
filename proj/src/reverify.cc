#include <finlab/report.hh>
#include <finlab/colourings.hh>
#include <finlab/errors.hh>
#include <finlab/hindman.hh>
#include <finlab/hset.hh>
#include <finlab/rado_witness.hh>

#include <algorithm>
#include <set>

using namespace finlab;

using std::optional;
using std::string;

namespace
{
    auto colour_at(const Json & j) -> Colour
    {
        return colour_from_int(j.get<int>());
    }

    auto set_at(const Json & w, const char * key) -> FinSet
    {
        return finset_from(w.at(key));
    }

    // every m-subset of K_n under the edge mask has both colours; edges in lexicographic order
    auto no_mono_clique(std::uint64_t mask, unsigned n, unsigned m) -> bool
    {
        auto edge_index = [n] (unsigned i, unsigned j) {
            unsigned idx = 0;
            for (unsigned a = 0 ; a < i ; ++a)
                idx += n - 1 - a;
            return idx + (j - i - 1);
        };
        bool clean = true;
        for_each_subset_of_size(FinSet::range(n), m, [&] (const FinSet & s) {
            std::set<int> seen;
            for (std::size_t a = 0 ; a < s.size() ; ++a)
                for (std::size_t b = a + 1 ; b < s.size() ; ++b)
                    seen.insert((mask >> edge_index(s[a], s[b])) & 1);
            if (m >= 2 && seen.size() == 1)
                clean = false;
            if (m == 1)
                clean = false;
            return clean;
        });
        return clean;
    }

    auto check_ramsey(const Json & w) -> optional<string>
    {
        if (! w.contains("certificate"))
            return std::nullopt;
        auto & c = w["certificate"];
        auto m = w.at("m").get<unsigned>();
        auto v = std::stoul(w.at("value").get<string>());
        auto below = v - 1;
        if (c.at("colourings_below").get<std::uint64_t>() != (std::uint64_t{1} << (below * (below ? below - 1 : 0) / 2)))
            return "wrong number of colourings below";
        if (c.at("colourings_above").get<std::uint64_t>() != (std::uint64_t{1} << (v * (v - 1) / 2)))
            return "wrong number of colourings above";
        if (c.at("failures_above").get<std::uint64_t>() != 0 || c.at("witnesses_below").get<std::uint64_t>() == 0)
            return "certificate counts do not certify the value";
        if (! no_mono_clique(c.at("lower_witness").get<std::uint64_t>(), static_cast<unsigned>(below), m))
            return "lower witness has a monochromatic clique";
        return std::nullopt;
    }

    auto check_schur(const Json & in, const Json & w) -> optional<string>
    {
        auto g = number_colouring(in.at("g").get<string>());
        auto m = w.at("m").get<std::uint64_t>(), mp = w.at("m_prime").get<std::uint64_t>();
        if (m % 2 || mp % 2 || m >= mp || m + mp > in.at("bound").get<std::uint64_t>())
            return "triple is out of shape";
        if (g(m) != g(mp) || g(m) != g(m + mp))
            return "triple is not monochromatic";
        return std::nullopt;
    }

    auto check_fu(const Json & in, const Json & w) -> optional<string>
    {
        auto fam = family_from(w.at("family"));
        auto c = set_colouring(in.at("colouring").get<string>(), in.at("ground").get<std::size_t>(), std::nullopt, {});
        if (fam.size() != in.at("s").get<std::size_t>() || ! is_pairwise_disjoint(fam))
            return "family is not a disjoint family of the requested size";
        auto unions = fu(fam);
        for (auto & u : unions)
            if (c(u) != colour_at(w.at("colour")))
                return "a union has the other colour";
        return std::nullopt;
    }

    auto check_hindman(const Json & in, const Json & w) -> optional<string>
    {
        auto verb = in.at("verb").get<string>();
        if (w.contains("violation")) {
            auto & v = w["violation"];
            ViolationReport r;
            auto kind = v.at("kind").get<string>();
            for (auto k : { ViolationKind::disjoint_equal_cardinality, ViolationKind::colour_mismatch, ViolationKind::bound_breach })
                if (to_string(k) == kind)
                    r.kind = k;
            for (auto & x : v.at("witnesses"))
                r.witnesses.push_back(finset_from(x));
            for (auto & c : v.at("colours"))
                r.colours.push_back(colour_at(c));
            r.cardinalities = v.at("cardinalities").get<std::vector<std::size_t>>();
            if (v.contains("bound"))
                r.bound = BigInt{v["bound"].get<string>()};
            return reverify(r) ? std::nullopt : optional<string>{"violation does not re-verify"};
        }
        if (verb == "schur-fs3") {
            auto fam = family_from(w.at("family"));
            auto g = number_colouring(in.at("g").get<string>());
            for (auto & s : fs_up_to(fam, 3))
                if (g(s.size()) != colour_at(w.at("colour")))
                    return "a sum of at most three members has the other colour";
            if (fam.size() != in.at("size").get<std::size_t>())
                return "family has the wrong size";
        }
        if (verb == "star") {
            auto z_set = finset_from(in.at("z_set"));
            for (auto & s : fs_up_to(family_from(w.at("family")), 2))
                if (s.size() != 2 || ! s.is_subset_of(z_set))
                    return "a sum leaves [Z]^2";
        }
        return std::nullopt;
    }

    auto rebuild_structure(const Json & in) -> RadoStructure
    {
        Json probe = in;
        probe["verb"] = "build";
        probe["command"] = "rado";
        for (auto key : { "model", "blocks", "verify", "reps", "support", "k", "x", "over", "certify", "positive", "negative",
                          "exclude", "above", "below", "map", "target" })
            probe.erase(key);
        return structure_from(run(probe)["witness"].at("structure"));
    }

    auto check_fm(const Json & in, const Json & w) -> optional<string>
    {
        auto verify = in.at("verify").get<string>();
        if (verify == "r-infinite") {
            auto pi = partial_aut_from(w.at("sample_map"));
            if (apply_aut(pi, set_at(w, "sample_x")) != set_at(w, "sample_y"))
                return "sample map does not carry x onto y";
            for (auto a : finset_from(in.at("support")))
                if (pi(a) != a)
                    return "sample map moves the support";
        }
        else if (verify == "h3") {
            auto y = set_at(w, "y");
            auto a = w.at("a").get<Atom>(), b = w.at("b").get<Atom>(), c = w.at("c").get<Atom>();
            auto z = y.without(a).with(b), x = y.without(a).with(c);
            if (z != set_at(w, "z") || x != set_at(w, "w"))
                return "z or w is not y with a replaced";
            auto sum = y ^ z ^ x;
            if (sum != set_at(w, "sum") || sum.size() != y.size() + 2)
                return "sum does not gain two atoms";
            if (mod4_colouring(y) == mod4_colouring(sum))
                return "mod4 colour did not flip";
        }
        else if (verify == "russell") {
            auto to_map = [] (const Json & j) {
                std::map<std::size_t, Atom> m;
                for (auto & e : j)
                    m[e[0].get<std::size_t>()] = e[1].get<Atom>();
                return m;
            };
            auto swap = partial_aut_from(w.at("swap"));
            auto before = encode_choice(to_map(w.at("before")));
            auto moved = apply_aut(swap, before);
            if (moved == before || moved != encode_choice(to_map(w.at("after"))))
                return "swap does not move the choice";
            for (auto s : finset_from(in.at("support")))
                if (swap(s) != s)
                    return "swap moves the support";
        }
        else if (verify == "b-family") {
            auto level = w.at("level").size();
            std::vector<std::size_t> fibers(level, 0);
            for (auto i : w.at("image"))
                ++fibers.at(i.get<std::size_t>());
            if (std::any_of(fibers.begin(), fibers.end(), [] (auto f) { return f != 2; }))
                return "fibers are not all of size two";
            auto next = w.at("next_level");
            auto n = w.at("n").get<std::size_t>();
            auto last = FinSet{ static_cast<Atom>(2 * n + 2), static_cast<Atom>(2 * n + 3) };
            for (std::size_t i = 0 ; i < next.size() ; ++i)
                if (finset_from(next[i]) - last != finset_from(w["level"][w["image"][i].get<std::size_t>()]))
                    return "image table disagrees with dropping the last pair";
        }
        else if (verify == "omega-h") {
            auto bs = in.at("block_size").get<Atom>();
            auto a = w.at("a").get<Atom>(), b = w.at("b").get<Atom>();
            auto support = finset_from(in.at("support"));
            if (a / bs != b / bs || a == b || support.contains(a) || support.contains(b))
                return "transposition leaves the block or touches the support";
        }
        else if (verify == "grid") {
            GridShape g{ in.at("rows").get<std::size_t>(), in.at("cols").get<std::size_t>() };
            auto x = finset_from(in.at("x"));
            if (grid_weight(g, x) != grid_weight(g, set_at(w, "image")))
                return "grid weight changed";
            auto & c = w.at("copy");
            if (c.at("verdict") == "PASS") {
                auto sum = x ^ set_at(c, "y") ^ set_at(c, "z");
                if (sum != set_at(c, "sum") || grid_weight(g, sum) != grid_weight(g, x) + 2)
                    return "copy construction does not add two lines";
                if (grid_colouring(g, sum) == grid_colouring(g, x))
                    return "grid colour did not flip";
            }
        }
        else if (verify == "rado-h2") {
            auto s = rebuild_structure(in);
            auto bs = s.vertex_count();
            auto a = w.at("a").get<Atom>(), b = w.at("b").get<Atom>(), c = w.at("c").get<Atom>();
            if (a / bs != b / bs || a / bs != c / bs)
                return "a, b, c are not in one block";
            if (! s.adjacent(a % bs, b % bs) || s.adjacent(a % bs, c % bs))
                return "b must be adjacent to a and c must not";
            if (set_at(w, "ab") != FinSet{ std::min(a, b), std::max(a, b) } || set_at(w, "ac") != FinSet{ std::min(a, c), std::max(a, c) })
                return "symmetric differences are not the pairs";
        }
        else if (verify == "rado-rk") {
            if (w.at("transitivity_mode").get<bool>())
                return std::nullopt;
            auto s = rebuild_structure(in);
            auto bs = s.vertex_count();
            auto local = [bs] (const Json & seq) {
                std::vector<Atom> v;
                for (auto & a : seq)
                    v.push_back(a.get<Atom>() % bs);
                return FinSet{std::move(v)};
            };
            auto as = local(w.at("a_seq")), bs_ = local(w.at("b_seq"));
            auto k = in.at("k").get<std::size_t>();
            if (as.size() != k || bs_.size() != k)
                return "sequences are not k distinct atoms";
            bool independent = true, complete = true;
            for_each_subset_of_size(as, s.arity(), [&] (const FinSet & e) { independent = ! s.has_edge(e); return independent; });
            for_each_subset_of_size(bs_, s.arity(), [&] (const FinSet & e) { complete = s.has_edge(e); return complete; });
            if (! independent || ! complete)
                return "a sequence is not independent / complete";
        }
        return std::nullopt;
    }

    auto check_rado(const Json & in, const Json & w) -> optional<string>
    {
        auto verb = in.at("verb").get<string>();
        if (verb == "query") {
            auto s = rebuild_structure(in);
            auto v = w.at("vertex").get<Atom>();
            for (auto & e : family_from(in.at("positive")))
                if (e.contains(v) || ! s.has_edge(e.with(v)))
                    return "positive demand not met";
            for (auto & e : family_from(in.at("negative")))
                if (e.contains(v) || s.has_edge(e.with(v)))
                    return "negative demand not met";
        }
        else if (verb == "extend") {
            auto s = rebuild_structure(in);
            if (! is_partial_iso(s, partial_aut_from(w.at("map"))))
                return "extended map is not a partial isomorphism";
        }
        else if (verb == "build") {
            if (! w.at("certified").get<bool>())
                return "certification failed";
        }
        return std::nullopt;
    }

    auto check_witness(const Json & report) -> optional<string>
    {
        auto & in = report.at("input");
        auto & w = report.at("witness");
        auto command = report.at("command").get<string>();
        if (command == "ramsey")    return check_ramsey(w);
        if (command == "schur")     return check_schur(in, w);
        if (command == "fu-search") return check_fu(in, w);
        if (command == "hindman")   return check_hindman(in, w);
        if (command == "fm")        return check_fm(in, w);
        if (command == "rado")      return check_rado(in, w);
        return std::nullopt;
    }
}

auto finlab::reverify_report(const Json & report) -> ReverifyResult
{
    try {
        if (report.at("schema_version") != string{schema_version})
            return { Verdict::error, "unsupported schema version" };
        auto rerun = run_report(report.at("input"));
        if (rerun.at("verdict") != report.at("verdict") || rerun.at("witness") != report.at("witness"))
            return { Verdict::fail, "re-running the input gives a different witness" };
        if (report_verdict(report) == Verdict::pass)
            if (auto problem = check_witness(report))
                return { Verdict::fail, *problem };
        return { Verdict::pass, "witness re-verified" };
    }
    catch (const std::exception & e) {
        return { Verdict::error, e.what() };
    }
}
