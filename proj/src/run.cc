#include <finlab/report.hh>
#include <finlab/colourings.hh>
#include <finlab/errors.hh>
#include <finlab/hindman.hh>
#include <finlab/hset.hh>
#include <finlab/rado_witness.hh>
#include <finlab/rng.hh>

#include <chrono>
#include <fstream>
#include <algorithm>
#include <set>
#include <sstream>

using namespace finlab;

using std::optional;
using std::string;

namespace
{
    // Reads typed parameters and writes their canonical form back into the echo.
    class Params
    {
        private:
            const Json & _in;
            Json & _echo;
            std::set<string> _used{ "command" };

            auto raw(const string & key) -> const Json *
            {
                _used.insert(key);
                auto it = _in.find(key);
                return it == _in.end() || it->is_null() ? nullptr : &*it;
            }

            [[noreturn]] auto missing(const string & key) -> void
            {
                throw InvalidInput{"missing required key '" + key + "'"};
            }

        public:
            Params(const Json & in, Json & echo) : _in(in), _echo(echo) { }

            auto has(const string & key) -> bool { return raw(key) != nullptr; }

            auto u(const string & key, optional<std::uint64_t> fallback = std::nullopt) -> std::uint64_t
            {
                std::uint64_t v;
                if (auto j = raw(key)) {
                    if (j->is_number_unsigned() || (j->is_number_integer() && j->get<std::int64_t>() >= 0))
                        v = j->get<std::uint64_t>();
                    else if (j->is_string()) {
                        auto s = j->get<string>();
                        std::size_t used = 0;
                        try {
                            v = std::stoull(s, &used);
                        }
                        catch (const std::exception &) {
                            used = 0;
                        }
                        if (used == 0 || used != s.size() || s.starts_with("-"))
                            throw InvalidInput{"key '" + key + "' expects a non-negative integer, got '" + s + "'"};
                    }
                    else
                        throw InvalidInput{"key '" + key + "' expects a non-negative integer"};
                }
                else if (fallback)
                    v = *fallback;
                else
                    missing(key);
                _echo[key] = v;
                return v;
            }

            auto positive(const string & key, optional<std::uint64_t> fallback = std::nullopt) -> std::uint64_t
            {
                auto v = u(key, fallback);
                if (v == 0)
                    throw InvalidInput{"key '" + key + "' must be positive"};
                return v;
            }

            auto s(const string & key, optional<string> fallback = std::nullopt) -> string
            {
                string v;
                if (auto j = raw(key)) {
                    if (! j->is_string())
                        throw InvalidInput{"key '" + key + "' expects a string"};
                    v = j->get<string>();
                }
                else if (fallback)
                    v = *fallback;
                else
                    missing(key);
                _echo[key] = v;
                return v;
            }

            auto b(const string & key, bool fallback) -> bool
            {
                bool v = fallback;
                if (auto j = raw(key)) {
                    if (j->is_boolean())
                        v = j->get<bool>();
                    else if (j->is_string() && (*j == "true" || *j == "1"))
                        v = true;
                    else if (j->is_string() && (*j == "false" || *j == "0"))
                        v = false;
                    else
                        throw InvalidInput{"key '" + key + "' expects true or false"};
                }
                _echo[key] = v;
                return v;
            }

            auto set(const string & key, optional<FinSet> fallback = std::nullopt) -> FinSet
            {
                FinSet v;
                if (auto j = raw(key))
                    v = finset_from(*j);
                else if (fallback)
                    v = *fallback;
                else
                    missing(key);
                _echo[key] = to_json(v);
                return v;
            }

            auto family(const string & key, optional<SetFamily> fallback = std::nullopt) -> SetFamily
            {
                SetFamily v;
                if (auto j = raw(key))
                    v = family_from(*j);
                else if (fallback)
                    v = *fallback;
                else
                    missing(key);
                _echo[key] = to_json(v);
                return v;
            }

            auto atom_map(const string & key, optional<std::map<Atom, Atom>> fallback = std::nullopt) -> std::map<Atom, Atom>
            {
                std::map<Atom, Atom> v;
                if (auto j = raw(key))
                    v = atom_map_from(*j);
                else if (fallback)
                    v = *fallback;
                else
                    missing(key);
                auto arr = Json::array();
                for (auto & [a, b] : v)
                    arr.push_back({ a, b });
                _echo[key] = arr;
                return v;
            }

            auto atoms_list(const string & key) -> optional<std::vector<Atom>>
            {
                auto j = raw(key);
                if (! j)
                    return std::nullopt;
                std::vector<Atom> v;
                if (j->is_string()) {
                    // order matters here, so parse without sorting
                    std::stringstream ss{j->get<string>()};
                    string item;
                    while (std::getline(ss, item, ','))
                        v.push_back(static_cast<Atom>(std::stoul(item)));
                }
                else
                    v = j->get<std::vector<Atom>>();
                _echo[key] = v;
                return v;
            }

            auto finish() -> void
            {
                for (auto & [key, _] : _in.items())
                    if (! _used.count(key))
                        throw InvalidInput{"unknown key '" + key + "'"};
            }
    };

    auto report(const string & command, const string & claim, Verdict verdict, Json witness) -> Json
    {
        return {
            { "schema_version", string{schema_version} },
            { "command", command },
            { "claim", claim },
            { "verdict", string{to_string(verdict)} },
            { "witness", std::move(witness) }
        };
    }

    auto colour_json(Colour c) -> Json
    {
        return to_int(c);
    }

    auto violation_json(const ViolationReport & v) -> Json
    {
        Json j{
            { "kind", string{to_string(v.kind)} },
            { "witnesses", Json::array() },
            { "colours", Json::array() },
            { "cardinalities", v.cardinalities }
        };
        for (auto & w : v.witnesses)
            j["witnesses"].push_back(to_json(w));
        for (auto c : v.colours)
            j["colours"].push_back(colour_json(c));
        if (v.bound)
            j["bound"] = to_json(*v.bound);
        return j;
    }

    auto exactness_verdict(Exactness e) -> Verdict
    {
        return e == Exactness::exact || e == Exactness::exact_from_table ? Verdict::pass : Verdict::inconclusive;
    }

    auto provider_from(Params & p) -> RamseyProvider
    {
        auto tabled = static_cast<unsigned>(p.u("max_tabled", 4));
        auto limit = static_cast<unsigned>(p.u("binomial_limit", 4096));
        return RamseyProvider{tabled, limit};
    }

    auto run_ramsey(Params & p) -> Json
    {
        auto m = p.positive("m");
        auto provider = provider_from(p);
        auto certify = p.b("certify", true);
        auto answer = ramsey_number(BigInt{m}, provider);

        Json w{ { "m", m }, { "value", to_json(answer.value) }, { "exactness", string{to_string(answer.exactness)} } };
        auto verdict = exactness_verdict(answer.exactness);
        if (certify && answer.exactness == Exactness::exact && answer.value <= 6) {
            auto cert = certify_ramsey_by_enumeration(static_cast<unsigned>(m), answer.value.convert_to<unsigned>());
            w["certificate"] = {
                { "lower_witness", cert.lower_witness },
                { "colourings_below", cert.colourings_below },
                { "witnesses_below", cert.witnesses_below },
                { "colourings_above", cert.colourings_above },
                { "failures_above", cert.failures_above },
                { "certified", cert.certified }
            };
            if (! cert.certified)
                verdict = Verdict::fail;
        }
        return report("ramsey", "least N forcing a monochromatic m-subset under every 2-colouring of pairs", verdict, w);
    }

    auto run_f_bound(Params & p) -> Json
    {
        auto n = static_cast<unsigned>(p.positive("n"));
        auto k = static_cast<unsigned>(p.u("k"));
        auto provider = provider_from(p);
        auto f = f_bound(n, k, provider);
        Json w{ { "n", n }, { "k", k }, { "value", to_json(f.value) }, { "exactness", string{to_string(f.exactness)} } };
        return report("f-bound", "F(n,0) = 4, F(n,k+1) = 2^n (R(F(n,k)) - 1) + 2", exactness_verdict(f.exactness), w);
    }

    auto run_schur(Params & p) -> Json
    {
        auto name = p.s("g", "parity-log2");
        auto bound = p.positive("bound", 64);
        auto g = number_colouring(name);
        auto t = schur_triple(g, bound);
        const string claim = "least monochromatic m, m', m + m' among the evens up to the bound";
        if (! t)
            return report("schur", claim, Verdict::absent, Json::object());
        auto params = schur_decompose(*t);
        Json w{
            { "m", t->m }, { "m_prime", t->m_prime }, { "sum", t->sum() },
            { "colour", colour_json(g(t->m)) },
            { "n", params.n }, { "k", params.k }
        };
        return report("schur", claim, Verdict::pass, w);
    }

    auto run_fu_search(Params & p, const RunOptions & opts) -> Json
    {
        auto name = p.s("colouring", "log2");
        auto ground = p.positive("ground", 8);
        auto s = p.positive("s", 2);
        SearchOptions so;
        so.node_budget = p.positive("budget", so.node_budget);
        so.workers = opts.workers;
        auto c = set_colouring(name, ground, std::nullopt, {});
        auto fam = fu_family_search(c, s, so);
        const string claim = "least pairwise-disjoint family whose finite unions share a colour";
        if (! fam)
            return report("fu-search", claim, Verdict::absent, Json::object());
        auto all = fu(*fam);
        Json w{ { "family", to_json(*fam) }, { "colour", colour_json(c(all.front())) }, { "unions", all.size() } };
        return report("fu-search", claim, Verdict::pass, w);
    }

    auto run_colour(Params & p) -> Json
    {
        Json w;
        if (p.has("number")) {
            auto name = p.s("g", "parity-log2");
            auto m = p.u("number");
            w = { { "number", m }, { "colour", colour_json(number_colouring(name)(m)) } };
        }
        else {
            auto name = p.s("colouring", "log2");
            auto x = p.set("x");
            auto ground = p.positive("ground", 64);
            auto support = p.set("support", FinSet{});
            optional<std::size_t> arity;
            if (auto a = p.u("arity", 0))
                arity = a;
            w = { { "x", to_json(x) }, { "colour", colour_json(set_colouring(name, ground, arity, support)(x)) } };
        }
        return report("colour", "colour of one element", Verdict::pass, w);
    }

    auto run_hindman(Params & p, const RunOptions & opts) -> Json
    {
        auto verb = p.s("verb");
        if (verb == "check-mono" || verb == "check-card" || verb == "check-bound") {
            auto y = p.family("family");
            optional<ViolationReport> v;
            string claim;
            if (verb == "check-mono") {
                v = fs4_mono_check(y);
                claim = "log2 colour is constant on the nonempty sums of at most four members";
            }
            else if (verb == "check-card") {
                v = cardinality_injectivity_check(y);
                claim = "disjoint members of a log2-monochromatic sum family have distinct sizes";
            }
            else {
                auto n = static_cast<unsigned>(p.positive("n"));
                auto provider = provider_from(p);
                v = fs4_count_bound(y, n, provider);
                claim = "fewer than F(n,n) members of size n";
            }
            Json w = Json::object();
            if (v)
                w["violation"] = violation_json(*v);
            return report("hindman", claim, v ? Verdict::fail : Verdict::pass, w);
        }
        if (verb == "star") {
            auto z_set = p.set("z_set");
            auto z = static_cast<Atom>(p.u("z"));
            auto fam = star_family(z_set, z);
            auto sums = fs_up_to(fam, 2);
            bool ok = std::all_of(sums.begin(), sums.end(), [&] (auto & s) { return s.size() == 2 && s.is_subset_of(z_set); });
            Json w{ { "family", to_json(fam) }, { "sums", sums.size() } };
            return report("hindman", "sums of at most two star members are pairs inside Z", ok ? Verdict::pass : Verdict::fail, w);
        }
        if (verb == "schur-fs3") {
            auto name = p.s("g", "parity-log2");
            auto bound = p.positive("bound", 64);
            auto size = p.positive("size", 4);
            GridShape grid{ p.positive("rows", 6), p.positive("cols", 30) };
            auto r = schur_to_fs3(number_colouring(name), bound, grid, size);
            Json w{
                { "family", to_json(r.family) }, { "colour", colour_json(r.colour) },
                { "m", r.triple.m }, { "m_prime", r.triple.m_prime }, { "n", r.params.n }, { "k", r.params.k }
            };
            return report("hindman", "a Schur triple yields a family whose sums of at most three members share a colour",
                    Verdict::pass, w);
        }
        if (verb == "induction") {
            auto y = p.family("family");
            auto n = p.positive("n");
            auto k = p.u("k");
            auto target = p.positive("target", 4);
            auto provider = provider_from(p);
            SearchOptions so;
            so.node_budget = p.positive("budget", so.node_budget);
            so.workers = opts.workers;
            auto step = fs4_induction_step(y, n, k, provider, target, so);
            Json w{
                { "anchor", to_json(step.anchor) }, { "kernel", to_json(step.kernel) }, { "bucket", to_json(step.bucket) },
                { "forcing_size", to_json(step.forcing_size.value) },
                { "forcing_exactness", string{to_string(step.forcing_size.exactness)} }
            };
            if (step.subfamily)
                w["subfamily"] = to_json(*step.subfamily);
            return report("hindman", "one induction step on a log2-monochromatic sum family",
                    step.subfamily ? Verdict::pass : Verdict::absent, w);
        }
        throw InvalidInput{"unknown hindman verb '" + verb + "'"};
    }

    auto structure_params(Params & p, std::size_t default_vertices) -> RadoStructure
    {
        if (p.has("file")) {
            auto path = p.s("file");
            std::ifstream in{path};
            if (! in)
                throw InvalidInput{"cannot read structure file '" + path + "'"};
            auto j = Json::parse(in);
            return structure_from(j.contains("witness") ? j["witness"].at("structure") : j);
        }
        auto arity = p.u("arity", 2);
        auto kind = p.s("structure", arity == 2 ? "bit" : "random");
        if (kind == "bit") {
            if (arity != 2)
                throw InvalidInput{"the BIT structure is a graph"};
            return RadoStructure::bit_graph(p.positive("vertices", default_vertices));
        }
        auto seed = p.u("seed", 0);
        auto demand = p.u("demand", arity == 2 ? 3 : 2);
        if (kind == "random")
            return RadoStructure::random_hypergraph(arity, p.positive("vertices", default_vertices), seed, demand);
        if (kind == "ordered")
            return RadoStructure::random_ordered_hypergraph(arity, p.positive("vertices", default_vertices), seed, demand,
                    p.positive("vertex_budget", 4096));
        throw InvalidInput{"unknown structure '" + kind + "'"};
    }

    auto model_params(Params & p) -> ModelSpec
    {
        auto kind = parse_model_kind(p.s("model"));
        switch (kind) {
            case ModelKind::fraenkel1:
                return ModelSpec::fraenkel1(p.positive("atoms", 10));
            case ModelKind::fraenkel2: {
                auto atoms = p.positive("atoms", 12);
                if (atoms % 2)
                    throw InvalidInput{"fraenkel2 needs an even atom count"};
                return ModelSpec::fraenkel2(atoms / 2);
            }
            case ModelKind::omega_fraenkel: {
                auto atoms = p.positive("atoms", 24);
                auto bs = p.positive("block_size", 6);
                if (atoms % bs)
                    throw InvalidInput{"atom count must be a multiple of the block size"};
                return ModelSpec::omega_fraenkel(atoms / bs, bs);
            }
            case ModelKind::grid:
                return ModelSpec::grid_model(p.positive("rows", 5), p.positive("cols", 5));
            case ModelKind::mostowski:
                return ModelSpec::mostowski(p.positive("atoms", 10));
            case ModelKind::rado:
            case ModelKind::ordered_rado: {
                auto blocks = p.positive("blocks", 1);
                auto s = std::make_shared<const RadoStructure>(structure_params(p, 32));
                auto m = ModelSpec::rado(blocks, s);
                if (m.kind != kind)
                    throw InvalidInput{"structure ordering does not match model " + string{to_string(kind)}};
                return m;
            }
        }
        throw InvalidInput{"unknown model"};
    }

    // atoms created on a virtual chain, so witnesses stay interpretable
    auto chain_extras(const ModelSpec & model) -> Json
    {
        auto j = Json::object();
        if (model.chain)
            for (auto a = model.atom_count ; a < model.chain->size() ; ++a)
                j[std::to_string(a)] = model.chain->position(static_cast<Atom>(a)).str();
        return j;
    }

    auto fm_r_infinite(Params & p, const ModelSpec & model) -> Json
    {
        auto n = p.positive("n", 2);
        auto support = p.set("support", FinSet{ 0 });
        auto name = p.s("colouring", "meets-support");
        auto c = set_colouring(name, model.atom_count, n, support);
        auto r = verify_first_fraenkel_rn(model, c, support);
        Json w{ { "subsets_checked", r.subsets_checked } };
        if (r.colour)
            w["colour"] = colour_json(*r.colour);
        if (r.sample_x) {
            w["sample_x"] = to_json(*r.sample_x);
            w["sample_y"] = to_json(*r.sample_y);
        }
        if (r.sample_map)
            w["sample_map"] = to_json(*r.sample_map);
        if (r.counterexample)
            w["counterexample"] = { to_json(r.counterexample->first), to_json(r.counterexample->second) };
        return report("fm", "a colouring supported by F is constant on the n-subsets of the atoms outside F", r.verdict, w);
    }

    auto fm_h3(Params & p, const ModelSpec & model) -> Json
    {
        auto reps = p.family("reps", SetFamily{ FinSet{ 0, 1 } });
        auto support = p.set("support", FinSet{});
        SetFamily family = reps;
        if (! model.is_virtual()) {
            std::set<FinSet> all;
            for (auto & r : reps.members()) {
                auto o = orbit(model, support, HSet::of_atoms(r));
                if (! o.complete)
                    throw BudgetExceeded{"orbit of " + to_string(r) + " exceeds the budget"};
                for (auto & h : o.members)
                    all.insert(h.as_finset());
            }
            family = SetFamily{ std::vector<FinSet>(all.begin(), all.end()) };
        }
        auto r = verify_h3_witness(model, family, support);
        Json w{
            { "family_size", family.size() },
            { "y", to_json(r.y) }, { "a", r.a }, { "b", r.b }, { "c", r.c },
            { "pi", to_json(r.pi) }, { "sigma", to_json(r.sigma) },
            { "z", to_json(r.z) }, { "w", to_json(r.w) }, { "sum", to_json(r.sum) },
            { "colour_y", colour_json(r.colour_y) }, { "colour_sum", colour_json(r.colour_sum) },
            { "fresh_positions", chain_extras(model) }
        };
        if (! r.note.empty())
            w["note"] = r.note;
        return report("fm", "an F-supported family meeting atoms outside F has a sum of at most three members with the other mod4 colour",
                r.verdict, w);
    }

    auto fm_russell(Params & p, const ModelSpec & model) -> Json
    {
        std::map<Atom, Atom> fallback;
        for (Atom m = 0 ; m < model.cell_count() ; ++m)
            fallback[m] = 2 * m;
        auto choice_raw = p.atom_map("choice", fallback);
        auto support = p.set("support", FinSet{});
        auto sweep = p.u("sweep", 2);
        std::map<std::size_t, Atom> g(choice_raw.begin(), choice_raw.end());

        auto r = russell_obstruction(model, g, support);
        auto map_json = [] (const std::map<std::size_t, Atom> & m) {
            auto arr = Json::array();
            for (auto & [k, v] : m)
                arr.push_back({ k, v });
            return arr;
        };
        Json w{ { "before", map_json(r.before) } };
        if (r.pair_index) {
            w["pair_index"] = *r.pair_index;
            w["swap"] = to_json(*r.swap);
            w["after"] = map_json(r.after);
        }
        if (! r.note.empty())
            w["note"] = r.note;
        auto verdict = r.verdict;
        if (sweep > 0 && verdict == Verdict::pass) {
            auto s = russell_sweep(model, g, sweep);
            w["sweep"] = { { "max_support", sweep }, { "supports_checked", s.supports_checked },
                           { "refuted", s.refuted }, { "inconclusive", s.inconclusive },
                           { "verdict", string{to_string(s.verdict)} } };
            verdict = s.verdict;
        }
        return report("fm", "a choice function on the pairs has no finite support", verdict, w);
    }

    auto fm_b_family(Params & p, const ModelSpec & model) -> Json
    {
        auto n = p.u("n", 2);
        auto b = b_family(model, n);
        Json level = Json::array(), next = Json::array();
        for (auto & s : b.level)
            level.push_back(to_json(s));
        for (auto & s : b.next_level)
            next.push_back(to_json(s));
        Json w{
            { "n", n }, { "level", level }, { "next_level", next }, { "image", b.image },
            { "fiber_sizes", b.fiber_sizes }, { "surjective", b.surjective }, { "two_to_one", b.two_to_one }
        };
        return report("fm", "dropping the last pair maps the selectors two-to-one onto the previous level",
                b.surjective && b.two_to_one ? Verdict::pass : Verdict::fail, w);
    }

    auto fm_omega_h(Params & p, const ModelSpec & model) -> Json
    {
        auto seq_sets = p.family("seq", SetFamily{ FinSet{ 0, static_cast<Atom>(model.block_size) } });
        auto support = p.set("support", FinSet{});
        std::vector<HSet> seq;
        for (auto & s : seq_sets.members())
            seq.push_back(HSet::family(SetFamily{ s }));
        auto r = omega_fraenkel_h_obstruction(model, seq, support);
        Json w = Json::object();
        if (r.index) {
            w["index"] = *r.index;
            w["a"] = *r.a;
            w["b"] = *r.b;
            w["block"] = *r.block;
        }
        if (! r.note.empty())
            w["note"] = r.note;
        return report("fm", "a transposition inside one block fixes F yet moves a term of the sequence", r.verdict, w);
    }

    auto shuffled(std::size_t n, Rng & rng) -> std::vector<Atom>
    {
        std::vector<Atom> v(n);
        for (std::size_t i = 0 ; i < n ; ++i)
            v[i] = static_cast<Atom>(i);
        for (std::size_t i = n ; i > 1 ; --i)
            std::swap(v[i - 1], v[rng.below(i)]);
        return v;
    }

    auto fm_grid(Params & p, const ModelSpec & model) -> Json
    {
        auto & g = model.grid;
        auto x = p.set("x", FinSet{ g.atom(1 % g.rows, 1 % g.cols) });
        auto support = p.set("support", FinSet{});
        auto seed = p.u("seed", 0);
        Rng rng{seed};
        auto sigma = p.atoms_list("row_perm").value_or(shuffled(g.rows, rng));
        auto rho = p.atoms_list("col_perm").value_or(shuffled(g.cols, rng));
        auto check_perm = [] (const std::vector<Atom> & v, std::size_t n, const char * what) {
            auto sorted = v;
            std::sort(sorted.begin(), sorted.end());
            if (v.size() != n || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (n && sorted.back() >= n))
                throw InvalidInput{string{what} + " is not a permutation"};
        };
        check_perm(sigma, g.rows, "row_perm");
        check_perm(rho, g.cols, "col_perm");

        std::map<Atom, Atom> m;
        for (std::size_t r = 0 ; r < g.rows ; ++r)
            for (std::size_t c = 0 ; c < g.cols ; ++c)
                m[g.atom(r, c)] = g.atom(sigma[r], rho[c]);
        auto pi = PartialAut::finitary(m, model.name());

        auto inv = grid_invariance_check(model, x, pi);
        auto copy = grid_copy_construction(model, x, support);
        Json w{
            { "row_perm", sigma }, { "col_perm", rho },
            { "image", to_json(inv.image) }, { "weight_before", inv.weight_before }, { "weight_after", inv.weight_after },
            { "invariance", string{to_string(inv.verdict)} },
            { "copy", {
                { "by_rows", copy.by_rows }, { "line", copy.line }, { "copy1", copy.copy1 }, { "copy2", copy.copy2 },
                { "y", to_json(copy.y) }, { "z", to_json(copy.z) }, { "sum", to_json(copy.sum) },
                { "weight_x", copy.weight_x }, { "weight_sum", copy.weight_sum },
                { "colour_x", colour_json(copy.colour_x) }, { "colour_sum", colour_json(copy.colour_sum) },
                { "verdict", string{to_string(copy.verdict)} }, { "note", copy.note } } }
        };
        auto verdict = inv.verdict != Verdict::pass ? inv.verdict : copy.verdict;
        return report("fm", "row and column permutations keep the grid weight; two fresh line copies add exactly two", verdict, w);
    }

    auto fm_rado_h2(Params & p, const ModelSpec & model) -> Json
    {
        auto reps = p.family("reps", SetFamily{ FinSet{ 0, 1 } });
        auto support = p.set("support", FinSet{});
        auto r = rado_h2_witness(model, reps, support);
        Json w{
            { "y", to_json(r.y) }, { "a", r.a }, { "b", r.b }, { "c", r.c }, { "block", r.block },
            { "f0", to_json(r.f0) }, { "f1", to_json(r.f1) },
            { "pi", to_json(r.pi) }, { "sigma", to_json(r.sigma) },
            { "z", to_json(r.z) }, { "w", to_json(r.w) }, { "ab", to_json(r.ab) }, { "ac", to_json(r.ac) },
            { "colour_ab", colour_json(r.colour_ab) }, { "colour_ac", colour_json(r.colour_ac) }
        };
        if (! r.note.empty())
            w["note"] = r.note;
        return report("fm", "sums of at most two members of an F-supported family take both block-adjacency colours", r.verdict, w);
    }

    auto fm_rado_rk(Params & p, const ModelSpec & model) -> Json
    {
        auto k = p.positive("k", 3);
        auto x = p.set("x", model.pool());
        auto support = p.set("support", FinSet{});
        auto r = rado_rk_witness(model, k, x, support);
        Json w{ { "arity", r.arity }, { "k", r.k }, { "block", r.block }, { "transitivity_mode", r.transitivity_mode } };
        if (r.transitivity_mode)
            w["subsets_checked"] = r.subsets_checked;
        else {
            Json pis = Json::array(), sigmas = Json::array();
            for (auto & m : r.pi)
                pis.push_back(to_json(m));
            for (auto & m : r.sigma)
                sigmas.push_back(to_json(m));
            w.update({ { "a", *r.a }, { "a_seq", r.a_seq }, { "b_seq", r.b_seq }, { "pi", pis }, { "sigma", sigmas },
                       { "colour_a", colour_json(r.colour_a) }, { "colour_b", colour_json(r.colour_b) } });
        }
        if (! r.note.empty())
            w["note"] = r.note;
        return report("fm", "an F-supported set of atoms contains an independent and a complete k-subset", r.verdict, w);
    }

    auto run_fm(Params & p) -> Json
    {
        auto model = model_params(p);
        auto verify = p.s("verify");
        if (verify == "r-infinite") return fm_r_infinite(p, model);
        if (verify == "h3")         return fm_h3(p, model);
        if (verify == "russell")    return fm_russell(p, model);
        if (verify == "b-family")   return fm_b_family(p, model);
        if (verify == "omega-h")    return fm_omega_h(p, model);
        if (verify == "grid")       return fm_grid(p, model);
        if (verify == "rado-h2")    return fm_rado_h2(p, model);
        if (verify == "rado-rk")    return fm_rado_rk(p, model);
        throw InvalidInput{"unknown verifier '" + verify + "'"};
    }

    auto run_rado(Params & p) -> Json
    {
        auto verb = p.s("verb");
        auto s = structure_params(p, 64);
        if (verb == "build") {
            auto over_default = s.kind() == RadoStructure::Kind::bit ? FinSet::range(static_cast<Atom>(std::min<std::size_t>(13, s.vertex_count())))
                                                                   : FinSet::range(static_cast<Atom>(s.base_count()));
            auto over = p.set("over", over_default);
            auto size = p.u("certify", s.kind() == RadoStructure::Kind::bit ? 3 : s.certified_demand());
            auto cert = certify_extension_property(s, size, over);
            Json w{ { "structure", to_json(s) }, { "demands_checked", cert.demands_checked }, { "certified_size", size },
                    { "certified", ! cert.first_failure } };
            return report("rado", "every demand up to the certified size has an extension witness",
                    cert.first_failure ? Verdict::fail : Verdict::pass, w);
        }
        if (verb == "query") {
            Demand d{ p.family("positive", SetFamily{}).members(), p.family("negative", SetFamily{}).members() };
            auto exclude = p.set("exclude", FinSet{});
            optional<OrderInterval> slot;
            if (p.has("above") || p.has("below")) {
                slot = OrderInterval{};
                if (p.has("above"))
                    slot->above = static_cast<Atom>(p.u("above"));
                if (p.has("below"))
                    slot->below = static_cast<Atom>(p.u("below"));
            }
            auto v = extension_witness(s, d, exclude, slot);
            const string claim = "least vertex meeting the adjacency demands";
            if (! v)
                return report("rado", claim, Verdict::absent, Json::object());
            return report("rado", claim, Verdict::pass, Json{ { "vertex", *v } });
        }
        if (verb == "extend") {
            auto map = p.atom_map("map");
            auto target = static_cast<Atom>(p.u("target"));
            auto r = extend_partial_iso(s, PartialAut{map, "rado"}, target);
            return report("rado", "one forth step of a partial isomorphism", Verdict::pass,
                    Json{ { "map", to_json(r) }, { "image", *r.image_of(target) } });
        }
        throw InvalidInput{"unknown rado verb '" + verb + "'"};
    }

    auto dispatch(const Json & input, Json & echo, const RunOptions & opts) -> Json
    {
        if (! input.is_object())
            throw InvalidInput{"input must be a JSON object"};
        echo = input;
        Params p{input, echo};
        auto command = input.value("command", "");
        Json r;
        if (command == "ramsey")          r = run_ramsey(p);
        else if (command == "f-bound")    r = run_f_bound(p);
        else if (command == "schur")      r = run_schur(p);
        else if (command == "fu-search")  r = run_fu_search(p, opts);
        else if (command == "colour")     r = run_colour(p);
        else if (command == "hindman")    r = run_hindman(p, opts);
        else if (command == "fm")         r = run_fm(p);
        else if (command == "rado")       r = run_rado(p);
        else
            throw InvalidInput{"unknown command '" + command + "'"};
        p.finish();
        r["input"] = echo;
        return r;
    }

    auto verdict_for(ErrorKind k) -> Verdict
    {
        switch (k) {
            case ErrorKind::budget_exceeded:
            case ErrorKind::no_extension:
            case ErrorKind::unclassifiable:
                return Verdict::inconclusive;
            case ErrorKind::not_found:
                return Verdict::absent;
            default:
                return Verdict::error;
        }
    }
}

auto finlab::run(const Json & input, const RunOptions & opts) -> Json
{
    Json echo;
    auto start = std::chrono::steady_clock::now();
    auto r = dispatch(input, echo, opts);
    if (opts.timing)
        r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

auto finlab::run_report(const Json & input, const RunOptions & opts) -> Json
{
    Json echo = input;
    auto start = std::chrono::steady_clock::now();
    auto fold = [&] (Verdict v, string kind, string message) {
        Json r{
            { "schema_version", string{schema_version} },
            { "command", input.is_object() ? input.value("command", "") : "" },
            { "input", echo },
            { "verdict", string{to_string(v)} },
            { "witness", Json::object() },
            { "error", { { "kind", std::move(kind) }, { "message", std::move(message) } } }
        };
        if (opts.timing)
            r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    };
    try {
        auto r = dispatch(input, echo, opts);
        if (opts.timing)
            r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    catch (const Error & e) {
        return fold(verdict_for(e.kind()), string{to_string(e.kind())}, e.what());
    }
    catch (const Json::exception & e) {
        return fold(Verdict::error, "invalid-input", e.what());
    }
}
