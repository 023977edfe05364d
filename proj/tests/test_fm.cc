#include <finlab/colourings.hh>
#include <finlab/errors.hh>
#include <finlab/fm.hh>
#include <finlab/ramsey.hh>
#include <finlab/rado_witness.hh>
#include <finlab/rng.hh>

#include <doctest.h>

using namespace finlab;

namespace
{
    auto random_subset(Rng & rng, std::size_t n, unsigned density) -> FinSet
    {
        std::vector<Atom> out;
        for (Atom a = 0 ; a < n ; ++a)
            if (rng.below(density) == 0)
                out.push_back(a);
        return FinSet{ out };
    }

    auto random_object(Rng & rng, std::size_t n) -> HSet
    {
        std::vector<HSet> members;
        auto count = 1 + rng.below(3);
        for (std::uint64_t i = 0 ; i < count ; ++i)
            members.push_back(HSet::of_atoms(random_subset(rng, n, 3)));
        return HSet::set(members);
    }

    auto all_pairs(std::size_t n) -> SetFamily
    {
        return SetFamily{ subsets_of_size(FinSet::range(static_cast<Atom>(n)), 2) };
    }
}

TEST_CASE("model names round trip")
{
    for (auto k : { ModelKind::fraenkel1, ModelKind::fraenkel2, ModelKind::omega_fraenkel, ModelKind::grid,
            ModelKind::mostowski, ModelKind::rado, ModelKind::ordered_rado })
        CHECK(parse_model_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_model_kind("fraenkel3"), InvalidInput);
}

TEST_CASE("support examples in the pair model")
{
    auto m = ModelSpec::fraenkel2(6);
    CHECK(is_support(m, FinSet{}, HSet::of_atoms(FinSet{ 6, 7 })));
    CHECK_FALSE(is_support(m, FinSet{}, HSet::of_atoms(FinSet{ 6 })));
    CHECK(is_support(m, FinSet{ 7 }, HSet::of_atoms(FinSet{ 6 })));
    CHECK(is_support(m, FinSet{}, HSet::ordinal(3)));
}

TEST_CASE("orbit examples")
{
    auto f1 = ModelSpec::fraenkel1(6);
    auto o = orbit(f1, FinSet{ 0 }, HSet::of_atoms(FinSet{ 0, 1 }));
    CHECK(o.complete);
    REQUIRE(o.members.size() == 5);
    for (auto & x : o.members) {
        CHECK(x.size() == 2);
        CHECK(x.contains(HSet::atom(0)));
    }
    CHECK(orbit(f1, FinSet{}, HSet::ordinal(2)).members.size() == 1);

    auto grid = ModelSpec::grid_model(3, 3);
    CHECK(orbit(grid, FinSet{}, HSet::of_atoms(FinSet{ grid.grid.atom(1, 1) })).members.size() == 9);

    auto cut = orbit(ModelSpec::fraenkel1(10), FinSet{}, HSet::of_atoms(FinSet{ 0, 1, 2 }), 20);
    CHECK_FALSE(cut.complete);
}

TEST_CASE("support monotonicity and trivial orbits on random triples")
{
    Rng rng{42};
    for (int trial = 0 ; trial < 500 ; ++trial) {
        auto model = trial % 2 ? ModelSpec::fraenkel1(6) : ModelSpec::fraenkel2(3);
        auto e = random_subset(rng, 6, 3);
        auto e2 = e | random_subset(rng, 6, 3);
        auto x = random_object(rng, 6);
        if (is_support(model, e, x)) {
            REQUIRE(is_support(model, e2, x));
            REQUIRE(orbit(model, e, x).members == std::vector<HSet>{ x });
        }
    }
}

TEST_CASE("virtual supports")
{
    auto m = ModelSpec::mostowski(10);
    CHECK(is_support(m, FinSet{ 1, 2 }, HSet::of_atoms(FinSet{ 1 })));
    CHECK_FALSE(is_support(m, FinSet{ 1 }, HSet::of_atoms(FinSet{ 1, 2 })));
    auto moved = support_counterexample(m, FinSet{ 1 }, HSet::of_atoms(FinSet{ 1, 2 }));
    REQUIRE(moved);
    CHECK((*moved)(1) == 1);
    CHECK((*moved)(2) != 2);
    CHECK(respects_theory(m, *moved));
    CHECK_THROWS_AS(stabilizer_generators(m, FinSet{}), InvalidInput);
}

TEST_CASE("completion examples")
{
    auto chain = ModelSpec::mostowski(10);
    auto p = complete_aut(chain, PartialAut{ std::map<Atom, Atom>{ { 2, 5 } } }, FinSet{ 2, 7 });
    CHECK(p(2) == 5);
    CHECK(p(7) == 7);
    CHECK(p.status() == AutStatus::verified_extendable);
    CHECK(respects_theory(chain, p));

    auto down = complete_aut(chain, PartialAut{ std::map<Atom, Atom>{ { 5, 0 } } }, FinSet{ 4 });
    CHECK(chain.compare(down(4), 0) < 0);
    CHECK(chain.known_atoms() == 11);

    auto pairs = ModelSpec::fraenkel2(4);
    CHECK(complete_aut(pairs, PartialAut{ std::map<Atom, Atom>{ { 0, 0 } } }, FinSet{ 1 })(1) == 1);
    CHECK_THROWS_AS(complete_aut(pairs, PartialAut{ std::map<Atom, Atom>{ { 0, 2 } } }, FinSet{ 1 }), ConstraintViolation);

    auto rado = ModelSpec::rado(1, std::make_shared<const RadoStructure>(RadoStructure::bit_graph(16)));
    CHECK(complete_aut(rado, PartialAut{ std::map<Atom, Atom>{ { 0, 0 }, { 1, 1 } } }, FinSet{ 3 })(3) == 3);
}

TEST_CASE("completions respect the theory, random partial maps")
{
    Rng rng{8};
    auto omega = ModelSpec::omega_fraenkel(3, 4);
    auto chain = ModelSpec::mostowski(12);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        std::map<Atom, Atom> m;
        Atom a = static_cast<Atom>(rng.below(12));
        Atom b = static_cast<Atom>((a / 4) * 4 + rng.below(4));
        m[a] = b;
        auto needed = random_subset(rng, 12, 3);
        auto q = complete_aut(omega, PartialAut{ m }, needed);
        REQUIRE(respects_theory(omega, q));
        for (auto x : needed)
            REQUIRE(q.defined(x));

        auto r = complete_aut(chain, PartialAut{ std::map<Atom, Atom>{ { a, static_cast<Atom>(rng.below(12)) } } }, needed);
        REQUIRE(respects_theory(chain, r));
    }
}

TEST_CASE("same orbit")
{
    auto m = ModelSpec::omega_fraenkel(2, 4);
    CHECK(same_orbit(m, FinSet{}, FinSet{ 0, 1 }, FinSet{ 2, 3 }));
    CHECK_FALSE(same_orbit(m, FinSet{}, FinSet{ 0, 1 }, FinSet{ 3, 4 }));
    CHECK_FALSE(same_orbit(m, FinSet{ 0 }, FinSet{ 0 }, FinSet{ 1 }));

    auto chain = ModelSpec::mostowski(10);
    CHECK(same_orbit(chain, FinSet{ 5 }, FinSet{ 1, 2 }, FinSet{ 0, 4 }));
    CHECK_FALSE(same_orbit(chain, FinSet{ 5 }, FinSet{ 1, 2 }, FinSet{ 4, 6 }));
}

TEST_CASE("first Fraenkel model monochromatic complement")
{
    auto m = ModelSpec::fraenkel1(10);
    auto f = FinSet{ 0 };
    Colouring meets{"meets-support", 10, 2, [f] (const FinSet & x) { return colour_from(x.intersects(f)); }};
    auto r = verify_first_fraenkel_rn(m, meets, f);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.colour == Colour::zero);
    CHECK(r.subsets_checked == 36);
    REQUIRE(r.sample_map);
    CHECK(apply_aut(*r.sample_map, *r.sample_x) == *r.sample_y);

    Colouring least{"least-parity", 10, 2, [] (const FinSet & x) { return colour_from(x.min() % 2); }};
    CHECK_THROWS_AS(verify_first_fraenkel_rn(m, least, FinSet{}), InvalidInput);

    auto constant = Colouring::constant(10, 3, Colour::one);
    CHECK(verify_first_fraenkel_rn(m, constant, FinSet{}).verdict == Verdict::pass);
    CHECK(find_mono_subset(constant, 10).has_value());
}

TEST_CASE("h3 witness replays")
{
    auto f1 = verify_h3_witness(ModelSpec::fraenkel1(10), all_pairs(10), FinSet{});
    CHECK(f1.verdict == Verdict::pass);
    CHECK(f1.y == FinSet{ 0, 1 });
    CHECK(f1.a == 0);
    CHECK(f1.sum.size() == 4);
    CHECK(f1.colour_y == Colour::one);
    CHECK(f1.colour_sum == Colour::zero);

    auto omega = ModelSpec::omega_fraenkel(4, 6);
    std::vector<FinSet> within;
    for (std::size_t b = 0 ; b < 4 ; ++b)
        for (auto & s : subsets_of_size(omega.cell(b), 2))
            within.push_back(s);
    auto o = verify_h3_witness(omega, SetFamily{ within }, FinSet{});
    CHECK(o.verdict == Verdict::pass);
    CHECK(omega.cell_of(o.b) == omega.cell_of(o.a));
    CHECK(omega.cell_of(o.c) == omega.cell_of(o.a));

    auto chain = verify_h3_witness(ModelSpec::mostowski(10), SetFamily{ { 0, 1 } }, FinSet{});
    CHECK(chain.verdict == Verdict::pass);
    CHECK(chain.sum.size() == 4);

    CHECK_THROWS_AS(verify_h3_witness(ModelSpec::fraenkel1(6), SetFamily{ { 0, 1 } }, FinSet{ 0, 1 }), InvalidInput);
    CHECK_THROWS_AS(verify_h3_witness(ModelSpec::fraenkel1(6), SetFamily{ { 0, 1 } }, FinSet{}), InvalidInput);
}

TEST_CASE("russell obstruction")
{
    auto m = ModelSpec::fraenkel2(5);
    std::map<std::size_t, Atom> g;
    for (std::size_t i = 0 ; i < 5 ; ++i)
        g[i] = static_cast<Atom>(2 * i);
    auto r = russell_obstruction(m, g, FinSet{});
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.pair_index == 0);
    CHECK(r.after.at(0) == 1);

    CHECK(russell_obstruction(m, { { 0, 0 } }, FinSet{ 0, 1 }).verdict == Verdict::inconclusive);
    CHECK(russell_obstruction(m, {}, FinSet{}).verdict == Verdict::absent);
    CHECK_THROWS_AS(encode_choice({ { 0, 3 } }), InvalidInput);

    auto sweep = russell_sweep(ModelSpec::fraenkel2(6), [] {
        std::map<std::size_t, Atom> h;
        for (std::size_t i = 0 ; i < 6 ; ++i)
            h[i] = static_cast<Atom>(2 * i);
        return h;
    }(), 2);
    CHECK(sweep.verdict == Verdict::pass);
    CHECK(sweep.supports_checked == 1 + 12 + 66);
    CHECK(sweep.refuted == sweep.supports_checked);
}

TEST_CASE("selector families and the restriction surjection")
{
    auto m = ModelSpec::fraenkel2(6);
    for (std::size_t n = 0 ; n <= 4 ; ++n) {
        auto b = b_family(m, n);
        CHECK(b.level.size() == (std::size_t{1} << (n + 1)));
        CHECK(b.next_level.size() == (std::size_t{1} << (n + 2)));
        CHECK(b.surjective);
        CHECK(b.two_to_one);
        for (auto s : b.fiber_sizes)
            CHECK(s == 2);
    }
    CHECK_THROWS_AS(b_family(m, 5), InvalidInput);
}

TEST_CASE("omega Fraenkel obstruction")
{
    auto m = ModelSpec::omega_fraenkel(4, 6);
    auto r = omega_fraenkel_h_obstruction(m, { HSet::set({ HSet::of_atoms(FinSet{ 0, 6 }) }) }, FinSet{});
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.a == 0);
    CHECK(r.block == 0);
    CHECK(m.cell_of(*r.b) == 0);

    CHECK(omega_fraenkel_h_obstruction(m, { HSet::of_atoms(FinSet{ 0, 6 }) }, FinSet{ 0, 6 }).verdict == Verdict::inconclusive);
    CHECK_THROWS_AS(omega_fraenkel_h_obstruction(ModelSpec::omega_fraenkel(2, 2), { HSet::of_atoms(FinSet{ 0, 1 }) }, FinSet{}), NoExtension);
}

TEST_CASE("grid invariance and the two-line construction")
{
    auto m = ModelSpec::grid_model(3, 3);
    auto & g = m.grid;
    std::map<Atom, Atom> rows;
    for (std::size_t c = 0 ; c < 3 ; ++c) {
        rows[g.atom(1, c)] = g.atom(2, c);
        rows[g.atom(2, c)] = g.atom(1, c);
    }
    auto r = grid_invariance_check(m, FinSet{ g.atom(1, 1) }, PartialAut::finitary(rows, m.name()));
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.weight_before == 2);
    CHECK(r.weight_after == 2);

    auto cells = PartialAut::transposition(g.atom(0, 0), g.atom(1, 1), m.name());
    CHECK_THROWS_AS(grid_invariance_check(m, FinSet{ g.atom(0, 0) }, cells), ConstraintViolation);

    auto big = ModelSpec::grid_model(5, 5);
    auto c = grid_copy_construction(big, FinSet{ big.grid.atom(1, 1) }, FinSet{});
    CHECK(c.verdict == Verdict::pass);
    CHECK(c.weight_sum == c.weight_x + 2);
    CHECK(c.colour_sum != c.colour_x);
}

TEST_CASE("rado h2 witness")
{
    auto m = ModelSpec::rado(1, std::make_shared<const RadoStructure>(RadoStructure::bit_graph(32)));
    auto r = rado_h2_witness(m, SetFamily{ { 0, 1 } }, FinSet{});
    CHECK(r.verdict == Verdict::pass);
    CHECK(m.structure->adjacent(r.a, r.b));
    CHECK_FALSE(m.structure->adjacent(r.a, r.c));
    CHECK(r.colour_ab == Colour::one);
    CHECK(r.colour_ac == Colour::zero);

    auto tiny = ModelSpec::rado(1, std::make_shared<const RadoStructure>(RadoStructure::bit_graph(4)));
    CHECK_THROWS_AS(rado_h2_witness(tiny, SetFamily{ { 0, 1 } }, FinSet{ 2, 3 }), NoExtension);
}

TEST_CASE("rado rk witness")
{
    auto s = std::make_shared<const RadoStructure>(RadoStructure::random_hypergraph(2, 64, 0, 3));
    auto m = ModelSpec::rado(1, s);
    auto r = rado_rk_witness(m, 3, m.pool(), FinSet{});
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.colour_a == Colour::zero);
    CHECK(r.colour_b == Colour::one);
    CHECK(r.a_seq.size() == 3);
    CHECK(r.b_seq.size() == 3);
    CHECK_THROWS_AS(rado_rk_witness(m, 3, FinSet{ 0, 1, 2 }, FinSet{}), InvalidInput);
}
