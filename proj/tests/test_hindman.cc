#include <finlab/colourings.hh>
#include <finlab/errors.hh>
#include <finlab/hindman.hh>
#include <finlab/rng.hh>

#include <doctest.h>

using namespace finlab;

TEST_CASE("cardinality injectivity")
{
    auto r = cardinality_injectivity_check(SetFamily{ { 1, 2 }, { 3, 4 } });
    REQUIRE(r);
    CHECK(r->kind == ViolationKind::disjoint_equal_cardinality);
    CHECK(r->witnesses == std::vector<FinSet>{ { 1, 2 }, { 3, 4 }, { 1, 2, 3, 4 } });
    CHECK(r->colours == std::vector<Colour>{ Colour::one, Colour::one, Colour::zero });
    CHECK(reverify(*r));

    CHECK_FALSE(cardinality_injectivity_check(SetFamily{ { 1 }, { 2, 3 }, { 4, 5, 6, 7 } }));
    CHECK_FALSE(cardinality_injectivity_check(SetFamily{ { 5, 6 } }));
    CHECK_THROWS_AS(cardinality_injectivity_check(SetFamily{ { 1, 2 }, { 2, 3 } }), InvalidInput);
}

TEST_CASE("fs4 monochromatic check")
{
    auto pair = fs4_mono_check(SetFamily{ { 1, 2 }, { 3, 4 } });
    REQUIRE(pair);
    CHECK(pair->kind == ViolationKind::colour_mismatch);
    CHECK(reverify(*pair));

    auto nested = fs4_mono_check(SetFamily{ { 1 }, { 1, 2 } });
    REQUIRE(nested);
    CHECK(nested->witnesses.size() == 2);
    CHECK(log2_colouring(nested->witnesses[0]) != log2_colouring(nested->witnesses[1]));

    CHECK_FALSE(fs4_mono_check(SetFamily{ { 1, 2, 3 } }));
    CHECK_THROWS_AS(fs4_mono_check(SetFamily{ {}, { 1 } }), InvalidInput);
}

TEST_CASE("a tampered violation report does not reverify")
{
    auto r = *cardinality_injectivity_check(SetFamily{ { 1, 2 }, { 3, 4 } });
    r.witnesses[1] = FinSet{ 3, 4, 5 };
    CHECK_FALSE(reverify(r));
}

TEST_CASE("fs4 count bound")
{
    RamseyProvider p;
    CHECK_FALSE(fs4_count_bound(SetFamily{ { 1 } }, 1, p));
    CHECK_FALSE(fs4_count_bound(SetFamily{ { 1, 2 }, { 1, 3 } }, 2, p));
    CHECK_THROWS_AS(fs4_count_bound(SetFamily{ { 1 }, { 2 } }, 1, p), InvalidInput);
}

TEST_CASE("random monochromatic families never breach the count bound")
{
    RamseyProvider p;
    Rng rng{11};
    int checked = 0;
    for (int trial = 0 ; trial < 3000 ; ++trial) {
        std::size_t size = 1 + rng.below(4);
        std::size_t card = 1 + rng.below(3);
        std::vector<FinSet> members;
        for (std::size_t i = 0 ; i < size ; ++i) {
            std::vector<Atom> a;
            while (a.size() < card) {
                Atom x = static_cast<Atom>(rng.below(8));
                if (std::find(a.begin(), a.end(), x) == a.end())
                    a.push_back(x);
            }
            members.push_back(FinSet{ a });
        }
        SetFamily y{ canonical(members) };
        if (fs4_mono_check(y))
            continue;
        ++checked;
        for (unsigned n = 1 ; n <= 3 ; ++n)
            REQUIRE_FALSE(fs4_count_bound(y, n, p));
    }
    CHECK(checked > 100);
}

TEST_CASE("monochromatic families of equal-size sets have no disjoint pair over {0..7}")
{
    auto ground = FinSet::range(8);
    for (std::size_t n = 1 ; n <= 3 ; ++n) {
        auto sets = subsets_of_size(ground, n);
        for (std::size_t i = 0 ; i < sets.size() ; ++i)
            for (std::size_t j = i + 1 ; j < sets.size() ; ++j) {
                SetFamily two{ sets[i], sets[j] };
                if (! fs4_mono_check(two))
                    REQUIRE(sets[i].intersects(sets[j]));
            }
    }
}

TEST_CASE("induction step preconditions and honest absence")
{
    RamseyProvider p;
    CHECK_THROWS_AS(fs4_induction_step(SetFamily{ { 1, 2 }, { 1, 3 }, { 1, 4 } }, 2, 0, p), InvalidInput);
    CHECK_THROWS_AS(fs4_induction_step(SetFamily{ { 1, 2 }, { 3, 4 }, { 5, 6 }, { 7, 8 } }, 2, 1, p), InvalidInput);
    CHECK_THROWS_AS(fs4_induction_step(SetFamily{ { 1, 2 }, { 3, 4 }, { 5, 6 }, { 7, 8 } }, 2, 0, p), InvalidInput);
    CHECK_THROWS_AS(fs4_induction_step(SetFamily{ { 1, 2 }, { 1, 3, 4 } }, 2, 0, p), InvalidInput);

    auto step = fs4_induction_step(SetFamily{ { 1, 2 }, { 1, 3 } }, 2, 0, p);
    CHECK(step.anchor == FinSet{ 1, 2 });
    CHECK(step.kernel == FinSet{ 1 });
    CHECK(step.bucket == SetFamily{ { 1, 3 } });
    CHECK(step.forcing_size.value == 18);
    CHECK_FALSE(step.subfamily);
    CHECK_FALSE(step.colour_zero_witness);
}

TEST_CASE("sets sharing exactly r pairwise give disjoint differences of size 2(n - |r|)")
{
    Rng rng{19};
    for (int trial = 0 ; trial < 500 ; ++trial) {
        std::size_t r = rng.below(4);
        std::size_t n = r + 1 + rng.below(4);
        std::vector<Atom> shared;
        for (std::size_t i = 0 ; i < r ; ++i)
            shared.push_back(static_cast<Atom>(i));
        Atom next = static_cast<Atom>(r);
        std::vector<FinSet> y;
        for (int i = 0 ; i < 4 ; ++i) {
            auto a = shared;
            for (std::size_t j = r ; j < n ; ++j)
                a.push_back(next++);
            y.push_back(FinSet{ a });
        }
        auto d1 = y[0] ^ y[1], d2 = y[2] ^ y[3];
        REQUIRE(d1.size() == 2 * (n - r));
        REQUIRE(d2.size() == 2 * (n - r));
        REQUIRE_FALSE(d1.intersects(d2));
        REQUIRE(log2_colouring(d1 | d2) != log2_colouring(d1));
    }
}

TEST_CASE("pushforward colouring")
{
    auto d = pushforward_colouring(log2_colouring_on(8), SetFamily{ { 1 }, { 2 } });
    CHECK(d(FinSet{ 0 }) == Colour::zero);
    CHECK(d(FinSet{ 0, 1 }) == Colour::one);

    auto flat = pushforward_colouring(Colouring::constant(8, std::nullopt, Colour::one), SetFamily{ { 1, 2 }, { 3 } });
    for (auto & s : { FinSet{ 0 }, FinSet{ 1 }, FinSet{ 0, 1 } })
        CHECK(flat(s) == Colour::one);

    CHECK_THROWS_AS(pushforward_colouring(log2_colouring_on(8), SetFamily{ { 1 }, { 1, 2 } }), InvalidInput);
    CHECK_THROWS_AS(pushforward_colouring(log2_colouring_on(4), SetFamily{ { 1 }, { 7 } })(FinSet{ 1 }), DomainError);
}

TEST_CASE("pushforward transfers monochromatic unions, all index families of up to 3 sets over 4 blocks")
{
    SetFamily blocks{ { 0 }, { 1, 2 }, { 3, 4, 5 }, { 6, 7, 8, 9 } };
    for (auto c : { log2_colouring_on(10), mod4_colouring_on(10) }) {
        auto d = pushforward_colouring(c, blocks);
        std::vector<FinSet> index_sets;
        for (std::uint64_t m = 1 ; m < 16 ; ++m)
            index_sets.push_back(FinSet::from_mask(m));
        for (std::uint64_t pick = 1 ; pick < (std::uint64_t{1} << index_sets.size()) ; ++pick) {
            if (std::popcount(pick) > 3)
                continue;
            SetFamily z;
            for (std::size_t i = 0 ; i < index_sets.size() ; ++i)
                if (pick >> i & 1)
                    z.push_back(index_sets[i]);
            if (! is_pairwise_disjoint(z))
                continue;
            auto dc = is_monochromatic(d, fu(z));
            if (! dc)
                continue;
            auto lifted = lift_family(z, blocks);
            REQUIRE(is_pairwise_disjoint(lifted));
            REQUIRE(is_monochromatic(c, fu(lifted)) == dc);
        }
    }
}

TEST_CASE("star family")
{
    auto y = star_family(FinSet{ 1, 2, 3 }, 1);
    CHECK(y == SetFamily{ { 1, 2 }, { 1, 3 } });
    CHECK(canonical(fs_up_to(y, 2)) == std::vector<FinSet>{ { 1, 2 }, { 1, 3 }, { 2, 3 } });
    CHECK(star_family(FinSet{ 4, 9 }, 9) == SetFamily{ { 4, 9 } });
    CHECK_THROWS_AS(star_family(FinSet{ 1, 2 }, 3), InvalidInput);
    CHECK_THROWS_AS(star_family(FinSet{ 1 }, 1), InvalidInput);
}

TEST_CASE("star family sums stay inside the pairs of Z")
{
    for (std::uint64_t mask = 0 ; mask < 256 ; ++mask) {
        auto z_set = FinSet::from_mask(mask);
        if (z_set.size() < 2)
            continue;
        for (auto z : z_set)
            for (auto & s : fs_up_to(star_family(z_set, z), 2))
                REQUIRE((s.size() == 2 && s.is_subset_of(z_set)));
    }
}

TEST_CASE("schur to FS3 pipeline")
{
    GridShape grid{ 6, 30 };
    auto zero = [] (std::uint64_t) { return Colour::zero; };
    auto fam = schur_to_fs3(zero, 64, grid, 4);
    CHECK(fam.family.size() == 4);
    auto n = fam.params.n, k = fam.params.k;
    for (std::size_t a = 0 ; a < 4 ; ++a) {
        CHECK(fam.family[a].size() == n + k);
        for (std::size_t b = a + 1 ; b < 4 ; ++b) {
            CHECK((fam.family[a] ^ fam.family[b]).size() == 2 * k);
            for (std::size_t c = b + 1 ; c < 4 ; ++c)
                CHECK((fam.family[a] ^ fam.family[b] ^ fam.family[c]).size() == n + 3 * k);
        }
    }

    auto parity_log2 = [] (std::uint64_t x) { return log2_colouring(FinSet::range(static_cast<Atom>(x))); };
    auto p = schur_to_fs3(parity_log2, 64, grid, 4);
    Colouring by_size{"size", grid.size(), std::nullopt, [&] (const FinSet & x) { return parity_log2(x.size()); }};
    CHECK(is_monochromatic(by_size, fs_up_to(p.family, 3)) == p.colour);

    auto none = [] (std::uint64_t x) { return colour_from(x == 4 || x == 6); };
    CHECK_THROWS_AS(schur_to_fs3(none, 8, grid, 4), NotFound);
    CHECK_THROWS_AS(schur_to_fs3(zero, 64, GridShape{ 3, 30 }, 4), InvalidInput);
}
