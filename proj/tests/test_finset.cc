#include <finlab/finset.hh>
#include <finlab/colouring.hh>
#include <finlab/colourings.hh>
#include <finlab/errors.hh>
#include <finlab/rng.hh>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace finlab;

namespace
{
    auto random_set(Rng & rng, Atom ground) -> FinSet
    {
        std::vector<Atom> v;
        for (Atom a = 0 ; a < ground ; ++a)
            if (rng.coin())
                v.push_back(a);
        return FinSet{std::move(v)};
    }

    // brute-force sums over index subsets of size 1..k
    auto sums_oracle(const SetFamily & y, std::size_t k) -> std::set<FinSet>
    {
        std::set<FinSet> out;
        for (std::uint64_t mask = 1 ; mask < (std::uint64_t{1} << y.size()) ; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > k)
                continue;
            FinSet s;
            for (std::size_t i = 0 ; i < y.size() ; ++i)
                if (mask >> i & 1)
                    s = s ^ y[i];
            out.insert(s);
        }
        return out;
    }
}

TEST_CASE("symmetric difference")
{
    CHECK((FinSet{ 1, 2 } ^ FinSet{ 2, 3 }) == FinSet{ 1, 3 });
    FinSet x{ 0, 4, 9 };
    CHECK((x ^ x).empty());
    CHECK((x ^ FinSet{}) == x);
    CHECK(sym_diff(FinSet{ 1, 2 }, FinSet{ 2, 3 }) == FinSet{ 1, 3 });
}

TEST_CASE("Boolean group axioms exhaustively over six atoms")
{
    for (std::uint64_t a = 0 ; a < 64 ; ++a)
        for (std::uint64_t b = 0 ; b < 64 ; ++b) {
            auto x = FinSet::from_mask(a), y = FinSet::from_mask(b);
            REQUIRE((x ^ y) == (y ^ x));
            REQUIRE(((x ^ y) ^ y) == x);
            REQUIRE((x ^ y).to_mask() == (a ^ b));
        }
    for (std::uint64_t a = 0 ; a < 64 ; a += 5)
        for (std::uint64_t b = 0 ; b < 64 ; b += 3)
            for (std::uint64_t c = 0 ; c < 64 ; c += 7) {
                auto x = FinSet::from_mask(a), y = FinSet::from_mask(b), z = FinSet::from_mask(c);
                REQUIRE(((x ^ y) ^ z) == (x ^ (y ^ z)));
            }
}

TEST_CASE("construction normalizes")
{
    CHECK(FinSet{ 3, 1, 3, 2 } == FinSet{ 1, 2, 3 });
    CHECK(FinSet::range(3) == FinSet{ 0, 1, 2 });
    CHECK_THROWS_AS(FinSet{}.min(), InvalidInput);
    CHECK(FinSet{ 2, 5 }.with(3) == FinSet{ 2, 3, 5 });
    CHECK(FinSet{ 2, 5 }.without(5) == FinSet{ 2 });
    CHECK(FinSet{ 1 } < FinSet{ 1, 2 });
    CHECK(FinSet{ 1, 2 } < FinSet{ 2 });
}

TEST_CASE("fs_up_to examples")
{
    CHECK(fs_up_to(SetFamily{ { 1 }, { 2 }, { 3 } }, 2)
            == std::vector<FinSet>{ { 1 }, { 1, 2 }, { 1, 3 }, { 2 }, { 2, 3 }, { 3 } });
    CHECK(fs_up_to(SetFamily{ { 1, 2 }, { 2, 3 } }, 2) == std::vector<FinSet>{ { 1, 2 }, { 1, 3 }, { 2, 3 } });
    CHECK(fs_up_to(SetFamily{ { 0, 1 }, { 2, 3 }, { 4, 5 }, { 6, 7 } }, 4).size() == 15);
    CHECK_THROWS_AS(fs_up_to(SetFamily{ { 1 } }, 0), InvalidInput);
    CHECK_THROWS_AS(fs_up_to(SetFamily{}, 2), InvalidInput);
    CHECK_THROWS_AS(fs_up_to(SetFamily{ { 1 }, { 1 } }, 2), InvalidInput);
}

TEST_CASE("fs_up_to matches the subset-sum oracle and is monotone in k")
{
    Rng rng{11};
    for (int trial = 0 ; trial < 200 ; ++trial) {
        std::set<FinSet> seen;
        SetFamily y;
        auto size = 1 + rng.below(5);
        while (y.size() < size) {
            auto s = random_set(rng, 7);
            if (seen.insert(s).second)
                y.push_back(s);
        }
        std::vector<FinSet> previous;
        for (std::size_t k = 1 ; k <= y.size() ; ++k) {
            auto got = fs_up_to(y, k);
            auto oracle = sums_oracle(y, k);
            REQUIRE(std::set<FinSet>(got.begin(), got.end()) == oracle);
            REQUIRE(std::is_sorted(got.begin(), got.end()));
            REQUIRE(std::includes(got.begin(), got.end(), previous.begin(), previous.end()));
            previous = got;
        }
    }
}

TEST_CASE("fu examples")
{
    CHECK(fu(SetFamily{ { 1 }, { 2, 3 } }) == std::vector<FinSet>{ { 1 }, { 1, 2, 3 }, { 2, 3 } });
    CHECK(fu(SetFamily{ { 1, 2 }, { 2 } }) == std::vector<FinSet>{ { 1, 2 }, { 2 } });
    CHECK_THROWS_AS(fu(SetFamily{}), InvalidInput);
}

TEST_CASE("fu of a disjoint family has 2^|Y| - 1 members and equals the full sums")
{
    for (std::size_t n = 1 ; n <= 5 ; ++n) {
        SetFamily y;
        for (Atom i = 0 ; i < n ; ++i)
            y.push_back(FinSet{ 2 * i, 2 * i + 1 });
        auto u = fu(y);
        CHECK(u.size() == (std::size_t{1} << n) - 1);
        CHECK(u == fs_up_to(y, n));
    }
}

TEST_CASE("pairwise disjointness")
{
    CHECK(is_pairwise_disjoint(SetFamily{ { 1 }, { 2 } }));
    CHECK_FALSE(is_pairwise_disjoint(SetFamily{ { 1, 2 }, { 2, 3 } }));
    CHECK(is_pairwise_disjoint(SetFamily{}));
}

TEST_CASE("disjointify hand traces")
{
    auto r = disjointify(SetFamily{ { 1, 2 }, { 2, 3 }, { 1, 2, 3 }, { 4 } });
    CHECK(r.sets == SetFamily{ { 1, 2 }, { 3 }, { 4 } });
    CHECK(r.source_indices == std::vector<std::size_t>{ 0, 1, 3 });

    CHECK(disjointify(SetFamily{ {}, { 5 } }).sets == SetFamily{ { 5 } });
    CHECK(disjointify(SetFamily{ { 7 } }).sets == SetFamily{ { 7 } });
    CHECK_THROWS_AS(disjointify(SetFamily{ {} }), NotFound);
    CHECK_THROWS_AS(disjointify(SetFamily{ { 1 }, { 1 } }), InvalidInput);
}

TEST_CASE("disjointify output is disjoint, nonempty and traced to increasing sources")
{
    Rng rng{5};
    for (int trial = 0 ; trial < 300 ; ++trial) {
        std::set<FinSet> seen;
        SetFamily xs;
        auto size = 1 + rng.below(8);
        while (xs.size() < size) {
            auto s = random_set(rng, 10);
            if (seen.insert(s).second)
                xs.push_back(s);
        }
        if (std::all_of(xs.begin(), xs.end(), [] (auto & s) { return s.empty(); }))
            continue;
        auto r = disjointify(xs);
        REQUIRE(is_pairwise_disjoint(r.sets));
        REQUIRE(std::is_sorted(r.source_indices.begin(), r.source_indices.end()));
        REQUIRE(std::adjacent_find(r.source_indices.begin(), r.source_indices.end()) == r.source_indices.end());
        FinSet covered;
        for (std::size_t i = 0 ; i < r.sets.size() ; ++i) {
            REQUIRE_FALSE(r.sets[i].empty());
            REQUIRE(r.sets[i].is_subset_of(xs[r.source_indices[i]]));
            covered = covered | r.sets[i];
        }
        // nothing escapes the accumulated union once the recursion stops
        REQUIRE(xs.union_all() == covered);
    }
}

TEST_CASE("is_monochromatic")
{
    auto zero = Colouring::constant(8, std::nullopt, Colour::zero);
    std::vector<FinSet> s{ { 1 }, { 2, 3 } };
    CHECK(is_monochromatic(zero, s) == Colour::zero);
    CHECK_FALSE(is_monochromatic(log2_colouring_on(8), s).has_value());
    CHECK_FALSE(is_monochromatic(zero, std::vector<FinSet>{}).has_value());
    std::vector<FinSet> outside{ { 9 } };
    CHECK_THROWS_AS(is_monochromatic(zero, outside), DomainError);
}

TEST_CASE("subset enumeration is lexicographic and complete")
{
    auto subsets = subsets_of_size(FinSet::range(6), 3);
    CHECK(subsets.size() == 20);
    CHECK(std::is_sorted(subsets.begin(), subsets.end()));
    CHECK(subsets.front() == FinSet{ 0, 1, 2 });
    CHECK(subsets_of_size(FinSet::range(3), 0) == std::vector<FinSet>{ FinSet{} });
    CHECK(subsets_of_size(FinSet::range(2), 3).empty());
}
