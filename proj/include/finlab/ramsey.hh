#pragma once

#include <finlab/colouring.hh>
#include <finlab/finset.hh>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace finlab
{
    using BigInt = boost::multiprecision::cpp_int;

    // Ordered by how much is lost: combining answers keeps the worst.
    enum class Exactness
    {
        exact,              // backed by exhaustive enumeration here
        exact_from_table,   // literature constant
        upper_bound,        // binomial bound
        lower_bound         // used once upper bounds are too large to materialize
    };

    auto to_string(Exactness) -> std::string_view;
    auto worst(Exactness, Exactness) -> Exactness;

    struct RamseyAnswer
    {
        BigInt value;
        Exactness exactness;
    };

    class RamseyProvider
    {
        private:
            unsigned _max_tabled;
            unsigned _binomial_limit;

        public:
            // table entries above max_tabled are ignored; the binomial bound is used while m - 1 <= binomial_limit
            explicit RamseyProvider(unsigned max_tabled = 4, unsigned binomial_limit = 4096);

            auto max_tabled() const -> unsigned { return _max_tabled; }
            auto binomial_limit() const -> unsigned { return _binomial_limit; }

            // upper bound or exact; lower_bound only when m - 1 exceeds the binomial limit
            auto number(const BigInt & m) const -> RamseyAnswer;
            // exact or lower bound, always materializable
            auto lower(const BigInt & m) const -> RamseyAnswer;
    };

    // InvalidInput if m < 1
    auto ramsey_number(const BigInt & m, const RamseyProvider & provider) -> RamseyAnswer;

    struct RamseyCertificate
    {
        unsigned m = 0;
        unsigned value = 0;
        // edge bitmask (lexicographic edge order) of a colouring of K_{value-1} with no monochromatic K_m
        std::uint64_t lower_witness = 0;
        std::uint64_t colourings_below = 0;
        std::uint64_t witnesses_below = 0;
        std::uint64_t colourings_above = 0;
        std::uint64_t failures_above = 0;
        bool certified = false;
    };

    // Exhaustive over all colourings of K_{value-1} and K_value, no early exit; InvalidInput if value > 6.
    auto certify_ramsey_by_enumeration(unsigned m, unsigned value) -> RamseyCertificate;

    // colour 1 on quadratic-residue differences; InvalidInput unless q is a prime with q = 1 mod 4
    auto paley_colouring(unsigned q) -> Colouring;

    struct SearchOptions
    {
        std::uint64_t node_budget = 50'000'000;
        unsigned workers = 1;
        std::optional<Colour> only_colour;
    };

    struct MonoSubset
    {
        FinSet subset;
        Colour colour;
    };

    struct MonoSearch
    {
        std::optional<MonoSubset> witness;
        std::uint64_t nodes = 0;
    };

    // Lexicographically least m-subset of the carrier whose n-subsets share a colour.
    // InvalidInput unless n <= m <= |carrier|; BudgetExceeded when the node budget runs out.
    auto search_mono_subset(const Colouring & c, std::size_t m, const SearchOptions & = {}) -> MonoSearch;
    auto find_mono_subset(const Colouring & c, std::size_t m, const SearchOptions & = {}) -> std::optional<MonoSubset>;

    struct FBound
    {
        BigInt value;
        Exactness exactness;
    };

    // F(n,0) = 4, F(n,k+1) = 2^n (R(F(n,k)) - 1) + 2
    class FBoundTable
    {
        private:
            RamseyProvider _provider;
            std::map<std::pair<unsigned, unsigned>, FBound> _memo;

        public:
            explicit FBoundTable(RamseyProvider provider) : _provider(provider) { }

            auto get(unsigned n, unsigned k) -> const FBound &;
    };

    // InvalidInput if n = 0
    auto f_bound(unsigned n, unsigned k, const RamseyProvider & provider) -> FBound;

    using NumberColouring = std::function<Colour (std::uint64_t)>;

    struct SchurTriple
    {
        std::uint64_t m = 0;
        std::uint64_t m_prime = 0;

        auto sum() const -> std::uint64_t { return m + m_prime; }
        friend auto operator== (const SchurTriple &, const SchurTriple &) -> bool = default;
    };

    // Least (m, m') with even m < m', m + m' <= bound and d constant on {m, m', m + m'}.
    auto schur_triple(const NumberColouring & d, std::uint64_t bound) -> std::optional<SchurTriple>;

    struct SchurParameters
    {
        std::uint64_t n = 0;
        std::uint64_t k = 0;
    };

    // k = m'/2, n = m - k; InvalidInput if either is odd or m <= m'/2
    auto schur_decompose(std::uint64_t m, std::uint64_t m_prime) -> SchurParameters;
    // takes m as the larger value so that n, k >= 1 for every triple with m < m'
    auto schur_decompose(const SchurTriple & t) -> SchurParameters;

    // Lexicographically least pairwise-disjoint family of s nonempty subsets of the carrier {0..N-1}
    // whose finite unions share a colour. InvalidInput unless 1 <= s <= N <= 20.
    auto fu_family_search(const Colouring & c, std::size_t s, const SearchOptions & = {}) -> std::optional<SetFamily>;
}
