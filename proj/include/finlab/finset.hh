#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace finlab
{
    using Atom = std::uint32_t;

    // Strictly increasing atom ids; equality and ordering are lexicographic on that sequence.
    class FinSet
    {
        private:
            std::vector<Atom> _elements;

            struct SortedTag { };
            FinSet(SortedTag, std::vector<Atom> && sorted) : _elements(std::move(sorted)) { }

        public:
            FinSet() = default;
            FinSet(std::initializer_list<Atom>);
            explicit FinSet(std::vector<Atom> elements);

            // {0, ..., n - 1}
            static auto range(Atom n) -> FinSet;
            // caller guarantees strictly increasing input
            static auto from_sorted(std::vector<Atom> sorted) -> FinSet;
            static auto from_mask(std::uint64_t mask) -> FinSet;

            auto elements() const -> const std::vector<Atom> & { return _elements; }
            auto size() const -> std::size_t { return _elements.size(); }
            auto empty() const -> bool { return _elements.empty(); }
            auto begin() const { return _elements.begin(); }
            auto end() const { return _elements.end(); }
            auto operator[](std::size_t i) const -> Atom { return _elements[i]; }

            auto contains(Atom) const -> bool;
            // throws InvalidInput on the empty set
            auto min() const -> Atom;
            auto max() const -> Atom;

            auto is_subset_of(const FinSet &) const -> bool;
            auto intersects(const FinSet &) const -> bool;
            auto with(Atom) const -> FinSet;
            auto without(Atom) const -> FinSet;
            // throws InvalidInput if some atom is >= 64
            auto to_mask() const -> std::uint64_t;

            friend auto operator| (const FinSet &, const FinSet &) -> FinSet;
            friend auto operator& (const FinSet &, const FinSet &) -> FinSet;
            friend auto operator- (const FinSet &, const FinSet &) -> FinSet;
            friend auto operator^ (const FinSet &, const FinSet &) -> FinSet;

            friend auto operator<=> (const FinSet &, const FinSet &) = default;
            friend auto operator== (const FinSet &, const FinSet &) -> bool = default;
    };

    auto sym_diff(const FinSet & a, const FinSet & b) -> FinSet;
    auto to_string(const FinSet &) -> std::string;

    // Order-preserving sequence of sets; duplicates allowed unless a check demands injectivity.
    class SetFamily
    {
        private:
            std::vector<FinSet> _members;

        public:
            SetFamily() = default;
            SetFamily(std::initializer_list<FinSet>);
            explicit SetFamily(std::vector<FinSet> members) : _members(std::move(members)) { }

            auto members() const -> const std::vector<FinSet> & { return _members; }
            auto size() const -> std::size_t { return _members.size(); }
            auto empty() const -> bool { return _members.empty(); }
            auto begin() const { return _members.begin(); }
            auto end() const { return _members.end(); }
            auto operator[](std::size_t i) const -> const FinSet & { return _members[i]; }
            auto push_back(FinSet s) -> void { _members.push_back(std::move(s)); }

            auto is_injective() const -> bool;
            auto union_all() const -> FinSet;

            friend auto operator== (const SetFamily &, const SetFamily &) -> bool = default;
    };

    auto to_string(const SetFamily &) -> std::string;

    // sorts lexicographically and removes duplicates
    auto canonical(std::vector<FinSet>) -> std::vector<FinSet>;

    // k > |Y| is clamped to |Y|; InvalidInput on k = 0, empty or non-injective Y
    auto fs_up_to(const SetFamily & y, std::size_t k) -> std::vector<FinSet>;
    auto fu(const SetFamily & y) -> std::vector<FinSet>;
    auto is_pairwise_disjoint(const SetFamily & y) -> bool;

    struct Disjointified
    {
        SetFamily sets;
        std::vector<std::size_t> source_indices;
    };

    // NotFound if every member is empty; InvalidInput if xs is not injective
    auto disjointify(const SetFamily & xs) -> Disjointified;

    // k-subsets of `ground` in lexicographic order; stops early when f returns false
    template <typename F_>
    auto for_each_subset_of_size(const FinSet & ground, std::size_t k, F_ && f) -> bool
    {
        const auto & g = ground.elements();
        if (k > g.size())
            return true;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0 ; i < k ; ++i)
            idx[i] = i;
        std::vector<Atom> buf(k);
        while (true) {
            for (std::size_t i = 0 ; i < k ; ++i)
                buf[i] = g[idx[i]];
            if (! f(FinSet::from_sorted(buf)))
                return false;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == g.size() - k + i - 1)
                --i;
            if (i == 0)
                return true;
            ++idx[i - 1];
            for (std::size_t j = i ; j < k ; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    auto subsets_of_size(const FinSet & ground, std::size_t k) -> std::vector<FinSet>;
}
