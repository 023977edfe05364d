#pragma once

#include <finlab/colouring.hh>
#include <finlab/finset.hh>

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace finlab
{
    // Immutable hereditarily finite set over atoms. Children are sorted and deduplicated at
    // construction, so equality is extensional. Atoms order before sets.
    class HSet
    {
        private:
            struct Node;
            std::shared_ptr<const Node> _node;

            explicit HSet(std::shared_ptr<const Node>);

        public:
            static auto atom(Atom) -> HSet;
            static auto set(std::vector<HSet> children) -> HSet;
            static auto empty_set() -> HSet;

            // {a : a in s}
            static auto of_atoms(const FinSet & s) -> HSet;
            // von Neumann ordinal n
            static auto ordinal(std::size_t n) -> HSet;
            // Kuratowski pair {{a}, {a, b}}
            static auto pair(const HSet & a, const HSet & b) -> HSet;
            // {of_atoms(m) : m in f}
            static auto family(const SetFamily & f) -> HSet;

            auto is_atom() const -> bool;
            // InvalidInput on a set node
            auto atom_id() const -> Atom;
            auto children() const -> const std::vector<HSet> &;
            auto size() const -> std::size_t { return children().size(); }

            // atoms of the transitive closure
            auto atoms() const -> const FinSet &;
            auto is_pure() const -> bool { return atoms().empty(); }
            auto contains(const HSet &) const -> bool;
            auto depth() const -> std::size_t;
            auto hash() const -> std::size_t;

            // inverse of of_atoms; InvalidInput unless every child is an atom
            auto as_finset() const -> FinSet;
            // inverse of pair; InvalidInput on anything else
            auto unpair() const -> std::pair<HSet, HSet>;
            // inverse of ordinal; InvalidInput on anything else
            auto as_ordinal() const -> std::size_t;

            auto to_string() const -> std::string;

            friend auto operator<=> (const HSet &, const HSet &) -> std::strong_ordering;
            friend auto operator== (const HSet &, const HSet &) -> bool;
    };

    // graph of the colouring, {(x, c(x)) : x in domain}, colours as ordinals; needs an arity
    auto encode_colouring(const Colouring & c) -> HSet;
    // {(ordinal i, v_i)}
    auto encode_sequence(const std::vector<HSet> & values) -> HSet;
}
