#pragma once

#include <finlab/finset.hh>
#include <finlab/partial_aut.hh>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace finlab
{
    using Rational = boost::multiprecision::cpp_rational;

    // i < j adjacent iff bit i of j is set; InvalidInput if i = j
    auto bit_edge(std::uint64_t i, std::uint64_t j) -> bool;

    struct Demand
    {
        // (arity - 1)-subsets whose extension by the witness must be / must not be an edge
        std::vector<FinSet> positive;
        std::vector<FinSet> negative;

        auto size() const -> std::size_t { return positive.size() + negative.size(); }
        auto vertices() const -> FinSet;
    };

    // witness strictly above `above` and strictly below `below` in the structure order
    struct OrderInterval
    {
        std::optional<Atom> above;
        std::optional<Atom> below;
    };

    class RadoStructure
    {
        public:
            enum class Kind { bit, hypergraph };

        private:
            Kind _kind = Kind::bit;
            std::size_t _arity = 2;
            std::size_t _vertices = 0;
            std::size_t _base = 0;
            bool _ordered = false;
            std::uint64_t _seed = 0;
            std::size_t _certified_demand = 0;
            std::size_t _repair_passes = 0;
            std::unordered_map<std::uint64_t, boost::dynamic_bitset<>> _link;
            std::vector<Rational> _position;

            auto link_key(const FinSet & s) const -> std::uint64_t;
            auto set_edge(const FinSet & e, bool present) -> void;
            auto add_vertex(Rational position) -> Atom;

        public:
            static auto bit_graph(std::size_t vertex_count) -> RadoStructure;

            // seeded coin per arity-subset, then rewiring passes until every demand of size at most
            // demand_size over all vertices has a witness; NoExtension if the passes do not settle
            static auto random_hypergraph(std::size_t arity, std::size_t vertex_count, std::uint64_t seed,
                    std::size_t demand_size) -> RadoStructure;

            // base vertices at shuffled integer positions; missing positional witnesses are inserted at
            // midpoints, so certification covers demands over the base vertices. NoExtension past the budget.
            static auto random_ordered_hypergraph(std::size_t arity, std::size_t base_count, std::uint64_t seed,
                    std::size_t demand_size, std::size_t vertex_budget) -> RadoStructure;

            // rebuilds a stored structure; positions empty for unordered ones
            static auto from_edges(std::size_t arity, std::size_t vertex_count, std::size_t base_count, std::uint64_t seed,
                    std::size_t certified_demand, const std::vector<FinSet> & edges, std::vector<Rational> positions) -> RadoStructure;

            auto kind() const -> Kind { return _kind; }
            auto arity() const -> std::size_t { return _arity; }
            auto vertex_count() const -> std::size_t { return _vertices; }
            auto base_count() const -> std::size_t { return _base; }
            auto ordered() const -> bool { return _ordered; }
            auto seed() const -> std::uint64_t { return _seed; }
            auto certified_demand() const -> std::size_t { return _certified_demand; }
            auto repair_passes() const -> std::size_t { return _repair_passes; }
            auto positions() const -> const std::vector<Rational> & { return _position; }

            // InvalidInput unless |e| = arity and every vertex is in range
            auto has_edge(const FinSet & e) const -> bool;
            auto adjacent(Atom a, Atom b) const -> bool;
            // negative, zero, positive; by position when ordered, else by id
            auto compare(Atom a, Atom b) const -> int;
            auto edges() const -> std::vector<FinSet>;
    };

    // Least vertex outside the demand vertices and `exclude` meeting every demand and the interval.
    // InvalidInput if a subset is both positive and negative or has the wrong size.
    auto extension_witness(const RadoStructure & s, const Demand & d, const FinSet & exclude = {},
            const std::optional<OrderInterval> & interval = std::nullopt) -> std::optional<Atom>;

    // edges and, when ordered, order preserved both ways on the domain
    auto is_partial_iso(const RadoStructure & s, const PartialAut & p) -> bool;

    // The demand the image of `target` must meet under p, plus its order slot.
    auto extension_demand(const RadoStructure & s, const PartialAut & p, Atom target) -> std::pair<Demand, std::optional<OrderInterval>>;

    // One forth step. ConstraintViolation unless p is a partial isomorphism; NoExtension on saturation.
    auto extend_partial_iso(const RadoStructure & s, const PartialAut & p, Atom target) -> PartialAut;

    struct Certification
    {
        std::size_t demands_checked = 0;
        std::optional<std::pair<Demand, std::optional<OrderInterval>>> first_failure;
    };

    // Every demand of size at most demand_size over `over` (with each order slot when ordered).
    auto certify_extension_property(const RadoStructure & s, std::size_t demand_size, const FinSet & over) -> Certification;
}
