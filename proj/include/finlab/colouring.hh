#pragma once

#include <finlab/finset.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace finlab
{
    enum class Colour : std::uint8_t
    {
        zero = 0,
        one = 1
    };

    constexpr auto colour_from(bool one) -> Colour { return one ? Colour::one : Colour::zero; }
    constexpr auto colour_from_int(int v) -> Colour { return v ? Colour::one : Colour::zero; }
    constexpr auto flip(Colour c) -> Colour { return c == Colour::one ? Colour::zero : Colour::one; }
    constexpr auto to_int(Colour c) -> int { return static_cast<int>(c); }

    // Domain is the n-subsets (arity = n) or all finite subsets (no arity) of the carrier.
    // The carrier defaults to {0, ..., ground_size - 1}.
    class Colouring
    {
        public:
            using Rule = std::function<Colour (const FinSet &)>;
            using Table = std::map<FinSet, Colour>;

        private:
            std::string _name;
            FinSet _carrier;
            std::optional<std::size_t> _arity;
            Rule _rule;
            std::shared_ptr<const Table> _table;

        public:
            Colouring(std::string name, std::size_t ground_size, std::optional<std::size_t> arity, Rule rule);

            // every domain member must appear in the table
            static auto from_table(std::string name, std::size_t ground_size, std::optional<std::size_t> arity, Table table) -> Colouring;
            static auto constant(std::size_t ground_size, std::optional<std::size_t> arity, Colour) -> Colouring;

            auto with_carrier(FinSet carrier) const -> Colouring;
            auto with_arity(std::optional<std::size_t> arity) const -> Colouring;

            auto name() const -> const std::string & { return _name; }
            auto carrier() const -> const FinSet & { return _carrier; }
            auto arity() const -> std::optional<std::size_t> { return _arity; }
            auto table() const -> const Table * { return _table.get(); }

            auto in_domain(const FinSet &) const -> bool;

            // DomainError outside the domain
            auto operator() (const FinSet &) const -> Colour;

            // explicit table over the whole domain; InvalidInput when the domain is too large to list
            auto tabulate() const -> Table;
    };

    // empty input gives absent
    auto is_monochromatic(const Colouring & c, std::span<const FinSet> s) -> std::optional<Colour>;

    auto required_arity(const Colouring & c, const char * who) -> std::size_t;
}
