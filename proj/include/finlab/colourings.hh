#pragma once

#include <finlab/colouring.hh>
#include <finlab/finset.hh>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace finlab
{
    // floor(log2 |x|) mod 2; InvalidInput on the empty set
    auto log2_colouring(const FinSet & x) -> Colour;
    // 0 iff |x| mod 4 is 0 or 1
    auto mod4_colouring(const FinSet & x) -> Colour;

    auto log2_colouring_on(std::size_t ground_size) -> Colouring;
    auto mod4_colouring_on(std::size_t ground_size) -> Colouring;

    class Partition
    {
        private:
            std::vector<FinSet> _blocks;
            FinSet _carrier;
            std::map<Atom, std::size_t> _block_of;

        public:
            // InvalidInput if blocks overlap or one is empty
            explicit Partition(std::vector<FinSet> blocks);

            auto blocks() const -> const std::vector<FinSet> & { return _blocks; }
            auto carrier() const -> const FinSet & { return _carrier; }
            auto block_of(Atom) const -> std::optional<std::size_t>;
    };

    // 1 iff some block meets x in at least two points; DomainError if x escapes the carrier
    auto partition_colouring(const Partition & p, const FinSet & x) -> Colour;
    auto partition_colouring_on(const Partition & p) -> Colouring;

    // Y itself when it meets each touched block once, else absent; DomainError if Y escapes the carrier
    auto selector_extract(const Partition & p, const FinSet & y) -> std::optional<FinSet>;

    class LinearOrder
    {
        private:
            std::vector<Atom> _sequence;
            std::map<Atom, std::size_t> _rank;

        public:
            // least element first; InvalidInput on repeats
            explicit LinearOrder(std::vector<Atom> sequence);
            static auto natural(const FinSet & ground) -> LinearOrder;

            auto sequence() const -> const std::vector<Atom> & { return _sequence; }
            auto rank(Atom) const -> std::size_t;
            auto least(const FinSet & x) const -> Atom;
    };

    // c(x \ {least x}); InvalidInput unless |x| = arity(c) + 1
    auto min_drop_colouring(const Colouring & c, const LinearOrder & order, const FinSet & x) -> Colour;
    auto min_drop_lift(const Colouring & c, const LinearOrder & order) -> Colouring;

    // Y is the explicit witness set; InvalidInput unless Y is in the carrier and |Y| >= n - 1
    auto is_dense(const Colouring & c, const FinSet & y) -> bool;

    struct FinitenessThreshold
    {
        std::size_t t = 0;
    };

    struct LocalSplit
    {
        Colour colour;
        FinSet members;
        std::size_t max_degree;
    };

    // Classes each x by the unique colour with at most t neighbours. A colour dominates when it
    // classes at least |X| - t points. Unclassifiable if some x has both degrees above t or no
    // colour dominates. InvalidInput unless |X| > 2t + 1.
    auto locally_finite_split(const Colouring & c, FinitenessThreshold t) -> LocalSplit;

    class PairGraph
    {
        private:
            FinSet _vertices;
            std::map<Atom, std::vector<Atom>> _adjacent;

        public:
            PairGraph(FinSet vertices, const std::vector<std::pair<Atom, Atom>> & edges);
            // edges are the pairs of colour i
            static auto from_colouring(const Colouring & c, Colour i) -> PairGraph;

            auto vertices() const -> const FinSet & { return _vertices; }
            auto neighbours(Atom) const -> const std::vector<Atom> &;
            auto adjacent(Atom, Atom) const -> bool;
            auto edge_count() const -> std::size_t;
    };

    // InvalidInput if x is not a vertex
    auto bfs_levels(const PairGraph & g, Atom x) -> std::vector<FinSet>;
    auto components(const PairGraph & g) -> Partition;
    auto singleton_extract(const Colouring & c, Colour i) -> FinSet;

    // d(s) = 0 iff every extension s + {x}, x in Y \ s, has one colour; vacuous extensions give 0
    auto boundary_colouring(const Colouring & c) -> Colouring;
    // NotConstant if some (n-1)-subset of Y' has extensions of both colours or none
    auto value_colouring(const Colouring & c, const FinSet & y_prime) -> Colouring;

    // row-major, zero-based
    struct GridShape
    {
        std::size_t rows = 0;
        std::size_t cols = 0;

        auto size() const -> std::size_t { return rows * cols; }
        auto atom(std::size_t row, std::size_t col) const -> Atom;
        // DomainError outside the grid
        auto coords(Atom) const -> std::pair<std::size_t, std::size_t>;
        auto row_set(const FinSet & x) const -> FinSet;
        auto col_set(const FinSet & x) const -> FinSet;
    };

    auto grid_weight(const GridShape & g, const FinSet & x) -> std::size_t;
    auto grid_colouring(const GridShape & g, const FinSet & x) -> Colour;
    auto grid_colouring_on(const GridShape & g) -> Colouring;
}
